#ifndef DIFFBOUND_BUDGET_HPP
#define DIFFBOUND_BUDGET_HPP

#include <chrono>
#include <cstdint>
#include <optional>

#include "diffbound/errors.hpp"

namespace diffbound {

struct Budget {
    std::uint64_t max_value_bits = std::uint64_t{1} << 28;  // any computed integer
    std::uint64_t max_steps = 1'000'000;                    // recursion / search nodes
    std::uint64_t max_enumeration = 10'000'000;             // elements materialized at once
    std::optional<std::chrono::milliseconds> time_limit;    // wall clock, unset = unlimited
};

/// One evaluation context: budget counters plus memo tables.  Confine an
/// instance to a single thread of computation; results are deterministic,
/// so contexts with equal budgets are interchangeable.
class EvalContext {
public:
    EvalContext() : deadline_set_(false) { arm_clock(); }
    explicit EvalContext(Budget b) : budget_(b), deadline_set_(false) { arm_clock(); }

    const Budget& budget() const { return budget_; }
    std::uint64_t steps_used() const { return steps_; }
    std::uint64_t recursion_depth() const { return depth_; }

    void tick(std::uint64_t n = 1) {
        steps_ += n;
        if (steps_ > budget_.max_steps) {
            throw BudgetError(BudgetError::Kind::Steps,
                              "step guard exceeded (" + std::to_string(budget_.max_steps) +
                                  " steps) at recursion depth " + std::to_string(depth_),
                              depth_);
        }
        if (deadline_set_ && (steps_ & 0x3FF) == 0 && std::chrono::steady_clock::now() > deadline_) {
            throw BudgetError(BudgetError::Kind::Time, "time guard exceeded", depth_);
        }
    }

    void check_bits(std::uint64_t bits, const char* what) {
        if (bits > budget_.max_value_bits) {
            throw BudgetError(BudgetError::Kind::ValueBits,
                              std::string(what) + ": value would need " + std::to_string(bits) +
                                  " bits (guard " + std::to_string(budget_.max_value_bits) +
                                  ") at recursion depth " + std::to_string(depth_),
                              depth_);
        }
    }

    // RAII depth marker for the recursive bound computations.
    class DepthGuard {
    public:
        explicit DepthGuard(EvalContext& ctx) : ctx_(ctx) { ++ctx_.depth_; }
        ~DepthGuard() { --ctx_.depth_; }
        DepthGuard(const DepthGuard&) = delete;
        DepthGuard& operator=(const DepthGuard&) = delete;

    private:
        EvalContext& ctx_;
    };

private:
    void arm_clock() {
        if (budget_.time_limit) {
            deadline_ = std::chrono::steady_clock::now() + *budget_.time_limit;
            deadline_set_ = true;
        }
    }

    Budget budget_;
    std::uint64_t steps_ = 0;
    std::uint64_t depth_ = 0;
    std::chrono::steady_clock::time_point deadline_;
    bool deadline_set_;
};

}  // namespace diffbound

#endif
