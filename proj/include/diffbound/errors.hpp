#ifndef DIFFBOUND_ERRORS_HPP
#define DIFFBOUND_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace diffbound {

/// Bad inputs, arity mismatches, malformed text, inconsistent systems.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A guarded resource ran out. Carries which guard fired and, for the
/// recursive bound computations, how deep the recursion had gotten.
class BudgetError : public std::runtime_error {
public:
    enum class Kind { ValueBits, Steps, Enumeration, Time };

    BudgetError(Kind kind, const std::string& what, std::uint64_t recursion_depth = 0)
        : std::runtime_error(what), kind_(kind), recursion_depth_(recursion_depth) {}

    Kind kind() const { return kind_; }
    std::uint64_t recursion_depth() const { return recursion_depth_; }

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::ValueBits: return "value-bits";
            case Kind::Steps: return "steps";
            case Kind::Enumeration: return "enumeration";
            case Kind::Time: return "time";
        }
        return "?";
    }

private:
    Kind kind_;
    std::uint64_t recursion_depth_;
};

}  // namespace diffbound

#endif
