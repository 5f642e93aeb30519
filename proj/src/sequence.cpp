#include "diffbound/sequence.hpp"

#include <atomic>
#include <variant>

namespace diffbound {

namespace detail {

struct Geometric {
    BigInt r;
};

struct ExplicitPrefix {
    std::vector<BigInt> values;  // then doubles from the back
};

struct Shifted {
    std::shared_ptr<const Sequence::Node> base;
    BigInt offset;
};

struct Composed {
    std::shared_ptr<const Sequence::Node> base;
    IndexSequencePtr index_map;
};

}  // namespace detail

struct Sequence::Node {
    std::variant<detail::Geometric, detail::ExplicitPrefix, detail::Shifted, detail::Composed> data;
};

namespace {

std::atomic<std::uint64_t> g_index_seq_counter{1};

using detail::Composed;
using detail::ExplicitPrefix;
using detail::Geometric;
using detail::Shifted;

BigInt geometric_value(const BigInt& r, const BigInt& i, EvalContext& ctx) {
    // 2^i * r has bit length i + bits(r); guard before materializing.
    const BigInt bits = i + static_cast<long long>(bit_length(r));
    if (bits > static_cast<long long>(ctx.budget().max_value_bits)) {
        throw BudgetError(BudgetError::Kind::ValueBits,
                          "sequence value would need " + approx_str(bits) + " bits (guard " +
                              std::to_string(ctx.budget().max_value_bits) + ")",
                          ctx.recursion_depth());
    }
    return r << i.convert_to<std::uint64_t>();
}

BigInt node_at(const Sequence::Node& node, const BigInt& i, EvalContext& ctx) {
    if (i < 0) throw DomainError("sequence index must be non-negative");
    ctx.tick();
    if (const auto* g = std::get_if<Geometric>(&node.data)) {
        return geometric_value(g->r, i, ctx);
    }
    if (const auto* e = std::get_if<ExplicitPrefix>(&node.data)) {
        const std::size_t p = e->values.size();
        if (i < static_cast<long long>(p)) {
            return e->values[i.convert_to<std::size_t>()];
        }
        return geometric_value(e->values.back(), i - static_cast<long long>(p - 1), ctx);
    }
    if (const auto* sh = std::get_if<Shifted>(&node.data)) {
        return node_at(*sh->base, i + sh->offset, ctx);
    }
    const auto& c = std::get<Composed>(node.data);
    return node_at(*c.base, c.index_map->at(i, ctx), ctx);
}

std::size_t node_hash(const Sequence::Node& node) {
    std::size_t h = std::hash<std::size_t>{}(node.data.index());
    if (const auto* g = std::get_if<Geometric>(&node.data)) {
        hash_combine(h, hash_bigint(g->r));
    } else if (const auto* e = std::get_if<ExplicitPrefix>(&node.data)) {
        for (const auto& v : e->values) hash_combine(h, hash_bigint(v));
    } else if (const auto* sh = std::get_if<Shifted>(&node.data)) {
        hash_combine(h, node_hash(*sh->base));
        hash_combine(h, hash_bigint(sh->offset));
    } else {
        const auto& c = std::get<Composed>(node.data);
        hash_combine(h, node_hash(*c.base));
        hash_combine(h, std::hash<std::uint64_t>{}(c.index_map->id()));
    }
    return h;
}

bool node_equal(const Sequence::Node& a, const Sequence::Node& b) {
    if (&a == &b) return true;
    if (a.data.index() != b.data.index()) return false;
    if (const auto* g = std::get_if<Geometric>(&a.data)) {
        return g->r == std::get<Geometric>(b.data).r;
    }
    if (const auto* e = std::get_if<ExplicitPrefix>(&a.data)) {
        return e->values == std::get<ExplicitPrefix>(b.data).values;
    }
    if (const auto* sh = std::get_if<Shifted>(&a.data)) {
        const auto& o = std::get<Shifted>(b.data);
        return sh->offset == o.offset && node_equal(*sh->base, *o.base);
    }
    const auto& ca = std::get<Composed>(a.data);
    const auto& cb = std::get<Composed>(b.data);
    return ca.index_map->id() == cb.index_map->id() && node_equal(*ca.base, *cb.base);
}

std::string node_describe(const Sequence::Node& node) {
    if (const auto* g = std::get_if<Geometric>(&node.data)) {
        return "geometric:r=" + g->r.str();
    }
    if (const auto* e = std::get_if<ExplicitPrefix>(&node.data)) {
        std::string s = "explicit:[";
        for (std::size_t k = 0; k < e->values.size(); ++k) {
            if (k) s += ",";
            s += e->values[k].str();
        }
        return s + "]:then=geometric";
    }
    if (const auto* sh = std::get_if<Shifted>(&node.data)) {
        return "shifted(" + node_describe(*sh->base) + ",+" + sh->offset.str() + ")";
    }
    const auto& c = std::get<Composed>(node.data);
    return "composed(" + node_describe(*c.base) + ",b#" + std::to_string(c.index_map->id()) + ")";
}

}  // namespace

Sequence Sequence::geometric(BigInt r) {
    if (r < 1) throw DomainError("geometric sequence needs r >= 1");
    return Sequence(std::make_shared<const Node>(Node{Geometric{std::move(r)}}));
}

Sequence Sequence::explicit_then_geometric(std::vector<BigInt> prefix) {
    if (prefix.empty()) throw DomainError("explicit sequence needs at least one value");
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (prefix[i] < 1) throw DomainError("sequence values must be positive");
        if (i > 0 && prefix[i] < prefix[i - 1]) {
            throw DomainError("sequence values must be non-decreasing");
        }
    }
    return Sequence(std::make_shared<const Node>(Node{ExplicitPrefix{std::move(prefix)}}));
}

Sequence Sequence::composed(Sequence base, IndexSequencePtr index_map) {
    if (!index_map) throw DomainError("composed sequence needs an index map");
    return Sequence(std::make_shared<const Node>(Node{Composed{base.node_, std::move(index_map)}}));
}

Sequence Sequence::shifted(const BigInt& offset) const {
    if (offset < 0) throw DomainError("shift offset must be non-negative");
    if (offset == 0) return *this;
    if (const auto* sh = std::get_if<Shifted>(&node_->data)) {
        return Sequence(std::make_shared<const Node>(Node{Shifted{sh->base, sh->offset + offset}}));
    }
    return Sequence(std::make_shared<const Node>(Node{Shifted{node_, offset}}));
}

BigInt Sequence::at(const BigInt& i, EvalContext& ctx) const { return node_at(*node_, i, ctx); }

std::size_t Sequence::structural_hash() const { return node_hash(*node_); }

bool Sequence::structural_equal(const Sequence& other) const {
    return node_ == other.node_ || node_equal(*node_, *other.node_);
}

std::string Sequence::describe() const { return node_describe(*node_); }

Sequence Sequence::parse(const std::string& literal) {
    const std::string geo_prefix = "geometric:r=";
    const std::string exp_prefix = "explicit:[";
    const std::string exp_suffix = "]:then=geometric";
    if (literal.rfind(geo_prefix, 0) == 0) {
        return geometric(parse_bigint(literal.substr(geo_prefix.size())));
    }
    if (literal.rfind(exp_prefix, 0) == 0) {
        if (literal.size() < exp_prefix.size() + exp_suffix.size() ||
            literal.compare(literal.size() - exp_suffix.size(), exp_suffix.size(), exp_suffix) !=
                0) {
            throw DomainError("bad sequence literal (expected '" + exp_prefix + "v0,v1,...' + '" +
                              exp_suffix + "'): " + literal);
        }
        const std::string body = literal.substr(
            exp_prefix.size(), literal.size() - exp_prefix.size() - exp_suffix.size());
        std::vector<BigInt> values;
        std::size_t pos = 0;
        while (pos <= body.size()) {
            const std::size_t comma = body.find(',', pos);
            const std::string item =
                comma == std::string::npos ? body.substr(pos) : body.substr(pos, comma - pos);
            values.push_back(parse_bigint(item));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return explicit_then_geometric(std::move(values));
    }
    throw DomainError("bad sequence literal: " + literal);
}

IndexSequence::IndexSequence(Step step)
    : step_(std::move(step)), id_(g_index_seq_counter.fetch_add(1)) {
    cache_.emplace_back(0);  // b_0 = 0
}

BigInt IndexSequence::at(const BigInt& l, EvalContext& ctx) {
    if (l < 0) throw DomainError("index sequence argument must be non-negative");
    if (l >= static_cast<long long>(ctx.budget().max_steps)) {
        throw BudgetError(BudgetError::Kind::Steps,
                          "index sequence needs " + approx_str(l) + " iterations (step guard " +
                              std::to_string(ctx.budget().max_steps) + ")",
                          ctx.recursion_depth());
    }
    const std::size_t target = l.convert_to<std::size_t>();
    while (cache_.size() <= target) {
        ctx.tick();
        BigInt next = step_(cache_.back(), ctx);
        if (next <= cache_.back()) {
            throw DomainError("index sequence must be strictly increasing");
        }
        cache_.push_back(std::move(next));
    }
    return cache_[target];
}

IndexSequencePtr make_index_sequence(IndexSequence::Step step) {
    return std::make_shared<IndexSequence>(std::move(step));
}

}  // namespace diffbound
