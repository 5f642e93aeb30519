#include "diffbound/serialize.hpp"

namespace diffbound {

namespace {

nlohmann::json xi_to_json(const MultiIndex& xi) {
    nlohmann::json arr = nlohmann::json::array();
    for (int k = 0; k < xi.arity(); ++k) arr.push_back(xi[k]);
    return arr;
}

const char* op_name(BoundExpr::Op op) {
    switch (op) {
        case BoundExpr::Op::Int: return "int";
        case BoundExpr::Op::Binom: return "binom";
        case BoundExpr::Op::Add: return "add";
        case BoundExpr::Op::Mul: return "mul";
        case BoundExpr::Op::Pow: return "pow";
        case BoundExpr::Op::Quot: return "quot";
    }
    return "?";
}

}  // namespace

nlohmann::json to_json(const BoundExpr& e) {
    nlohmann::json j;
    j["op"] = op_name(e.op());
    if (e.op() == BoundExpr::Op::Int) {
        j["value"] = e.value().str();
    } else {
        nlohmann::json args = nlohmann::json::array();
        for (const auto& a : e.args()) args.push_back(to_json(a));
        j["args"] = std::move(args);
    }
    return j;
}

BoundExpr bound_expr_from_json(const nlohmann::json& j) {
    const std::string op = j.at("op").get<std::string>();
    if (op == "int") {
        return BoundExpr::integer(parse_bigint(j.at("value").get<std::string>()));
    }
    std::vector<BoundExpr> args;
    for (const auto& a : j.at("args")) args.push_back(bound_expr_from_json(a));
    if (op == "add") return BoundExpr::sum(std::move(args));
    if (op == "mul") return BoundExpr::product(std::move(args));
    if (args.size() != 2) throw DomainError("expression node '" + op + "' needs two arguments");
    if (op == "pow") return BoundExpr::pow(args[0], args[1]);
    if (op == "quot") return BoundExpr::quotient(args[0], args[1]);
    if (op == "binom") return BoundExpr::binom(args[0], args[1]);
    throw DomainError("unknown expression op '" + op + "'");
}

nlohmann::json to_json(const Magnitude& m) {
    return nlohmann::json{{"log_height", m.height}, {"log_value", m.value}};
}

nlohmann::json to_json(const EvalResult& r) {
    if (std::holds_alternative<BigInt>(r)) {
        return nlohmann::json(std::get<BigInt>(r).str());
    }
    return to_json(std::get<Magnitude>(r));
}

nlohmann::json to_json(const ProlongationOutput& out) {
    nlohmann::json j;
    j["ell"] = out.ell;
    j["m"] = out.m;
    j["n"] = out.n;
    j["coords"] = out.coordinate_names();
    nlohmann::json eqs = nlohmann::json::array();
    for (const auto& eq : out.equations) {
        eqs.push_back(nlohmann::json{{"generator", eq.generator},
                                     {"xi", xi_to_json(eq.xi)},
                                     {"poly", eq.poly.to_string()}});
    }
    j["equations"] = std::move(eqs);
    return j;
}

nlohmann::json to_json(const AntichainSet& s) {
    nlohmann::json elems = nlohmann::json::array();
    for (const auto& e : s.elements) {
        elems.push_back(nlohmann::json{{"xi", xi_to_json(e.xi)}, {"i", e.i}});
    }
    return nlohmann::json{{"m", s.m}, {"n", s.n}, {"elements", std::move(elems)}};
}

nlohmann::json to_json(const ChainSearchReport& r) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& s : r.witness) w.push_back(to_json(s));
    return nlohmann::json{{"max_strict_steps", r.max_strict_steps},
                          {"witness", std::move(w)},
                          {"nodes_explored", r.nodes_explored},
                          {"exhaustive", r.exhaustive}};
}

nlohmann::json to_json(const Case1Report& r) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& xi : r.witness) w.push_back(xi_to_json(xi));
    return nlohmann::json{{"max_size", r.max_size},
                          {"bound", r.bound},
                          {"bound_holds", r.bound_holds},
                          {"witness", std::move(w)},
                          {"nodes_explored", r.nodes_explored}};
}

nlohmann::json to_json(const ProlongPointsReport& r) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& viol : r.violations) {
        v.push_back(nlohmann::json{{"generator", viol.generator},
                                   {"xi", xi_to_json(viol.xi)},
                                   {"point", viol.point_index}});
    }
    return nlohmann::json{{"pass", r.pass},
                          {"equations_checked", r.equations_checked},
                          {"points_checked", r.points_checked},
                          {"violations", std::move(v)}};
}

nlohmann::json to_json(const TSoundnessReport& r) {
    return nlohmann::json{{"t", r.t.str()}, {"pass", r.pass}, {"chain", to_json(r.chain)}};
}

}  // namespace diffbound
