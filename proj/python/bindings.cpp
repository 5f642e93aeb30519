#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diffbound/parse.hpp"
#include "diffbound/selftest.hpp"
#include "diffbound/serialize.hpp"

namespace py = pybind11;
using namespace diffbound;

namespace {

// Hex-based conversions sidestep CPython's decimal string-length limit.
py::object to_pyint(const BigInt& v) {
    return py::module_::import("builtins").attr("int")(to_hex(v), 16);
}

BigInt to_bigint(const py::object& obj) {
    const py::object as_int = py::module_::import("builtins").attr("int")(obj);
    std::string s = py::module_::import("builtins").attr("hex")(as_int).cast<std::string>();
    bool negative = false;
    if (!s.empty() && s[0] == '-') {
        negative = true;
        s = s.substr(1);
    }
    BigInt v(s);  // "0x..." literal
    return negative ? BigInt(-v) : v;
}

py::object json_to_py(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

Budget make_budget(std::uint64_t bit_guard, std::uint64_t step_guard, double time_guard) {
    Budget b;
    b.max_value_bits = bit_guard;
    b.max_steps = step_guard;
    if (time_guard > 0) {
        b.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(time_guard * 1000));
    }
    return b;
}

py::dict bound_result(const UniformBound& b) {
    py::dict out;
    out["expr"] = json_to_py(to_json(b.expr));
    out["value"] = json_to_py(to_json(eval_bound(b.expr)));
    out["T"] = to_pyint(b.T);
    out["degenerate"] = b.degenerate;
    return out;
}

constexpr std::uint64_t kDefaultBits = std::uint64_t{1} << 28;
constexpr std::uint64_t kDefaultSteps = 1'000'000;

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Effective chain-length bounds, prolongation equations and integrability "
              "conditions for polynomial systems with several commuting derivations.";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

    m.def(
        "alpha",
        [](int mm, const py::object& ell) { return to_pyint(alpha(mm, to_bigint(ell))); },
        py::arg("m"), py::arg("ell"), "Number of derivative tags of order <= ell.");

    m.def(
        "enumerate_gamma",
        [](int mm, int ell) {
            py::list out;
            for (const auto& xi : enumerate_gamma(mm, ell)) {
                py::list entry;
                for (int k = 0; k < xi.arity(); ++k) entry.append(xi[k]);
                out.append(std::move(entry));
            }
            return out;
        },
        py::arg("m"), py::arg("ell"), "Tags of order <= ell in canonical order.");

    m.def(
        "t_bound",
        [](int mm, int n, const std::string& seq, std::uint64_t bit_guard,
           std::uint64_t step_guard, double time_guard) {
            EvalContext ctx(make_budget(bit_guard, step_guard, time_guard));
            return to_pyint(t_bound(mm, n, Sequence::parse(seq), ctx));
        },
        py::arg("m"), py::arg("n"), py::arg("seq") = "geometric:r=1",
        py::arg("bit_guard") = kDefaultBits, py::arg("step_guard") = kDefaultSteps,
        py::arg("time_guard") = 0.0,
        "Chain-length bound t(m, n, sequence); seq uses the CLI literal syntax.");

    m.def(
        "T_bound",
        [](int mm, int n, const py::object& r, std::uint64_t bit_guard,
           std::uint64_t step_guard, double time_guard) {
            EvalContext ctx(make_budget(bit_guard, step_guard, time_guard));
            return to_pyint(T_bound(mm, n, to_bigint(r), ctx));
        },
        py::arg("m"), py::arg("n"), py::arg("r") = 1, py::arg("bit_guard") = kDefaultBits,
        py::arg("step_guard") = kDefaultSteps, py::arg("time_guard") = 0.0,
        "Prolongation depth T_r^{m,n}.");

    m.def(
        "poly_str",
        [](const std::string& text, int mm) {
            ParseContext ctx;
            ctx.m = mm;
            return parse_poly(text, ctx).to_string();
        },
        py::arg("text"), py::arg("m") = 1, "Parse and reprint in canonical term order.");

    m.def(
        "prolong",
        [](const std::vector<std::string>& generators, int ell, int mm, int n,
           const std::string& method) {
            ParseContext pctx;
            pctx.m = mm;
            std::vector<DiffPolynomial> gens;
            for (const auto& g : generators) gens.push_back(parse_poly(g, pctx));
            ProlongationOutput out = method == "epsilon" ? prolong_epsilon(gens, ell, n)
                                                         : prolong_substitution(gens, ell, n);
            if (method == "both") {
                auto eps = prolong_epsilon(gens, ell, n);
                for (std::size_t i = 0; i < out.equations.size(); ++i) {
                    if (!(out.equations[i].poly == eps.equations[i].poly)) {
                        throw DomainError("prolongation methods disagree (internal bug)");
                    }
                }
            }
            return json_to_py(to_json(out));
        },
        py::arg("generators"), py::arg("ell"), py::arg("m") = 1, py::arg("n") = 0,
        py::arg("method") = "subst", "Prolongation equations of order-0 generators.");

    m.def(
        "nabla",
        [](const std::string& point_text, int mm, int ell, int n) {
            auto point = parse_point_file(point_text, mm);
            if (n == 0) {
                for (const auto& [j, p] : point) n = std::max(n, j);
            }
            std::vector<std::string> out;
            for (const auto& p : nabla_point(point, n, mm, ell)) out.push_back(p.to_string());
            return out;
        },
        py::arg("point"), py::arg("m") = 1, py::arg("ell") = 1, py::arg("n") = 0,
        "Derivative tuple of a point given as 'x<j> = <poly in t>' lines.");

    m.def(
        "integrability",
        [](const std::string& system_text) {
            auto file = parse_input_file(system_text);
            if (!file.system.has_value()) throw DomainError("no system assignments");
            std::vector<std::string> out;
            for (const auto& c : integrability_conditions(*file.system)) {
                out.push_back(c.to_string());
            }
            return out;
        },
        py::arg("system"), "Commutator conditions of 'd<k> x<j> = <poly>' lines.");

    m.def(
        "reduce_modulo",
        [](const std::string& system_text, const std::string& poly_text) {
            auto file = parse_input_file(system_text);
            if (!file.system.has_value()) throw DomainError("no system assignments");
            ParseContext pctx;
            pctx.m = file.m;
            return reduce_modulo_system(parse_poly(poly_text, pctx), *file.system).to_string();
        },
        py::arg("system"), py::arg("poly"),
        "Rewrite state derivatives through the system down to order 0.");

    m.def(
        "bound_first_order",
        [](int mm, int n, int d, const py::object& degV, const py::object& degW,
           std::uint64_t bit_guard, std::uint64_t step_guard) {
            EvalContext ctx(make_budget(bit_guard, step_guard, 0));
            return bound_result(
                uniform_bound_first_order(mm, n, d, to_bigint(degV), to_bigint(degW), ctx));
        },
        py::arg("m"), py::arg("n"), py::arg("d"), py::arg("degv"), py::arg("degw"),
        py::arg("bit_guard") = kDefaultBits, py::arg("step_guard") = kDefaultSteps);

    m.def(
        "bound_positive_dim",
        [](int mm, int n, int d, int d0, const py::object& degV, const py::object& degW,
           std::uint64_t bit_guard, std::uint64_t step_guard) {
            EvalContext ctx(make_budget(bit_guard, step_guard, 0));
            return bound_result(
                bound_positive_dim(mm, n, d, d0, to_bigint(degV), to_bigint(degW), ctx));
        },
        py::arg("m"), py::arg("n"), py::arg("d"), py::arg("d0"), py::arg("degv"),
        py::arg("degw"), py::arg("bit_guard") = kDefaultBits,
        py::arg("step_guard") = kDefaultSteps);

    m.def(
        "bound_higher_order",
        [](int mm, int n, int ell, int d, const py::object& degV, const py::object& degW,
           std::uint64_t bit_guard, std::uint64_t step_guard) {
            EvalContext ctx(make_budget(bit_guard, step_guard, 0));
            return bound_result(
                bound_higher_order(mm, n, ell, d, to_bigint(degV), to_bigint(degW), ctx));
        },
        py::arg("m"), py::arg("n"), py::arg("ell"), py::arg("d"), py::arg("degv"),
        py::arg("degw"), py::arg("bit_guard") = kDefaultBits,
        py::arg("step_guard") = kDefaultSteps);

    m.def(
        "bound_generator_degrees",
        [](int mm, int n, const py::object& D, const py::object& r, const py::object& s,
           std::uint64_t bit_guard, std::uint64_t step_guard) {
            EvalContext ctx(make_budget(bit_guard, step_guard, 0));
            return bound_result(bound_generator_degrees(mm, n, to_bigint(D), to_bigint(r),
                                                        to_bigint(s), ctx));
        },
        py::arg("m"), py::arg("n"), py::arg("max_deg"), py::arg("r"), py::arg("s"),
        py::arg("bit_guard") = kDefaultBits, py::arg("step_guard") = kDefaultSteps);

    m.def(
        "isogeny_bound",
        [](const py::object& degV, int d) {
            auto e = isogeny_bound(to_bigint(degV), d);
            py::dict out;
            out["expr"] = json_to_py(to_json(e));
            out["value"] = json_to_py(to_json(eval_bound(e)));
            return out;
        },
        py::arg("degv"), py::arg("d"));

    m.def(
        "oracle_chain",
        [](int mm, int n, const std::string& seq, int cap, std::uint64_t step_guard,
           double time_guard) {
            EvalContext ctx(make_budget(kDefaultBits, step_guard, time_guard));
            return json_to_py(to_json(max_strict_chain(mm, n, Sequence::parse(seq), cap, ctx)));
        },
        py::arg("m"), py::arg("n"), py::arg("seq") = "geometric:r=1", py::arg("cap") = 4,
        py::arg("step_guard") = kDefaultSteps, py::arg("time_guard") = 0.0);

    m.def(
        "oracle_case1",
        [](int s1, int s2, int box) {
            EvalContext ctx;
            return json_to_py(to_json(check_case1(MultiIndex({s1, s2}), box, ctx)));
        },
        py::arg("s1"), py::arg("s2"), py::arg("box") = 5);

    m.def(
        "oracle_tsound",
        [](int mm, int n, const std::string& seq, int cap, std::uint64_t step_guard,
           double time_guard) {
            EvalContext ctx(make_budget(kDefaultBits, step_guard, time_guard));
            return json_to_py(
                to_json(verify_t_soundness(mm, n, Sequence::parse(seq), cap, ctx)));
        },
        py::arg("m"), py::arg("n"), py::arg("seq") = "geometric:r=1", py::arg("cap") = 4,
        py::arg("step_guard") = kDefaultSteps, py::arg("time_guard") = 0.0);

    m.def(
        "run_acceptance",
        [](std::uint64_t seed) {
            py::list out;
            for (const auto& r : selftest::run_acceptance(seed)) {
                py::dict d;
                d["id"] = r.id;
                d["name"] = r.name;
                d["pass"] = r.pass;
                d["detail"] = r.detail;
                d["seconds"] = r.seconds;
                out.append(std::move(d));
            }
            return out;
        },
        py::arg("seed") = 20260811, "Run the acceptance suite in-process.");
}
