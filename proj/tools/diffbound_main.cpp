// diffbound: effective chain-length bounds, prolongation equations and
// integrability conditions for systems with several commuting derivations.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "diffbound/parse.hpp"
#include "diffbound/selftest.hpp"
#include "diffbound/serialize.hpp"

using namespace diffbound;

namespace {

struct GlobalConfig {
    std::uint64_t bit_guard = Budget{}.max_value_bits;
    std::uint64_t step_guard = Budget{}.max_steps;
    std::uint64_t enum_guard = Budget{}.max_enumeration;
    double time_guard_s = 0.0;  // 0 = unlimited
    bool json = false;

    Budget budget() const {
        Budget b;
        b.max_value_bits = bit_guard;
        b.max_steps = step_guard;
        b.max_enumeration = enum_guard;
        if (time_guard_s > 0) {
            b.time_limit =
                std::chrono::milliseconds(static_cast<std::int64_t>(time_guard_s * 1000));
        }
        return b;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const nlohmann::json& j) { std::cout << j.dump() << "\n"; }

std::string big_to_text(const BigInt& v, bool hex, bool bits) {
    if (bits) return std::to_string(bit_length(v));
    if (hex) return to_hex(v);
    return v.str();
}

std::string magnitude_text(const Magnitude& m) {
    std::ostringstream ss;
    ss.precision(15);
    ss << "magnitude h=" << m.height << " v=" << m.value;
    return ss.str();
}

void print_eval_result(const GlobalConfig& cfg, const BoundExpr& expr, bool show_expr,
                       const BigInt* T, const bool* degenerate) {
    const EvalResult r = eval_bound(expr, cfg.bit_guard);
    if (cfg.json) {
        nlohmann::json j;
        j["expr"] = to_json(expr);
        j["value"] = to_json(r);
        if (T) j["T"] = T->str();
        if (degenerate) j["degenerate"] = *degenerate;
        emit(j);
        return;
    }
    if (std::holds_alternative<BigInt>(r)) {
        std::cout << std::get<BigInt>(r).str() << "\n";
    } else {
        std::cout << magnitude_text(std::get<Magnitude>(r)) << "\n";
    }
    if (show_expr) std::cout << "expr: " << expr.to_string() << "\n";
    if (degenerate && *degenerate) std::cout << "note: degenerate envelope case\n";
}

std::vector<DiffPolynomial> load_generators(const std::string& path, int m, int n) {
    auto file = parse_input_file(read_file(path), m == 0 ? std::optional<int>{} : m,
                                 n == 0 ? std::optional<int>{} : n);
    if (file.system.has_value()) {
        throw DomainError("expected 'poly <name> = ...' lines only in " + path);
    }
    if (file.named.empty()) throw DomainError("no generators in " + path);
    std::vector<DiffPolynomial> gens;
    for (auto& [name, p] : file.named) gens.push_back(p);
    return gens;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"effective bounds and prolongation toolkit for partial differential polynomials"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalConfig cfg;
    app.add_option("--bit-guard", cfg.bit_guard, "max bit length of any computed integer")
        ->envname("DIFFBOUND_BIT_GUARD");
    app.add_option("--step-guard", cfg.step_guard, "max recursion/search steps")
        ->envname("DIFFBOUND_STEP_GUARD");
    app.add_option("--enum-guard", cfg.enum_guard, "max elements materialized at once")
        ->envname("DIFFBOUND_ENUM_GUARD");
    app.add_option("--time-guard", cfg.time_guard_s, "wall-clock limit in seconds (0 = none)")
        ->envname("DIFFBOUND_TIME_GUARD");
    app.add_flag("--json", cfg.json, "emit one JSON object instead of text");

    // ---- alpha ----
    int alpha_m = 1;
    std::string alpha_ell = "0";
    auto* c_alpha = app.add_subcommand("alpha", "number of derivative tags of order <= ell");
    c_alpha->add_option("--m", alpha_m, "number of derivations")->required();
    c_alpha->add_option("--ell", alpha_ell, "order")->required();
    c_alpha->callback([&] {
        const BigInt v = alpha(alpha_m, parse_bigint(alpha_ell));
        if (cfg.json) {
            emit(nlohmann::json{{"value", v.str()}});
        } else {
            std::cout << v.str() << "\n";
        }
    });

    // ---- gamma ----
    int gamma_m = 1, gamma_ell = 0;
    auto* c_gamma = app.add_subcommand("gamma", "enumerate derivative tags of order <= ell");
    c_gamma->add_option("--m", gamma_m)->required();
    c_gamma->add_option("--ell", gamma_ell)->required();
    c_gamma->callback([&] {
        auto tags = enumerate_gamma(gamma_m, gamma_ell, cfg.enum_guard);
        if (cfg.json) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& xi : tags) {
                nlohmann::json e = nlohmann::json::array();
                for (int k = 0; k < xi.arity(); ++k) e.push_back(xi[k]);
                arr.push_back(std::move(e));
            }
            emit(nlohmann::json{{"m", gamma_m}, {"ell", gamma_ell}, {"indices", std::move(arr)}});
        } else {
            for (const auto& xi : tags) std::cout << xi.to_string() << "\n";
        }
    });

    // ---- tbound / Tbound ----
    int tb_m = 1, tb_n = 1;
    std::string tb_seq = "geometric:r=1";
    bool tb_hex = false, tb_bits = false;
    auto* c_tbound = app.add_subcommand("tbound", "chain-length bound t(m, n, sequence)");
    c_tbound->add_option("--m", tb_m)->required();
    c_tbound->add_option("--n", tb_n)->required();
    c_tbound->add_option("--seq", tb_seq, "geometric:r=<int> or explicit:[v0,...]:then=geometric");
    c_tbound->add_flag("--hex", tb_hex);
    c_tbound->add_flag("--bits", tb_bits, "print only the bit length");
    c_tbound->callback([&] {
        EvalContext ctx(cfg.budget());
        const BigInt t = t_bound(tb_m, tb_n, Sequence::parse(tb_seq), ctx);
        if (cfg.json) {
            emit(nlohmann::json{{"value", t.str()}, {"bits", bit_length(t)}});
        } else {
            std::cout << big_to_text(t, tb_hex, tb_bits) << "\n";
        }
    });

    int Tb_m = 1, Tb_n = 1;
    std::string Tb_r = "1";
    bool Tb_hex = false, Tb_bits = false;
    auto* c_Tbound = app.add_subcommand("Tbound", "prolongation depth T_r^{m,n}");
    c_Tbound->add_option("--m", Tb_m)->required();
    c_Tbound->add_option("--n", Tb_n)->required();
    c_Tbound->add_option("--r", Tb_r)->required();
    c_Tbound->add_flag("--hex", Tb_hex);
    c_Tbound->add_flag("--bits", Tb_bits, "print only the bit length");
    c_Tbound->callback([&] {
        EvalContext ctx(cfg.budget());
        const BigInt T = T_bound(Tb_m, Tb_n, parse_bigint(Tb_r), ctx);
        if (cfg.json) {
            nlohmann::json j{{"bits", bit_length(T)}};
            // the decimal string of an astronomical T is itself huge; cap it
            j["value"] = bit_length(T) <= 65536 ? nlohmann::json(T.str()) : nlohmann::json();
            if (bit_length(T) > 65536) j["hex"] = to_hex(T);
            emit(j);
        } else {
            std::cout << big_to_text(T, Tb_hex, Tb_bits) << "\n";
        }
    });

    // ---- prolong ----
    std::string pr_input, pr_method = "subst";
    int pr_ell = 1, pr_m = 0, pr_n = 0;
    auto* c_prolong = app.add_subcommand("prolong", "generate prolongation equations");
    c_prolong->add_option("--input", pr_input, "file of 'poly <name> = <expr>' lines")->required();
    c_prolong->add_option("--ell", pr_ell)->required();
    c_prolong->add_option("--m", pr_m, "number of derivations (default 1)");
    c_prolong->add_option("--n", pr_n, "number of state variables (default: deduced)");
    c_prolong->add_option("--method", pr_method)->check(CLI::IsMember({"subst", "epsilon", "both"}));
    c_prolong->callback([&] {
        auto gens = load_generators(pr_input, pr_m == 0 ? 1 : pr_m, pr_n);
        ProlongationOutput out;
        bool agree = true;
        if (pr_method == "subst") {
            out = prolong_substitution(gens, pr_ell, pr_n);
        } else if (pr_method == "epsilon") {
            out = prolong_epsilon(gens, pr_ell, pr_n, cfg.enum_guard);
        } else {
            out = prolong_substitution(gens, pr_ell, pr_n);
            auto eps = prolong_epsilon(gens, pr_ell, pr_n, cfg.enum_guard);
            for (std::size_t i = 0; i < out.equations.size() && agree; ++i) {
                agree = out.equations[i].poly == eps.equations[i].poly;
            }
            if (!agree) throw DomainError("prolongation methods disagree (internal bug)");
        }
        if (cfg.json) {
            nlohmann::json j = to_json(out);
            if (pr_method == "both") j["methods_agree"] = agree;
            emit(j);
        } else {
            for (const auto& eq : out.equations) {
                std::cout << "g" << eq.generator << " xi=" << eq.xi.to_string() << ": "
                          << eq.poly.to_string() << "\n";
            }
            if (pr_method == "both") std::cout << "methods agree\n";
        }
    });

    // ---- nabla ----
    std::string nb_input;
    int nb_ell = 1, nb_m = 1, nb_n = 0;
    auto* c_nabla = app.add_subcommand("nabla", "derivative tuple of a polynomial point");
    c_nabla->add_option("--input", nb_input, "file of 'x<j> = <poly in t>' lines")->required();
    c_nabla->add_option("--ell", nb_ell)->required();
    c_nabla->add_option("--m", nb_m, "number of derivations (default 1)");
    c_nabla->add_option("--n", nb_n, "number of state variables (default: deduced)");
    c_nabla->callback([&] {
        auto point = parse_point_file(read_file(nb_input), nb_m);
        int n = nb_n;
        if (n == 0) {
            for (const auto& [j, p] : point) n = std::max(n, j);
        }
        auto values = nabla_point(point, n, nb_m, nb_ell);
        if (cfg.json) {
            ProlongationOutput shape;  // reuse the coordinate naming convention
            shape.m = nb_m;
            shape.n = n;
            shape.ell = nb_ell;
            shape.gamma = enumerate_gamma(nb_m, nb_ell, cfg.enum_guard);
            nlohmann::json vals = nlohmann::json::array();
            for (const auto& p : values) vals.push_back(p.to_string());
            emit(nlohmann::json{{"m", nb_m},
                                {"n", n},
                                {"ell", nb_ell},
                                {"coords", shape.coordinate_names()},
                                {"values", std::move(vals)}});
        } else {
            for (const auto& p : values) std::cout << p.to_string() << "\n";
        }
    });

    // ---- integrability ----
    std::string ig_input;
    auto* c_integ = app.add_subcommand("integrability",
                                       "commutator conditions of a first-order system");
    c_integ->add_option("--input", ig_input, "file of 'd<k> x<j> = <poly>' lines")->required();
    c_integ->callback([&] {
        auto file = parse_input_file(read_file(ig_input));
        if (!file.system.has_value()) throw DomainError("no system assignments in " + ig_input);
        auto conds = integrability_conditions(*file.system);
        if (cfg.json) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& c : conds) arr.push_back(c.to_string());
            emit(nlohmann::json{{"m", file.m}, {"n", file.n}, {"conditions", std::move(arr)}});
        } else {
            for (const auto& c : conds) std::cout << c.to_string() << "\n";
        }
    });

    // ---- bound family ----
    auto* c_bound = app.add_subcommand("bound", "symbolic uniform bound formulas");
    c_bound->require_subcommand(1);
    struct BoundArgs {
        int m = 1, n = 1, d = 1, d0 = 0, ell = 1;
        std::string degv = "1", degw = "1", D = "1", r = "0", s = "0";
        bool show_expr = false;
    };
    auto ba = std::make_shared<BoundArgs>();

    auto add_common = [&](CLI::App* sub, bool with_d) {
        sub->add_option("--m", ba->m)->required();
        sub->add_option("--n", ba->n)->required();
        if (with_d) sub->add_option("--d", ba->d, "dimension of V")->required();
        sub->add_option("--degv", ba->degv, "degree of V")->required();
        sub->add_option("--degw", ba->degw, "degree of W")->required();
        sub->add_flag("--expr", ba->show_expr, "also print the symbolic expression");
    };

    auto* c_first = c_bound->add_subcommand("first-order", "solution-count bound, order 1");
    add_common(c_first, true);
    c_first->callback([&] {
        EvalContext ctx(cfg.budget());
        auto b = uniform_bound_first_order(ba->m, ba->n, ba->d, parse_bigint(ba->degv),
                                           parse_bigint(ba->degw), ctx);
        print_eval_result(cfg, b.expr, ba->show_expr, &b.T, &b.degenerate);
    });

    auto* c_posdim = c_bound->add_subcommand("positive-dim",
                                             "Zariski-closure degree with a dimension floor");
    add_common(c_posdim, true);
    c_posdim->add_option("--d0", ba->d0, "component dimension floor")->required();
    c_posdim->callback([&] {
        EvalContext ctx(cfg.budget());
        auto b = bound_positive_dim(ba->m, ba->n, ba->d, ba->d0, parse_bigint(ba->degv),
                                    parse_bigint(ba->degw), ctx);
        print_eval_result(cfg, b.expr, ba->show_expr, &b.T, &b.degenerate);
    });

    auto* c_higher = c_bound->add_subcommand("higher-order", "order-ell systems");
    add_common(c_higher, true);
    c_higher->add_option("--ell", ba->ell, "order of the system")->required();
    c_higher->callback([&] {
        EvalContext ctx(cfg.budget());
        auto b = bound_higher_order(ba->m, ba->n, ba->ell, ba->d, parse_bigint(ba->degv),
                                    parse_bigint(ba->degw), ctx);
        print_eval_result(cfg, b.expr, ba->show_expr, &b.T, &b.degenerate);
    });

    auto* c_gens = c_bound->add_subcommand("generators", "bound from generator degrees");
    c_gens->add_option("--m", ba->m)->required();
    c_gens->add_option("--n", ba->n)->required();
    c_gens->add_option("--max-deg", ba->D, "max generator degree D")->required();
    c_gens->add_option("--r", ba->r, "number of order-0 equations")->required();
    c_gens->add_option("--s", ba->s, "number of order-1 equations")->required();
    c_gens->add_flag("--expr", ba->show_expr);
    c_gens->callback([&] {
        EvalContext ctx(cfg.budget());
        auto b = bound_generator_degrees(ba->m, ba->n, parse_bigint(ba->D), parse_bigint(ba->r),
                                         parse_bigint(ba->s), ctx);
        print_eval_result(cfg, b.expr, ba->show_expr, &b.T, nullptr);
    });

    auto* c_iso = c_bound->add_subcommand("isogeny", "isogeny-class intersection bound");
    c_iso->add_option("--degv", ba->degv)->required();
    c_iso->add_option("--d", ba->d, "Zariski dimension")->required();
    c_iso->add_flag("--expr", ba->show_expr);
    c_iso->callback([&] {
        auto e = isogeny_bound(parse_bigint(ba->degv), ba->d);
        print_eval_result(cfg, e, ba->show_expr, nullptr, nullptr);
    });

    // ---- oracle family ----
    auto* c_oracle = app.add_subcommand("oracle", "exhaustive brute-force verifiers");
    c_oracle->require_subcommand(1);
    struct OracleArgs {
        int m = 1, n = 1, cap = 4, box = 5, ell = 1;
        std::string seq = "geometric:r=1", sigma = "0,0", gens;
        std::vector<std::string> points;
    };
    auto oa = std::make_shared<OracleArgs>();

    auto* c_chain = c_oracle->add_subcommand("chain", "longest strictly increasing antichain chain");
    c_chain->add_option("--m", oa->m)->required();
    c_chain->add_option("--n", oa->n)->required();
    c_chain->add_option("--seq", oa->seq);
    c_chain->add_option("--cap", oa->cap, "depth cap")->required();
    c_chain->callback([&] {
        EvalContext ctx(cfg.budget());
        auto rep = max_strict_chain(oa->m, oa->n, Sequence::parse(oa->seq), oa->cap, ctx);
        if (cfg.json) {
            emit(to_json(rep));
        } else {
            std::cout << "max_strict_steps: " << rep.max_strict_steps
                      << (rep.exhaustive ? "" : " (truncated)") << "\n";
            for (std::size_t j = 0; j < rep.witness.size(); ++j) {
                std::cout << "S_" << j << " =";
                for (const auto& e : rep.witness[j].elements) {
                    std::cout << " " << e.xi.to_string() << "@" << e.i;
                }
                std::cout << "\n";
            }
        }
    });

    auto* c_case1 = c_oracle->add_subcommand("case1", "max antichain containing sigma in a box");
    c_case1->add_option("--sigma", oa->sigma, "comma-separated pair, e.g. 1,2")->required();
    c_case1->add_option("--box", oa->box)->required();
    c_case1->callback([&] {
        const auto comma = oa->sigma.find(',');
        if (comma == std::string::npos) throw DomainError("--sigma needs two entries");
        MultiIndex sigma({std::stoi(oa->sigma.substr(0, comma)),
                          std::stoi(oa->sigma.substr(comma + 1))});
        EvalContext ctx(cfg.budget());
        auto rep = check_case1(sigma, oa->box, ctx);
        if (cfg.json) {
            emit(to_json(rep));
        } else {
            std::cout << "max_size: " << rep.max_size << " bound: " << rep.bound
                      << (rep.bound_holds ? " (holds)" : " (VIOLATED)") << "\n";
        }
    });

    auto* c_tsound = c_oracle->add_subcommand("tsound", "exhaustive soundness check of t");
    c_tsound->add_option("--m", oa->m)->required();
    c_tsound->add_option("--n", oa->n)->required();
    c_tsound->add_option("--seq", oa->seq);
    c_tsound->add_option("--cap", oa->cap)->required();
    c_tsound->callback([&] {
        EvalContext ctx(cfg.budget());
        auto rep = verify_t_soundness(oa->m, oa->n, Sequence::parse(oa->seq), oa->cap, ctx);
        if (cfg.json) {
            emit(to_json(rep));
        } else {
            std::cout << (rep.pass ? "pass" : "FAIL") << ": max_strict_steps "
                      << rep.chain.max_strict_steps << " <= t - 1 = " << BigInt(rep.t - 1).str()
                      << (rep.chain.exhaustive ? "" : " (truncated)") << "\n";
        }
    });

    auto* c_pp = c_oracle->add_subcommand("prolong-points",
                                          "prolongation equations vanish on given points");
    c_pp->add_option("--gens", oa->gens, "generator file")->required();
    c_pp->add_option("--point", oa->points, "point file (repeatable)")->required();
    c_pp->add_option("--ell", oa->ell)->required();
    c_pp->add_option("--m", oa->m, "number of derivations (default 1)");
    c_pp->callback([&] {
        auto gens = load_generators(oa->gens, oa->m, 0);
        std::vector<std::map<int, DiffPolynomial>> points;
        for (const auto& path : oa->points) {
            points.push_back(parse_point_file(read_file(path), oa->m));
        }
        auto rep = verify_prolong_on_points(gens, points, oa->ell);
        if (cfg.json) {
            emit(to_json(rep));
        } else {
            std::cout << (rep.pass ? "pass" : "FAIL") << ": " << rep.equations_checked
                      << " equations over " << rep.points_checked << " points\n";
        }
    });

    // ---- selftest ----
    std::uint64_t seed = 20260811;
    auto* c_self = app.add_subcommand("selftest", "run the acceptance suite");
    c_self->add_option("--seed", seed, "seed for the randomized criteria");
    bool selftest_failed = false;
    c_self->callback([&] {
        auto results = selftest::run_acceptance(seed);
        bool all = true;
        for (const auto& r : results) all = all && r.pass;
        // No timings here: CLI output is byte-identical for equal inputs.
        if (cfg.json) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : results) {
                arr.push_back(nlohmann::json{{"id", r.id},
                                             {"name", r.name},
                                             {"pass", r.pass},
                                             {"detail", r.detail}});
            }
            emit(nlohmann::json{{"pass", all}, {"criteria", std::move(arr)}});
        } else {
            for (const auto& r : results) {
                std::printf("[%s] criterion %d: %s%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                            r.name.c_str(), r.detail.empty() ? "" : " -- ", r.detail.c_str());
            }
        }
        selftest_failed = !all;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const BudgetError& e) {
        std::cerr << "budget error (" << BudgetError::kind_name(e.kind()) << "): " << e.what()
                  << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return selftest_failed ? 2 : 0;
}
