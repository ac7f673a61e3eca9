// Command-line front end: function evaluation, exact polynomial generation,
// certified zero tables, N-extremal measures, moment tables, and the
// verification suites.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmoment/serialize.hpp"
#include "qmoment/verify.hpp"

using namespace qmoment;

namespace {

struct RunConfig {
    std::string q = "0.5";
    long bits = 256;
    std::string tol;  // empty = default 2^-200
    long max_terms = 10000;
    std::string format = "json";
    std::uint64_t seed = 20240901;
    long threads = 1;

    QContext context() const {
        Rat tol_r = tol.empty() ? QContext::default_rel_tol() : parse_decimal_rational(tol);
        return QContext(parse_decimal_rational(q), bits, tol_r, max_terms);
    }
    int digits() const { return output_digits(bits); }
};

Complex parse_complex(const std::string& s) {
    std::string t = s;
    if (t.empty()) throw DomainError("empty complex literal");
    if (t.back() == 'i' || t.back() == 'I') {
        t.pop_back();
        // split re and im on the last +/- that is not an exponent sign
        for (size_t i = t.size(); i-- > 1;) {
            if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
                std::string re = t.substr(0, i);
                std::string im = t.substr(i);
                if (im == "+" || im == "-") im += "1";
                return Complex(make_real(parse_decimal_rational(re), 256),
                               make_real(parse_decimal_rational(im), 256));
            }
        }
        if (t.empty() || t == "+" || t == "-") t += "1";
        return Complex(Real(0), make_real(parse_decimal_rational(t), 256));
    }
    return Complex(make_real(parse_decimal_rational(t), 256));
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run_eval(const RunConfig& cfg, const std::string& fn, const std::vector<std::string>& args,
             const std::string& upper, const std::string& lower) {
    QContext ctx = cfg.context();
    int digits = cfg.digits();
    auto need = [&](size_t n) {
        if (args.size() != n)
            throw DomainError("eval " + fn + " expects " + std::to_string(n) + " argument(s)");
    };
    Json out;
    if (fn == "Eq") {
        need(1);
        out = to_json(eval_E(parse_complex(args[0]), ctx), digits);
    } else if (fn == "EqAlpha") {
        need(2);
        out = to_json(eval_Eq_alpha(make_real(parse_decimal_rational(args[0]), cfg.bits),
                                    parse_complex(args[1]), ctx),
                      digits);
    } else if (fn == "Sq") {
        need(1);
        out = to_json(eval_Sq(parse_complex(args[0]), ctx), digits);
    } else if (fn == "Cq") {
        need(1);
        out = to_json(eval_Cq(parse_complex(args[0]), ctx), digits);
    } else if (fn == "Shq") {
        need(1);
        out = to_json(eval_Shq(parse_complex(args[0]), ctx), digits);
    } else if (fn == "Chq") {
        need(1);
        out = to_json(eval_Chq(parse_complex(args[0]), ctx), digits);
    } else if (fn == "Aq") {
        need(1);
        out = to_json(eval_Aq(parse_complex(args[0]), ctx), digits);
    } else if (fn == "kernel") {
        need(2);
        out = to_json(kernel(parse_complex(args[0]), parse_complex(args[1]), ctx), digits);
    } else if (fn == "kernel_diag") {
        need(1);
        out = to_json(kernel_diag(parse_complex(args[0]).re, ctx), digits);
    } else if (fn == "f_u") {
        need(2);
        out = to_json(f_u(parse_complex(args[0]).re, parse_complex(args[1]).re, ctx), digits);
    } else if (fn == "ABCD") {
        need(1);
        NevanlinnaQuad f = eval_ABCD(parse_complex(args[0]), ctx);
        out = Json{{"A", to_json(f.A, digits)},
                   {"B", to_json(f.B, digits)},
                   {"C", to_json(f.C, digits)},
                   {"D", to_json(f.D, digits)}};
    } else if (fn == "ac_density") {
        need(3);
        ACMeasureSpec spec;
        spec.beta = make_real(parse_decimal_rational(args[1]), cfg.bits);
        spec.gamma = make_real(parse_decimal_rational(args[2]), cfg.bits);
        out = to_json(ac_density(parse_complex(args[0]).re, spec, ctx), digits);
    } else if (fn == "phi_rs") {
        // general r-phi-s in base q: upper/lower as comma-separated lists
        HypergeometricSpec spec;
        need(1);
        auto split = [](const std::string& s) {
            std::vector<std::string> parts;
            std::string cur;
            for (char c : s) {
                if (c == ',') {
                    parts.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            if (!cur.empty()) parts.push_back(cur);
            return parts;
        };
        for (const auto& p : split(upper)) spec.upper.emplace_back(parse_complex(p), 0);
        for (const auto& p : split(lower)) spec.lower.emplace_back(parse_complex(p), 0);
        spec.argument = QParam(parse_complex(args[0]), 0);
        out = to_json(eval_phi(spec, ctx), digits);
    } else {
        throw DomainError("eval: unknown function '" + fn + "'");
    }
    emit(out);
    return 0;
}

int run_poly(const RunConfig& cfg, const std::string& family, long n, bool exact,
             const std::string& at) {
    QContext ctx = cfg.context();
    XPolyExact p;
    if (family == "phi")
        p = fib_poly(n, FibBase::q);
    else if (family == "phi_inv")
        p = fib_poly(n, FibBase::q_inverse);
    else if (family == "T")
        p = T_poly(n, FibBase::q);
    else if (family == "T_inv")
        p = T_poly(n, FibBase::q_inverse);
    else if (family == "P")
        p = P_poly(n);
    else if (family == "Q")
        p = Q_poly(n);
    else
        throw DomainError("poly: unknown family '" + family + "'");

    if (!at.empty()) {
        SeriesValue v = p.eval_sv(parse_complex(at), ctx);
        emit(Json{{"family", family}, {"n", n}, {"at", at}, {"value", to_json(v, cfg.digits())}});
        return 0;
    }
    (void)exact;
    Json j = to_json(p);
    j["family"] = family;
    j["n"] = n;
    j["pretty"] = p.to_string();
    emit(j);
    return 0;
}

EntireFunctionId parse_function(const std::string& name, const RunConfig& cfg,
                                const std::optional<std::string>& u,
                                const std::optional<std::string>& t, bool t_inf) {
    if (name == "Sq") return EntireFunctionId::simple(EntireFunctionId::Tag::Sq);
    if (name == "Cq") return EntireFunctionId::simple(EntireFunctionId::Tag::Cq);
    if (name == "Aq") return EntireFunctionId::simple(EntireFunctionId::Tag::Aq);
    if (name == "f_u") {
        if (!u) throw DomainError("zeros f_u requires --u");
        return EntireFunctionId::fu(make_real(parse_decimal_rational(*u), cfg.bits));
    }
    if (name == "bt") {
        if (t_inf) return EntireFunctionId::bt_infinity();
        if (!t) throw DomainError("zeros bt requires --t or --t-inf");
        return EntireFunctionId::bt_minus_d(make_real(parse_decimal_rational(*t), cfg.bits));
    }
    throw DomainError("zeros: unknown function '" + name + "' (use Sq, Cq, Aq, f_u, bt)");
}

int run_verify(const RunConfig& cfg, const std::string& suite,
               const std::optional<std::string>& u_opt, long n_max, long count) {
    QContext ctx = cfg.context();
    CheckList checks;
    bool had_error = false;
    auto run_suite = [&](const std::string& name) {
        try {
            if (name == "series") {
                auto c = verify_series(ctx, cfg.seed);
                checks.insert(checks.end(), c.begin(), c.end());
            } else if (name == "functions") {
                auto c = verify_functions(ctx, cfg.seed);
                checks.insert(checks.end(), c.begin(), c.end());
            } else if (name == "polynomials") {
                auto c = verify_polynomials(ctx, cfg.seed);
                checks.insert(checks.end(), c.begin(), c.end());
            } else if (name == "cassini") {
                auto c = verify_cassini(ctx);
                checks.insert(checks.end(), c.begin(), c.end());
            } else if (name == "nevanlinna") {
                auto c = verify_nevanlinna(ctx, cfg.seed);
                checks.insert(checks.end(), c.begin(), c.end());
            } else if (name == "orthogonality") {
                std::optional<MeasureParam> param;
                if (u_opt)
                    param = MeasureParam::from_u(make_real(parse_decimal_rational(*u_opt),
                                                           cfg.bits));
                auto c = verify_orthogonality_suite(ctx, param, n_max, count,
                                                    Real(1) / Real(10000000000LL));
                checks.insert(checks.end(), c.begin(), c.end());
            } else if (name == "moments") {
                auto c = verify_moments_suite(ctx, 12);
                checks.insert(checks.end(), c.begin(), c.end());
            } else if (name == "aq") {
                auto c = verify_aq(ctx, 5, 30);
                checks.insert(checks.end(), c.begin(), c.end());
            } else {
                throw DomainError("verify: unknown suite '" + name + "'");
            }
        } catch (const QError& e) {
            // partial reports still emitted
            CheckResult c;
            c.name = name + ".suite_error";
            c.residual = Real(1);
            c.tolerance = Real(0);
            c.pass = false;
            c.note = e.what();
            checks.push_back(c);
            had_error = true;
        }
    };
    if (suite == "all") {
        for (const char* s : {"series", "functions", "polynomials", "cassini", "nevanlinna",
                              "orthogonality", "moments", "aq"})
            run_suite(s);
    } else {
        run_suite(suite);
    }

    bool all_pass = true;
    std::cout << "# q = " << cfg.q << ", bits = " << cfg.bits << ", seed = " << cfg.seed << "\n";
    for (const auto& c : checks) {
        all_pass = all_pass && c.pass;
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                  << "  residual=" << decimal_string(c.residual, 4)
                  << "  tol=" << decimal_string(c.tolerance, 4);
        if (!c.note.empty()) std::cout << "  (" << c.note << ")";
        std::cout << "\n";
    }
    if (had_error) return 4;
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-special functions, q^{-1}-Fibonacci polynomials, and N-extremal measures"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    RunConfig cfg;
    app.add_option("--q", cfg.q, "base q in (0,1), decimal or fraction");
    app.add_option("--bits", cfg.bits, "working precision in bits (>= 53)");
    app.add_option("--tol", cfg.tol, "series relative tolerance (default 2^-200)");
    app.add_option("--max-terms", cfg.max_terms, "series term cap");
    app.add_option("--format", cfg.format, "json or csv");
    app.add_option("--seed", cfg.seed, "seed for randomized verification grids");
    app.add_option("--threads", cfg.threads, "worker threads (QMOMENT_THREADS overrides)");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a named function");
    std::string eval_fn;
    std::vector<std::string> eval_args;
    std::string phi_upper, phi_lower;
    eval_cmd->add_option("function", eval_fn,
                         "Eq|EqAlpha|Sq|Cq|Shq|Chq|Aq|kernel|kernel_diag|f_u|ABCD|ac_density|phi_rs")
        ->required();
    eval_cmd->add_option("args", eval_args, "numeric arguments (complex literals like 1+2i)");
    eval_cmd->add_option("--upper", phi_upper, "phi_rs upper parameters, comma separated");
    eval_cmd->add_option("--lower", phi_lower, "phi_rs lower parameters, comma separated");

    // poly
    auto* poly_cmd = app.add_subcommand("poly", "exact polynomial families");
    std::string poly_family, poly_at;
    long poly_n = 0;
    bool poly_exact = false;
    poly_cmd->add_option("family", poly_family, "phi|phi_inv|T|T_inv|P|Q")->required();
    poly_cmd->add_option("n", poly_n, "index")->required();
    poly_cmd->add_flag("--exact", poly_exact, "emit exact coefficients (default)");
    poly_cmd->add_option("--at", poly_at, "evaluate numerically at this point");

    // zeros
    auto* zeros_cmd = app.add_subcommand("zeros", "certified zero tables");
    std::string zeros_fn;
    long zeros_count = 5;
    std::optional<std::string> opt_u, opt_t;
    bool opt_t_inf = false;
    std::string z_u, z_t;
    zeros_cmd->add_option("function", zeros_fn, "Sq|Cq|Aq|f_u|bt")->required();
    zeros_cmd->add_option("count", zeros_count, "number of zeros")->required();
    auto* zu = zeros_cmd->add_option("--u", z_u, "parameter u for f_u");
    auto* zt = zeros_cmd->add_option("--t", z_t, "parameter t for bt");
    zeros_cmd->add_flag("--t-inf", opt_t_inf, "t = infinity (function B)");

    // measure
    auto* measure_cmd = app.add_subcommand("measure", "N-extremal / AC measures");
    std::string m_u, m_t, m_beta, m_gamma;
    bool m_t_inf = false, m_sine = false, m_cosine = false;
    long m_count = 40;
    measure_cmd->add_option("--u", m_u, "N-extremal parameter u in [0, s_1(q))");
    measure_cmd->add_option("--t", m_t, "N-extremal parameter t");
    measure_cmd->add_flag("--t-inf", m_t_inf, "t = infinity (cosine case)");
    measure_cmd->add_flag("--sine", m_sine, "sine measure (t = 0)");
    measure_cmd->add_flag("--cosine", m_cosine, "cosine measure (t = infinity)");
    measure_cmd->add_option("--beta", m_beta, "AC measure beta");
    measure_cmd->add_option("--gamma", m_gamma, "AC measure gamma > 0");
    measure_cmd->add_option("--count", m_count, "support points per sign side");

    // kernel
    auto* kernel_cmd = app.add_subcommand("kernel", "reproducing kernel K(u,v)");
    std::string k_u, k_v;
    kernel_cmd->add_option("u", k_u)->required();
    kernel_cmd->add_option("v", k_v)->required();

    // moments
    auto* moments_cmd = app.add_subcommand("moments", "moment tables and the Jacobi oracle");
    std::string mo_u, mo_t, mo_beta, mo_gamma;
    bool mo_sine = false, mo_cosine = false, mo_oracle = false, mo_t_inf = false;
    long mo_kmax = 12, mo_count = 40;
    moments_cmd->add_option("--u", mo_u);
    moments_cmd->add_option("--t", mo_t);
    moments_cmd->add_flag("--t-inf", mo_t_inf);
    moments_cmd->add_flag("--sine", mo_sine);
    moments_cmd->add_flag("--cosine", mo_cosine);
    moments_cmd->add_option("--beta", mo_beta);
    moments_cmd->add_option("--gamma", mo_gamma);
    moments_cmd->add_flag("--oracle", mo_oracle, "exact Jacobi-matrix moments");
    moments_cmd->add_option("--kmax", mo_kmax, "highest moment order");
    moments_cmd->add_option("--count", mo_count, "support points per sign side");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "identity verification suites");
    std::string v_suite, v_u;
    long v_nmax = 8, v_count = 40;
    verify_cmd
        ->add_option("suite", v_suite,
                     "series|functions|polynomials|cassini|nevanlinna|orthogonality|moments|aq|all")
        ->required();
    verify_cmd->add_option("--u", v_u, "orthogonality suite parameter u");
    verify_cmd->add_option("--nmax", v_nmax, "orthogonality suite max polynomial degree");
    verify_cmd->add_option("--count", v_count, "orthogonality suite support points per side");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (const char* env = std::getenv("QMOMENT_THREADS")) cfg.threads = std::atol(env);

    try {
        if (eval_cmd->parsed()) return run_eval(cfg, eval_fn, eval_args, phi_upper, phi_lower);
        if (poly_cmd->parsed()) return run_poly(cfg, poly_family, poly_n, poly_exact, poly_at);
        if (zeros_cmd->parsed()) {
            if (zu->count()) opt_u = z_u;
            if (zt->count()) opt_t = z_t;
            QContext ctx = cfg.context();
            EntireFunctionId f = parse_function(zeros_fn, cfg, opt_u, opt_t, opt_t_inf);
            ZeroTable table = find_zeros(f, zeros_count, ctx);
            if (cfg.format == "csv")
                std::cout << to_csv(table, cfg.digits());
            else
                emit(to_json(table, cfg.digits()));
            return 0;
        }
        if (measure_cmd->parsed()) {
            QContext ctx = cfg.context();
            if (!m_beta.empty() || !m_gamma.empty()) {
                ACMeasureSpec spec;
                if (!m_beta.empty()) spec.beta = make_real(parse_decimal_rational(m_beta), cfg.bits);
                if (!m_gamma.empty())
                    spec.gamma = make_real(parse_decimal_rational(m_gamma), cfg.bits);
                std::vector<Real> mm = moments(spec, 2, ctx);
                Json samples = Json::array();
                for (int i = -8; i <= 8; ++i) {
                    Real x = Real(i) / 2;
                    samples.push_back(Json::array(
                        {decimal_string(x, 6),
                         decimal_string(ac_density(x, spec, ctx).real_value(), cfg.digits())}));
                }
                emit(Json{{"q", cfg.q},
                          {"param",
                           Json{{"beta", decimal_string(spec.beta, 8)},
                                {"gamma", decimal_string(spec.gamma, 8)}}},
                          {"type", "absolutely_continuous"},
                          {"normalization", decimal_string(mm[0], cfg.digits())},
                          {"density_samples", samples}});
                return 0;
            }
            DiscreteMeasure mu;
            if (m_sine)
                mu = sine_measure(m_count, ctx);
            else if (m_cosine || m_t_inf)
                mu = m_cosine ? cosine_measure(m_count, ctx)
                              : build_measure(MeasureParam::t_infinity(), m_count, ctx);
            else if (!m_t.empty())
                mu = build_measure(
                    MeasureParam::from_t(make_real(parse_decimal_rational(m_t), cfg.bits)),
                    m_count, ctx);
            else if (!m_u.empty())
                mu = build_measure(
                    MeasureParam::from_u(make_real(parse_decimal_rational(m_u), cfg.bits)),
                    m_count, ctx);
            else
                throw DomainError("measure: choose --u, --t, --t-inf, --sine, --cosine or "
                                  "--beta/--gamma");
            if (cfg.format == "csv")
                std::cout << to_csv(mu, cfg.digits());
            else
                emit(to_json(mu, cfg.digits()));
            return 0;
        }
        if (kernel_cmd->parsed()) {
            QContext ctx = cfg.context();
            emit(to_json(kernel(parse_complex(k_u), parse_complex(k_v), ctx), cfg.digits()));
            return 0;
        }
        if (moments_cmd->parsed()) {
            QContext ctx = cfg.context();
            Json rows = Json::array();
            if (mo_oracle) {
                JacobiOperator op{mo_kmax / 2 + 2};
                auto exact = jacobi_moments_exact(op, mo_kmax);
                Workspace ws = ctx.base_workspace();
                for (long k = 0; k <= mo_kmax; ++k)
                    rows.push_back(Json::array({k, exact[k].to_string(),
                                                decimal_string(exact[k].eval(ws), cfg.digits())}));
                emit(Json{{"q", cfg.q}, {"kind", "jacobi_oracle"}, {"moments", rows}});
                return 0;
            }
            std::vector<Real> mm;
            if (mo_sine)
                mm = moments(sine_measure(mo_count, ctx), mo_kmax, ctx);
            else if (mo_cosine || mo_t_inf)
                mm = moments(build_measure(MeasureParam::t_infinity(), mo_count, ctx), mo_kmax,
                             ctx);
            else if (!mo_t.empty())
                mm = moments(build_measure(MeasureParam::from_t(make_real(
                                               parse_decimal_rational(mo_t), cfg.bits)),
                                           mo_count, ctx),
                             mo_kmax, ctx);
            else if (!mo_u.empty())
                mm = moments(build_measure(MeasureParam::from_u(make_real(
                                               parse_decimal_rational(mo_u), cfg.bits)),
                                           mo_count, ctx),
                             mo_kmax, ctx);
            else if (!mo_beta.empty() || !mo_gamma.empty()) {
                ACMeasureSpec spec;
                if (!mo_beta.empty())
                    spec.beta = make_real(parse_decimal_rational(mo_beta), cfg.bits);
                if (!mo_gamma.empty())
                    spec.gamma = make_real(parse_decimal_rational(mo_gamma), cfg.bits);
                mm = moments(spec, mo_kmax, ctx);
            } else {
                throw DomainError("moments: choose a measure or --oracle");
            }
            for (long k = 0; k < static_cast<long>(mm.size()); ++k)
                rows.push_back(Json::array({k, decimal_string(mm[k], cfg.digits())}));
            emit(Json{{"q", cfg.q}, {"moments", rows}});
            return 0;
        }
        if (verify_cmd->parsed()) {
            std::optional<std::string> u;
            if (!v_u.empty()) u = v_u;
            return run_verify(cfg, v_suite, u, v_nmax, v_count);
        }
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const QError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
