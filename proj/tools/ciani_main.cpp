// Command line front end: every module operation behind one binary with
// machine-readable JSON output.
//
// Exit codes: 0 success, 1 domain/numeric error, 2 usage error,
// 3 indeterminate classification. Errors print one JSON object to stderr
// with a stable machine-readable code.

#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ciani/ciani.hpp"
#include "ciani/jsonio.hpp"
#include "ciani/klein.hpp"
#include "ciani/parse.hpp"
#include "ciani/selftest.hpp"
#include "ciani/sylvester.hpp"
#include "ciani/symplectic.hpp"
#include "ciani/theta.hpp"

namespace {

using namespace ciani;

struct Common {
    long prec = 256;
    int workers = 1;
    std::string format = "json";
};

void add_common(CLI::App* sub, Common& c, bool with_workers = true) {
    sub->add_option("--prec", c.prec, "working precision in bits")
        ->envname("CIANI_PREC");
    if (with_workers) {
        sub->add_option("--workers", c.workers, "parallel theta evaluations")
            ->envname("CIANI_WORKERS");
    }
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
}

mpfr_prec_t checked_prec(const Common& c, bool theta_dependent) {
    long lo = theta_dependent ? 64 : 2;
    if (c.prec < lo || c.prec > (1L << 20)) {
        throw UsageError("--prec must lie in [" + std::to_string(lo) +
                         ", 2^20]");
    }
    if (c.workers < 1 || c.workers > 64) {
        throw UsageError("--workers must lie in [1, 64]");
    }
    return mpfr_prec_t(c.prec);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// Values come back from the modules at a padded working precision; emit
// them rounded to the precision the command asked for.
std::string dec(const Real& x, mpfr_prec_t p) {
    return x.at_precision(p).to_decimal(decimal_digits(p));
}

Complex rounded(const Complex& z, mpfr_prec_t p) {
    return Complex(z.re.at_precision(p), z.im.at_precision(p));
}

Json cx(const Complex& z, mpfr_prec_t p) {
    return Json{{"re", dec(z.re, p)}, {"im", dec(z.im, p)}};
}

long elapsed_ms(const std::chrono::steady_clock::time_point& from) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - from)
        .count();
}

Json classification_json(const Classification& cls) {
    Json j{{"T", rat_to_string(cls.t)},
           {"square", cls.square},
           {"label", label_name(cls.label)}};
    if (cls.has_twist) {
        j["twist_d"] = rat_to_string(cls.twist_d);
    } else {
        j["twist_d"] = nullptr;
    }
    return j;
}

Json igusa_json(const IgusaReport& ig, mpfr_prec_t p) {
    return Json{{"label", igusa_label_name(ig.label)},
                {"vanishing_count", ig.vanishing_count},
                {"indeterminate_count", ig.indeterminate_count},
                {"theta_min_abs", dec(ig.theta_min_abs, p)},
                {"theta_zero_cut", dec(ig.theta_zero_cut, p)},
                {"theta_nonzero_cut", dec(ig.theta_nonzero_cut, p)},
                {"chi_abs", dec(ig.chi_abs, p)},
                {"chi_scale", dec(ig.chi_scale, p)},
                {"sigma_abs", dec(ig.sigma_abs, p)},
                {"sigma_scale", dec(ig.sigma_scale, p)}};
}

// disc --form "x^4+y^4+z^4"
struct DiscCmd {
    Common common;
    std::string form_text;

    int run() const {
        checked_prec(common, false);
        Rat d = discriminant_quartic(parse_form(form_text));
        if (common.format == "text") {
            std::cout << rat_to_string(d) << "\n";
        } else {
            emit(Json{{"disc", rat_to_string(d)}});
        }
        return kExitOk;
    }
};

// classify --matrix m.json
struct ClassifyCmd {
    Common common;
    std::string matrix_file;

    int run() const {
        Classification cls = classify(matrix_of_json(load_json(matrix_file)));
        if (common.format == "text") {
            std::cout << label_name(cls.label) << " (T = " << rat_to_string(cls.t)
                      << (cls.square ? ", square" : ", not a square") << ")\n";
        } else {
            emit(classification_json(cls));
        }
        return kExitOk;
    }
};

// theta null --char "101,010" --tau tau.json
struct ThetaCmd {
    Common common;
    std::string char_text;
    std::string tau_file;

    int run() const {
        mpfr_prec_t p = checked_prec(common, true);
        ThetaChar e = parse_characteristic(char_text);
        RiemannMatrix tau = tau_of_json(load_json(tau_file), p);
        if (e.g() != tau.g) {
            throw UsageError("characteristic genus " + std::to_string(e.g()) +
                             " does not match tau genus " +
                             std::to_string(tau.g));
        }
        Complex v = theta_null(e, tau, p);
        if (common.format == "text") {
            std::cout << "theta[" << format_characteristic(e)
                      << "] = " << dec(v.re, p) << " + " << dec(v.im, p)
                      << " i\n";
        } else {
            emit(Json{{"char", format_characteristic(e)},
                      {"parity", e.is_even() ? "even" : "odd"},
                      {"value", json_of_complex(rounded(v, p))}});
        }
        return kExitOk;
    }
};

RiemannMatrix genus3_tau(const std::string& file, mpfr_prec_t p,
                         const char* cmd) {
    RiemannMatrix tau = tau_of_json(load_json(file), p);
    if (tau.g != 3) {
        throw UsageError(std::string(cmd) + " needs a genus 3 tau");
    }
    return tau;
}

// chi18 --tau tau.json / sigma140 --tau tau.json
struct FormValueCmd {
    Common common;
    std::string tau_file;
    bool sigma = false;

    int run() const {
        mpfr_prec_t p = checked_prec(common, true);
        const char* name = sigma ? "sigma140" : "chi18";
        RiemannMatrix tau = genus3_tau(tau_file, p, name);
        Complex v = sigma ? sigma140(tau, p, common.workers)
                          : chi_k(tau, p, common.workers);
        if (common.format == "text") {
            std::cout << name << " = " << dec(v.re, p) << " + " << dec(v.im, p)
                      << " i\n";
        } else {
            emit(Json{{name, json_of_complex(rounded(v, p))}});
        }
        return kExitOk;
    }
};

// igusa --tau tau.json [--vanish-bits B]
struct IgusaCmd {
    Common common;
    std::string tau_file;
    long vanish_bits = 0;

    int run() const {
        mpfr_prec_t p = checked_prec(common, true);
        if (vanish_bits < 0 || vanish_bits > common.prec) {
            throw UsageError("--vanish-bits must lie in [0, prec]");
        }
        RiemannMatrix tau = genus3_tau(tau_file, p, "igusa");
        IgusaReport ig = igusa_classify(tau, p, common.workers, vanish_bits,
                                        vanish_bits / 2);
        if (common.format == "text") {
            std::cout << igusa_label_name(ig.label) << " ("
                      << ig.vanishing_count << " vanishing, "
                      << ig.indeterminate_count << " indeterminate)\n";
        } else {
            emit(igusa_json(ig, p));
        }
        return ig.label == IgusaLabel::Indeterminate ? kExitIndeterminate
                                                     : kExitOk;
    }
};

// isotropic enumerate --g 3
struct IsotropicCmd {
    Common common;
    int g = 3;

    int run() const {
        if (g < 1 || g > 3) throw UsageError("--g must be 1, 2 or 3");
        Json list = Json::array();
        for (const IsotropicSubspace& v : enumerate_max_isotropic(g)) {
            Json rows = Json::array();
            for (unsigned row : v.basis) {
                Json bits = Json::array();
                for (int j = 0; j < 2 * g; ++j)
                    bits.push_back(int(row >> j & 1u));
                rows.push_back(std::move(bits));
            }
            list.push_back(std::move(rows));
        }
        if (common.format == "text") {
            std::cout << list.size() << " maximal isotropic subspaces\n";
        } else {
            emit(list);
        }
        return kExitOk;
    }
};

// symplectic check --matrix m.json
struct SymplecticCmd {
    Common common;
    std::string matrix_file;

    int run() const {
        IMat m = imat_of_json(load_json(matrix_file));
        int g = genus_of(m);
        auto report = membership_report(m);
        if (common.format == "text") {
            for (const auto& [name, member] : report) {
                std::cout << name << ": " << (member ? "yes" : "no") << "\n";
            }
        } else {
            Json groups = Json::array();
            for (const auto& [name, member] : report) {
                groups.push_back(Json{{"name", name}, {"member", member}});
            }
            emit(Json{{"g", g}, {"groups", std::move(groups)}});
        }
        return kExitOk;
    }
};

// verify-klein --tau "0.8i,1.1i,1.3i" | --matrix m.json [--corollary]
struct VerifyKleinCmd {
    Common common;
    std::string tau_text;
    std::string matrix_file;
    bool corollary = false;
    bool timings = false;

    int run() const {
        mpfr_prec_t p = checked_prec(common, true);
        auto start = std::chrono::steady_clock::now();
        IMat n = w_transporter();
        Json out;
        Json tm;

        std::optional<CianiMatrix> m;
        if (!matrix_file.empty()) {
            m = matrix_of_json(load_json(matrix_file));
        }
        if (corollary && !m) {
            throw UsageError("--corollary needs --matrix");
        }
        if (!m && tau_text.empty()) {
            throw UsageError("give --tau or --matrix");
        }

        UniformizedTriple u;
        if (corollary) {
            CorollaryReport rep = verify_klein_corollary(*m, p, common.workers);
            tm["pipeline_ms"] = elapsed_ms(start);
            u = rep.u;
            out["mode"] = "corollary";
            out["prec"] = long(p);
            out["matrix"] = json_of_matrix(rep.m);
            out["cofactor"] = json_of_matrix(rep.cm);
            out["lhs"] = cx(rep.lhs, p);
            out["rhs"] = rat_to_string(rep.rhs);
            out["residual_main"] = dec(rep.residual, p);
            out["x_matches_d_squared"] = rep.x_matches_d_squared;
            out["disc_matches"] = rep.disc_matches;
            out["classification"] = classification_json(rep.cls);
        } else if (m) {
            u = uniformize_matrix(*m, p);
            Complex half_pi(Real::pi(p) / 2L, Real(0L, p));
            Complex lhs = pow_si(half_pi, 54) *
                          chi_period(omega_prime(block_omega(u), n), 18, p,
                                     common.workers);
            tm["pipeline_ms"] = elapsed_ms(start);
            Rat rhs = x_invariant(*m);
            Real rhs_r(rhs, p);
            Real floor = max(Real(1L, p), abs(rhs_r)) * Real::pow2(-long(p), p);
            Real residual =
                rel_distance(lhs, Complex(rhs_r, Real(0L, p)), floor);
            out["mode"] = "matrix";
            out["prec"] = long(p);
            out["matrix"] = json_of_matrix(*m);
            out["lhs"] = cx(lhs, p);
            out["rhs"] = rat_to_string(rhs);
            out["residual_main"] = dec(residual, p);
            out["classification"] = classification_json(classify(*m));
        } else {
            auto taus = tau_triple_of_literal(tau_text, p);
            MainIdentityReport rep =
                verify_main_identity(taus[0], taus[1], taus[2], p,
                                     common.workers);
            tm["pipeline_ms"] = elapsed_ms(start);
            u = rep.u;
            out["mode"] = "tau";
            out["prec"] = long(p);
            out["lhs"] = cx(rep.lhs, p);
            out["rhs"] = cx(rep.rhs, p);
            out["residual_main"] = dec(rep.residual, p);
            out["residual_abs"] = dec(rep.residual_abs, p);
            out["degenerate"] = rep.degenerate;
        }

        // Uniformized coefficients, for auditing the pipeline.
        Json ma = Json::array(), mb = Json::array(), mc = Json::array(),
             mt = Json::array();
        for (int i = 0; i < 3; ++i) {
            ma.push_back(cx(u.a[i], p));
            mb.push_back(cx(u.b[i], p));
            mc.push_back(cx(u.c[i], p));
            mt.push_back(cx(u.tau[i].tau.at(0, 0), p));
        }
        out["factor_tau"] = std::move(mt);
        out["m_omega"] = Json{{"a", std::move(ma)},
                              {"b", std::move(mb)},
                              {"c", std::move(mc)},
                              {"det", cx(u.det_m(), p)},
                              {"x", cx(u.x_value(), p)}};

        auto t_id = std::chrono::steady_clock::now();
        IdentityReport id = eighteen_identities(u, n, p, common.workers);
        tm["identities_ms"] = elapsed_ms(t_id);
        Json residuals = Json::array();
        for (const Real& r : id.residuals) residuals.push_back(dec(r, p));
        out["c"] = cx(id.c, p);
        out["fit_index"] = id.fit_index;
        out["c_match"] = dec(id.c_match, p);
        out["det_omega2"] = cx(id.det_omega2, p);
        out["det_omega2_prime"] = cx(id.det_omega2_prime, p);
        out["residuals_18"] = std::move(residuals);
        out["r1_residual"] = dec(id.r1_residual, p);
        out["r2_residual"] = dec(id.r2_residual, p);
        out["chi_residual"] = dec(id.chi_residual, p);

        auto t_ig = std::chrono::steady_clock::now();
        IgusaReport ig = igusa_classify(id.tau_prime, p, common.workers);
        tm["igusa_ms"] = elapsed_ms(t_ig);
        out["quotient_classification"] = igusa_json(ig, p);

        if (timings) {
            tm["total_ms"] = elapsed_ms(start);
            out["timings"] = std::move(tm);
        }

        if (common.format == "text") {
            std::cout << "mode: " << out["mode"].get<std::string>() << "\n"
                      << "residual_main: "
                      << out["residual_main"].get<std::string>() << "\n"
                      << "c: " << dec(id.c.re, p) << " + " << dec(id.c.im, p)
                      << " i\n"
                      << "quotient: " << igusa_label_name(ig.label) << "\n";
        } else {
            emit(out);
        }
        return ig.label == IgusaLabel::Indeterminate ? kExitIndeterminate
                                                     : kExitOk;
    }
};

// selftest --suite all
struct SelftestCmd {
    Common common;
    std::string suite = "all";
    unsigned long long seed = 0xC1A41ULL;

    int run() const {
        mpfr_prec_t p = checked_prec(common, false);
        SelftestResult r =
            run_selftest(suite, p, common.workers, seed, std::cout);
        return r.failures == 0 ? kExitOk : kExitDomain;
    }
};

void report_error(const std::string& code, const std::string& message) {
    std::cerr << Json{{"error", Json{{"code", code}, {"message", message}}}}
                     .dump()
              << "\n";
}

int dispatch(int argc, char** argv) {
    CLI::App app{
        "Ciani quartic toolkit: discriminants, Jacobian classification, "
        "theta constants, and the period uniformization pipeline"};
    app.require_subcommand(1);

    DiscCmd disc;
    auto* disc_sub = app.add_subcommand(
        "disc", "discriminant of a ternary quartic form");
    disc_sub->add_option("--form", disc.form_text, "form text, e.g. x^4+y^4+z^4")
        ->required();
    add_common(disc_sub, disc.common, false);
    disc.common.format = "text";
    disc_sub->get_option("--format")->default_str("text");

    ClassifyCmd classify_cmd;
    auto* classify_sub = app.add_subcommand(
        "classify", "Jacobian trichotomy of a symmetric matrix instance");
    classify_sub
        ->add_option("--matrix", classify_cmd.matrix_file,
                     "matrix JSON {\"a\": [...], \"b\": [...]}")
        ->required();
    add_common(classify_sub, classify_cmd.common, false);

    ThetaCmd theta_cmd;
    auto* theta_sub = app.add_subcommand("theta", "theta constants");
    theta_sub->require_subcommand(1);
    auto* theta_null_sub =
        theta_sub->add_subcommand("null", "one thetanullwert");
    theta_null_sub
        ->add_option("--char", theta_cmd.char_text, "characteristic \"101,010\"")
        ->required();
    theta_null_sub->add_option("--tau", theta_cmd.tau_file, "tau JSON file")
        ->required();
    add_common(theta_null_sub, theta_cmd.common);

    FormValueCmd chi_cmd;
    auto* chi_sub = app.add_subcommand(
        "chi18", "product of the 36 even theta constants");
    chi_sub->add_option("--tau", chi_cmd.tau_file, "tau JSON file")->required();
    add_common(chi_sub, chi_cmd.common);

    FormValueCmd sigma_cmd;
    sigma_cmd.sigma = true;
    auto* sigma_sub = app.add_subcommand(
        "sigma140", "35th elementary symmetric function of the eighth powers");
    sigma_sub->add_option("--tau", sigma_cmd.tau_file, "tau JSON file")
        ->required();
    add_common(sigma_sub, sigma_cmd.common);

    IgusaCmd igusa_cmd;
    auto* igusa_sub = app.add_subcommand(
        "igusa", "vanishing-based classification of a genus 3 period point");
    igusa_sub->add_option("--tau", igusa_cmd.tau_file, "tau JSON file")
        ->required();
    igusa_sub->add_option(
        "--vanish-bits", igusa_cmd.vanish_bits,
        "guard band override: zero below scale*2^-B, nonzero above "
        "scale*2^-(B/2)");
    add_common(igusa_sub, igusa_cmd.common);

    IsotropicCmd iso_cmd;
    auto* iso_sub = app.add_subcommand("isotropic", "isotropic subspaces");
    iso_sub->require_subcommand(1);
    auto* iso_enum_sub = iso_sub->add_subcommand(
        "enumerate", "all maximal isotropic subspaces of F_2^{2g}");
    iso_enum_sub->add_option("--g", iso_cmd.g, "genus (1, 2 or 3)");
    add_common(iso_enum_sub, iso_cmd.common, false);

    SymplecticCmd symp_cmd;
    auto* symp_sub = app.add_subcommand("symplectic", "symplectic matrices");
    symp_sub->require_subcommand(1);
    auto* symp_check_sub = symp_sub->add_subcommand(
        "check", "subgroup membership report for an integer matrix");
    symp_check_sub
        ->add_option("--matrix", symp_cmd.matrix_file,
                     "2g x 2g integer matrix JSON (array of rows)")
        ->required();
    add_common(symp_check_sub, symp_cmd.common, false);

    VerifyKleinCmd vk_cmd;
    auto* vk_sub = app.add_subcommand(
        "verify-klein",
        "period pipeline: main identity, the 18 nullwert identities, and "
        "the cofactor corollary");
    vk_sub->add_option("--tau", vk_cmd.tau_text,
                       "three diagonal points \"0.8i,1.1i,1.3i\"");
    vk_sub->add_option("--matrix", vk_cmd.matrix_file,
                       "matrix JSON; evaluates at its uniformization "
                       "(overrides --tau)");
    vk_sub->add_flag("--corollary", vk_cmd.corollary,
                     "verify the cofactor corollary of --matrix");
    vk_sub->add_flag("--timings", vk_cmd.timings,
                     "include wall-clock timings (breaks byte determinism)");
    add_common(vk_sub, vk_cmd.common);

    SelftestCmd self_cmd;
    auto* self_sub =
        app.add_subcommand("selftest", "run the built-in invariant suites");
    self_sub->add_option("--suite", self_cmd.suite,
                         "algebra, counting, theta, klein or all");
    self_sub->add_option("--seed", self_cmd.seed, "seed for randomized checks");
    add_common(self_sub, self_cmd.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints the help text, exit 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("usage", e.what());
        return kExitUsage;
    }

    if (disc_sub->parsed()) return disc.run();
    if (classify_sub->parsed()) return classify_cmd.run();
    if (theta_null_sub->parsed()) return theta_cmd.run();
    if (chi_sub->parsed()) return chi_cmd.run();
    if (sigma_sub->parsed()) return sigma_cmd.run();
    if (igusa_sub->parsed()) return igusa_cmd.run();
    if (iso_enum_sub->parsed()) return iso_cmd.run();
    if (symp_check_sub->parsed()) return symp_cmd.run();
    if (vk_sub->parsed()) return vk_cmd.run();
    if (self_sub->parsed()) return self_cmd.run();
    throw UsageError("no subcommand given");
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const UsageError& e) {
        report_error(e.code(), e.what());
        return kExitUsage;
    } catch (const ParseError& e) {
        report_error(e.code(), e.what());
        return kExitUsage;
    } catch (const Error& e) {
        report_error(e.code(), e.what());
        return kExitDomain;
    } catch (const std::exception& e) {
        report_error("internal", e.what());
        return kExitDomain;
    }
}
