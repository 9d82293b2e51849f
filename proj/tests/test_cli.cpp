#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ciani/jsonio.hpp"
#include "ciani/parse.hpp"
#include "ciani/theta.hpp"

using namespace ciani;

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "ciani_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

// Launch the installed binary through /bin/sh; stdout is captured through the
// pipe, stderr through a scratch file, and the exit status through pclose.
RunResult run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    fs::path errfile =
        work_dir() / ("stderr_" + std::to_string(counter++) + ".txt");
    std::string cmd = env + (env.empty() ? "" : " ") + CIANI_BIN + " " + args +
                      " 2>" + errfile.string();
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream es(errfile);
    std::stringstream ss;
    ss << es.rdbuf();
    r.err = ss.str();
    return r;
}

std::string write_file(const std::string& name, const std::string& text) {
    fs::path p = work_dir() / name;
    std::ofstream out(p);
    out << text;
    return p.string();
}

const char* kIdentityMatrix = R"({"a": ["1","1","1"], "b": ["0","0","0"]})";
const char* kTwistMatrix = R"({"a": ["1","1","1"], "b": ["2","2","2"]})";
const char* kBadMatrix = R"({"a": ["1","0","1"], "b": ["0","0","0"]})";
const char* kDiagTau =
    R"({"g": 3,
        "re": [["0","0","0"],["0","0","0"],["0","0","0"]],
        "im": [["1","0","0"],["0","1.1","0"],["0","0","1.3"]],
        "prec": 128})";

std::string error_code(const RunResult& r) {
    return Json::parse(r.err).at("error").at("code").get<std::string>();
}

}  // namespace

TEST_CASE("form and matrix JSON round trips") {
    TernaryForm f = parse_form("x^4 + y^4 + z^4 + 2*x^2*y^2 - 1/3*y^2*z^2");
    TernaryForm back = form_of_json(json_of_form(f));
    CHECK(back.render() == f.render());

    CianiMatrix m;
    m.a = {Rat(2), Rat(3), Rat(2, 3)};
    m.b = {Rat(1), Rat(-1, 2), Rat(0)};
    CianiMatrix mb = matrix_of_json(json_of_matrix(m));
    CHECK(mb.a == m.a);
    CHECK(mb.b == m.b);

    IMat j = j_matrix(3);
    CHECK(imat_of_json(json_of_imat(j)) == j);

    CHECK_THROWS_AS(matrix_of_json(Json::parse(R"({"a": ["1","1"]})")),
                    UsageError);
    CHECK_THROWS_AS(matrix_of_json(Json::parse(
                        R"({"a": ["1","1","1/0"], "b": ["0","0","0"]})")),
                    DomainError);
}

TEST_CASE("tau JSON round trip preserves the entries") {
    mpfr_prec_t p = 128;
    CMat t(3, 3, p);
    t.at(0, 0) = Complex(Real::from_string("0.125", p),
                         Real::from_string("1.0625", p));
    t.at(1, 1) = Complex(Real(0L, p), Real::from_string("1.1875", p));
    t.at(2, 2) = Complex(Real::from_string("-0.25", p),
                         Real::from_string("1.3125", p));
    t.at(0, 1) = Complex(Real::from_string("0.0625", p),
                         Real::from_string("0.1875", p));
    t.at(1, 0) = t.at(0, 1);
    RiemannMatrix tau(std::move(t), p);

    RiemannMatrix back = tau_of_json(json_of_tau(tau));
    CHECK(back.g == 3);
    CHECK(back.prec == p);
    Real tol = Real::pow2(-120, p);
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
            CHECK(abs(back.tau.at(i, k) - tau.tau.at(i, k)) < tol);
        }
    }
}

TEST_CASE("complex literals cover the sign and bare-i corners") {
    mpfr_prec_t p = 96;
    auto is_close = [&](const Complex& z, double re, double im) {
        return std::abs(z.re.to_double() - re) < 1e-12 &&
               std::abs(z.im.to_double() - im) < 1e-12;
    };
    CHECK(is_close(complex_of_literal("1.5", p), 1.5, 0));
    CHECK(is_close(complex_of_literal("0.8i", p), 0, 0.8));
    CHECK(is_close(complex_of_literal("-0.25+1.3i", p), -0.25, 1.3));
    CHECK(is_close(complex_of_literal("2-i", p), 2, -1));
    CHECK(is_close(complex_of_literal("i", p), 0, 1));
    CHECK_THROWS_AS(complex_of_literal("", p), ParseError);
    CHECK_THROWS_AS(complex_of_literal("1+2", p), ParseError);
    CHECK_THROWS_AS(complex_of_literal("3i+4i", p), ParseError);

    auto triple = tau_triple_of_literal("0.8i, 1.1i, 1.3i", p);
    CHECK(triple[0].g == 1);
    CHECK(std::abs(triple[2].tau.at(0, 0).im.to_double() - 1.3) < 1e-12);
    CHECK_THROWS_AS(tau_triple_of_literal("0.8i, 1.1i", p), UsageError);
    // Non-positive imaginary part fails the Riemann matrix validation.
    CHECK_THROWS_AS(tau_triple_of_literal("0.8i, 1.1i, -1.3i", p),
                    DomainError);
}

TEST_CASE("disc prints the fermat discriminant") {
    RunResult text = run_cli("disc --form \"x^4+y^4+z^4\"");
    CHECK(text.status == 0);
    CHECK(text.out == "18014398509481984\n");

    RunResult json = run_cli("disc --form \"x^4+y^4+z^4\" --format json");
    CHECK(json.status == 0);
    CHECK(Json::parse(json.out).at("disc") == "18014398509481984");
}

TEST_CASE("classify emits the labelled report with fixed key order") {
    std::string id = write_file("identity.json", kIdentityMatrix);
    RunResult r = run_cli("classify --matrix " + id);
    CHECK(r.status == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("T") == "1");
    CHECK(j.at("square") == true);
    CHECK(j.at("label") == "NonHyperellipticJacobian");
    CHECK(j.at("twist_d").is_null());
    CHECK(r.out.find("\"T\"") < r.out.find("\"square\""));
    CHECK(r.out.find("\"square\"") < r.out.find("\"label\""));
    CHECK(r.out.find("\"label\"") < r.out.find("\"twist_d\""));

    std::string tw = write_file("twist.json", kTwistMatrix);
    Json jt = Json::parse(run_cli("classify --matrix " + tw).out);
    CHECK(jt.at("label") == "QuadraticTwistObstruction");
    CHECK(jt.at("T") == "5");
    CHECK(jt.at("square") == false);
    CHECK(jt.at("twist_d") == "5");
}

TEST_CASE("failures map to documented exit codes and error codes") {
    std::string bad = write_file("bad.json", kBadMatrix);
    RunResult domain = run_cli("classify --matrix " + bad);
    CHECK(domain.status == 1);
    CHECK(domain.out.empty());
    CHECK(error_code(domain) == "domain");

    RunResult inhom = run_cli("disc --form \"x^4+y^3\"");
    CHECK(inhom.status == 1);
    CHECK(error_code(inhom) == "inhomogeneous");

    RunResult parse = run_cli("disc --form \"x^4+$\"");
    CHECK(parse.status == 2);
    CHECK(error_code(parse) == "parse");

    CHECK(run_cli("frobnicate").status == 2);
    CHECK(run_cli("disc").status == 2);  // missing required --form
    std::string tau = write_file("tau.json", kDiagTau);
    RunResult low = run_cli("chi18 --tau " + tau + " --prec 32");
    CHECK(low.status == 2);
    CHECK(error_code(low) == "usage");
    CHECK(run_cli("igusa --tau " + tau + " --vanish-bits -3").status == 2);
    CHECK(run_cli("selftest --suite bogus").status == 2);

    RunResult missing = run_cli("chi18 --tau /nonexistent.json");
    CHECK(missing.status == 2);
    CHECK(error_code(missing) == "usage");

    CHECK(run_cli("--help").status == 0);
}

TEST_CASE("outputs are byte identical across repeated runs") {
    std::string tau = write_file("tau.json", kDiagTau);
    std::string id = write_file("identity.json", kIdentityMatrix);

    RunResult c1 = run_cli("classify --matrix " + id);
    RunResult c2 = run_cli("classify --matrix " + id);
    CHECK(c1.out == c2.out);

    std::string chi_cmd = "chi18 --tau " + tau + " --prec 96";
    RunResult x1 = run_cli(chi_cmd);
    RunResult x2 = run_cli(chi_cmd);
    CHECK(x1.status == 0);
    CHECK(x1.out == x2.out);

    std::string th_cmd =
        "theta null --char \"000,000\" --tau " + tau + " --prec 96";
    RunResult t1 = run_cli(th_cmd);
    RunResult t2 = run_cli(th_cmd);
    CHECK(t1.status == 0);
    CHECK(t1.out == t2.out);
    Json tj = Json::parse(t1.out);
    CHECK(tj.at("parity") == "even");
    CHECK(tj.at("value").at("prec") == 96);
}

TEST_CASE("environment variables supply defaults and flags override them") {
    std::string tau = write_file("tau.json", kDiagTau);
    RunResult env_only =
        run_cli("chi18 --tau " + tau, "CIANI_PREC=96");
    CHECK(env_only.status == 0);
    CHECK(Json::parse(env_only.out).at("chi18").at("prec") == 96);

    RunResult flag_wins =
        run_cli("chi18 --tau " + tau + " --prec 128", "CIANI_PREC=96");
    CHECK(flag_wins.status == 0);
    CHECK(Json::parse(flag_wins.out).at("chi18").at("prec") == 128);
}

TEST_CASE("igusa guard band yields the indeterminate exit code") {
    // Near-decomposable point: weak coupling keeps nine even thetas small
    // but nonzero, so a guard band at the right scale cannot call them.
    mpfr_prec_t p = 128;
    CMat t(3, 3, p);
    t.at(0, 0) = Complex(Real(0L, p), Real(1L, p));
    t.at(1, 1) = Complex(Real(0L, p), Real::from_string("1.1", p));
    t.at(2, 2) = Complex(Real(0L, p), Real::from_string("1.3", p));
    t.at(0, 1) = Complex(Real(0L, p), Real::from_string("0.1", p));
    t.at(1, 0) = t.at(0, 1);
    RiemannMatrix tau(std::move(t), p);

    long found = 0;
    for (long b = 2; b <= 12 && !found; ++b) {
        IgusaReport ig = igusa_classify(tau, p, 1, b, b / 2);
        if (ig.label == IgusaLabel::Indeterminate) found = b;
    }
    REQUIRE(found > 0);

    std::string file = write_file("ambiguous_tau.json",
                                  json_of_tau(tau).dump(2) + "\n");
    RunResult amb = run_cli("igusa --tau " + file + " --prec 128 --vanish-bits " +
                            std::to_string(found));
    CHECK(amb.status == 3);
    CHECK(Json::parse(amb.out).at("label") == "Indeterminate");

    // The default guard band resolves the same point: coupling touches only
    // the first two factors, so the block split is genuine and the six even
    // characteristics odd on both blocks vanish exactly.
    RunResult def = run_cli("igusa --tau " + file + " --prec 128");
    CHECK(def.status == 0);
    CHECK(Json::parse(def.out).at("label") == "Decomposable");
}

TEST_CASE("verify-klein corollary mode reports both algebraic legs") {
    std::string id = write_file("identity.json", kIdentityMatrix);
    RunResult r = run_cli("verify-klein --matrix " + id + " --corollary --prec 64");
    CHECK(r.status == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("mode") == "corollary");
    CHECK(j.at("rhs") == "1");
    CHECK(j.at("x_matches_d_squared") == true);
    CHECK(j.at("disc_matches") == true);
    CHECK(j.at("classification").at("label") == "NonHyperellipticJacobian");
    CHECK(j.at("quotient_classification").at("label") ==
          "NonHyperellipticJacobian");
    CHECK(j.at("residuals_18").size() == 18);
    CHECK(!j.contains("timings"));

    CHECK(run_cli("verify-klein --corollary --prec 64").status == 2);
    CHECK(run_cli("verify-klein --prec 64").status == 2);
}

TEST_CASE("isotropic and symplectic subcommands") {
    RunResult iso = run_cli("isotropic enumerate --g 2");
    CHECK(iso.status == 0);
    CHECK(Json::parse(iso.out).size() == 15);

    std::ostringstream rows;
    rows << json_of_imat(j_matrix(3)).dump();
    std::string file = write_file("jmat.json", rows.str());
    RunResult sym = run_cli("symplectic check --matrix " + file);
    CHECK(sym.status == 0);
    Json j = Json::parse(sym.out);
    CHECK(j.at("g") == 3);
    bool saw_symplectic = false;
    for (const auto& row : j.at("groups")) {
        if (row.at("name") == "symplectic") {
            saw_symplectic = true;
            CHECK(row.at("member") == true);
        }
    }
    CHECK(saw_symplectic);
}

TEST_CASE("selftest subcommand runs a named suite") {
    RunResult r = run_cli("selftest --suite counting");
    CHECK(r.status == 0);
    CHECK(r.out.find("passed") != std::string::npos);
}
