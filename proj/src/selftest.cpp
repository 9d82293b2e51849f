#include "ciani/selftest.hpp"

#include <array>
#include <ostream>
#include <random>
#include <vector>

#include "ciani/ciani.hpp"
#include "ciani/klein.hpp"
#include "ciani/linalg.hpp"
#include "ciani/parse.hpp"
#include "ciani/sylvester.hpp"
#include "ciani/symplectic.hpp"
#include "ciani/theta.hpp"

namespace ciani {

namespace {

struct Checker {
    std::ostream& out;
    SelftestResult result;

    void check(const std::string& name, bool ok) {
        ++result.checks;
        if (!ok) ++result.failures;
        out << (ok ? "ok   " : "FAIL ") << name << "\n";
    }
};

CianiMatrix random_matrix(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> da(1, 5), db(-3, 3);
    CianiMatrix m;
    for (int i = 0; i < 3; ++i) {
        m.a[i] = Rat(da(rng));
        m.b[i] = Rat(db(rng));
    }
    return m;
}

RiemannMatrix random_tau(std::mt19937_64& rng, int g, mpfr_prec_t prec) {
    std::uniform_int_distribution<long> dx(-8, 8), dy(-3, 3);
    CMat t(g, g, prec);
    for (int i = 0; i < g; ++i) {
        for (int j = i; j < g; ++j) {
            Complex v(Real(Rat(dx(rng), 16), prec),
                      Real(Rat(dy(rng), 16), prec));
            if (i == j) v.im = Real(Rat(16 + dy(rng) + 8, 16), prec);
            t.at(i, j) = v;
            t.at(j, i) = v;
        }
    }
    // Diagonally dominant imaginary part, hence positive definite.
    return RiemannMatrix(t, prec);
}

void suite_algebra(Checker& ck, std::mt19937_64& rng) {
    ck.check("resultant normalization res(x^3, y^3, z^3) = 1",
             resultant3(parse_form("x^3"), parse_form("y^3"),
                        parse_form("z^3")) == Rat(1));

    Rat fermat = discriminant_quartic(parse_form("x^4 + y^4 + z^4"));
    Rat two54(Int(1) << 54);
    ck.check("fermat quartic discriminant = 2^54 by the 15x15 determinant",
             fermat == two54);
    ck.check("fermat quartic discriminant matches the closed product",
             fermat == two54 * closed_discriminant(CianiMatrix::identity()));

    {
        CianiMatrix m;
        m.a = {Rat(2), Rat(1), Rat(3)};
        m.b = {Rat(1), Rat(-1), Rat(1)};
        Mat3 g;
        g.m = {{{Rat(1), Rat(2), Rat(0)},
                {Rat(0), Rat(1), Rat(1)},
                {Rat(1), Rat(0), Rat(1)}}};  // det 3, so the factor bites
        TernaryForm q = ciani_form(m);
        Rat lhs = discriminant_quartic(substitute_linear(q, g.m));
        Rat scale(1);
        for (int i = 0; i < 36; ++i) scale *= g.det();
        ck.check("discriminant covariance under a linear substitution",
                 lhs == scale * discriminant_quartic(q));
    }

    bool dual_ok = true;
    for (int i = 0; i < 10; ++i) {
        CianiMatrix m = random_matrix(rng);
        Rat d = closed_discriminant(m);
        CianiMatrix cm = m.cof();
        dual_ok = dual_ok && x_invariant(cm) == d * d &&
                  cm.cof().to_mat3() == m.to_mat3() * m.det();
    }
    ck.check("cofactor duality on random instances", dual_ok);

    {
        CianiMatrix sq = CianiMatrix::identity();
        CianiMatrix nonsq;
        nonsq.a = {Rat(1), Rat(1), Rat(1)};
        nonsq.b = {Rat(2), Rat(2), Rat(2)};
        CianiMatrix deg;  // det 0 but all cofactors 1, so still inside S
        deg.a = {Rat(1), Rat(1), Rat(2)};
        deg.b = {Rat(1), Rat(1), Rat(0)};
        bool ok = classify(sq).label == Label::NonHyperellipticJacobian &&
                  classify(sq).t == Rat(1) &&
                  classify(nonsq).label == Label::QuadraticTwistObstruction &&
                  classify(nonsq).t == Rat(5) &&
                  classify(deg).t == Rat(0) &&
                  classify(deg).label == Label::HyperellipticJacobian;
        ck.check("trichotomy on the three worked instances", ok);
    }

    bool t0_ok = true;
    int done = 0;
    while (done < 10) {
        CianiMatrix m = random_matrix(rng);
        if (!m.in_s_cross()) continue;
        MarkedTriple t = ab_of(m);
        t0_ok = t0_ok && t0_invariant(t) == Rat(64) * t_invariant(t);
        ++done;
    }
    ck.check("marked-root invariant equals 64 T on random instances", t0_ok);
}

void suite_counting(Checker& ck) {
    ck.check("36 even characteristics in genus 3",
             even_characteristics(3).size() == 36);
    ck.check("28 odd characteristics in genus 3",
             odd_characteristics(3).size() == 28);
    ck.check("135 maximal isotropic subspaces over F_2",
             enumerate_max_isotropic(3).size() == 135);
}

void suite_theta(Checker& ck, std::mt19937_64& rng, mpfr_prec_t p) {
    Real tol_half = Real::pow2(-long(p) / 2, p);

    {
        CMat t(1, 1, p);
        t.at(0, 0) = Complex::unit_i(p);
        Complex th = theta_null(ThetaChar{{0}, {0}}, RiemannMatrix(t, p), p);
        Real closed = sqrt(sqrt(Real::pi(p))) / gamma_fn(Real(Rat(3, 4), p));
        ck.check("theta[0;0](i) matches pi^(1/4)/gamma(3/4)",
                 abs(th - Complex(closed, Real(0L, p))) <
                     Real::pow2(-long(p) + 16, p));
    }

    bool jacobi_ok = true;
    for (int i = 0; i < 3; ++i) {
        RiemannMatrix t = random_tau(rng, 1, p);
        auto quart = [&](long e1, long e2) {
            Complex v = theta_null(ThetaChar{{e1}, {e2}}, t, p);
            return v * v * v * v;
        };
        Complex lhs = quart(0, 0);
        Complex rhs = quart(1, 0) + quart(0, 1);
        jacobi_ok = jacobi_ok &&
                    rel_distance(lhs, rhs, Real::pow2(-long(p), p)) < tol_half;
    }
    ck.check("jacobi quartic identity at random points", jacobi_ok);

    {
        RiemannMatrix t = random_tau(rng, 3, p);
        ThetaEvaluator ev(t, p);
        Real scale(1L, p);
        for (const ThetaChar& e : even_characteristics(3))
            scale = max(scale, abs(ev.value(e)));
        bool odd_ok = true;
        for (const ThetaChar& e : odd_characteristics(3))
            odd_ok = odd_ok && abs(ev.value(e)) < scale * tol_half;
        ck.check("odd theta constants vanish at a random point", odd_ok);

        ck.check("degree-two duplication identity at a random point",
                 duplication_residual({0, 0, 0}, {0, 0, 0}, {1, 0, 1}, t, p) <
                     tol_half);
    }
}

void suite_klein(Checker& ck, mpfr_prec_t p, int workers) {
    Real tol_half = Real::pow2(-long(p) / 2, p);
    auto ray_point = [&](const char* y) {
        CMat t(1, 1, p);
        t.at(0, 0) = Complex(Real(0L, p), Real::from_string(y, p));
        return RiemannMatrix(t, p);
    };

    {
        UniformizedTriple u = coefficients_from_tau(
            {ray_point("0.8"), ray_point("1.1"), ray_point("1.3")}, p);
        IdentityReport rep = eighteen_identities(u, w_transporter(), p, workers);
        bool ok = !rep.degenerate && rep.c_match < tol_half &&
                  rep.chi_residual < tol_half;
        for (const Real& r : rep.residuals) ok = ok && r < tol_half;
        ck.check("eighteen nullwert identities with one fitted constant", ok);
    }

    {
        MainIdentityReport rep = verify_main_identity(
            ray_point("0.7"), ray_point("1.0"), ray_point("1.4"), p, workers);
        ck.check("main identity at an interior grid point",
                 !rep.degenerate && rep.residual < tol_half);
    }

    {
        CorollaryReport rep =
            verify_klein_corollary(CianiMatrix::identity(), p, workers);
        ck.check("corollary loop at the identity matrix",
                 rep.x_matches_d_squared && rep.disc_matches &&
                     rep.residual < tol_half);
    }
}

}  // namespace

SelftestResult run_selftest(const std::string& suite, mpfr_prec_t prec,
                            int workers, std::uint64_t seed,
                            std::ostream& out) {
    bool all = suite == "all";
    if (!all && suite != "algebra" && suite != "counting" &&
        suite != "theta" && suite != "klein") {
        throw UsageError("unknown suite '" + suite +
                         "' (expected algebra, counting, theta, klein or all)");
    }
    if ((all || suite == "theta" || suite == "klein") && prec < 64) {
        throw UsageError("theta-dependent suites need --prec >= 64");
    }

    std::mt19937_64 rng(seed);
    Checker ck{out, {}};
    if (all || suite == "algebra") suite_algebra(ck, rng);
    if (all || suite == "counting") suite_counting(ck);
    if (all || suite == "theta") suite_theta(ck, rng, prec);
    if (all || suite == "klein") suite_klein(ck, prec, workers);
    out << (ck.result.failures == 0 ? "passed " : "FAILED ")
        << (ck.result.checks - ck.result.failures) << "/" << ck.result.checks
        << " checks\n";
    return ck.result;
}

}  // namespace ciani
