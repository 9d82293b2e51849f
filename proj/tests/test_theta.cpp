#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ciani/theta.hpp"

using namespace ciani;

namespace {

constexpr mpfr_prec_t kPrec = 256;

Real rs(const char* text) { return Real::from_string(text, kPrec); }

Real tol_bits(long e) { return Real::pow2(e, kPrec); }

ThetaChar tc(const char* text) { return parse_characteristic(text); }

Complex frozen(const char* re, const char* im) {
    return Complex(rs(re), rs(im));
}

// Reference point reused across the suite; generic (no vanishing thetas)
// with moderate off-diagonal coupling.
RiemannMatrix tau0() {
    CMat t(3, 3, kPrec);
    t.at(0, 0) = Complex(Real(0L, kPrec), rs("1.0"));
    t.at(1, 1) = Complex(Real(0L, kPrec), rs("1.2"));
    t.at(2, 2) = Complex(Real(0L, kPrec), rs("1.4"));
    t.at(0, 1) = Complex(rs("0.25"), rs("0.30"));
    t.at(1, 0) = t.at(0, 1);
    t.at(0, 2) = Complex(Real(0L, kPrec), rs("0.10"));
    t.at(2, 0) = t.at(0, 2);
    t.at(1, 2) = Complex(Real(0L, kPrec), rs("0.20"));
    t.at(2, 1) = t.at(1, 2);
    return RiemannMatrix(std::move(t), kPrec);
}

RiemannMatrix tau_diag(const char* t1, const char* t2, const char* t3) {
    CMat t(3, 3, kPrec);
    t.at(0, 0) = Complex(Real(0L, kPrec), rs(t1));
    t.at(1, 1) = Complex(Real(0L, kPrec), rs(t2));
    t.at(2, 2) = Complex(Real(0L, kPrec), rs(t3));
    return RiemannMatrix(std::move(t), kPrec);
}

RiemannMatrix tau_g1(const Real& re, const Real& im) {
    CMat t(1, 1, kPrec);
    t.at(0, 0) = Complex(re, im);
    return RiemannMatrix(std::move(t), kPrec);
}

Real dyadic(std::mt19937_64& rng, long span) {
    std::uniform_int_distribution<long> d(-span, span);
    return Real(d(rng), kPrec) / 16L;
}

RiemannMatrix random_tau(std::mt19937_64& rng, int g) {
    CMat t(g, g, kPrec);
    for (int i = 0; i < g; ++i) {
        for (int j = i; j < g; ++j) {
            Real re = dyadic(rng, 8);
            Real im = (i == j) ? Real(1L, kPrec) + dyadic(rng, 8)
                               : dyadic(rng, 4) / 2L;
            t.at(i, j) = Complex(re, im);
            t.at(j, i) = t.at(i, j);
        }
    }
    return RiemannMatrix(std::move(t), kPrec);
}

ThetaChar random_char(std::mt19937_64& rng, int g) {
    std::uniform_int_distribution<long> bit(0, 1);
    ThetaChar e;
    e.e1.resize(std::size_t(g));
    e.e2.resize(std::size_t(g));
    for (int i = 0; i < g; ++i) {
        e.e1[std::size_t(i)] = bit(rng);
        e.e2[std::size_t(i)] = bit(rng);
    }
    return e;
}

bool bit_equal(const Complex& a, const Complex& b) {
    return mpfr_equal_p(a.re.raw(), b.re.raw()) != 0 &&
           mpfr_equal_p(a.im.raw(), b.im.raw()) != 0;
}

}  // namespace

TEST_CASE("classical value at tau = i") {
    RiemannMatrix ti = tau_g1(Real(0L, kPrec), Real(1L, kPrec));
    Complex th = theta_null(tc("0,0"), ti, kPrec);

    Real quarter(Rat(1, 4), kPrec);
    Real reference = exp(log(Real::pi(kPrec)) * quarter) /
                     gamma_fn(Real(Rat(3, 4), kPrec));
    CHECK(abs(th.re - reference) < tol_bits(-240));
    CHECK(abs(th.im) < tol_bits(-240));

    Real pinned = rs(
        "1.0864348112133080145753161215102234570702057072452188859207903159"
        "818567322671098");
    CHECK(abs(th.re - pinned) < tol_bits(-240));
}

TEST_CASE("precision and shape guards") {
    RiemannMatrix ti = tau_g1(Real(0L, kPrec), Real(1L, kPrec));
    CHECK_THROWS_AS(theta_null(tc("0,0"), ti, 16), DomainError);
    CHECK_THROWS_AS(theta_null(tc("00,00"), ti, kPrec), DomainError);
    CHECK_THROWS_AS(chi_k(ti, 128), DomainError);
    CHECK_THROWS_AS(sigma140(ti, 128), DomainError);

    ThetaEvaluator eval(ti, kPrec);
    CHECK(eval.radius() >= 1);
    ThetaEvaluator wide(ti, kPrec, 2 * eval.radius());
    CHECK(wide.radius() == 2 * eval.radius());
}

TEST_CASE("pinned genus 3 values at the reference point") {
    ThetaEvaluator eval(tau0(), kPrec);

    Complex t000 = eval.value(tc("000,000"));
    Complex want000 = frozen(
        "1.16184749140856428343392795567370011063400630627081947554276049263"
        "261156",
        "-0.0131838740491772446980755638463855202986148445319614707970385395"
        "232095398");
    CHECK(abs(t000 - want000) < tol_bits(-230));

    Complex t011 = eval.value(tc("011,011"));
    Complex want011 = frozen(
        "0.16961400894812854796086382104332927951060849358853011801750676413"
        "6235174",
        "0.00423947496520982435167900193139260078526442913690551341887283884"
        "217959235");
    CHECK(abs(t011 - want011) < tol_bits(-230));

    Complex t100 = eval.value(tc("100,001"));
    Complex want100 = frozen(
        "0.93170903012825251319108839784259210094862175579742616379872199173"
        "8507855",
        "-0.0317840746703330115157932109736156621329367605019825374124033285"
        "004537397");
    CHECK(abs(t100 - want100) < tol_bits(-230));

    CHECK(abs(eval.value(tc("111,111"))) < tol_bits(-248));
}

TEST_CASE("pinned chi18 and sigma140 at the reference point") {
    Complex chi = chi_k(tau0(), kPrec);
    Complex want_chi = frozen(
        "0.00000000002763880298458130081954200383726810539803458176659846633"
        "72667",
        "-0.0000000001316431964715967686607478555890515030137092252610785814"
        "82564");
    CHECK(rel_distance(chi, want_chi, tol_bits(-400)) < tol_bits(-180));

    Complex sig = sigma140(tau0(), kPrec);
    Complex want_sig = frozen(
        "-1.83024072888539516934002380357999813614513132604355161643773e-69",
        "-4.28018050195769464991136999802729611832092627298043110269773e-70");
    CHECK(rel_distance(sig, want_sig, tol_bits(-400)) < tol_bits(-130));
}

TEST_CASE("pinned genus 2 product of the ten even values") {
    CMat t(2, 2, kPrec);
    t.at(0, 0) = Complex(rs("0.1"), rs("0.9"));
    t.at(1, 1) = Complex(rs("-0.05"), rs("1.2"));
    t.at(0, 1) = Complex(rs("0.2"), rs("0.15"));
    t.at(1, 0) = t.at(0, 1);
    Complex chi5 = chi_k(RiemannMatrix(std::move(t), kPrec), kPrec);
    Complex want = frozen(
        "0.08127988376051024166626365162992078106047364551644416823468890",
        "-0.0991353533703897455628995670974886233890153826273471524372486");
    CHECK(rel_distance(chi5, want, tol_bits(-400)) < tol_bits(-190));
}

TEST_CASE("quartic identity on the three genus 1 even values") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        RiemannMatrix t =
            tau_g1(dyadic(rng, 8), Real(1L, kPrec) + dyadic(rng, 8));
        ThetaEvaluator eval(t, kPrec);
        Complex a = pow_si(eval.value(tc("0,0")), 4);
        Complex b = pow_si(eval.value(tc("1,0")), 4);
        Complex c = pow_si(eval.value(tc("0,1")), 4);
        CHECK(rel_distance(a, b + c, tol_bits(-kPrec)) < tol_bits(-128));
    }
}

TEST_CASE("odd characteristics vanish") {
    std::mt19937_64 rng(103);
    RiemannMatrix t = random_tau(rng, 3);
    ThetaEvaluator eval(t, 128);
    for (const ThetaChar& e : odd_characteristics(3)) {
        CHECK(abs(eval.value(e)) < Real::pow2(-120, 192));
    }
}

TEST_CASE("characteristic reduction is exact up to the documented sign") {
    ThetaEvaluator eval(tau0(), 128);
    ThetaChar base = tc("100,010");
    Complex v = eval.value(base);

    // Top-row shifts by 2 are free; bottom-row shifts flip by (-1)^{e1.b}.
    ThetaChar shifted = base;
    shifted.e1[0] += 2;
    shifted.e1[2] -= 4;
    CHECK(bit_equal(eval.value(shifted), v));

    ThetaChar flipped = base;
    flipped.e2[0] += 2;  // e1[0] = 1, so the sign flips
    CHECK(bit_equal(eval.value(flipped), -v));

    ThetaChar neutral = base;
    neutral.e2[1] += 2;  // e1[1] = 0, no sign
    CHECK(bit_equal(eval.value(neutral), v));
}

TEST_CASE("diagonal tau splits into a product over the factors") {
    RiemannMatrix diag = tau_diag("1", "2", "1.5");
    ThetaEvaluator eval(diag, kPrec);
    ThetaEvaluator f1(tau_g1(Real(0L, kPrec), rs("1")), kPrec);
    ThetaEvaluator f2(tau_g1(Real(0L, kPrec), rs("2")), kPrec);
    ThetaEvaluator f3(tau_g1(Real(0L, kPrec), rs("1.5")), kPrec);

    for (const ThetaChar& e : even_characteristics(3)) {
        Complex whole = eval.value(e);
        ThetaChar c1{{e.e1[0]}, {e.e2[0]}};
        ThetaChar c2{{e.e1[1]}, {e.e2[1]}};
        ThetaChar c3{{e.e1[2]}, {e.e2[2]}};
        Complex split = f1.value(c1) * f2.value(c2) * f3.value(c3);
        CHECK(abs(whole - split) < tol_bits(-240));
    }
}

TEST_CASE("doubling the truncation radius stays within the certified tail") {
    std::mt19937_64 rng(107);
    const mpfr_prec_t precs[3] = {64, 128, 256};
    for (int trial = 0; trial < 50; ++trial) {
        int g = trial % 3 + 1;
        mpfr_prec_t p = precs[(trial / 3) % 3];
        RiemannMatrix t = random_tau(rng, g);
        ThetaChar e = random_char(rng, g);
        ThetaEvaluator base(t, p);
        ThetaEvaluator wide(t, p, 2 * base.radius());
        Complex a = base.value(e);
        Complex b = wide.value(e);
        CHECK(rel_distance(a, b, Real::pow2(-static_cast<long>(p), 64)) <
              Real::pow2(-static_cast<long>(p), 64));
    }
}

TEST_CASE("degree two product identity between tau and tau/2") {
    // g=1, all-zero characteristics at tau = 2i.
    CMat t1(1, 1, kPrec);
    t1.at(0, 0) = Complex(Real(0L, kPrec), Real(2L, kPrec));
    RiemannMatrix tau1(std::move(t1), kPrec);
    CHECK(duplication_residual({0}, {0}, {0}, tau1, kPrec) < tol_bits(-128));
    CHECK(duplication_residual({1}, {0}, {1}, tau1, kPrec) < tol_bits(-128));

    // g=3 diagonal: the pairings that drive the product expressions.
    RiemannMatrix diag = tau_diag("0.8", "1.1", "1.3");
    CHECK(duplication_residual({0, 0, 0}, {0, 0, 0}, {0, 0, 1}, diag, 128) <
          Real::pow2(-64, 192));
    CHECK(duplication_residual({0, 1, 0}, {0, 0, 0}, {0, 0, 1}, diag, 128) <
          Real::pow2(-64, 192));
    CHECK(duplication_residual({1, 1, 0}, {1, 1, 0}, {1, 1, 1}, diag, 128) <
          Real::pow2(-64, 192));

    // Odd top row: both sides vanish, so the residual is just noise.
    CHECK(duplication_residual({1, 1, 1}, {1, 1, 1}, {1, 1, 1}, diag, 128) <
          Real::pow2(-64, 192));

    CHECK_THROWS_AS(duplication_residual({0}, {0}, {0}, diag, 128),
                    DomainError);
}

TEST_CASE("transformation identity in absolute value") {
    // J fixes tau = i in genus 1.
    RiemannMatrix ti = tau_g1(Real(0L, kPrec), Real(1L, kPrec));
    TransformReport fixed = transformation_check(j_matrix(1), tc("0,0"), ti,
                                                 kPrec);
    CHECK(fixed.abs_residual < tol_bits(-128));
    CHECK_FALSE(fixed.phase_checked);

    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 4; ++trial) {
        RiemannMatrix t = random_tau(rng, 3);
        IMat m = random_symplectic(rng, 3, 4);
        ThetaChar e = random_char(rng, 3);
        TransformReport rep = transformation_check(m, e, t, 128);
        CHECK(rep.abs_residual < Real::pow2(-64, 192));
    }

    IMat nonsymp = IMat::identity(6);
    nonsymp.at(0, 0) = 2;
    CHECK_THROWS_AS(transformation_check(nonsymp, tc("000,000"), tau0(), 128),
                    DomainError);
}

TEST_CASE("squared transformation identity with phase on block triangular") {
    std::mt19937_64 rng(113);
    IMat b(3, 3);
    b.at(0, 0) = 1;
    b.at(0, 1) = 2;
    b.at(1, 0) = 2;
    b.at(1, 1) = -1;
    b.at(2, 2) = 3;
    IMat a = IMat::from_rows({{1, 1, 0}, {0, 1, 0}, {0, 0, -1}});

    for (const IMat& m : {gen_u(b), gen_m(a), gen_u(b) * gen_m(a)}) {
        RiemannMatrix t = random_tau(rng, 3);
        ThetaChar e = random_char(rng, 3);
        TransformReport rep = transformation_check(m, e, t, 128);
        CHECK(rep.phase_checked);
        CHECK(rep.abs_residual < Real::pow2(-64, 192));
        CHECK(rep.phase_residual < Real::pow2(-64, 192));
    }
}

TEST_CASE("weight 18 modularity of the even product") {
    std::mt19937_64 rng(127);
    for (int trial = 0; trial < 2; ++trial) {
        RiemannMatrix t = random_tau(rng, 3);
        IMat m = random_symplectic(rng, 3, 4);
        Complex lhs = chi_k(act(m, t), 128);
        Complex rhs = pow_si(j_factor(m, t), 18) * chi_k(t, 128);
        CHECK(rel_distance(lhs, rhs, Real::pow2(-128, 192)) <
              Real::pow2(-64, 192));
    }
}

TEST_CASE("half argument modularity for even upper right block") {
    std::mt19937_64 rng(131);
    IMat bsym = IMat::from_rows({{1, 1, 0}, {1, 0, 1}, {0, 1, 2}});
    IMat csym = IMat::from_rows({{2, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    IMat aun = IMat::from_rows({{1, 0, 1}, {0, -1, 0}, {0, 0, 1}});

    IMat u2 = gen_u(bsym + bsym);  // doubled symmetric parameter
    IMat v1 = gen_v(csym);
    IMat m1 = gen_m(aun);
    for (const IMat& m : {u2, v1, m1}) {
        RiemannMatrix t = random_tau(rng, 3);
        CHECK(chi18_half_modularity(m, t, 128) < Real::pow2(-64, 192));
    }

    CHECK_THROWS_AS(chi18_half_modularity(gen_u(bsym), tau0(), 128),
                    DomainError);
}

TEST_CASE("period normalization of the even product") {
    std::mt19937_64 rng(137);
    RiemannMatrix t = random_tau(rng, 3);
    PeriodMatrix omega(t.tau, CMat::identity(3, kPrec), kPrec);

    // With omega2 = 1 the period form reduces to the tau form.
    Complex direct = chi_k(t, 128);
    Complex framed = chi_period(omega, 18, 128);
    CHECK(rel_distance(framed, direct, Real::pow2(-128, 192)) <
          Real::pow2(-100, 192));

    // Right action by an integer symplectic matrix leaves it unchanged.
    for (int trial = 0; trial < 2; ++trial) {
        IMat m = random_symplectic(rng, 3, 4);
        Complex moved = chi_period(omega_mul(omega, m), 18, 128);
        CHECK(rel_distance(moved, framed, Real::pow2(-128, 192)) <
              Real::pow2(-60, 192));
    }

    // Complex rescaling of the lattice shifts it by det(W)^{-2k}: W = 2
    // multiplies det(omega2) by 8, so the value drops by 8^{-18} = 2^{-54}.
    CMat doubled1 = Real(2L, kPrec) * t.tau;
    CMat doubled2 = Real(2L, kPrec) * CMat::identity(3, kPrec);
    PeriodMatrix scaled(std::move(doubled1), std::move(doubled2), kPrec);
    Complex shifted = chi_period(scaled, 18, 128);
    CHECK(rel_distance(shifted, ldexp2(Real(1L, 192), -54) * framed,
                       Real::pow2(-128, 192)) < Real::pow2(-100, 192));
}

TEST_CASE("vanishing counts separate the three classes") {
    IgusaReport dec = igusa_classify(tau_diag("1", "1", "1"), kPrec);
    CHECK(dec.label == IgusaLabel::Decomposable);
    CHECK(dec.vanishing_count == 9);
    CHECK(dec.indeterminate_count == 0);
    CHECK(dec.chi_abs < dec.chi_scale * tol_bits(-85));
    CHECK(std::string(igusa_label_name(dec.label)) == "Decomposable");

    IgusaReport gen = igusa_classify(tau0(), kPrec);
    CHECK(gen.label == IgusaLabel::NonHyperellipticJacobian);
    CHECK(gen.vanishing_count == 0);
    CHECK(gen.indeterminate_count == 0);
    CHECK(gen.theta_min_abs > gen.theta_nonzero_cut);

    // Explicit guard band override, and rejection of an inverted band.
    IgusaReport conf = igusa_classify(tau0(), kPrec, 1, 100, 50);
    CHECK(conf.label == IgusaLabel::NonHyperellipticJacobian);
    CHECK_THROWS_AS(igusa_classify(tau0(), kPrec, 1, 50, 100), DomainError);
}

TEST_CASE("results are deterministic and independent of worker count") {
    Complex a = chi_k(tau0(), 128, 1);
    Complex b = chi_k(tau0(), 128, 3);
    CHECK(bit_equal(a, b));

    Complex s1 = sigma140(tau0(), 128, 1);
    Complex s2 = sigma140(tau0(), 128, 3);
    CHECK(bit_equal(s1, s2));

    ThetaEvaluator e1(tau0(), 128);
    ThetaEvaluator e2(tau0(), 128);
    e1.precompute(even_characteristics(3), 1);
    e2.precompute(even_characteristics(3), 4);
    for (const ThetaChar& e : even_characteristics(3)) {
        CHECK(bit_equal(e1.value(e), e2.value(e)));
    }
}
