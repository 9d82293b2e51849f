#pragma once

#include <array>
#include <vector>

#include "ciani/ciani.hpp"
#include "ciani/linalg.hpp"
#include "ciani/symplectic.hpp"
#include "ciani/theta.hpp"

namespace ciani {

// Product of three elliptic factors: per-factor tau and second period, the
// three even thetanullwerte of each factor, and the symmetric-matrix
// coefficients they induce. Built by coefficients_from_tau.
struct UniformizedTriple {
    std::array<RiemannMatrix, 3> tau;  // 1x1 factors
    std::array<Complex, 3> omega2;
    std::array<Complex, 3> th0, th1, th2;  // theta[0;0], theta[1;0], theta[0;1]
    std::array<Complex, 3> a, b, c;        // diagonal, off-diagonal, cofactor
    Complex rho;                           // a1 a2 a3
    mpfr_prec_t prec = 2;

    // [[a1 b3 b2], [b3 a2 b1], [b2 b1 a3]]
    CMat matrix() const;
    Complex det_m() const;    // direct 3x3 expansion
    Complex x_value() const;  // (a1 a2 a3)^4 (c1 c2 c3)^2 det_m
};

// Matrix coefficients from factor data:
//   a_i = -pi^2/4 * omega2_i^2/(omega2_j omega2_k)^2 * th1_j^4 th1_k^4 / th1_i^4
//   b_i = -pi^2/(4 omega2_i^2) * (th0_i^4 + th2_i^4)
//   c_i = -pi^4/(4 omega2_i^4) * th0_i^4 th2_i^4
// with (i,j,k) cyclic. Internal consistency b_i^2 + c_i = a_j a_k and
// rho^2 = prod(a_j a_k) is enforced to 2^{-p/2}. A factor with th1 below
// the vanish threshold (degenerate lattice) is rejected.
UniformizedTriple coefficients_from_tau(const std::array<RiemannMatrix, 3>& tau,
                                        const std::array<Complex, 3>& omega2,
                                        mpfr_prec_t p);
// Same with omega2 = (1, 1, 1).
UniformizedTriple coefficients_from_tau(const std::array<RiemannMatrix, 3>& tau,
                                        mpfr_prec_t p);

// R1 = (A+B+C+D)(A+B-C-D)(A-B-C+D)(A-B+C-D) built from the factor thetas:
// A = th01^2 th02^2 th23^2, B = th01^2 th22^2 th03^2, C = th21^2 th02^2 th03^2,
// D = th21^2 th22^2 th23^2 (first index = characteristic, second = factor).
Complex r1_product(const UniformizedTriple& u);

// det of the induced matrix through the R1 display:
//   pi^6 / (2^4 prod_i omega2_i^2 (th0_i^4 - th2_i^4)) * R1.
Complex det_m_closed(const UniformizedTriple& u);

// X through the theta-product display:
//   pi^54 / 2^40 * (omega2_1 omega2_2 omega2_3)^{-18}
//     * prod_i th0_i^8 th2_i^8 (th0_i^4 - th2_i^4)^3 * R1.
Complex x_closed(const UniformizedTriple& u);

// [diag(tau_i omega2_i) | diag(omega2_i)] as a validated period matrix.
PeriodMatrix block_omega(const UniformizedTriple& u);

// Quotient periods: Omega' = Omega * n * diag(1/2,1/2,1/2, 1,1,1). Requires
// n symplectic and carrying span(e1,e2,e3) onto the two-torsion image of W
// mod 2; the result is revalidated, and tau(Omega') is cross-checked against
// (1/2) tn . tau(Omega).
PeriodMatrix omega_prime(const PeriodMatrix& omega, const IMat& n);

// The eight two-torsion characteristics attached to W, three generators
// alpha, and their common span (a maximal isotropic subspace carried by
// w_transporter()).
struct WData {
    std::vector<ThetaChar> chars;
    std::vector<ThetaChar> alpha;
    IsotropicSubspace span;
};
WData w_characteristics();

// The eighteen nullwert-pair identities at tau' = tau(Omega'). Each left
// side is a product of two even nullwerte at tau'; each right side is a
// fixed polynomial in the factor thetas times a single constant c, fitted
// from the first pairing whose two sides are both away from zero. The
// pairs partition the 36 even characteristics, so prod(lhs) = chi18(tau').
struct IdentityReport {
    Complex c;
    int fit_index = -1;   // pairing used to fit c; -1 when degenerate
    bool degenerate = false;
    std::vector<Complex> lhs;     // 18 nullwert pair products
    std::vector<Complex> rhs;     // 18 factor-theta polynomials, before c
    std::vector<Real> residuals;  // relative, lhs vs c * rhs
    Real c_match;       // |c| vs |det O2'| / |det O2|, relative
    Real r1_residual;   // prod(lhs[0..3]) vs c^4 R1
    Real r2_residual;   // prod(lhs[4..17]) vs 2^14 c^14 prod(th0^8 th2^8 (th0^4-th2^4)^3)
    Real chi_residual;  // prod(lhs) vs chi18(tau')
    RiemannMatrix tau_prime;
    Complex det_omega2, det_omega2_prime;
};
IdentityReport eighteen_identities(const UniformizedTriple& u, const IMat& n,
                                   mpfr_prec_t p, int workers = 1);

// Both sides of (pi/2)^54 det(O2')^{-18} chi18(tau') = X(m) for the family
// member at (t1, t2, t3) with omega2 = 1. Away from the vanishing locus of
// det m the relative residual applies; near it (|det m| below the scale
// cutoff) the report is flagged degenerate and residual_abs, normalized by
// the coefficient scale, is the meaningful number.
struct MainIdentityReport {
    UniformizedTriple u;
    RiemannMatrix tau_prime;
    Complex lhs, rhs;
    Complex det_m;
    Real residual;      // relative with scale floor
    Real residual_abs;  // |lhs - rhs| / coefficient scale
    bool degenerate = false;
};
MainIdentityReport verify_main_identity(const RiemannMatrix& t1,
                                        const RiemannMatrix& t2,
                                        const RiemannMatrix& t3, mpfr_prec_t p,
                                        int workers = 1);

// Period basis of E: y^2 = x(x^2 - 4bx - 4c) by AGM on the root
// differences, normalized so the marked two-torsion point (0,0) sits at
// omega2/2: the theta formulas of coefficients_from_tau reproduce b and c,
// and that round trip is verified before returning. rho is the square root
// of delta = b^2 + c the marked point singles out (sign included). Only
// real-root configurations (delta > 0) are supported.
struct EllipticPeriods {
    Complex omega1, omega2;
    RiemannMatrix tau;  // omega1 / omega2
    Real rho;
};
EllipticPeriods elliptic_periods(const Rat& b, const Rat& c, mpfr_prec_t p);

// Uniformize the factor triple E_i: y^2 = x(x^2 - 4 b_i x - 4 c_i) of a
// matrix in S^x with positive deltas: periods per factor, a tau_1 -> tau_1+1
// adjustment when the marked-root product lands on the wrong square root,
// and a final round trip through coefficients_from_tau that must reproduce
// the matrix entries to 2^{-p/2}.
UniformizedTriple uniformize_matrix(const CianiMatrix& m, mpfr_prec_t p);

// End-to-end check on the cofactor family member: uniformize Cof m, run the
// quotient pipeline, and compare (pi/2)^54 det(O2')^{-18} chi18(tau') with
// the exact rational X(Cof m). The two algebraic legs X(Cof m) = D(m)^2 and
// Disc(Q_m) = 2^54 D(m) are checked in exact arithmetic alongside.
struct CorollaryReport {
    CianiMatrix m, cm;
    UniformizedTriple u;
    Complex lhs;
    Rat rhs;  // X(Cof m)
    Real residual;
    bool x_matches_d_squared = false;
    bool disc_matches = false;
    Classification cls;
};
CorollaryReport verify_klein_corollary(const CianiMatrix& m, mpfr_prec_t p,
                                       int workers = 1);

// det of the induced matrix at tau = (i y1, i y2, i t), omega2 = 1. All
// factor thetas are real there, so the value is real and sign changes
// bracket the vanishing locus.
Real det_on_ray(const Real& y1, const Real& y2, const Real& t, mpfr_prec_t p);

// Bisection on det_on_ray over [lo, hi] (which must bracket a sign change);
// returns t with |det| < 2^{-value_bits}.
Real bisect_det_zero(const Real& y1, const Real& y2, Real lo, Real hi,
                     long value_bits, mpfr_prec_t p);

}  // namespace ciani
