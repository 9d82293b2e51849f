#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ciani/linalg.hpp"
#include "ciani/symplectic.hpp"

namespace ciani {

enum class IgusaLabel {
    Decomposable,
    HyperellipticJacobian,
    NonHyperellipticJacobian,
    Indeterminate,
};

const char* igusa_label_name(IgusaLabel label);

// Nullwert sum over Z^g with the exp(pi*i*[...]) normalization:
//   theta[e](tau) = sum exp(pi*i*[(n+e1/2) tau (n+e1/2) + (n+e1/2).e2]).
// The lattice is truncated at a radius certified from a lower bound on the
// smallest eigenvalue of Im tau so that the dropped tail is below 2^{-p-8};
// summation order is fixed, so results are bit-reproducible. Characteristics
// with entries outside {0,1} are reduced first (top row shifts are free,
// bottom row shifts contribute a sign).
Complex theta_null(const ThetaChar& e, const RiemannMatrix& tau,
                   mpfr_prec_t p);

// Shared per-tau state (eigenvalue bound, truncation radius, cached values)
// for evaluating many characteristics at one Riemann matrix. Evaluations of
// distinct characteristics are independent; precompute() may fan them out
// over worker threads, while value() lookups stay sequential.
class ThetaEvaluator {
  public:
    // min_radius widens the certified truncation radius; useful for checking
    // that the tail bound is honest (doubling the radius must not move any
    // value by more than the certified tail).
    ThetaEvaluator(const RiemannMatrix& tau, mpfr_prec_t p,
                   long min_radius = 0);

    const RiemannMatrix& tau() const { return tau_; }
    mpfr_prec_t target_precision() const { return p_; }
    mpfr_prec_t working_precision() const { return wp_; }
    long radius() const { return radius_; }

    Complex value(const ThetaChar& e);
    void precompute(const std::vector<ThetaChar>& chars, int workers);

  private:
    using Key = std::pair<std::vector<long>, std::vector<long>>;
    struct Reduced {
        Key key;
        int sign;
    };
    Reduced reduce(const ThetaChar& e) const;
    Complex sum_reduced(const Key& key) const;

    RiemannMatrix tau_;
    mpfr_prec_t p_;
    mpfr_prec_t wp_;
    CMat tau_wp_;
    Real pi_;
    Complex h_last_;  // exp(2*pi*i*tau_{g-1,g-1}), the inner-scan multiplier
    long radius_ = 0;
    std::map<Key, Complex> cache_;
};

// Product of all even Thetanullwerte in the canonical characteristic order;
// the form has weight |S_g|/2 (18 for g = 3).
Complex chi_k(const RiemannMatrix& tau, mpfr_prec_t p, int workers = 1);

// 35th elementary symmetric function of the eighth powers of the 36 even
// Thetanullwerte (g = 3). Inputs are put in a canonical sorted order first,
// so the value is bit-identical under relabeling; computed as
// e36 * sum of inverses when all values are comfortably nonzero, otherwise
// by the direct symmetric-function recursion.
Complex sigma140(const RiemannMatrix& tau, mpfr_prec_t p, int workers = 1);

// Trichotomy of an abelian threefold by vanishing of even Thetanullwerte:
// none vanish -> non hyperelliptic Jacobian, exactly one -> hyperelliptic
// Jacobian, two or more -> decomposable. A value inside the guard band
// between the zero and nonzero cuts yields Indeterminate instead of a guess.
// |chi18| and |sigma140| are reported with scale references for audit:
// chi_scale = s1 * P35 and sigma_scale = P35^8, where s1 is the quadratic
// mean of the 36 magnitudes and P35 the product of the 35 largest.
struct IgusaReport {
    IgusaLabel label = IgusaLabel::Indeterminate;
    int vanishing_count = 0;
    int indeterminate_count = 0;
    Real theta_min_abs;
    Real theta_zero_cut;     // 2^{-p/3} * s1
    Real theta_nonzero_cut;  // 2^{-p/6} * s1
    Real chi_abs, chi_scale;
    Real sigma_abs, sigma_scale;
};

// zero_cut_bits / nonzero_cut_bits override the default guard band
// (2^{-p/3} and 2^{-p/6} of the input scale); pass 0 to keep a default.
IgusaReport igusa_classify(const RiemannMatrix& tau, mpfr_prec_t p,
                           int workers = 1, long zero_cut_bits = 0,
                           long nonzero_cut_bits = 0);

// Residual of the degree-two duplication identity
//   theta[e1;e2](tau/2) theta[e1;d](tau/2)
//     = sum_{mu in (Z/2)^g} (-1)^{mu.d} theta[e1-mu;e2-d](tau)
//                                       theta[mu;e2-d](tau),
// relative to max(1, |lhs|, |rhs|).
Real duplication_residual(const std::vector<long>& e1,
                          const std::vector<long>& e2,
                          const std::vector<long>& delta,
                          const RiemannMatrix& tau, mpfr_prec_t p);

// |theta[M.e](M.tau)| = |det(C tau + D)|^{1/2} |theta[e](tau)| in absolute
// value for every symplectic M; for block-triangular M (where the squared
// multiplier is det D) the full squared transformation identity
//   theta[M.e](M.tau)^2 = det(D) i^phi det(C tau + D) theta[e](tau)^2
// is verified as well.
struct TransformReport {
    Real abs_residual;
    bool phase_checked = false;
    Real phase_residual;
};

TransformReport transformation_check(const IMat& m, const ThetaChar& e,
                                     const RiemannMatrix& tau, mpfr_prec_t p);

// det(omega2)^{-k} chi_k(tau(omega)): invariant under the right action of
// integer symplectic matrices on omega.
Complex chi_period(const PeriodMatrix& omega, int k, mpfr_prec_t p,
                   int workers = 1);

// Relative residual of chi18((M.tau)/2) = det(C tau + D)^{18} chi18(tau/2)
// for M with even upper right block.
Real chi18_half_modularity(const IMat& m, const RiemannMatrix& tau,
                           mpfr_prec_t p, int workers = 1);

}  // namespace ciani
