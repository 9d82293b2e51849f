#include "ciani/theta.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace ciani {

namespace {

// exp(pi*i*z) = exp(-pi*Im z) * (cos(pi*Re z) + i sin(pi*Re z)).
Complex cexp_pii(const Complex& z, const Real& pi) {
    Real decay = exp(-(pi * z.im));
    Real s, c;
    sin_cos(s, c, pi * z.re);
    return Complex(decay * c, decay * s);
}

// Smallest radius R with a certified lattice tail below 2^{-p-9}: terms at
// sup-norm k have modulus at most exp(-pi*lambda*(k-1/2)^2) and multiplicity
// (2k+1)^g - (2k-1)^g, and once consecutive-term ratios are below 1/2 the
// whole tail is bounded by twice its first term. Scratch arithmetic runs at
// 64 bits on a slightly shrunk lambda so rounding cannot flatter the bound.
long certified_radius(int g, const Real& lambda, mpfr_prec_t p) {
    const mpfr_prec_t sp = 64;
    Real lam = lambda.at_precision(sp);
    lam *= Real(1L, sp) - Real::pow2(-30, sp);
    if (!(lam > Real(0L, sp))) {
        throw DomainError("Im tau eigenvalue bound is not positive");
    }
    Real pi = Real::pi(sp);
    Real budget = Real::pow2(-static_cast<long>(p) - 9, sp);
    Real half_cut = Real::pow2(-3L * g - 1, sp);
    for (long r = 1; r <= 200000; ++r) {
        long k = r + 1;
        if (!(exp(-(pi * lam * Real(2 * k, sp))) < half_cut)) continue;
        Real khalf = Real(2 * k - 1, sp) / 2L;
        Real count = pow_si(Real(2 * k + 1, sp), g) -
                     pow_si(Real(2 * k - 1, sp), g);
        Real first = count * exp(-(pi * lam * khalf * khalf));
        if (first + first < budget) return r;
    }
    throw DomainError("theta truncation radius out of range");
}

// Fixed-order lattice sum with incremental inner-scan exponentials: along
// the innermost axis the exponent is quadratic in the step index, so each
// term follows from the previous one by two complex multiplications. The
// working precision carries 64 guard bits, which absorbs the linear error
// growth of the running products.
struct LatticeSum {
    const CMat& tau;
    const std::vector<long>& e1;
    const std::vector<long>& e2;
    long radius;
    const Real& pi;
    const Complex& h_last;
    mpfr_prec_t wp;

    int g = 0;
    Complex total;
    std::vector<std::vector<Complex>> cross;

    LatticeSum(const CMat& tau_in, const std::vector<long>& e1_in,
               const std::vector<long>& e2_in, long radius_in,
               const Real& pi_in, const Complex& h_last_in, mpfr_prec_t wp_in)
        : tau(tau_in), e1(e1_in), e2(e2_in), radius(radius_in), pi(pi_in),
          h_last(h_last_in), wp(wp_in) {}

    Complex run() {
        g = tau.rows;
        total = Complex(wp);
        cross.assign(std::size_t(g) + 1,
                     std::vector<Complex>(std::size_t(g), Complex(wp)));
        descend(0, Complex(wp));
        return total;
    }

    Real half_integer(long n, int axis) const {
        return Real(2 * n + e1[std::size_t(axis)], wp) / 2L;
    }

    void descend(int level, const Complex& q) {
        if (level == g - 1) {
            leaf_scan(q);
            return;
        }
        const Complex& t = tau.at(level, level);
        for (long n = -radius; n <= radius; ++n) {
            Real x = half_integer(n, level);
            Complex q2 = q + t * (x * x) +
                         cross[std::size_t(level)][std::size_t(level)] * (x + x);
            if (e2[std::size_t(level)] != 0) q2.re += x;
            for (int j = level + 1; j < g; ++j) {
                cross[std::size_t(level) + 1][std::size_t(j)] =
                    cross[std::size_t(level)][std::size_t(j)] +
                    tau.at(level, j) * x;
            }
            descend(level + 1, q2);
        }
    }

    void leaf_scan(const Complex& q) {
        int axis = g - 1;
        const Complex& t = tau.at(axis, axis);
        Real x0 = half_integer(-radius, axis);
        Complex lin = cross[std::size_t(axis)][std::size_t(axis)];
        lin += lin;
        if (e2[std::size_t(axis)] != 0) lin.re += Real(1L, wp);
        Complex f = cexp_pii(q + lin * x0 + t * (x0 * x0), pi);
        Complex step = cexp_pii(lin + t * (x0 + x0 + Real(1L, wp)), pi);
        long count = 2 * radius + 1;
        for (long k = 0; k < count; ++k) {
            total += f;
            if (k + 1 == count) break;
            f *= step;
            step *= h_last;
        }
    }
};

Real quadratic_mean_abs(const std::vector<Complex>& values, mpfr_prec_t p) {
    Real s(0L, p);
    for (const Complex& v : values) s += norm(v);
    return sqrt(s / static_cast<long>(values.size()));
}

// Canonical order for symmetric-function evaluation: by real part, then by
// imaginary part. Makes reductions independent of input labeling.
void canonical_sort(std::vector<Complex>& values) {
    std::sort(values.begin(), values.end(),
              [](const Complex& a, const Complex& b) {
                  int cr = mpfr_cmp(a.re.raw(), b.re.raw());
                  if (cr != 0) return cr < 0;
                  return mpfr_cmp(a.im.raw(), b.im.raw()) < 0;
              });
}

Complex chi_from(ThetaEvaluator& eval, const std::vector<ThetaChar>& evens) {
    Complex prod(1L, eval.working_precision());
    for (const ThetaChar& e : evens) prod *= eval.value(e);
    return prod;
}

Complex sigma_from(ThetaEvaluator& eval, const std::vector<ThetaChar>& evens,
                   mpfr_prec_t p) {
    mpfr_prec_t wp = eval.working_precision();
    std::vector<Complex> values;
    values.reserve(evens.size());
    for (const ThetaChar& e : evens) values.push_back(eval.value(e));
    Real floor = Real::pow2(-static_cast<long>(p) / 4, wp) *
                 quadratic_mean_abs(values, wp);
    bool all_clear = true;
    std::vector<Complex> eighth;
    eighth.reserve(values.size());
    for (const Complex& v : values) {
        if (!(abs(v) > floor)) all_clear = false;
        eighth.push_back(pow_si(v, 8));
    }
    canonical_sort(eighth);
    if (all_clear) {
        Complex e36(1L, wp);
        for (const Complex& t : eighth) e36 *= t;
        Complex inv_sum(wp);
        for (const Complex& t : eighth) inv_sum += Complex(1L, wp) / t;
        return e36 * inv_sum;
    }
    // Elementary symmetric recursion on the sorted values.
    std::size_t n = eighth.size();
    std::vector<Complex> e(n + 1, Complex(wp));
    e[0] = Complex(1L, wp);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t top = std::min(i + 1, n);
        for (std::size_t k = top; k >= 1; --k) {
            e[k] += e[k - 1] * eighth[i];
        }
    }
    return e[n - 1];
}

Real real_rel_distance(const Real& a, const Real& b, const Real& floor) {
    Real diff = abs(a - b);
    Real scale = max(abs(a), abs(b));
    if (scale <= floor) return diff;
    return diff / scale;
}

Complex i_power(long r) {
    long m = ((r % 4) + 4) % 4;
    mpfr_prec_t p = 64;
    switch (m) {
        case 0: return Complex(1L, p);
        case 1: return Complex(Real(0L, p), Real(1L, p));
        case 2: return Complex(-1L, p);
        default: return Complex(Real(0L, p), Real(-1L, p));
    }
}

}  // namespace

const char* igusa_label_name(IgusaLabel label) {
    switch (label) {
        case IgusaLabel::Decomposable: return "Decomposable";
        case IgusaLabel::HyperellipticJacobian: return "HyperellipticJacobian";
        case IgusaLabel::NonHyperellipticJacobian:
            return "NonHyperellipticJacobian";
        case IgusaLabel::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

ThetaEvaluator::ThetaEvaluator(const RiemannMatrix& tau, mpfr_prec_t p,
                               long min_radius)
    : tau_(tau), p_(p), wp_(p + 64), pi_(Real::pi(p + 64)) {
    if (p < 32) throw DomainError("theta precision below 32 bits");
    int g = tau_.g;
    tau_wp_ = CMat(g, g, wp_);
    CMat y(g, g, wp_);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            tau_wp_.at(i, j) = Complex(tau_.tau.at(i, j).re.at_precision(wp_),
                                       tau_.tau.at(i, j).im.at_precision(wp_));
            y.at(i, j) = Complex(tau_wp_.at(i, j).im, Real(0L, wp_));
        }
    Real lambda = min_eig_lower_bound(y);
    radius_ = std::max(certified_radius(g, lambda, p_), min_radius);
    Complex t_last = tau_wp_.at(g - 1, g - 1);
    h_last_ = cexp_pii(t_last + t_last, pi_);
}

ThetaEvaluator::Reduced ThetaEvaluator::reduce(const ThetaChar& e) const {
    if (e.g() != tau_.g) {
        throw DomainError("characteristic size does not match tau");
    }
    std::vector<long> e1r(e.e1.size()), e2r(e.e2.size());
    long exponent = 0;
    for (std::size_t i = 0; i < e.e1.size(); ++i) {
        e1r[i] = ((e.e1[i] % 2) + 2) % 2;
        e2r[i] = ((e.e2[i] % 2) + 2) % 2;
        long b = (e.e2[i] - e2r[i]) / 2;
        exponent += e1r[i] * b;
    }
    int sign = (((exponent % 2) + 2) % 2 == 0) ? 1 : -1;
    return Reduced{Key{std::move(e1r), std::move(e2r)}, sign};
}

Complex ThetaEvaluator::sum_reduced(const Key& key) const {
    LatticeSum sum{tau_wp_, key.first, key.second, radius_,
                   pi_,     h_last_,   wp_};
    return sum.run();
}

Complex ThetaEvaluator::value(const ThetaChar& e) {
    Reduced r = reduce(e);
    auto it = cache_.find(r.key);
    if (it == cache_.end()) {
        it = cache_.emplace(r.key, sum_reduced(r.key)).first;
    }
    return r.sign > 0 ? it->second : -it->second;
}

void ThetaEvaluator::precompute(const std::vector<ThetaChar>& chars,
                                int workers) {
    std::vector<Key> missing;
    std::set<Key> seen;
    for (const ThetaChar& e : chars) {
        Key key = reduce(e).key;
        if (cache_.count(key) != 0 || !seen.insert(key).second) continue;
        missing.push_back(std::move(key));
    }
    if (missing.empty()) return;
    int n = std::max(1, std::min<int>(workers, int(missing.size())));
    std::vector<Complex> slots(missing.size());
    if (n == 1) {
        for (std::size_t i = 0; i < missing.size(); ++i) {
            slots[i] = sum_reduced(missing[i]);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(n));
        for (int t = 0; t < n; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t i = std::size_t(t); i < missing.size();
                     i += std::size_t(n)) {
                    slots[i] = sum_reduced(missing[i]);
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }
    for (std::size_t i = 0; i < missing.size(); ++i) {
        cache_.emplace(std::move(missing[i]), std::move(slots[i]));
    }
}

Complex theta_null(const ThetaChar& e, const RiemannMatrix& tau,
                   mpfr_prec_t p) {
    ThetaEvaluator eval(tau, p);
    return eval.value(e);
}

Complex chi_k(const RiemannMatrix& tau, mpfr_prec_t p, int workers) {
    if (tau.g < 2) throw DomainError("chi_k requires genus at least 2");
    ThetaEvaluator eval(tau, p);
    std::vector<ThetaChar> evens = even_characteristics(tau.g);
    eval.precompute(evens, workers);
    return chi_from(eval, evens);
}

Complex sigma140(const RiemannMatrix& tau, mpfr_prec_t p, int workers) {
    if (tau.g != 3) throw DomainError("sigma140 requires genus 3");
    ThetaEvaluator eval(tau, p);
    std::vector<ThetaChar> evens = even_characteristics(3);
    eval.precompute(evens, workers);
    return sigma_from(eval, evens, p);
}

IgusaReport igusa_classify(const RiemannMatrix& tau, mpfr_prec_t p,
                           int workers, long zero_cut_bits,
                           long nonzero_cut_bits) {
    if (tau.g != 3) throw DomainError("classification requires genus 3");
    if (zero_cut_bits <= 0) zero_cut_bits = static_cast<long>(p) / 3;
    if (nonzero_cut_bits <= 0) nonzero_cut_bits = static_cast<long>(p) / 6;
    if (nonzero_cut_bits > zero_cut_bits) {
        throw DomainError("guard band cuts are inverted");
    }
    ThetaEvaluator eval(tau, p);
    std::vector<ThetaChar> evens = even_characteristics(3);
    eval.precompute(evens, workers);
    mpfr_prec_t wp = eval.working_precision();

    std::vector<Complex> values;
    values.reserve(evens.size());
    for (const ThetaChar& e : evens) values.push_back(eval.value(e));
    std::vector<Real> mags;
    mags.reserve(values.size());
    for (const Complex& v : values) mags.push_back(abs(v));

    IgusaReport rep;
    Real s1 = quadratic_mean_abs(values, wp);
    rep.theta_zero_cut = s1 * Real::pow2(-zero_cut_bits, wp);
    rep.theta_nonzero_cut = s1 * Real::pow2(-nonzero_cut_bits, wp);
    rep.theta_min_abs = mags[0];
    for (const Real& m : mags) rep.theta_min_abs = min(rep.theta_min_abs, m);
    for (const Real& m : mags) {
        if (m < rep.theta_zero_cut) {
            ++rep.vanishing_count;
        } else if (!(m > rep.theta_nonzero_cut)) {
            ++rep.indeterminate_count;
        }
    }
    if (rep.indeterminate_count > 0) {
        rep.label = IgusaLabel::Indeterminate;
    } else if (rep.vanishing_count == 0) {
        rep.label = IgusaLabel::NonHyperellipticJacobian;
    } else if (rep.vanishing_count == 1) {
        rep.label = IgusaLabel::HyperellipticJacobian;
    } else {
        rep.label = IgusaLabel::Decomposable;
    }

    rep.chi_abs = abs(chi_from(eval, evens));
    rep.sigma_abs = abs(sigma_from(eval, evens, p));
    std::vector<Real> sorted = mags;
    std::sort(sorted.begin(), sorted.end(),
              [](const Real& a, const Real& b) { return a < b; });
    Real p35(1L, wp);
    for (std::size_t i = 1; i < sorted.size(); ++i) p35 *= sorted[i];
    rep.chi_scale = s1 * p35;
    rep.sigma_scale = pow_si(p35, 8);
    return rep;
}

Real duplication_residual(const std::vector<long>& e1,
                          const std::vector<long>& e2,
                          const std::vector<long>& delta,
                          const RiemannMatrix& tau, mpfr_prec_t p) {
    int g = tau.g;
    if (int(e1.size()) != g || int(e2.size()) != g || int(delta.size()) != g) {
        throw DomainError("characteristic size does not match tau");
    }
    ThetaEvaluator at_half(scaled_tau(tau, Rat(1, 2)), p);
    ThetaEvaluator at_full(tau, p);
    mpfr_prec_t wp = at_full.working_precision();

    Complex lhs = at_half.value(ThetaChar{e1, e2}) *
                  at_half.value(ThetaChar{e1, delta});
    Complex rhs(wp);
    for (unsigned long mask = 0; mask < (1UL << g); ++mask) {
        std::vector<long> mu(std::size_t(g), 0);
        long pair_par = 0;
        for (int i = 0; i < g; ++i) {
            mu[std::size_t(i)] = long((mask >> i) & 1UL);
            pair_par += mu[std::size_t(i)] * delta[std::size_t(i)];
        }
        std::vector<long> top(std::size_t(g), 0L);
        std::vector<long> bottom(std::size_t(g), 0L);
        for (int i = 0; i < g; ++i) {
            top[std::size_t(i)] = e1[std::size_t(i)] - mu[std::size_t(i)];
            bottom[std::size_t(i)] =
                e2[std::size_t(i)] - delta[std::size_t(i)];
        }
        Complex term = at_full.value(ThetaChar{top, bottom}) *
                       at_full.value(ThetaChar{mu, bottom});
        if (((pair_par % 2) + 2) % 2 == 1) term = -term;
        rhs += term;
    }
    Real scale = max(Real(1L, wp), max(abs(lhs), abs(rhs)));
    return abs(lhs - rhs) / scale;
}

TransformReport transformation_check(const IMat& m, const ThetaChar& e,
                                     const RiemannMatrix& tau, mpfr_prec_t p) {
    if (!is_symplectic(m)) {
        throw DomainError("transformation requires a symplectic matrix");
    }
    RiemannMatrix moved = act(m, tau);
    ThetaChar e_moved = char_action(m, e);
    Complex th0 = theta_null(e, tau, p);
    Complex th1 = theta_null(e_moved, moved, p);
    Complex j = j_factor(m, tau);
    mpfr_prec_t wp = p + 64;

    TransformReport rep;
    Real lhs = abs(th1);
    Real rhs = sqrt(abs(j)) * abs(th0);
    rep.abs_residual =
        real_rel_distance(lhs, rhs, Real::pow2(-static_cast<long>(p) / 2, wp));

    if (is_parabolic(m)) {
        long kappa2 = kappa_squared_parabolic(m).get_si();
        Int ph = phi(e, m);
        long ph4 = long(mpz_fdiv_ui(ph.get_mpz_t(), 4));
        Complex expected = Real(kappa2, wp) * (i_power(ph4) * (j * (th0 * th0)));
        rep.phase_checked = true;
        rep.phase_residual = rel_distance(
            th1 * th1, expected, Real::pow2(-static_cast<long>(p) / 2, wp));
    }
    return rep;
}

Complex chi_period(const PeriodMatrix& omega, int k, mpfr_prec_t p,
                   int workers) {
    RiemannMatrix tau = tau_of_omega(omega);
    Complex chi = chi_k(tau, p, workers);
    Complex d2 = det(omega.omega2);
    return pow_si(d2, -static_cast<long>(k)) * chi;
}

Real chi18_half_modularity(const IMat& m, const RiemannMatrix& tau,
                           mpfr_prec_t p, int workers) {
    if (!in_gamma0(m)) {
        throw DomainError(
            "half-argument modularity needs an even upper right block");
    }
    RiemannMatrix moved = act(m, tau);
    Complex lhs = chi_k(scaled_tau(moved, Rat(1, 2)), p, workers);
    Complex j = j_factor(m, tau);
    Complex rhs = pow_si(j, 18) * chi_k(scaled_tau(tau, Rat(1, 2)), p, workers);
    mpfr_prec_t wp = p + 64;
    return rel_distance(lhs, rhs, Real::pow2(-static_cast<long>(p), wp));
}

}  // namespace ciani
