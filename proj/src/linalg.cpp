#include "ciani/linalg.hpp"

#include <utility>

namespace ciani {

namespace {

void require_shape(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

Real one_minus_pow2(long e, mpfr_prec_t prec) {
    return Real(1L, prec) - Real::pow2(e, prec);
}

// Hermitized copy (a + conj(ta))/2; Cholesky cares only about this part.
CMat hermitized(const CMat& a) {
    CMat w(a.rows, a.cols, a.prec);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            Complex avg = a.at(i, j) + a.at(j, i).conj();
            w.at(i, j) = Complex(avg.re / 2L, avg.im / 2L);
        }
    return w;
}

// Average with the transpose. Used where the exact result is symmetric by
// a theorem and the computed one differs only by conditioning-amplified
// rounding, which the RiemannMatrix constructor would otherwise reject.
CMat sym_average(const CMat& a) {
    CMat w(a.rows, a.cols, a.prec);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            Complex avg = a.at(i, j) + a.at(j, i);
            w.at(i, j) = Complex(avg.re / 2L, avg.im / 2L);
        }
    return w;
}

}  // namespace

CMat::CMat(int r, int c, mpfr_prec_t p)
    : rows(r), cols(c), prec(p),
      e(std::size_t(r) * std::size_t(c), Complex(p)) {
    require_shape(r >= 0 && c >= 0, "negative matrix dimension");
}

CMat CMat::identity(int n, mpfr_prec_t p) {
    CMat m(n, n, p);
    for (int i = 0; i < n; ++i) m.at(i, i) = Complex(1L, p);
    return m;
}

CMat CMat::transposed() const {
    CMat m(cols, rows, prec);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
    return m;
}

CMat CMat::conjugated() const {
    CMat m(rows, cols, prec);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = at(i, j).conj();
    return m;
}

CMat CMat::block(int i0, int j0, int r, int c) const {
    require_shape(i0 >= 0 && j0 >= 0 && i0 + r <= rows && j0 + c <= cols,
                  "block out of range");
    CMat m(r, c, prec);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = at(i0 + i, j0 + j);
    return m;
}

CMat operator+(const CMat& a, const CMat& b) {
    require_shape(a.rows == b.rows && a.cols == b.cols,
                  "matrix shape mismatch in addition");
    CMat m(a.rows, a.cols, std::max(a.prec, b.prec));
    for (std::size_t k = 0; k < a.e.size(); ++k) m.e[k] = a.e[k] + b.e[k];
    return m;
}

CMat operator-(const CMat& a, const CMat& b) {
    require_shape(a.rows == b.rows && a.cols == b.cols,
                  "matrix shape mismatch in subtraction");
    CMat m(a.rows, a.cols, std::max(a.prec, b.prec));
    for (std::size_t k = 0; k < a.e.size(); ++k) m.e[k] = a.e[k] - b.e[k];
    return m;
}

CMat operator*(const CMat& a, const CMat& b) {
    require_shape(a.cols == b.rows, "matrix shape mismatch in product");
    mpfr_prec_t p = std::max(a.prec, b.prec);
    CMat m(a.rows, b.cols, p);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < b.cols; ++j) {
            Complex s(p);
            for (int k = 0; k < a.cols; ++k) s += a.at(i, k) * b.at(k, j);
            m.at(i, j) = std::move(s);
        }
    return m;
}

CMat operator*(const Complex& s, const CMat& a) {
    CMat m(a.rows, a.cols, std::max(a.prec, s.precision()));
    for (std::size_t k = 0; k < a.e.size(); ++k) m.e[k] = s * a.e[k];
    return m;
}

CMat operator*(const Real& s, const CMat& a) {
    CMat m(a.rows, a.cols, std::max(a.prec, s.precision()));
    for (std::size_t k = 0; k < a.e.size(); ++k) m.e[k] = a.e[k] * s;
    return m;
}

CMat cmat_of(const IMat& m, mpfr_prec_t prec) {
    CMat out(m.rows, m.cols, prec);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            out.at(i, j) = Complex(Real(m.at(i, j), prec), Real(0L, prec));
    return out;
}

Real max_abs(const CMat& a) {
    Real best(0L, a.prec);
    for (const Complex& z : a.e) best = max(best, abs(z));
    return best;
}

Complex det(const CMat& a) {
    require_shape(a.rows == a.cols, "determinant of a non-square matrix");
    int n = a.rows;
    if (n == 0) return Complex(1L, a.prec);
    CMat w = a;
    int sign = 1;
    for (int c = 0; c < n; ++c) {
        int pivot = c;
        Real best = abs(w.at(c, c));
        for (int r = c + 1; r < n; ++r) {
            Real cand = abs(w.at(r, c));
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (best.is_zero()) return Complex(0L, w.prec);
        if (pivot != c) {
            for (int j = c; j < n; ++j)
                std::swap(w.at(c, j), w.at(pivot, j));
            sign = -sign;
        }
        for (int r = c + 1; r < n; ++r) {
            Complex f = w.at(r, c) / w.at(c, c);
            for (int j = c + 1; j < n; ++j)
                w.at(r, j) -= f * w.at(c, j);
        }
    }
    Complex d(static_cast<long>(sign), w.prec);
    for (int i = 0; i < n; ++i) d *= w.at(i, i);
    return d;
}

CMat inverse(const CMat& a) {
    require_shape(a.rows == a.cols, "inverse of a non-square matrix");
    int n = a.rows;
    CMat w = a;
    CMat inv = CMat::identity(n, a.prec);
    Real scale = max(Real(1L, a.prec), max_abs(a));
    Real cutoff = scale * Real::pow2(-static_cast<long>(a.prec) + 16, a.prec);
    for (int c = 0; c < n; ++c) {
        int pivot = c;
        Real best = abs(w.at(c, c));
        for (int r = c + 1; r < n; ++r) {
            Real cand = abs(w.at(r, c));
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (best <= cutoff) throw NumericError("matrix numerically singular");
        if (pivot != c) {
            for (int j = 0; j < n; ++j) {
                std::swap(w.at(c, j), w.at(pivot, j));
                std::swap(inv.at(c, j), inv.at(pivot, j));
            }
        }
        Complex d = w.at(c, c);
        for (int j = 0; j < n; ++j) {
            w.at(c, j) = w.at(c, j) / d;
            inv.at(c, j) = inv.at(c, j) / d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            Complex f = w.at(r, c);
            if (f.re.is_zero() && f.im.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                w.at(r, j) -= f * w.at(c, j);
                inv.at(r, j) -= f * inv.at(c, j);
            }
        }
    }
    return inv;
}

bool cholesky_pd(const CMat& a) {
    require_shape(a.rows == a.cols, "Cholesky of a non-square matrix");
    int n = a.rows;
    CMat w = hermitized(a);
    CMat l(n, n, w.prec);
    for (int j = 0; j < n; ++j) {
        Real d = w.at(j, j).re;
        for (int k = 0; k < j; ++k) d -= norm(l.at(j, k));
        if (!(d > Real(0L, w.prec))) return false;
        Real root = sqrt(d);
        l.at(j, j) = Complex(root, Real(0L, w.prec));
        for (int i = j + 1; i < n; ++i) {
            Complex s = w.at(i, j);
            for (int k = 0; k < j; ++k)
                s -= l.at(i, k) * l.at(j, k).conj();
            l.at(i, j) = s / root;
        }
    }
    return true;
}

Real min_eig_lower_bound(const CMat& y) {
    require_shape(y.rows == y.cols, "eigenvalue bound of a non-square matrix");
    int n = y.rows;
    mpfr_prec_t p = y.prec;
    Real gersh(0L, p);
    bool first = true;
    for (int i = 0; i < n; ++i) {
        Real row = y.at(i, i).re;
        for (int j = 0; j < n; ++j) {
            if (j != i) row -= abs(y.at(i, j).re);
        }
        if (first || row < gersh) gersh = row;
        first = false;
    }
    if (gersh > Real(0L, p)) return gersh * one_minus_pow2(-20, p);

    if (!cholesky_pd(y)) {
        throw DomainError("matrix is not positive definite");
    }
    Real lo(0L, p);
    Real hi = y.at(0, 0).re;
    for (int i = 1; i < n; ++i) hi = min(hi, y.at(i, i).re);
    for (int iter = 0; iter < 64; ++iter) {
        Real mid = (lo + hi) / 2L;
        CMat shifted = y;
        for (int i = 0; i < n; ++i)
            shifted.at(i, i) = shifted.at(i, i) - Complex(mid, Real(0L, p));
        if (cholesky_pd(shifted)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (lo.is_zero()) {
        throw DomainError("positive definite matrix is nearly degenerate");
    }
    return lo * one_minus_pow2(-10, p);
}

RiemannMatrix::RiemannMatrix(CMat t, mpfr_prec_t p) {
    require_shape(t.rows == t.cols, "tau must be square");
    g = t.rows;
    prec = p;
    Real scale = max(Real(1L, p), max_abs(t));
    Real tol = scale * Real::pow2(1 - static_cast<long>(p), p);
    for (int i = 0; i < g; ++i) {
        for (int j = i + 1; j < g; ++j) {
            if (abs(t.at(i, j) - t.at(j, i)) > tol) {
                throw DomainError("tau is not symmetric");
            }
            Complex avg = (t.at(i, j) + t.at(j, i)) / Real(2L, p);
            t.at(i, j) = avg;
            t.at(j, i) = avg;
        }
    }
    CMat y(g, g, p);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            y.at(i, j) = Complex(t.at(i, j).im, Real(0L, p));
    if (!cholesky_pd(y)) {
        throw DomainError("Im tau is not positive definite");
    }
    tau = std::move(t);
}

RiemannMatrix scaled_tau(const RiemannMatrix& t, const Rat& factor) {
    if (sign_of(factor) <= 0) {
        throw DomainError("tau scaling factor must be positive");
    }
    Real f(factor, t.prec);
    CMat scaled = f * t.tau;
    return RiemannMatrix(std::move(scaled), t.prec);
}

PeriodMatrix::PeriodMatrix(CMat o1, CMat o2, mpfr_prec_t p, bool validate) {
    require_shape(o1.rows == o1.cols && o2.rows == o2.cols &&
                      o1.rows == o2.rows,
                  "period matrix blocks must be square of equal size");
    g = o1.rows;
    prec = p;
    omega1 = std::move(o1);
    omega2 = std::move(o2);
    if (!validate) return;

    CMat w(g, 2 * g, p);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            w.at(i, j) = omega1.at(i, j);
            w.at(i, g + j) = omega2.at(i, j);
        }
    CMat jc = cmat_of(j_matrix(g), p);
    CMat r1 = w * jc * w.transposed();
    Real scale = max(Real(1L, p), max_abs(w));
    Real tol = scale * scale *
               Real::pow2(-static_cast<long>(p) / 2, p);
    if (max_abs(r1) > tol) {
        throw DomainError("period matrix violates the Riemann relation");
    }
    // J^{-1} = -J for the standard symplectic form.
    CMat pairing = w.conjugated() * (Real(-1L, p) * jc) * w.transposed();
    CMat h = Complex(Real(0L, p), Real(2L, p)) * inverse(pairing);
    if (!cholesky_pd(h)) {
        throw DomainError("period matrix polarization is not positive");
    }
}

RiemannMatrix tau_of_omega(const PeriodMatrix& omega) {
    mpfr_prec_t p = omega.prec;
    CMat t = inverse(omega.omega2) * omega.omega1;
    // Valid periods give a symmetric tau; tolerate only rounding scaled by
    // the conditioning of omega2, then average the remainder away.
    Real tol = max(Real(1L, p), max_abs(t)) *
               Real::pow2(-static_cast<long>(p) / 2, p);
    for (int i = 0; i < t.rows; ++i)
        for (int j = i + 1; j < t.cols; ++j)
            if (abs(t.at(i, j) - t.at(j, i)) > tol) {
                throw DomainError("periods do not define a symmetric tau");
            }
    return RiemannMatrix(sym_average(t), p);
}

RiemannMatrix act(const IMat& m, const RiemannMatrix& tau) {
    int g = tau.g;
    require_shape(m.rows == 2 * g && m.cols == 2 * g,
                  "symplectic matrix size mismatch");
    if (!is_symplectic(m)) {
        throw DomainError("matrix is not symplectic");
    }
    mpfr_prec_t p = tau.prec;
    CMat a = cmat_of(m.block(0, 0, g, g), p);
    CMat b = cmat_of(m.block(0, g, g, g), p);
    CMat c = cmat_of(m.block(g, 0, g, g), p);
    CMat d = cmat_of(m.block(g, g, g, g), p);
    CMat num = a * tau.tau + b;
    CMat den = c * tau.tau + d;
    // Exact symplecticity makes the image symmetric by a theorem, so the
    // numerical asymmetry is pure rounding.
    return RiemannMatrix(sym_average(num * inverse(den)), p);
}

Complex j_factor(const IMat& m, const RiemannMatrix& tau) {
    int g = tau.g;
    require_shape(m.rows == 2 * g && m.cols == 2 * g,
                  "symplectic matrix size mismatch");
    mpfr_prec_t p = tau.prec;
    CMat c = cmat_of(m.block(g, 0, g, g), p);
    CMat d = cmat_of(m.block(g, g, g, g), p);
    return det(c * tau.tau + d);
}

PeriodMatrix omega_mul(const PeriodMatrix& omega, const IMat& m,
                       bool validate) {
    int g = omega.g;
    require_shape(m.rows == 2 * g && m.cols == 2 * g,
                  "right factor must be 2g x 2g");
    mpfr_prec_t p = omega.prec;
    CMat w(g, 2 * g, p);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            w.at(i, j) = omega.omega1.at(i, j);
            w.at(i, g + j) = omega.omega2.at(i, j);
        }
    CMat prod = w * cmat_of(m, p);
    return PeriodMatrix(prod.block(0, 0, g, g), prod.block(0, g, g, g), p,
                        validate);
}

}  // namespace ciani
