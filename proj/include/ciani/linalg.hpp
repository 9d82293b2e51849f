#pragma once

#include <vector>

#include "ciani/real.hpp"
#include "ciani/symplectic.hpp"

namespace ciani {

// Dense complex matrix at a fixed working precision.
struct CMat {
    int rows = 0;
    int cols = 0;
    mpfr_prec_t prec = 2;
    std::vector<Complex> e;

    CMat() = default;
    CMat(int r, int c, mpfr_prec_t p);
    static CMat identity(int n, mpfr_prec_t p);

    Complex& at(int i, int j) { return e[std::size_t(i) * cols + j]; }
    const Complex& at(int i, int j) const {
        return e[std::size_t(i) * cols + j];
    }

    CMat transposed() const;
    CMat conjugated() const;
    CMat block(int i0, int j0, int r, int c) const;

    friend CMat operator+(const CMat& a, const CMat& b);
    friend CMat operator-(const CMat& a, const CMat& b);
    friend CMat operator*(const CMat& a, const CMat& b);
    friend CMat operator*(const Complex& s, const CMat& a);
    friend CMat operator*(const Real& s, const CMat& a);
};

CMat cmat_of(const IMat& m, mpfr_prec_t prec);
Real max_abs(const CMat& a);
Complex det(const CMat& a);
// Gauss-Jordan with partial pivoting; NumericError on a numerically
// singular pivot.
CMat inverse(const CMat& a);
// Hermitian positive-definiteness probe via Cholesky at the matrix
// precision; diagonal entries must be real to working accuracy.
bool cholesky_pd(const CMat& a);
// Certified-at-working-precision lower bound for the smallest eigenvalue of
// a real symmetric positive definite matrix: Gershgorin when positive,
// otherwise Cholesky bisection. DomainError when the matrix is not positive
// definite.
Real min_eig_lower_bound(const CMat& y);

// Symmetric tau with positive definite imaginary part. The constructor
// rejects asymmetry beyond 2^{1-p}*scale, symmetrizes exactly, and verifies
// positive definiteness.
struct RiemannMatrix {
    int g = 0;
    CMat tau;
    mpfr_prec_t prec = 2;

    RiemannMatrix() = default;
    RiemannMatrix(CMat t, mpfr_prec_t p);
};

RiemannMatrix scaled_tau(const RiemannMatrix& t, const Rat& factor);

// Omega = [omega1 omega2], g x 2g, subject to the Riemann bilinear
// relations: Omega J tOmega ~ 0 and 2i (conj(Omega) J^{-1} tOmega)^{-1}
// positive definite Hermitian.
struct PeriodMatrix {
    int g = 0;
    CMat omega1, omega2;
    mpfr_prec_t prec = 2;

    PeriodMatrix() = default;
    PeriodMatrix(CMat o1, CMat o2, mpfr_prec_t p, bool validate = true);
};

// tau = omega2^{-1} omega1; the result is validated as a Riemann matrix.
RiemannMatrix tau_of_omega(const PeriodMatrix& omega);
// Symplectic action (A tau + B)(C tau + D)^{-1}.
RiemannMatrix act(const IMat& m, const RiemannMatrix& tau);
// det(C tau + D).
Complex j_factor(const IMat& m, const RiemannMatrix& tau);
// Right multiplication [omega1 omega2] * m by an integer 2g x 2g matrix.
PeriodMatrix omega_mul(const PeriodMatrix& omega, const IMat& m,
                       bool validate = true);

}  // namespace ciani
