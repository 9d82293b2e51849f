#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "ciani/errors.hpp"
#include "ciani/rational.hpp"

namespace ciani {

// Arbitrary-precision binary float with an explicit per-value precision.
// Every operation rounds to nearest; a binary operator carries the larger
// precision of its two operands, so guard bits survive mixed expressions.
// A default-constructed Real is a 2-bit NaN sentinel: it poisons anything
// computed from it instead of silently downgrading precision.
class Real {
  public:
    Real() { mpfr_init2(v_, 2); }
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, checked(prec)); }
    Real(long value, mpfr_prec_t prec) {
        mpfr_init2(v_, checked(prec));
        mpfr_set_si(v_, value, MPFR_RNDN);
    }
    Real(const Int& value, mpfr_prec_t prec) {
        mpfr_init2(v_, checked(prec));
        mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
    }
    Real(const Rat& value, mpfr_prec_t prec) {
        mpfr_init2(v_, checked(prec));
        mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
    }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return is_zero() ? 0 : mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Copy rounded to a different precision.
    Real at_precision(mpfr_prec_t prec) const {
        Real r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    // Exact power of two, including negative exponents.
    static Real pow2(long e, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }
    static Real from_string(const std::string& text, mpfr_prec_t prec);

    std::string to_decimal(int significant_digits) const;

    friend Real operator+(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a) {
        Real r(a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& o) {
        widen(o);
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(const Real& o) {
        widen(o);
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(const Real& o) {
        widen(o);
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator/=(const Real& o) {
        widen(o);
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    friend Real operator*(const Real& a, long b) {
        Real r(a.precision());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator/(const Real& a, long b) {
        Real r(a.precision());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) {
        return mpfr_less_p(a.v_, b.v_) != 0;
    }
    friend bool operator>(const Real& a, const Real& b) {
        return mpfr_greater_p(a.v_, b.v_) != 0;
    }
    friend bool operator<=(const Real& a, const Real& b) {
        return mpfr_lessequal_p(a.v_, b.v_) != 0;
    }
    friend bool operator>=(const Real& a, const Real& b) {
        return mpfr_greaterequal_p(a.v_, b.v_) != 0;
    }
    friend bool operator==(const Real& a, const Real& b) {
        return mpfr_equal_p(a.v_, b.v_) != 0;
    }

    friend Real sqrt(const Real& a) {
        Real r(a.precision());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real abs(const Real& a) {
        Real r(a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real exp(const Real& a) {
        Real r(a.precision());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real log(const Real& a) {
        Real r(a.precision());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend void sin_cos(Real& s, Real& c, const Real& x) {
        Real rs(x.precision()), rc(x.precision());
        mpfr_sin_cos(rs.v_, rc.v_, x.v_, MPFR_RNDN);
        s = std::move(rs);
        c = std::move(rc);
    }
    friend Real gamma_fn(const Real& a) {
        Real r(a.precision());
        mpfr_gamma(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow_si(const Real& a, long e) {
        Real r(a.precision());
        mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    // a * 2^e, exact.
    friend Real ldexp2(const Real& a, long e) {
        Real r(a.precision());
        mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend Real hypot(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }
    friend Real min(const Real& a, const Real& b) { return b < a ? b : a; }

  private:
    static mpfr_prec_t checked(mpfr_prec_t prec) {
        if (prec < 2) throw DomainError("precision must be at least 2 bits");
        return prec;
    }
    static mpfr_prec_t join(const Real& a, const Real& b) {
        return std::max(a.precision(), b.precision());
    }
    // Promote in place before a compound assignment so the result precision
    // matches the free operators.
    void widen(const Real& o) {
        if (o.precision() > precision()) {
            mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
        }
    }

    mpfr_t v_;
};

struct Complex {
    Real re, im;

    Complex() = default;
    explicit Complex(mpfr_prec_t prec) : re(0L, prec), im(0L, prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long r, mpfr_prec_t prec) : re(r, prec), im(0L, prec) {}
    Complex(const Rat& r, mpfr_prec_t prec) : re(r, prec), im(0L, prec) {}

    mpfr_prec_t precision() const {
        return std::max(re.precision(), im.precision());
    }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }

    static Complex unit_i(mpfr_prec_t prec) {
        return Complex(Real(0L, prec), Real(1L, prec));
    }

    Complex conj() const { return Complex(re, -im); }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return Complex(a.re + b.re, a.im + b.im);
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return Complex(a.re - b.re, a.im - b.im);
    }
    friend Complex operator-(const Complex& a) {
        return Complex(-a.re, -a.im);
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Complex operator*(const Complex& a, const Real& b) {
        return Complex(a.re * b, a.im * b);
    }
    friend Complex operator*(const Real& a, const Complex& b) { return b * a; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return Complex((a.re * b.re + a.im * b.im) / d,
                       (a.im * b.re - a.re * b.im) / d);
    }
    friend Complex operator/(const Complex& a, const Real& b) {
        return Complex(a.re / b, a.im / b);
    }
    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        *this = *this * o;
        return *this;
    }

    friend Real abs(const Complex& a) { return hypot(a.re, a.im); }
    // |a|^2 without the square root.
    friend Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
};

Complex pow_si(const Complex& a, long e);

// Relative distance |a-b| / max(|a|, |b|); absolute distance when both
// magnitudes are below `floor`.
Real rel_distance(const Complex& a, const Complex& b, const Real& floor);

}  // namespace ciani
