#include "ciani/real.hpp"

#include <cstdlib>

namespace ciani {

Real Real::from_string(const std::string& text, mpfr_prec_t prec) {
    Real r(prec);
    if (text.empty()) throw ParseError(0, "empty numeric literal");
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
        throw ParseError(0, "invalid numeric literal: " + text);
    }
    return r;
}

std::string Real::to_decimal(int significant_digits) const {
    if (significant_digits < 1) significant_digits = 1;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", significant_digits - 1, v_);
    std::string out(buf ? buf : "");
    mpfr_free_str(buf);
    return out;
}

Complex pow_si(const Complex& a, long e) {
    mpfr_prec_t prec = a.precision();
    if (e == 0) return Complex(1L, prec);
    bool invert = e < 0;
    unsigned long n = invert ? 0UL - static_cast<unsigned long>(e)
                             : static_cast<unsigned long>(e);
    Complex base = a;
    Complex acc(1L, prec);
    while (n != 0) {
        if (n & 1UL) acc *= base;
        base *= base;
        n >>= 1;
    }
    if (invert) return Complex(1L, prec) / acc;
    return acc;
}

Real rel_distance(const Complex& a, const Complex& b, const Real& floor) {
    Real diff = abs(a - b);
    Real scale = max(abs(a), abs(b));
    if (scale <= floor) return diff;
    return diff / scale;
}

}  // namespace ciani
