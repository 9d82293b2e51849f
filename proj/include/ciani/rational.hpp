#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "ciani/errors.hpp"

namespace ciani {

using Int = mpz_class;
using Rat = mpq_class;

// Canonical text form: "num" when the denominator is 1, else "num/den".
inline std::string rat_to_string(const Rat& q) {
    Rat c(q);
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Accepts "num", "num/den", and plain decimal fractions such as "-1.25".
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw ParseError(0, "empty rational literal");
    std::size_t dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        Rat v;
        if (v.get_num().set_str(digits, 10) != 0)
            throw ParseError(0, "bad rational literal '" + s + "'");
        Rat scale(1);
        for (std::size_t i = 0; i < frac_len; ++i) scale *= 10;
        v /= scale;
        v.canonicalize();
        return v;
    }
    Rat v;
    if (v.set_str(s, 10) != 0)
        throw ParseError(0, "bad rational literal '" + s + "'");
    if (v.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
    v.canonicalize();
    return v;
}

inline bool is_square_integer(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = sqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

// True iff q is the square of a rational: q >= 0 and, in lowest terms,
// both numerator and denominator are perfect integer squares.
inline bool is_square_rational(const Rat& q, Rat* root = nullptr) {
    Rat c(q);
    c.canonicalize();
    if (c < 0) return false;
    Int rn, rd;
    if (!is_square_integer(c.get_num(), &rn)) return false;
    if (!is_square_integer(c.get_den(), &rd)) return false;
    if (root) *root = Rat(rn) / Rat(rd);
    return true;
}

inline int sign_of(const Rat& q) { return sgn(q); }

}  // namespace ciani
