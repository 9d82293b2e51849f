#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ciani/rational.hpp"

namespace ciani {

// Exponent triple of a monomial x^e0 y^e1 z^e2.
struct Monomial {
    std::array<int, 3> e{0, 0, 0};

    int degree() const { return e[0] + e[1] + e[2]; }
    bool operator==(const Monomial& o) const { return e == o.e; }
};

// Graded lexicographic order with x > y > z, descending: the leading
// monomial of a form compares smallest under this comparator, so the
// natural map iteration order equals the rendering order.
struct MonoDescGrlex {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        return a.e > b.e;
    }
};

// Homogeneous polynomial in x, y, z over the rationals. The degree is an
// explicit tag so the zero form of each degree is representable; every
// stored term has that exact degree and a nonzero coefficient.
class TernaryForm {
public:
    using TermMap = std::map<Monomial, Rat, MonoDescGrlex>;

    explicit TernaryForm(int degree = 0) : degree_(degree) {
        if (degree < 0) throw DomainError("negative degree");
    }

    static TernaryForm monomial(const Monomial& m, const Rat& coeff);

    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    Rat coefficient(const Monomial& m) const;

    // Adds c * x^m, enforcing homogeneity and dropping cancelled terms.
    void add_term(const Monomial& m, const Rat& coeff);

    TernaryForm operator+(const TernaryForm& o) const;
    TernaryForm operator-(const TernaryForm& o) const;
    TernaryForm operator*(const TernaryForm& o) const;
    TernaryForm operator*(const Rat& c) const;
    TernaryForm operator-() const { return *this * Rat(-1); }
    bool operator==(const TernaryForm& o) const {
        return degree_ == o.degree_ && terms_ == o.terms_;
    }

    std::string render() const;

private:
    int degree_;
    TermMap terms_;
};

// Formal partial derivative; axis is 1, 2 or 3 for x, y, z.
TernaryForm partial_derivative(const TernaryForm& f, int axis);

// f composed with v -> g . v for an exact rational 3x3 matrix g
// (row-major, g[i][j] multiplies variable j in the image of variable i:
// x -> g00 x + g01 y + g02 z, and so on). This is a right action.
TernaryForm substitute_linear(const TernaryForm& f,
                              const std::array<std::array<Rat, 3>, 3>& g);

// All monomials of degree d in descending graded-lex order
// (the canonical basis of the space V_d, of size (d+1)(d+2)/2).
std::vector<Monomial> basis_vd(int d);

// Position of m in basis_vd(m.degree()).
int basis_index(const Monomial& m);

}  // namespace ciani
