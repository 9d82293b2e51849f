#pragma once

#include <array>
#include <string>
#include <vector>

#include "ciani/form.hpp"
#include "ciani/matrix3.hpp"

namespace ciani {

// Symmetric matrix
//   [ a1 b3 b2 ]
//   [ b3 a2 b1 ]
//   [ b2 b1 a3 ]
// encoding the quartic a1 x^4 + a2 y^4 + a3 z^4
//                      + 2 (b1 y^2 z^2 + b2 x^2 z^2 + b3 x^2 y^2).
struct CianiMatrix {
    std::array<Rat, 3> a{Rat(1), Rat(1), Rat(1)};
    std::array<Rat, 3> b{Rat(0), Rat(0), Rat(0)};

    static CianiMatrix identity() { return CianiMatrix{}; }

    Mat3 to_mat3() const;
    static CianiMatrix from_mat3(const Mat3& m);  // requires symmetry

    // c_i = a_j a_k - b_i^2: the diagonal cofactors.
    std::array<Rat, 3> cofactors_c() const;
    // d_i = b_j b_k - a_i b_i: the off-diagonal cofactors.
    std::array<Rat, 3> cofactors_d() const;
    // delta_i = b_i^2 + c_i = a_j a_k.
    std::array<Rat, 3> deltas() const;

    Rat det() const { return to_mat3().det(); }
    Rat rho() const { return a[0] * a[1] * a[2]; }

    // Membership in S: nonzero diagonal product and nonzero c-cofactors.
    bool in_s() const;
    // S^x: additionally det != 0.
    bool in_s_cross() const;

    CianiMatrix scaled(const Rat& lambda) const;  // entrywise lambda * m
    CianiMatrix cof() const { return from_mat3(cofactor(to_mat3())); }
};

// Triple of elliptic curves E_i : y^2 = x (x^2 - 4 b_i x - 4 c_i) together
// with a marked square root rho of delta1*delta2*delta3, delta_i = b_i^2+c_i.
struct MarkedTriple {
    std::array<Rat, 3> b;
    std::array<Rat, 3> c;
    Rat rho;

    std::array<Rat, 3> deltas() const {
        return {b[0] * b[0] + c[0], b[1] * b[1] + c[1], b[2] * b[2] + c[2]};
    }
    // Discriminant of E_i up to the fixed constant: Delta_i = 2^12 c_i^2 delta_i.
    Rat curve_discriminant(int i) const;
    void validate() const;  // rho^2 = delta1 delta2 delta3, all c_i, delta_i != 0
};

TernaryForm ciani_form(const CianiMatrix& m);
// Inverse of ciani_form; rejects quartics outside the Ciani shape.
CianiMatrix ciani_of_form(const TernaryForm& q);

// D(m) = a1 a2 a3 (c1 c2 c3)^2 det(m)^4; the quartic discriminant of the
// associated form equals 2^54 D(m).
Rat closed_discriminant(const CianiMatrix& m);

// The correspondence between matrices in S and marked curve triples:
// mat_of(ab_of(m)) = m and ab_of(mat_of(t)) = t.
MarkedTriple ab_of(const CianiMatrix& m);
CianiMatrix mat_of(const MarkedTriple& t);

// T = det(Mat(t)); cross-checked against the expanded form
// 2 b1 b2 b3 - rho (sum b_i^2/delta_i - 1).
Rat t_invariant(const MarkedTriple& t);

// X(m) = (a1 a2 a3)^4 (c1 c2 c3)^2 det(m).
Rat x_invariant(const CianiMatrix& m);

enum class Label {
    HyperellipticJacobian,
    NonHyperellipticJacobian,
    QuadraticTwistObstruction,
};
std::string label_name(Label l);

struct Classification {
    Label label;
    Rat t;          // the invariant T = det m
    bool square;    // T a rational square
    bool has_twist = false;
    Rat twist_d;            // = det m, when has_twist
    CianiMatrix twisted;    // m_d = d * m; curves y^2 = x(x^2-4 b_i d x-4 c_i d^2)
};

// T = 0 -> HyperellipticJacobian; T a nonzero square -> NonHyperelliptic
// Jacobian; otherwise the quadratic twist by d = det m is the Jacobian.
Classification classify(const MarkedTriple& t);
Classification classify(const CianiMatrix& m);

// The quotient curves F_i : y^2 = x (x^2 - 4 d_i x - 4 a_i det m), where d_i
// is the off-diagonal cofactor. Requires m in S^x. Consistency with the
// cofactor matrix is asserted: ab_of(Cof m) = ({d_i, a_i det m}, c1 c2 c3).
struct QuotientCurves {
    std::array<Rat, 3> d;       // linear coefficients
    std::array<Rat, 3> a_det;   // constant coefficients a_i * det m
};
QuotientCurves quotient_curves(const CianiMatrix& m);

// One 2-torsion entry of a W-triple: the origin, the marked point (0,0),
// or one of (0, 2b_i +/- rho_i).
struct WPoint {
    enum Kind { O, Q, PR } kind = O;
    int sign = 0;  // +1 for P_i = (0, 2b_i + rho_i), -1 for R_i = (0, 2b_i - rho_i)
    bool operator==(const WPoint& o) const = default;
    auto operator<=>(const WPoint& o) const = default;
};
using WTriple = std::array<WPoint, 3>;

// The 8-element subgroup of E1 x E2 x E3 [2] determined by the sign
// choices s_i in {+1,-1} with product matching rho. Roots are symbolic:
// rho_i = s_i sqrt(delta_i), with sqrt(delta_i) the positive rational
// root when delta_i is a rational square and an abstract positive label
// otherwise; the product convention makes s1 s2 s3 = sgn(rho) (exact
// rational case) or +1 (abstract case) admissible.
std::vector<WTriple> w_subgroup(const MarkedTriple& t,
                                const std::array<int, 3>& signs);

// Legacy normalization of the obstruction invariant for curve data
// (A_i, B_i) = (-4 b_i, -4 c_i) with marked root product rho:
//   T0 = d1 d2 d3 (sum A_i^2/Delta_i - 1) - 2 A1 A2 A3,
// where Delta_i = A_i^2 - 4 B_i and d1 d2 d3 = -64 rho. Equals 64 * T.
Rat t0_invariant(const std::array<std::array<Rat, 2>, 3>& ab_coeffs,
                 const Rat& rho);
Rat t0_invariant(const MarkedTriple& t);

}  // namespace ciani
