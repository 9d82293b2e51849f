#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ciani/rational.hpp"

namespace ciani {

// Dense integer matrix, row-major. Small and exact; all symplectic-group
// bookkeeping in this module runs through it.
struct IMat {
    int rows = 0, cols = 0;
    std::vector<Int> e;

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), e(std::size_t(r) * c) {}
    static IMat identity(int n);
    static IMat from_rows(const std::vector<std::vector<long>>& rows);

    Int& at(int i, int j) { return e[std::size_t(i) * cols + j]; }
    const Int& at(int i, int j) const { return e[std::size_t(i) * cols + j]; }

    bool operator==(const IMat& o) const = default;
    IMat operator*(const IMat& o) const;
    IMat operator+(const IMat& o) const;
    IMat operator-(const IMat& o) const;
    IMat operator-() const;
    IMat transposed() const;
    IMat block(int i0, int j0, int r, int c) const;
    bool is_zero() const;
    bool is_symmetric() const;
    // True iff every entry is divisible by n.
    bool divisible_by(long n) const;
};

// Exact determinant and inverse for small integer matrices; the inverse
// requires det = +-1 and stays integral.
Rat imat_det(const IMat& m);
IMat unimodular_inverse(const IMat& m);

// Genus of a 2g x 2g matrix; rejects odd or non-square shapes.
int genus_of(const IMat& m);

// J = [[0, 1_g], [-1_g, 0]], the Gram matrix of the symplectic pairing.
IMat j_matrix(int g);

// M J tM = J, cross-checked against the two equivalent block
// characterizations (tA C, tB D symmetric with tA D - tC B = 1, and the
// transposed variant); the three answers must agree.
bool is_symplectic(const IMat& m);

// [[tD, -tB], [-tC, tA]]; exact inverse of a symplectic matrix.
IMat symplectic_inverse(const IMat& m);

// Generators: diagonal embedding of GL_g(Z), and the two unipotent
// families with a symmetric parameter block.
IMat gen_m(const IMat& a);  // diag(A, tA^{-1}), |det A| = 1
IMat gen_u(const IMat& b);  // [[1, B], [0, 1]], B symmetric
IMat gen_v(const IMat& c);  // [[1, 0], [C, 1]], C symmetric

// Congruence and block subgroups. All of these imply is_symplectic.
bool in_principal(const IMat& m, long n);  // M = 1 mod n
bool in_gamma0(const IMat& m);             // B = 0 mod 2
bool in_gamma0_transpose(const IMat& m);   // C = 0 mod 2
bool in_gamma1(const IMat& m);             // A = D = 1 and B = 0 mod 2
bool in_theta_group(const IMat& m);        // (A tB)_0 = (C tD)_0 = 0 mod 2
bool is_diag_block(const IMat& m);         // B = C = 0
bool is_upper_unipotent(const IMat& m);    // A = D = 1, C = 0
bool is_lower_unipotent(const IMat& m);    // A = D = 1, B = 0
bool is_parabolic(const IMat& m);          // C = 0

// Name/value pairs for the CLI membership report, fixed order.
std::vector<std::pair<std::string, bool>> membership_report(const IMat& m);

// Theta characteristic [eps1; eps2] with integer entries. Only the mod-2
// class selects a thetanullwert, but the group action below is affine over
// the integers, so entries are kept exact.
struct ThetaChar {
    std::vector<long> e1, e2;

    int g() const { return int(e1.size()); }
    int parity() const;  // eps1 . eps2 mod 2
    bool is_even() const { return parity() == 0; }
    ThetaChar reduced() const;  // entries mod 2, in {0,1}
    bool operator==(const ThetaChar& o) const = default;
    bool operator<(const ThetaChar& o) const;
};

// Text form "101,010": eps1 digits, comma, eps2 digits (entries 0/1).
ThetaChar parse_characteristic(const std::string& text);
std::string format_characteristic(const ThetaChar& c);  // requires 0/1 entries

// All 2^{2g} characteristics with the requested parity, sorted; sizes are
// 2^{g-1}(2^g+1) even and 2^{g-1}(2^g-1) odd.
std::vector<ThetaChar> even_characteristics(int g);
std::vector<ThetaChar> odd_characteristics(int g);

// Affine action  [M.eps] = [D eps1 - C eps2 + (C tD)_0 ; -B eps1 + A eps2
// + (A tB)_0], integer-exact; reduce mod 2 to get the characteristic.
ThetaChar char_action(const IMat& m, const ThetaChar& eps);

// Phase exponent of the squared theta transformation: theta[M.eps](M.tau)^2
// = kappa^2 i^phi det(C tau + D) theta[eps](tau)^2.
//   phi = -(eps1.tDB.eps1 - 2 eps1.tBC.eps2 + eps2.tCA.eps2)
//         + 2 (D eps1 - C eps2) . (A tB)_0.
// Only i^phi is consumed downstream, so phi matters mod 4; this sign
// convention is the one validated against direct series evaluation.
Int phi(const ThetaChar& eps, const IMat& m);

// kappa(M)^2 = det D for block upper-triangular symplectic M.
Int kappa_squared_parabolic(const IMat& m);

// Subspace of F_2^{2g} in reduced row echelon form; each basis vector is a
// bitmask with bit j = coordinate j (0-based). Coordinates 0..g-1 pair with
// g..2g-1 under the symplectic form.
struct IsotropicSubspace {
    int g = 0;
    std::vector<unsigned> basis;

    int dim() const { return int(basis.size()); }
    bool maximal() const { return dim() == g; }
    bool operator==(const IsotropicSubspace& o) const = default;
};

// Symplectic pairing of two bitmask vectors, mod 2.
int pairing_mod2(unsigned u, unsigned v, int g);

// Reduced row echelon span of arbitrary generators (pivot = lowest set bit,
// rows sorted by pivot); the canonical representative of the subspace.
std::vector<unsigned> rref_span(std::vector<unsigned> rows);

// Subspace spanned by the reductions of a characteristic list; entries are
// stacked as (eps1; eps2) into bit positions (0..g-1; g..2g-1).
unsigned char_vector(const ThetaChar& c);
IsotropicSubspace subspace_of_characteristics(int g,
                                              const std::vector<ThetaChar>& cs);

// All maximal isotropic subspaces of F_2^{2g}, canonically ordered;
// counts are prod_{i=1..g} (2^i + 1): 3, 15, 135 for g = 1, 2, 3.
std::vector<IsotropicSubspace> enumerate_max_isotropic(int g);

// Integer symplectic M with M . V0 = V mod 2, where V0 = span(e_1..e_g).
// Built as a word of symplectic transvections found by breadth-first
// search over the 135 (resp. 15, 3) subspaces; deterministic. The
// alternate flag switches to a second fixed generator ordering, giving an
// independent lift of the same coset M Gamma_{0,g}(2).
IMat transporter_lift(const IsotropicSubspace& v, bool alternate = false);

// M = gamma * vc * p with gamma in Gamma_g(2), vc = [[1,0],[S,1]] for a
// symmetric 0/1 matrix S, and p = diag(A0, tA0^{-1}) with A0 unimodular.
struct Gamma0Decomposition {
    IMat gamma, vc, p;
};
Gamma0Decomposition decompose_gamma0(const IMat& m);

// Fixed 6x6 symplectic matrix carrying V0 onto the span of the three
// characteristics [000;011], [000;110], [111;000] that generate the
// two-torsion image of the W subgroup. Factors as L * Q with L block
// diagonal and Q a signed permutation, so kappa^2(N) = +-1.
IMat w_transporter();
std::pair<IMat, IMat> w_transporter_factors();  // {L, Q}, N = L * Q

// Deterministic pseudo-random element of Sp_2g(Z) as a bounded word in the
// generator families above; gamma0_only restricts to words staying in the
// B = 0 mod 2 subgroup.
IMat random_symplectic(std::mt19937_64& rng, int g, int word_len,
                       bool gamma0_only = false);

}  // namespace ciani
