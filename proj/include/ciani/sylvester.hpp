#pragma once

#include <array>
#include <vector>

#include "ciani/form.hpp"

namespace ciani {

// One splitting of a cubic f against nu in I_2 (|nu| = 2):
//   f = x^(nu1+1) f1 + y^(nu2+1) f2 + z^(nu3+1) f3,   deg f_j = 2 - nu_j.
// Every degree-3 monomial is divisible by at least one of the three slot
// powers, so the greedy assignment below always succeeds.
struct Splitting {
    std::array<TernaryForm, 3> f;
};

// Deterministic greedy split: each monomial of f goes to the first slot
// (in the given priority order over {0,1,2}) whose power divides it.
Splitting split_monomial(const TernaryForm& f, const Monomial& nu,
                         const std::array<int, 3>& slot_order = {0, 1, 2});

// The 6 splittings (one per nu in I_2) for each of the three cubics.
struct SylvesterSystem {
    std::array<TernaryForm, 3> f;
    // splittings[k][i] = split of f_i against the k-th monomial of V_2.
    std::vector<std::array<Splitting, 3>> splittings;
};

SylvesterSystem make_system(const TernaryForm& f1, const TernaryForm& f2,
                            const TernaryForm& f3,
                            const std::array<int, 3>& slot_order = {0, 1, 2});

// Matrix of the map (l1,l2,l3,g) -> l1 f1 + l2 f2 + l3 f3 + S(g) from
// V_1^3 x V_2 to V_4 in the canonical descending graded-lex bases;
// S(x^nu) is the 3x3 determinant of the split forms. Shape 15 x 15;
// rows index V_4 monomials, columns the domain basis.
std::vector<std::vector<Rat>> sylvester_matrix(const SylvesterSystem& sys);

// Exact determinant by fraction-free (Bareiss) elimination after clearing
// denominators. Works for any square rational matrix.
Rat det_bareiss(std::vector<std::vector<Rat>> a);

// Res(f1,f2,f3) for ternary cubics, normalized so Res(x^3,y^3,z^3) = 1.
// The slot order changes the matrix but not the determinant.
Rat resultant3(const TernaryForm& f1, const TernaryForm& f2,
               const TernaryForm& f3,
               const std::array<int, 3>& slot_order = {0, 1, 2});

// Disc Q = Res(dQ/dx, dQ/dy, dQ/dz) for a ternary quartic;
// vanishes exactly when the plane curve Q = 0 is singular, and scales as
// Disc(Q o g) = (det g)^36 Disc Q.
Rat discriminant_quartic(const TernaryForm& q);

}  // namespace ciani
