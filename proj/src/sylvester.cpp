#include "ciani/sylvester.hpp"

namespace ciani {

namespace {

// Orientation of the canonical bases: the permutation matrix produced by
// f_i = x_i^3 has determinant -1, so the resultant is minus the raw
// determinant of the Sylvester matrix. Pinned by Res(x^3,y^3,z^3) = 1 and
// cross-checked by Res(2x^3,y^3,z^3) = 2^9 and the quartic discriminant
// identities.
const int kResultantSign = -1;

}  // namespace

Splitting split_monomial(const TernaryForm& f, const Monomial& nu,
                         const std::array<int, 3>& slot_order) {
    if (f.degree() != 3) throw DomainError("split requires a cubic");
    if (nu.degree() != 2) throw DomainError("nu must have degree 2");
    Splitting out{{TernaryForm(2 - nu.e[0]), TernaryForm(2 - nu.e[1]),
                   TernaryForm(2 - nu.e[2])}};
    for (const auto& [m, c] : f.terms()) {
        bool placed = false;
        for (int slot : slot_order) {
            int need = nu.e[slot] + 1;
            if (m.e[slot] >= need) {
                Monomial q = m;
                q.e[slot] -= need;
                out.f[slot].add_term(q, c);
                placed = true;
                break;
            }
        }
        if (!placed)
            throw NumericError("unsplittable monomial");  // impossible for |nu| = 2
    }
    return out;
}

SylvesterSystem make_system(const TernaryForm& f1, const TernaryForm& f2,
                            const TernaryForm& f3,
                            const std::array<int, 3>& slot_order) {
    SylvesterSystem sys;
    sys.f = {f1, f2, f3};
    for (const Monomial& nu : basis_vd(2)) {
        std::array<Splitting, 3> row{split_monomial(f1, nu, slot_order),
                                     split_monomial(f2, nu, slot_order),
                                     split_monomial(f3, nu, slot_order)};
        sys.splittings.push_back(row);
    }
    return sys;
}

std::vector<std::vector<Rat>> sylvester_matrix(const SylvesterSystem& sys) {
    const auto v4 = basis_vd(4);
    const auto v2 = basis_vd(2);
    const auto v1 = basis_vd(1);
    std::vector<std::vector<Rat>> mat(15, std::vector<Rat>(15, Rat(0)));
    auto put = [&](int col, const TernaryForm& g) {
        for (const auto& [m, c] : g.terms()) mat[basis_index(m)][col] = c;
    };
    int col = 0;
    // Columns 0..8: l * f_i for l in {x,y,z} and i = 1,2,3.
    for (int i = 0; i < 3; ++i)
        for (const Monomial& l : v1)
            put(col++, TernaryForm::monomial(l, Rat(1)) * sys.f[i]);
    // Columns 9..14: S(x^nu) = det of the split forms.
    for (std::size_t k = 0; k < v2.size(); ++k) {
        const auto& sp = sys.splittings[k];
        TernaryForm det(4);
        // 3x3 determinant of [f_{i,j}] by explicit expansion.
        for (int p = 0; p < 3; ++p) {
            int q = (p + 1) % 3, r = (p + 2) % 3;
            det = det + sp[0].f[p] * (sp[1].f[q] * sp[2].f[r] -
                                      sp[1].f[r] * sp[2].f[q]);
        }
        put(col++, det);
    }
    return mat;
}

Rat det_bareiss(std::vector<std::vector<Rat>> a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw DomainError("matrix not square");
    if (n == 0) return Rat(1);

    // Clear denominators row by row; track the product of multipliers.
    Rat denom_scale(1);
    std::vector<std::vector<Int>> b(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i) {
        Int l(1);
        for (const auto& v : a[i]) {
            Rat c(v);
            c.canonicalize();
            l = lcm(l, c.get_den());
        }
        denom_scale *= Rat(l);
        for (std::size_t j = 0; j < n; ++j) {
            Rat c = a[i][j] * Rat(l);
            c.canonicalize();
            b[i][j] = c.get_num();
        }
    }

    // Fraction-free elimination; divisions are exact.
    Int prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (b[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && b[piv][k] == 0) ++piv;
            if (piv == n) return Rat(0);
            std::swap(b[k], b[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = b[i][j] * b[k][k] - b[i][k] * b[k][j];
                Int quo, rem;
                mpz_tdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(),
                            prev.get_mpz_t());
                if (rem != 0) throw NumericError("fraction-free step not exact");
                b[i][j] = quo;
            }
        prev = b[k][k];
    }
    return Rat(sign) * Rat(b[n - 1][n - 1]) / denom_scale;
}

Rat resultant3(const TernaryForm& f1, const TernaryForm& f2,
               const TernaryForm& f3, const std::array<int, 3>& slot_order) {
    for (const TernaryForm* f : {&f1, &f2, &f3})
        if (f->degree() != 3) throw DomainError("resultant expects three cubics");
    SylvesterSystem sys = make_system(f1, f2, f3, slot_order);
    return Rat(kResultantSign) * det_bareiss(sylvester_matrix(sys));
}

Rat discriminant_quartic(const TernaryForm& q) {
    if (q.degree() != 4) throw DomainError("discriminant expects a quartic");
    return resultant3(partial_derivative(q, 1), partial_derivative(q, 2),
                      partial_derivative(q, 3));
}

}  // namespace ciani
