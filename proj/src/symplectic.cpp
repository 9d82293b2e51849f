#include "ciani/symplectic.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>

#include "ciani/sylvester.hpp"

namespace ciani {

namespace {

int mod2(const Int& x) { return mpz_odd_p(x.get_mpz_t()) ? 1 : 0; }

long to_long(const Int& x) {
    if (!x.fits_slong_p()) throw NumericError("integer too large for a word");
    return x.get_si();
}

void put_block(IMat& dst, int i0, int j0, const IMat& src) {
    for (int i = 0; i < src.rows; ++i)
        for (int j = 0; j < src.cols; ++j) dst.at(i0 + i, j0 + j) = src.at(i, j);
}

}  // namespace

IMat IMat::identity(int n) {
    IMat r(n, n);
    for (int i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
}

IMat IMat::from_rows(const std::vector<std::vector<long>>& rows) {
    if (rows.empty()) throw DomainError("empty matrix");
    IMat r(int(rows.size()), int(rows[0].size()));
    for (int i = 0; i < r.rows; ++i) {
        if (int(rows[i].size()) != r.cols) throw DomainError("ragged matrix rows");
        for (int j = 0; j < r.cols; ++j) r.at(i, j) = rows[i][j];
    }
    return r;
}

IMat IMat::operator*(const IMat& o) const {
    if (cols != o.rows) throw DomainError("matrix shape mismatch in product");
    IMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

IMat IMat::operator+(const IMat& o) const {
    if (rows != o.rows || cols != o.cols)
        throw DomainError("matrix shape mismatch in sum");
    IMat r(rows, cols);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] + o.e[i];
    return r;
}

IMat IMat::operator-(const IMat& o) const { return *this + (-o); }

IMat IMat::operator-() const {
    IMat r(rows, cols);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = -e[i];
    return r;
}

IMat IMat::transposed() const {
    IMat r(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

IMat IMat::block(int i0, int j0, int r, int c) const {
    if (i0 < 0 || j0 < 0 || i0 + r > rows || j0 + c > cols)
        throw DomainError("block out of range");
    IMat out(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) out.at(i, j) = at(i0 + i, j0 + j);
    return out;
}

bool IMat::is_zero() const {
    for (const Int& v : e)
        if (v != 0) return false;
    return true;
}

bool IMat::is_symmetric() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = i + 1; j < cols; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool IMat::divisible_by(long n) const {
    for (const Int& v : e)
        if (v % n != 0) return false;
    return true;
}

Rat imat_det(const IMat& m) {
    if (m.rows != m.cols) throw DomainError("determinant of a non-square matrix");
    std::vector<std::vector<Rat>> a(m.rows, std::vector<Rat>(m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) a[i][j] = Rat(m.at(i, j));
    return det_bareiss(a);
}

IMat unimodular_inverse(const IMat& m) {
    Rat d = imat_det(m);
    if (d != 1 && d != -1)
        throw DomainError("matrix is not unimodular: det = " + rat_to_string(d));
    const int n = m.rows;
    // Gauss-Jordan over the rationals; the result is integral because the
    // determinant is a unit.
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = Rat(m.at(i, j));
        a[i][n + i] = 1;
    }
    for (int k = 0; k < n; ++k) {
        int piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) throw NumericError("unimodular matrix with zero pivot column");
        std::swap(a[k], a[piv]);
        Rat inv = Rat(1) / a[k][k];
        for (int j = 0; j < 2 * n; ++j) a[k][j] *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            Rat f = a[i][k];
            for (int j = 0; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    IMat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat v = a[i][n + j];
            v.canonicalize();
            if (v.get_den() != 1)
                throw NumericError("inverse of a unimodular matrix not integral");
            r.at(i, j) = v.get_num();
        }
    return r;
}

int genus_of(const IMat& m) {
    if (m.rows == 0 || m.rows != m.cols || m.rows % 2 != 0)
        throw DomainError("matrix is not square of even dimension");
    return m.rows / 2;
}

IMat j_matrix(int g) {
    IMat j(2 * g, 2 * g);
    for (int i = 0; i < g; ++i) {
        j.at(i, g + i) = 1;
        j.at(g + i, i) = -1;
    }
    return j;
}

bool is_symplectic(const IMat& m) {
    int g = genus_of(m);
    IMat J = j_matrix(g);
    IMat A = m.block(0, 0, g, g), B = m.block(0, g, g, g);
    IMat C = m.block(g, 0, g, g), D = m.block(g, g, g, g);
    IMat I = IMat::identity(g);

    bool pairing = (m * J * m.transposed() == J);
    bool left = (A.transposed() * C).is_symmetric() &&
                (B.transposed() * D).is_symmetric() &&
                (A.transposed() * D - C.transposed() * B == I);
    bool right = (A * B.transposed()).is_symmetric() &&
                 (C * D.transposed()).is_symmetric() &&
                 (A * D.transposed() - B * C.transposed() == I);
    if (pairing != left || left != right)
        throw NumericError("symplectic characterizations disagree");
    return pairing;
}

IMat symplectic_inverse(const IMat& m) {
    int g = genus_of(m);
    if (!is_symplectic(m)) throw DomainError("matrix is not symplectic");
    IMat r(2 * g, 2 * g);
    put_block(r, 0, 0, m.block(g, g, g, g).transposed());
    put_block(r, 0, g, -m.block(0, g, g, g).transposed());
    put_block(r, g, 0, -m.block(g, 0, g, g).transposed());
    put_block(r, g, g, m.block(0, 0, g, g).transposed());
    return r;
}

IMat gen_m(const IMat& a) {
    IMat inv = unimodular_inverse(a);
    int g = a.rows;
    IMat r(2 * g, 2 * g);
    put_block(r, 0, 0, a);
    put_block(r, g, g, inv.transposed());
    return r;
}

IMat gen_u(const IMat& b) {
    if (!b.is_symmetric()) throw DomainError("upper unipotent block must be symmetric");
    int g = b.rows;
    IMat r = IMat::identity(2 * g);
    put_block(r, 0, g, b);
    return r;
}

IMat gen_v(const IMat& c) {
    if (!c.is_symmetric()) throw DomainError("lower unipotent block must be symmetric");
    int g = c.rows;
    IMat r = IMat::identity(2 * g);
    put_block(r, g, 0, c);
    return r;
}

bool in_principal(const IMat& m, long n) {
    int g = genus_of(m);
    if (!is_symplectic(m)) return false;
    return (m - IMat::identity(2 * g)).divisible_by(n);
}

bool in_gamma0(const IMat& m) {
    int g = genus_of(m);
    return is_symplectic(m) && m.block(0, g, g, g).divisible_by(2);
}

bool in_gamma0_transpose(const IMat& m) {
    int g = genus_of(m);
    return is_symplectic(m) && m.block(g, 0, g, g).divisible_by(2);
}

bool in_gamma1(const IMat& m) {
    int g = genus_of(m);
    if (!is_symplectic(m)) return false;
    IMat I = IMat::identity(g);
    return (m.block(0, 0, g, g) - I).divisible_by(2) &&
           (m.block(g, g, g, g) - I).divisible_by(2) &&
           m.block(0, g, g, g).divisible_by(2);
}

bool in_theta_group(const IMat& m) {
    int g = genus_of(m);
    if (!is_symplectic(m)) return false;
    IMat A = m.block(0, 0, g, g), B = m.block(0, g, g, g);
    IMat C = m.block(g, 0, g, g), D = m.block(g, g, g, g);
    IMat ab = A * B.transposed(), cd = C * D.transposed();
    for (int i = 0; i < g; ++i)
        if (mod2(ab.at(i, i)) != 0 || mod2(cd.at(i, i)) != 0) return false;
    return true;
}

bool is_diag_block(const IMat& m) {
    int g = genus_of(m);
    return is_symplectic(m) && m.block(0, g, g, g).is_zero() &&
           m.block(g, 0, g, g).is_zero();
}

bool is_upper_unipotent(const IMat& m) {
    int g = genus_of(m);
    IMat I = IMat::identity(g);
    return is_symplectic(m) && m.block(0, 0, g, g) == I &&
           m.block(g, g, g, g) == I && m.block(g, 0, g, g).is_zero();
}

bool is_lower_unipotent(const IMat& m) {
    int g = genus_of(m);
    IMat I = IMat::identity(g);
    return is_symplectic(m) && m.block(0, 0, g, g) == I &&
           m.block(g, g, g, g) == I && m.block(0, g, g, g).is_zero();
}

bool is_parabolic(const IMat& m) {
    int g = genus_of(m);
    return is_symplectic(m) && m.block(g, 0, g, g).is_zero();
}

std::vector<std::pair<std::string, bool>> membership_report(const IMat& m) {
    bool s = is_symplectic(m);
    auto guarded = [&](bool v) { return s && v; };
    return {
        {"symplectic", s},
        {"Gamma(2)", guarded(in_principal(m, 2))},
        {"Gamma^0(2)", guarded(in_gamma0(m))},
        {"Gamma_0(2)", guarded(in_gamma0_transpose(m))},
        {"Gamma^1(2)", guarded(in_gamma1(m))},
        {"Gamma(1,2)", guarded(in_theta_group(m))},
        {"M(Z)", guarded(is_diag_block(m))},
        {"U(Z)", guarded(is_upper_unipotent(m))},
        {"V(Z)", guarded(is_lower_unipotent(m))},
        {"P(Z)", guarded(is_parabolic(m))},
    };
}

int ThetaChar::parity() const {
    long s = 0;
    for (std::size_t i = 0; i < e1.size(); ++i) s += e1[i] * e2[i];
    return int(((s % 2) + 2) % 2);
}

ThetaChar ThetaChar::reduced() const {
    ThetaChar r = *this;
    for (long& v : r.e1) v = ((v % 2) + 2) % 2;
    for (long& v : r.e2) v = ((v % 2) + 2) % 2;
    return r;
}

bool ThetaChar::operator<(const ThetaChar& o) const {
    if (e1 != o.e1) return e1 < o.e1;
    return e2 < o.e2;
}

ThetaChar parse_characteristic(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw ParseError(text.size(), "expected 'digits,digits'");
    ThetaChar c;
    auto read = [&](std::size_t from, std::size_t to, std::vector<long>& out) {
        for (std::size_t i = from; i < to; ++i) {
            if (text[i] != '0' && text[i] != '1')
                throw ParseError(i, "characteristic digits must be 0 or 1");
            out.push_back(text[i] - '0');
        }
    };
    read(0, comma, c.e1);
    read(comma + 1, text.size(), c.e2);
    if (c.e1.empty() || c.e1.size() != c.e2.size())
        throw ParseError(comma, "the two halves must be nonempty and equal length");
    return c;
}

std::string format_characteristic(const ThetaChar& c) {
    std::string s;
    for (long v : c.e1) {
        if (v != 0 && v != 1) throw DomainError("characteristic entry not 0/1");
        s += char('0' + v);
    }
    s += ',';
    for (long v : c.e2) {
        if (v != 0 && v != 1) throw DomainError("characteristic entry not 0/1");
        s += char('0' + v);
    }
    return s;
}

namespace {

std::vector<ThetaChar> characteristics_with_parity(int g, int parity) {
    if (g < 1) throw DomainError("genus must be positive");
    std::vector<ThetaChar> out;
    for (unsigned a = 0; a < (1u << g); ++a)
        for (unsigned b = 0; b < (1u << g); ++b) {
            ThetaChar c;
            for (int i = 0; i < g; ++i) {
                c.e1.push_back((a >> (g - 1 - i)) & 1);
                c.e2.push_back((b >> (g - 1 - i)) & 1);
            }
            if (c.parity() == parity) out.push_back(c);
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<ThetaChar> even_characteristics(int g) {
    return characteristics_with_parity(g, 0);
}

std::vector<ThetaChar> odd_characteristics(int g) {
    return characteristics_with_parity(g, 1);
}

ThetaChar char_action(const IMat& m, const ThetaChar& eps) {
    int g = genus_of(m);
    if (eps.g() != g) throw DomainError("characteristic size mismatch");
    IMat A = m.block(0, 0, g, g), B = m.block(0, g, g, g);
    IMat C = m.block(g, 0, g, g), D = m.block(g, g, g, g);
    IMat cd = C * D.transposed(), ab = A * B.transposed();
    ThetaChar r;
    r.e1.resize(g);
    r.e2.resize(g);
    for (int i = 0; i < g; ++i) {
        Int v1 = cd.at(i, i), v2 = ab.at(i, i);
        for (int j = 0; j < g; ++j) {
            v1 += D.at(i, j) * eps.e1[j] - C.at(i, j) * eps.e2[j];
            v2 += -B.at(i, j) * eps.e1[j] + A.at(i, j) * eps.e2[j];
        }
        r.e1[i] = to_long(v1);
        r.e2[i] = to_long(v2);
    }
    return r;
}

Int phi(const ThetaChar& eps, const IMat& m) {
    int g = genus_of(m);
    if (eps.g() != g) throw DomainError("characteristic size mismatch");
    IMat A = m.block(0, 0, g, g), B = m.block(0, g, g, g);
    IMat C = m.block(g, 0, g, g), D = m.block(g, g, g, g);
    IMat db = D.transposed() * B, bc = B.transposed() * C, ca = C.transposed() * A;
    IMat ab = A * B.transposed();
    Int q1(0), q2(0), q3(0), lin(0);
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            q1 += eps.e1[i] * db.at(i, j) * eps.e1[j];
            q2 += eps.e1[i] * bc.at(i, j) * eps.e2[j];
            q3 += eps.e2[i] * ca.at(i, j) * eps.e2[j];
        }
        Int de(0);
        for (int j = 0; j < g; ++j)
            de += D.at(i, j) * eps.e1[j] - C.at(i, j) * eps.e2[j];
        lin += de * ab.at(i, i);
    }
    return -q1 + 2 * q2 - q3 + 2 * lin;
}

Int kappa_squared_parabolic(const IMat& m) {
    int g = genus_of(m);
    if (!is_parabolic(m))
        throw DomainError("kappa^2 needs a block upper-triangular symplectic matrix");
    Rat d = imat_det(m.block(g, g, g, g));
    if (d != 1 && d != -1)
        throw NumericError("parabolic D block is not unimodular");
    return d.get_num();
}

int pairing_mod2(unsigned u, unsigned v, int g) {
    unsigned lo = (1u << g) - 1;
    int p = __builtin_popcount((u & lo) & (v >> g)) +
            __builtin_popcount((u >> g) & (v & lo));
    return p & 1;
}

std::vector<unsigned> rref_span(std::vector<unsigned> rows) {
    // pivot = lowest set bit; arr[p] holds the row whose pivot is p.
    std::map<int, unsigned> arr;
    for (unsigned v : rows) {
        while (v != 0) {
            int p = __builtin_ctz(v);
            auto it = arr.find(p);
            if (it == arr.end()) {
                arr[p] = v;
                break;
            }
            v ^= it->second;
        }
    }
    // Clear each pivot coordinate from every other row, highest pivot
    // first; a row holds no bits below its own pivot, so by the time pivot
    // p is processed the row arr[p] carries no foreign pivot bits and one
    // pass suffices.
    std::vector<int> pivots;
    for (const auto& [p, row] : arr) pivots.push_back(p);
    for (auto pit = pivots.rbegin(); pit != pivots.rend(); ++pit)
        for (int q : pivots)
            if (q != *pit && ((arr[q] >> *pit) & 1)) arr[q] ^= arr[*pit];
    std::vector<unsigned> out;
    for (const auto& [p, row] : arr) out.push_back(row);
    return out;
}

unsigned char_vector(const ThetaChar& c) {
    ThetaChar r = c.reduced();
    unsigned v = 0;
    int g = r.g();
    for (int i = 0; i < g; ++i) {
        if (r.e1[i]) v |= 1u << i;
        if (r.e2[i]) v |= 1u << (g + i);
    }
    return v;
}

IsotropicSubspace subspace_of_characteristics(int g,
                                              const std::vector<ThetaChar>& cs) {
    std::vector<unsigned> rows;
    for (const ThetaChar& c : cs) {
        if (c.g() != g) throw DomainError("characteristic size mismatch");
        rows.push_back(char_vector(c));
    }
    IsotropicSubspace v{g, rref_span(rows)};
    for (std::size_t i = 0; i < v.basis.size(); ++i)
        for (std::size_t j = i; j < v.basis.size(); ++j)
            if (pairing_mod2(v.basis[i], v.basis[j], g) != 0)
                throw DomainError("span is not isotropic");
    if (v.dim() > g) throw DomainError("isotropic dimension exceeds the genus");
    return v;
}

namespace {

bool in_span(const std::vector<unsigned>& basis, unsigned v) {
    for (unsigned b : basis) {
        int p = __builtin_ctz(b);
        if ((v >> p) & 1) v ^= b;
    }
    return v == 0;
}

}  // namespace

std::vector<IsotropicSubspace> enumerate_max_isotropic(int g) {
    if (g < 1 || g > 3) throw DomainError("genus must be 1, 2 or 3");
    std::set<std::vector<unsigned>> level{{}};
    unsigned top = 1u << (2 * g);
    for (int d = 0; d < g; ++d) {
        std::set<std::vector<unsigned>> next;
        for (const auto& basis : level) {
            for (unsigned v = 1; v < top; ++v) {
                if (in_span(basis, v)) continue;
                bool ok = true;
                for (unsigned b : basis) ok = ok && pairing_mod2(b, v, g) == 0;
                if (!ok) continue;
                std::vector<unsigned> rows = basis;
                rows.push_back(v);
                next.insert(rref_span(rows));
            }
        }
        level = std::move(next);
    }
    std::vector<IsotropicSubspace> out;
    for (const auto& basis : level) out.push_back({g, basis});
    return out;
}

namespace {

// Integer symplectic transvection x -> x + <x, v> v for a 0/1 vector v,
// as the matrix 1 - v tv J.
IMat transvection(unsigned v, int g) {
    IMat col(2 * g, 1);
    for (int i = 0; i < 2 * g; ++i) col.at(i, 0) = (v >> i) & 1;
    return IMat::identity(2 * g) - (col * col.transposed()) * j_matrix(g);
}

unsigned apply_transvection_mod2(unsigned v, unsigned x, int g) {
    return pairing_mod2(x, v, g) ? (x ^ v) : x;
}

std::vector<unsigned> standard_subspace(int g) {
    std::vector<unsigned> rows;
    for (int i = 0; i < g; ++i) rows.push_back(1u << i);
    return rows;
}

// Breadth-first transvection words from V0 to every maximal isotropic
// subspace; the word is stored in application order.
using WordTable = std::map<std::vector<unsigned>, std::vector<unsigned>>;

WordTable build_words(int g, bool alternate) {
    std::vector<unsigned> gens;
    for (unsigned v = 1; v < (1u << (2 * g)); ++v) gens.push_back(v);
    if (alternate) std::reverse(gens.begin(), gens.end());

    WordTable words;
    std::deque<std::vector<unsigned>> queue;
    std::vector<unsigned> start = rref_span(standard_subspace(g));
    words[start] = {};
    queue.push_back(start);
    while (!queue.empty()) {
        std::vector<unsigned> cur = queue.front();
        queue.pop_front();
        for (unsigned v : gens) {
            std::vector<unsigned> img;
            for (unsigned b : cur) img.push_back(apply_transvection_mod2(v, b, g));
            img = rref_span(img);
            if (words.count(img)) continue;
            std::vector<unsigned> w = words[cur];
            w.push_back(v);
            words[img] = std::move(w);
            queue.push_back(img);
        }
    }
    return words;
}

const WordTable& word_table(int g, bool alternate) {
    static std::mutex mu;
    static std::map<std::pair<int, bool>, WordTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g, alternate);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_words(g, alternate)).first;
    return it->second;
}

}  // namespace

IMat transporter_lift(const IsotropicSubspace& v, bool alternate) {
    int g = v.g;
    if (g < 1 || g > 3) throw DomainError("genus must be 1, 2 or 3");
    std::vector<unsigned> target = rref_span(v.basis);
    if (int(target.size()) != g) throw DomainError("subspace is not maximal");
    for (std::size_t i = 0; i < target.size(); ++i)
        for (std::size_t j = i; j < target.size(); ++j)
            if (pairing_mod2(target[i], target[j], g) != 0)
                throw DomainError("subspace is not isotropic");

    const WordTable& words = word_table(g, alternate);
    auto it = words.find(target);
    if (it == words.end())
        throw NumericError("transvection search missed a maximal isotropic subspace");
    IMat m = IMat::identity(2 * g);
    for (unsigned w : it->second) m = transvection(w, g) * m;

    // Postconditions: exact symplectic lift carrying V0 onto the target.
    if (!is_symplectic(m)) throw NumericError("transporter lift is not symplectic");
    std::vector<unsigned> image;
    for (unsigned b : standard_subspace(g)) {
        unsigned x = 0;
        for (int j = 0; j < 2 * g; ++j) {
            if (!((b >> j) & 1)) continue;
            for (int i = 0; i < 2 * g; ++i)
                if (mod2(m.at(i, j))) x ^= 1u << i;
        }
        image.push_back(x);
    }
    if (rref_span(image) != target)
        throw NumericError("transporter lift misses the target subspace");
    return m;
}

Gamma0Decomposition decompose_gamma0(const IMat& m) {
    int g = genus_of(m);
    if (!in_gamma0(m)) throw DomainError("matrix is not in the B-even subgroup");

    // Reduce A mod 2 and invert over F_2, recording the row operations;
    // the same operations assembled over Z give a unimodular lift of A.
    std::vector<unsigned> rows(g, 0);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            if (mod2(m.at(i, j))) rows[i] |= 1u << j;
    IMat lift = IMat::identity(g);
    auto swap_rows = [&](int i, int j) {
        std::swap(rows[i], rows[j]);
        IMat e = IMat::identity(g);
        e.at(i, i) = 0;
        e.at(j, j) = 0;
        e.at(i, j) = 1;
        e.at(j, i) = 1;
        lift = lift * e;
    };
    auto add_row = [&](int src, int dst) {
        rows[dst] ^= rows[src];
        IMat e = IMat::identity(g);
        e.at(dst, src) = 1;
        lift = lift * e;
    };
    for (int k = 0; k < g; ++k) {
        int piv = k;
        while (piv < g && !((rows[piv] >> k) & 1)) ++piv;
        if (piv == g)
            throw NumericError("A block is singular mod 2 inside the B-even subgroup");
        if (piv != k) swap_rows(k, piv);
        for (int i = 0; i < g; ++i)
            if (i != k && ((rows[i] >> k) & 1)) add_row(k, i);
    }
    if ((lift - m.block(0, 0, g, g)).divisible_by(2) == false)
        throw NumericError("mod-2 lift of the A block drifted");

    Gamma0Decomposition out;
    out.p = gen_m(lift);
    IMat mp = m * symplectic_inverse(out.p);
    if (!in_gamma1(mp))
        throw NumericError("reduction by the diagonal factor left the wrong coset");

    IMat s(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) s.at(i, j) = mod2(mp.at(g + i, j));
    if (!s.is_symmetric())
        throw NumericError("C block of the unipotent reduction is not symmetric mod 2");
    out.vc = gen_v(s);
    out.gamma = mp * symplectic_inverse(out.vc);
    if (!in_principal(out.gamma, 2))
        throw NumericError("residual factor is not in the level-2 group");
    if (!(out.gamma * out.vc * out.p == m))
        throw NumericError("decomposition does not reassemble");
    return out;
}

IMat w_transporter() {
    return IMat::from_rows({{0, 0, 1, 0, -1, 0},
                            {0, 0, 1, 0, 0, 0},
                            {0, 0, 1, -1, 0, 0},
                            {0, 1, 0, 0, 0, 0},
                            {-1, -1, 0, 0, 0, 1},
                            {1, 0, 0, 0, 0, 0}});
}

std::pair<IMat, IMat> w_transporter_factors() {
    IMat q = IMat::from_rows({{0, 0, 0, 1, 0, 0},
                              {0, 0, 0, 0, 1, 0},
                              {0, 0, 1, 0, 0, 0},
                              {-1, 0, 0, 0, 0, 0},
                              {0, -1, 0, 0, 0, 0},
                              {0, 0, 0, 0, 0, 1}});
    IMat n = w_transporter();
    IMat l = n * symplectic_inverse(q);
    if (!is_parabolic(l)) throw NumericError("parabolic factor is not parabolic");
    if (!(l * q == n)) throw NumericError("transporter factorization broke");
    return {l, q};
}

IMat random_symplectic(std::mt19937_64& rng, int g, int word_len,
                       bool gamma0_only) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> small(-1, 1);
    std::uniform_int_distribution<int> idx(0, g - 1);
    IMat acc = IMat::identity(2 * g);
    for (int step = 0; step < word_len; ++step) {
        int k = kind(rng);
        if (k == 0) {
            IMat b(g, g);
            for (int i = 0; i < g; ++i)
                for (int j = i; j < g; ++j) {
                    int v = small(rng) * (gamma0_only ? 2 : 1);
                    b.at(i, j) = v;
                    b.at(j, i) = v;
                }
            acc = acc * gen_u(b);
        } else if (k == 1) {
            IMat c(g, g);
            for (int i = 0; i < g; ++i)
                for (int j = i; j < g; ++j) {
                    int v = small(rng);
                    c.at(i, j) = v;
                    c.at(j, i) = v;
                }
            acc = acc * gen_v(c);
        } else {
            IMat a = IMat::identity(g);
            for (int rep = 0; rep < 2; ++rep) {
                int i = idx(rng), j = idx(rng);
                if (i == j) {
                    a.at(i, i) = -a.at(i, i);  // row negation, det -1
                    for (int col = 0; col < g; ++col)
                        if (col != i) a.at(i, col) = -a.at(i, col);
                } else {
                    int f = small(rng);
                    for (int col = 0; col < g; ++col)
                        a.at(i, col) += f * a.at(j, col);
                }
            }
            acc = acc * gen_m(a);
        }
    }
    return acc;
}

}  // namespace ciani
