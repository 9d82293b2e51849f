#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ciani/ciani.hpp"
#include "ciani/matrix3.hpp"
#include "ciani/parse.hpp"
#include "ciani/sylvester.hpp"

using namespace ciani;

namespace {

TernaryForm random_cubic(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-5, 5);
    TernaryForm f(3);
    for (const Monomial& m : basis_vd(3)) f.add_term(m, Rat(coeff(rng)));
    return f;
}

Rat rat_pow(const Rat& base, int e) {
    Rat r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

const Rat kTwo54 = Rat(Int("18014398509481984"));

}  // namespace

TEST_CASE("splitting a single monomial") {
    TernaryForm z3 = parse_form("z^3");
    Splitting s = split_monomial(z3, Monomial{{0, 0, 2}});
    CHECK(s.f[0].is_zero());
    CHECK(s.f[1].is_zero());
    CHECK(s.f[2] == TernaryForm::monomial(Monomial{}, Rat(1)));
    CHECK(s.f[0].degree() == 2);
    CHECK(s.f[1].degree() == 2);
    CHECK(s.f[2].degree() == 0);
}

TEST_CASE("greedy splitting of a mixed cubic") {
    TernaryForm f = parse_form("x^3 + 2*x^2*y + 3*x*y*z + 4*z^3");
    Splitting s = split_monomial(f, Monomial{{1, 1, 0}});
    CHECK(s.f[0] == parse_form("x + 2*y"));
    CHECK(s.f[1].is_zero());
    CHECK(s.f[2] == parse_form("3*x*y + 4*z^2"));
}

TEST_CASE("splitting identity holds for every slot order") {
    std::mt19937_64 rng(42);
    const std::array<std::array<int, 3>, 3> orders{{{0, 1, 2}, {2, 1, 0}, {1, 0, 2}}};
    for (int trial = 0; trial < 30; ++trial) {
        TernaryForm f = random_cubic(rng);
        for (const Monomial& nu : basis_vd(2)) {
            for (const auto& ord : orders) {
                Splitting s = split_monomial(f, nu, ord);
                TernaryForm back(3);
                for (int j = 0; j < 3; ++j) {
                    Monomial p{};
                    p.e[j] = nu.e[j] + 1;
                    back = back + TernaryForm::monomial(p, Rat(1)) * s.f[j];
                    CHECK(s.f[j].degree() == 2 - nu.e[j]);
                }
                CHECK(back == f);
            }
        }
    }
}

TEST_CASE("resultant normalization") {
    TernaryForm x3 = parse_form("x^3"), y3 = parse_form("y^3"), z3 = parse_form("z^3");
    CHECK(resultant3(x3, y3, z3) == 1);
    CHECK(resultant3(parse_form("2*x^3"), y3, z3) == 512);
    CHECK(resultant3(x3, y3, x3) == 0);  // common zero (0:0:1)
    CHECK_THROWS_AS(resultant3(parse_form("x^2"), y3, z3), DomainError);
}

TEST_CASE("sylvester matrix shape") {
    auto sys = make_system(parse_form("x^3"), parse_form("y^3"), parse_form("z^3"));
    auto mat = sylvester_matrix(sys);
    REQUIRE(mat.size() == 15);
    for (const auto& row : mat) CHECK(row.size() == 15);
}

TEST_CASE("resultant does not depend on the splitting") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        TernaryForm f1 = random_cubic(rng);
        TernaryForm f2 = random_cubic(rng);
        TernaryForm f3 = random_cubic(rng);
        Rat a = resultant3(f1, f2, f3, {0, 1, 2});
        Rat b = resultant3(f1, f2, f3, {2, 1, 0});
        CHECK(a == b);
    }
}

TEST_CASE("resultant composition law") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> entry(-2, 2);
    int done = 0;
    while (done < 6) {
        Mat3 g;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g.m[i][j] = Rat(entry(rng));
        if (g.det() == 0) continue;
        TernaryForm f1 = random_cubic(rng);
        TernaryForm f2 = random_cubic(rng);
        TernaryForm f3 = random_cubic(rng);
        Rat lhs = resultant3(substitute_linear(f1, g.m), substitute_linear(f2, g.m),
                             substitute_linear(f3, g.m));
        Rat rhs = rat_pow(g.det(), 27) * resultant3(f1, f2, f3);
        CHECK(lhs == rhs);
        ++done;
    }
}

TEST_CASE("fermat quartic discriminant") {
    Rat disc = discriminant_quartic(parse_form("x^4 + y^4 + z^4"));
    CHECK(disc == kTwo54);
    CHECK(disc == kTwo54 * closed_discriminant(CianiMatrix::identity()));
}

TEST_CASE("singular quartics have zero discriminant") {
    CHECK(discriminant_quartic(parse_form("x^4")) == 0);
    CHECK(discriminant_quartic(parse_form("(x^2+y^2)^2")) == 0);
    CHECK_THROWS_AS(discriminant_quartic(parse_form("x^3")), DomainError);
}

TEST_CASE("discriminant transforms with the 36th power of det") {
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<int> qc(-3, 3);
    std::uniform_int_distribution<int> entry(-2, 2);
    int done = 0;
    while (done < 20) {
        Mat3 g;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g.m[i][j] = Rat(entry(rng));
        if (g.det() == 0) continue;
        TernaryForm q(4);
        for (const Monomial& m : basis_vd(4)) q.add_term(m, Rat(qc(rng)));
        Rat lhs = discriminant_quartic(substitute_linear(q, g.m));
        Rat rhs = rat_pow(g.det(), 36) * discriminant_quartic(q);
        CHECK(lhs == rhs);
        ++done;
    }
}

TEST_CASE("biquadratic discriminant matches the closed form") {
    std::mt19937_64 rng(161803);
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        CianiMatrix m;
        for (int i = 0; i < 3; ++i) {
            m.a[i] = Rat(entry(rng));
            m.b[i] = Rat(entry(rng));
        }
        CHECK(discriminant_quartic(ciani_form(m)) ==
              kTwo54 * closed_discriminant(m));
    }
}

TEST_CASE("rank-drop member of the family is singular") {
    CianiMatrix m;
    m.a = {Rat(1), Rat(1), Rat(2)};
    m.b = {Rat(1), Rat(1), Rat(0)};
    REQUIRE(m.det() == 0);
    CHECK(closed_discriminant(m) == 0);
    CHECK(discriminant_quartic(ciani_form(m)) == 0);
}

TEST_CASE("bareiss determinant basics") {
    std::vector<std::vector<Rat>> a{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    CHECK(det_bareiss(a) == -1);
    std::vector<std::vector<Rat>> b{
        {Rat(1, 2), Rat(1, 3)}, {Rat(1, 4), Rat(1, 5)}};
    CHECK(det_bareiss(b) == Rat(1, 10) - Rat(1, 12));
    std::vector<std::vector<Rat>> c{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
    CHECK(det_bareiss(c) == 0);
}
