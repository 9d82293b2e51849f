#include "ciani/ciani.hpp"

#include <algorithm>

namespace ciani {

Mat3 CianiMatrix::to_mat3() const {
    Mat3 r;
    r.m[0] = {a[0], b[2], b[1]};
    r.m[1] = {b[2], a[1], b[0]};
    r.m[2] = {b[1], b[0], a[2]};
    return r;
}

CianiMatrix CianiMatrix::from_mat3(const Mat3& m) {
    if (!m.is_symmetric()) throw DomainError("matrix is not symmetric");
    CianiMatrix r;
    r.a = {m.m[0][0], m.m[1][1], m.m[2][2]};
    r.b = {m.m[1][2], m.m[0][2], m.m[0][1]};
    return r;
}

std::array<Rat, 3> CianiMatrix::cofactors_c() const {
    std::array<Rat, 3> c;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        c[i] = a[j] * a[k] - b[i] * b[i];
    }
    return c;
}

std::array<Rat, 3> CianiMatrix::cofactors_d() const {
    std::array<Rat, 3> d;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        d[i] = b[j] * b[k] - a[i] * b[i];
    }
    return d;
}

std::array<Rat, 3> CianiMatrix::deltas() const {
    std::array<Rat, 3> d;
    auto c = cofactors_c();
    for (int i = 0; i < 3; ++i) d[i] = b[i] * b[i] + c[i];
    return d;
}

bool CianiMatrix::in_s() const {
    if (a[0] * a[1] * a[2] == 0) return false;
    auto c = cofactors_c();
    return c[0] * c[1] * c[2] != 0;
}

bool CianiMatrix::in_s_cross() const { return in_s() && det() != 0; }

CianiMatrix CianiMatrix::scaled(const Rat& lambda) const {
    CianiMatrix r;
    for (int i = 0; i < 3; ++i) {
        r.a[i] = a[i] * lambda;
        r.b[i] = b[i] * lambda;
    }
    return r;
}

Rat MarkedTriple::curve_discriminant(int i) const {
    Rat d = b[i] * b[i] + c[i];
    return Rat(4096) * c[i] * c[i] * d;
}

void MarkedTriple::validate() const {
    auto d = deltas();
    for (int i = 0; i < 3; ++i) {
        if (c[i] == 0 || d[i] == 0)
            throw DomainError("degenerate curve in triple: c_" +
                              std::to_string(i + 1) + " or delta_" +
                              std::to_string(i + 1) + " vanishes");
    }
    if (rho * rho != d[0] * d[1] * d[2])
        throw DomainError("marked root invalid: rho^2 != delta1 delta2 delta3");
}

TernaryForm ciani_form(const CianiMatrix& m) {
    TernaryForm q(4);
    q.add_term(Monomial{{4, 0, 0}}, m.a[0]);
    q.add_term(Monomial{{0, 4, 0}}, m.a[1]);
    q.add_term(Monomial{{0, 0, 4}}, m.a[2]);
    q.add_term(Monomial{{0, 2, 2}}, 2 * m.b[0]);
    q.add_term(Monomial{{2, 0, 2}}, 2 * m.b[1]);
    q.add_term(Monomial{{2, 2, 0}}, 2 * m.b[2]);
    return q;
}

CianiMatrix ciani_of_form(const TernaryForm& q) {
    if (q.degree() != 4) throw DomainError("not a quartic");
    static const Monomial allowed[6] = {
        Monomial{{4, 0, 0}}, Monomial{{0, 4, 0}}, Monomial{{0, 0, 4}},
        Monomial{{0, 2, 2}}, Monomial{{2, 0, 2}}, Monomial{{2, 2, 0}}};
    for (const auto& [mono, coeff] : q.terms()) {
        bool ok = false;
        for (const auto& al : allowed) ok = ok || (mono == al);
        if (!ok)
            throw DomainError("quartic has a monomial outside the biquadratic shape");
    }
    CianiMatrix m;
    m.a = {q.coefficient(allowed[0]), q.coefficient(allowed[1]),
           q.coefficient(allowed[2])};
    m.b = {q.coefficient(allowed[3]) / 2, q.coefficient(allowed[4]) / 2,
           q.coefficient(allowed[5]) / 2};
    return m;
}

Rat closed_discriminant(const CianiMatrix& m) {
    auto c = m.cofactors_c();
    Rat det = m.det();
    Rat det2 = det * det;
    Rat ccc = c[0] * c[1] * c[2];
    return m.rho() * ccc * ccc * det2 * det2;
}

MarkedTriple ab_of(const CianiMatrix& m) {
    if (!m.in_s()) throw DomainError("matrix not in S");
    MarkedTriple t;
    t.b = m.b;
    t.c = m.cofactors_c();
    t.rho = m.rho();
    auto d = t.deltas();
    if (d[0] * d[1] * d[2] != t.rho * t.rho)
        throw DomainError("delta product mismatch");  // cannot happen in S
    return t;
}

CianiMatrix mat_of(const MarkedTriple& t) {
    t.validate();
    CianiMatrix m;
    auto d = t.deltas();
    for (int i = 0; i < 3; ++i) {
        m.a[i] = t.rho / d[i];
        m.b[i] = t.b[i];
    }
    if (!m.in_s()) throw DomainError("triple does not map into S");
    return m;
}

Rat t_invariant(const MarkedTriple& t) {
    Rat det = mat_of(t).det();
    auto d = t.deltas();
    Rat s = t.b[0] * t.b[0] / d[0] + t.b[1] * t.b[1] / d[1] +
            t.b[2] * t.b[2] / d[2] - 1;
    Rat expanded = 2 * t.b[0] * t.b[1] * t.b[2] - t.rho * s;
    if (det != expanded)
        throw NumericError("determinant and expanded T disagree");  // impossible
    return det;
}

Rat x_invariant(const CianiMatrix& m) {
    auto c = m.cofactors_c();
    Rat p = m.rho();
    Rat p2 = p * p;
    Rat ccc = c[0] * c[1] * c[2];
    return p2 * p2 * ccc * ccc * m.det();
}

std::string label_name(Label l) {
    switch (l) {
        case Label::HyperellipticJacobian: return "HyperellipticJacobian";
        case Label::NonHyperellipticJacobian: return "NonHyperellipticJacobian";
        case Label::QuadraticTwistObstruction: return "QuadraticTwistObstruction";
    }
    return "?";
}

Classification classify(const MarkedTriple& t) {
    Classification r;
    CianiMatrix m = mat_of(t);
    r.t = t_invariant(t);
    r.square = is_square_rational(r.t);
    if (r.t == 0) {
        r.label = Label::HyperellipticJacobian;
    } else if (r.square) {
        r.label = Label::NonHyperellipticJacobian;
    } else {
        r.label = Label::QuadraticTwistObstruction;
        r.has_twist = true;
        r.twist_d = r.t;
        r.twisted = m.scaled(r.twist_d);
    }
    return r;
}

Classification classify(const CianiMatrix& m) {
    if (!m.in_s()) throw DomainError("matrix not in S");
    return classify(ab_of(m));
}

QuotientCurves quotient_curves(const CianiMatrix& m) {
    if (!m.in_s_cross()) throw DomainError("matrix not in S^x");
    CianiMatrix mc = m.cof();
    QuotientCurves q;
    q.d = mc.b;
    q.a_det = mc.cofactors_c();
    Rat det = m.det();
    for (int i = 0; i < 3; ++i) {
        if (q.d[i] != m.cofactors_d()[i])
            throw NumericError("cofactor bookkeeping mismatch");
        if (q.a_det[i] != m.a[i] * det)
            throw NumericError("c-cofactor of Cof m is not a_i det m");
    }
    auto c = m.cofactors_c();
    if (mc.rho() != c[0] * c[1] * c[2])
        throw NumericError("rho(Cof m) != c1 c2 c3");
    return q;
}

std::vector<WTriple> w_subgroup(const MarkedTriple& t,
                                const std::array<int, 3>& signs) {
    t.validate();
    for (int s : signs)
        if (s != 1 && s != -1) throw DomainError("signs must be +1 or -1");
    // Branch convention: the product of the three canonical roots is |rho|,
    // so admissible sign triples satisfy s1 s2 s3 = sgn(rho).
    if (signs[0] * signs[1] * signs[2] != sgn(t.rho))
        throw DomainError("root product does not match the marked rho");
    auto pt = [&](int i, int pr) {
        WPoint p;
        p.kind = WPoint::PR;
        p.sign = pr * signs[i];
        return p;
    };
    WPoint o{WPoint::O, 0};
    WPoint q{WPoint::Q, 0};
    std::vector<WTriple> w;
    w.push_back({o, o, o});
    w.push_back({o, q, q});
    w.push_back({q, o, q});
    w.push_back({q, q, o});
    w.push_back({pt(0, 1), pt(1, 1), pt(2, 1)});
    w.push_back({pt(0, 1), pt(1, -1), pt(2, -1)});
    w.push_back({pt(0, -1), pt(1, 1), pt(2, -1)});
    w.push_back({pt(0, -1), pt(1, -1), pt(2, 1)});
    return w;
}

Rat t0_invariant(const std::array<std::array<Rat, 2>, 3>& ab_coeffs,
                 const Rat& rho) {
    Rat sum(0);
    Rat prod_a(1);
    for (int i = 0; i < 3; ++i) {
        const Rat& A = ab_coeffs[i][0];
        const Rat& B = ab_coeffs[i][1];
        Rat delta_big = A * A - 4 * B;  // = 16 delta_i
        if (delta_big == 0) throw DomainError("degenerate curve: Delta_i = 0");
        sum += A * A / delta_big;
        prod_a *= A;
    }
    Rat ddd = Rat(-64) * rho;  // d1 d2 d3 with d_i = -4 rho_i
    return ddd * (sum - 1) - 2 * prod_a;
}

Rat t0_invariant(const MarkedTriple& t) {
    std::array<std::array<Rat, 2>, 3> ab;
    for (int i = 0; i < 3; ++i)
        ab[i] = {Rat(-4) * t.b[i], Rat(-4) * t.c[i]};
    return t0_invariant(ab, t.rho);
}

}  // namespace ciani
