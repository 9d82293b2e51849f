#include "ciani/form.hpp"

#include <sstream>

namespace ciani {

TernaryForm TernaryForm::monomial(const Monomial& m, const Rat& coeff) {
    TernaryForm f(m.degree());
    f.add_term(m, coeff);
    return f;
}

Rat TernaryForm::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

void TernaryForm::add_term(const Monomial& m, const Rat& coeff) {
    if (coeff == 0) return;
    if (m.e[0] < 0 || m.e[1] < 0 || m.e[2] < 0)
        throw DomainError("negative exponent");
    if (m.degree() != degree_)
        throw DomainError("inhomogeneous term: degree " +
                          std::to_string(m.degree()) + " in a form of degree " +
                          std::to_string(degree_));
    auto [it, fresh] = terms_.emplace(m, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

TernaryForm TernaryForm::operator+(const TernaryForm& o) const {
    if (degree_ != o.degree_)
        throw DomainError("degree mismatch in form addition: " +
                          std::to_string(degree_) + " vs " +
                          std::to_string(o.degree_));
    TernaryForm r(*this);
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

TernaryForm TernaryForm::operator-(const TernaryForm& o) const {
    return *this + (o * Rat(-1));
}

TernaryForm TernaryForm::operator*(const TernaryForm& o) const {
    TernaryForm r(degree_ + o.degree_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m{{ma.e[0] + mb.e[0], ma.e[1] + mb.e[1], ma.e[2] + mb.e[2]}};
            r.add_term(m, ca * cb);
        }
    return r;
}

TernaryForm TernaryForm::operator*(const Rat& c) const {
    TernaryForm r(degree_);
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.add_term(m, v * c);
    return r;
}

std::string TernaryForm::render() const {
    if (terms_.empty()) return "0";
    static const char* vars[3] = {"x", "y", "z"};
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) { out << "-"; a = -a; }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool constant = m.degree() == 0;
        bool unit = (a == 1);
        if (!unit || constant) out << rat_to_string(a);
        bool printed_var = false;
        for (int i = 0; i < 3; ++i) {
            if (m.e[i] == 0) continue;
            if (!unit || printed_var) out << "*";
            out << vars[i];
            if (m.e[i] > 1) out << "^" << m.e[i];
            printed_var = true;
        }
    }
    return out.str();
}

TernaryForm partial_derivative(const TernaryForm& f, int axis) {
    if (axis < 1 || axis > 3) throw DomainError("axis must be 1, 2 or 3");
    int k = axis - 1;
    TernaryForm r(f.degree() > 0 ? f.degree() - 1 : 0);
    for (const auto& [m, c] : f.terms()) {
        if (m.e[k] == 0) continue;
        Monomial d = m;
        d.e[k] -= 1;
        r.add_term(d, c * Rat(m.e[k]));
    }
    return r;
}

TernaryForm substitute_linear(const TernaryForm& f,
                              const std::array<std::array<Rat, 3>, 3>& g) {
    // Images of the three variables as linear forms.
    std::array<TernaryForm, 3> img{TernaryForm(1), TernaryForm(1), TernaryForm(1)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Monomial v{};
            v.e[j] = 1;
            img[i].add_term(v, g[i][j]);
        }
    TernaryForm r(f.degree());
    for (const auto& [m, c] : f.terms()) {
        TernaryForm t(0);
        t.add_term(Monomial{}, c);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < m.e[i]; ++k) t = t * img[i];
        r = r + t;
    }
    return r;
}

std::vector<Monomial> basis_vd(int d) {
    std::vector<Monomial> out;
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b)
            out.push_back(Monomial{{a, b, d - a - b}});
    return out;
}

int basis_index(const Monomial& m) {
    int d = m.degree(), idx = 0;
    for (int a = d; a > m.e[0]; --a) idx += d - a + 1;
    idx += (d - m.e[0]) - m.e[1];
    return idx;
}

}  // namespace ciani
