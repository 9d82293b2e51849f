#include "ciani/parse.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace ciani {
namespace {

// Mixed-degree polynomial used only while parsing; the top-level result
// must collapse to a single degree.
struct Poly {
    std::map<int, TernaryForm> parts;  // degree -> homogeneous component

    void add_in(const TernaryForm& f) {
        if (f.is_zero()) return;
        auto [it, fresh] = parts.emplace(f.degree(), f);
        if (!fresh) {
            it->second = it->second + f;
            if (it->second.is_zero()) parts.erase(it);
        }
    }
    Poly operator+(const Poly& o) const {
        Poly r(*this);
        for (const auto& [d, f] : o.parts) r.add_in(f);
        return r;
    }
    Poly operator*(const Poly& o) const {
        Poly r;
        for (const auto& [da, fa] : parts)
            for (const auto& [db, fb] : o.parts) r.add_in(fa * fb);
        return r;
    }
    Poly scaled(const Rat& c) const {
        Poly r;
        for (const auto& [d, f] : parts) r.add_in(f * c);
        return r;
    }
    bool is_constant() const {
        return parts.empty() || (parts.size() == 1 && parts.begin()->first == 0);
    }
    Rat constant_value() const {
        if (parts.empty()) return Rat(0);
        return parts.begin()->second.coefficient(Monomial{});
    }
};

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    TernaryForm run() {
        Poly p = expr();
        skip_ws();
        if (pos_ < s_.size())
            throw ParseError(pos_, std::string("unexpected character '") +
                                       s_[pos_] + "'");
        if (p.parts.empty()) return TernaryForm(0);
        if (p.parts.size() > 1) {
            std::ostringstream msg;
            msg << "inhomogeneous polynomial: degrees {";
            bool first = true;
            for (auto it = p.parts.rbegin(); it != p.parts.rend(); ++it) {
                if (!first) msg << ",";
                msg << it->first;
                first = false;
            }
            msg << "}";
            throw DomainError("inhomogeneous", msg.str());
        }
        return p.parts.begin()->second;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    int peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : -1;
    }

    Poly expr() {
        int sign = 1;
        int c = peek();
        if (c == '+' || c == '-') {
            ++pos_;
            sign = (c == '-') ? -1 : 1;
        }
        Poly acc = term().scaled(Rat(sign));
        while (true) {
            c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            Poly t = term();
            acc = acc + t.scaled(Rat(c == '-' ? -1 : 1));
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        while (true) {
            int c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * factor();
            } else if (c == '/') {
                std::size_t at = pos_;
                ++pos_;
                Poly d = factor();
                if (!d.is_constant() || d.constant_value() == 0)
                    throw ParseError(at, "division requires a nonzero constant divisor");
                acc = acc.scaled(Rat(1) / d.constant_value());
            } else if (c == '(' || c == 'x' || c == 'y' || c == 'z' ||
                       (c >= '0' && c <= '9')) {
                acc = acc * factor();  // juxtaposition
            } else {
                break;
            }
        }
        return acc;
    }

    Poly factor() {
        Poly base = primary();
        if (peek() == '^') {
            std::size_t at = pos_;
            ++pos_;
            skip_ws();
            long n = digits(at);
            Poly r;
            TernaryForm one(0);
            one.add_term(Monomial{}, Rat(1));
            r.add_in(one);
            for (long i = 0; i < n; ++i) r = r * base;
            return r;
        }
        return base;
    }

    Poly primary() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
        char c = s_[pos_];
        Poly r;
        if (c == '(') {
            std::size_t at = pos_;
            ++pos_;
            r = expr();
            if (peek() != ')') throw ParseError(pos_, "expected ')' to match '(' at position " +
                                                          std::to_string(at));
            ++pos_;
            return r;
        }
        if (c == 'x' || c == 'y' || c == 'z') {
            ++pos_;
            Monomial m{};
            m.e[c == 'x' ? 0 : (c == 'y' ? 1 : 2)] = 1;
            r.add_in(TernaryForm::monomial(m, Rat(1)));
            return r;
        }
        if (c >= '0' && c <= '9') {
            std::size_t at = pos_;
            Int num(digits_str(at));
            Rat v(num);
            // Fraction literal: digits '/' digits (binds tighter than the
            // '/' term operator when the numerator is a bare number).
            if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
                std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                ++pos_;
                std::size_t dat = pos_;
                Int den(digits_str(dat));
                if (den == 0) throw ParseError(dat, "zero denominator");
                v = Rat(num) / Rat(den);
            }
            v.canonicalize();
            TernaryForm k(0);
            k.add_term(Monomial{}, v);
            r.add_in(k);
            return r;
        }
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    std::string digits_str(std::size_t at) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_) throw ParseError(at, "expected digits");
        return s_.substr(start, pos_ - start);
    }

    long digits(std::size_t at) {
        std::string d = digits_str(at);
        if (d.size() > 4) throw ParseError(at, "exponent too large");
        return std::stol(d);
    }
};

}  // namespace

TernaryForm parse_form(const std::string& text) { return Parser(text).run(); }

}  // namespace ciani
