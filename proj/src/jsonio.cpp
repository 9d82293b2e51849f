#include "ciani/jsonio.hpp"

#include <cctype>
#include <cmath>
#include <fstream>

namespace ciani {

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw UsageError(std::string(what) + ": missing field '" + key + "'");
    }
    return *it;
}

long small_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) {
        throw UsageError(std::string(what) + ": expected an integer");
    }
    return j.get<long>();
}

// Numeric payloads are strings by contract, but bare JSON integers are
// accepted on input for hand-written files.
std::string number_text(const Json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw UsageError(std::string(what) + ": expected a numeric string");
}

Int int_of_text(const std::string& text, const char* what) {
    Int n;
    if (text.empty() || n.set_str(text, 10) != 0) {
        throw UsageError(std::string(what) + ": bad integer literal '" + text +
                         "'");
    }
    return n;
}

std::array<Rat, 3> rat_triple(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) {
        throw UsageError(std::string(what) + ": expected an array of 3 values");
    }
    std::array<Rat, 3> out;
    for (int i = 0; i < 3; ++i) out[i] = rat_from_string(number_text(j[i], what));
    return out;
}

CMat cmat_of_grids(const Json& re, const Json& im, int g, mpfr_prec_t prec,
                   const char* what) {
    if (!re.is_array() || !im.is_array() || int(re.size()) != g ||
        int(im.size()) != g) {
        throw UsageError(std::string(what) + ": re/im must be g x g arrays");
    }
    CMat t(g, g, prec);
    for (int i = 0; i < g; ++i) {
        const Json& rrow = re[i];
        const Json& irow = im[i];
        if (!rrow.is_array() || !irow.is_array() || int(rrow.size()) != g ||
            int(irow.size()) != g) {
            throw UsageError(std::string(what) + ": re/im must be g x g arrays");
        }
        for (int j = 0; j < g; ++j) {
            t.at(i, j) =
                Complex(Real::from_string(number_text(rrow[j], what), prec),
                        Real::from_string(number_text(irow[j], what), prec));
        }
    }
    return t;
}

// Scans a decimal literal (sign handled by the caller): digits with an
// optional point and an optional e/E exponent. Returns the consumed text.
std::string scan_decimal(const std::string& s, std::size_t& pos) {
    std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(unsigned(s[pos])) || s[pos] == '.'))
        ++pos;
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        std::size_t mark = pos++;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        if (pos < s.size() && std::isdigit(unsigned(s[pos]))) {
            while (pos < s.size() && std::isdigit(unsigned(s[pos]))) ++pos;
        } else {
            pos = mark;  // the 'e' did not start an exponent
        }
    }
    return s.substr(start, pos - start);
}

}  // namespace

int decimal_digits(mpfr_prec_t p) {
    return int(std::ceil(double(p) * 0.30103)) + 2;
}

Json json_of_real(const Real& x) {
    return Json{{"value", x.to_decimal(decimal_digits(x.precision()))},
                {"prec", long(x.precision())}};
}

Json json_of_complex(const Complex& z) {
    int digits = decimal_digits(z.precision());
    return Json{{"re", z.re.to_decimal(digits)},
                {"im", z.im.to_decimal(digits)},
                {"prec", long(z.precision())}};
}

Json json_of_form(const TernaryForm& f) {
    Json terms = Json::array();
    for (const auto& [mono, coeff] : f.terms()) {
        Rat c(coeff);
        c.canonicalize();
        terms.push_back(Json{{"exp", {mono.e[0], mono.e[1], mono.e[2]}},
                             {"num", c.get_num().get_str()},
                             {"den", c.get_den().get_str()}});
    }
    return Json{{"degree", f.degree()}, {"terms", std::move(terms)}};
}

TernaryForm form_of_json(const Json& j) {
    const char* what = "form";
    if (!j.is_object()) throw UsageError("form: expected a JSON object");
    TernaryForm f(int(small_int(field(j, "degree", what), what)));
    const Json& terms = field(j, "terms", what);
    if (!terms.is_array()) throw UsageError("form: 'terms' must be an array");
    for (const Json& t : terms) {
        const Json& exp = field(t, "exp", what);
        if (!exp.is_array() || exp.size() != 3) {
            throw UsageError("form: 'exp' must be an array of 3 exponents");
        }
        Monomial m;
        for (int i = 0; i < 3; ++i) m.e[i] = int(small_int(exp[i], what));
        Int num = int_of_text(number_text(field(t, "num", what), what), what);
        Int den = int_of_text(number_text(field(t, "den", what), what), what);
        if (den == 0) throw DomainError("form: zero denominator");
        Rat c(num, den);
        c.canonicalize();
        f.add_term(m, c);
    }
    return f;
}

Json json_of_matrix(const CianiMatrix& m) {
    Json a = Json::array(), b = Json::array();
    for (int i = 0; i < 3; ++i) {
        a.push_back(rat_to_string(m.a[i]));
        b.push_back(rat_to_string(m.b[i]));
    }
    return Json{{"a", std::move(a)}, {"b", std::move(b)}};
}

CianiMatrix matrix_of_json(const Json& j) {
    if (!j.is_object()) throw UsageError("matrix: expected a JSON object");
    CianiMatrix m;
    m.a = rat_triple(field(j, "a", "matrix"), "matrix");
    m.b = rat_triple(field(j, "b", "matrix"), "matrix");
    return m;
}

Json json_of_imat(const IMat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

IMat imat_of_json(const Json& j) {
    const Json& rows = j.is_object() ? field(j, "rows", "matrix") : j;
    if (!rows.is_array() || rows.empty()) {
        throw UsageError("matrix: expected an array of rows");
    }
    int r = int(rows.size());
    int c = int(rows[0].is_array() ? rows[0].size() : 0);
    if (c == 0) throw UsageError("matrix: rows must be non-empty arrays");
    IMat m(r, c);
    for (int i = 0; i < r; ++i) {
        if (!rows[i].is_array() || int(rows[i].size()) != c) {
            throw UsageError("matrix: ragged rows");
        }
        for (int k = 0; k < c; ++k) {
            m.at(i, k) =
                int_of_text(number_text(rows[i][k], "matrix"), "matrix");
        }
    }
    return m;
}

Json json_of_tau(const RiemannMatrix& t) {
    int g = t.g;
    int digits = decimal_digits(t.prec);
    Json re = Json::array(), im = Json::array();
    for (int i = 0; i < g; ++i) {
        Json rrow = Json::array(), irow = Json::array();
        for (int j = 0; j < g; ++j) {
            rrow.push_back(t.tau.at(i, j).re.to_decimal(digits));
            irow.push_back(t.tau.at(i, j).im.to_decimal(digits));
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return Json{{"g", g},
                {"re", std::move(re)},
                {"im", std::move(im)},
                {"prec", long(t.prec)}};
}

RiemannMatrix tau_of_json(const Json& j, mpfr_prec_t prec_override) {
    const char* what = "tau";
    if (!j.is_object()) throw UsageError("tau: expected a JSON object");
    int g = int(small_int(field(j, "g", what), what));
    if (g < 1 || g > 3) throw UsageError("tau: g must be 1, 2 or 3");
    mpfr_prec_t prec = prec_override;
    if (prec == 0) prec = mpfr_prec_t(small_int(field(j, "prec", what), what));
    if (prec < 2) throw UsageError("tau: bad precision");
    CMat t = cmat_of_grids(field(j, "re", what), field(j, "im", what), g, prec,
                           what);
    return RiemannMatrix(t, prec);
}

Complex complex_of_literal(const std::string& text, mpfr_prec_t prec) {
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < text.size() && std::isspace(unsigned(text[pos]))) ++pos;
    };
    Real re(0L, prec), im(0L, prec);
    bool seen_real = false, seen_imag = false;

    skip_space();
    while (pos < text.size()) {
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip_space();
        }
        std::string digits = scan_decimal(text, pos);
        bool imaginary = pos < text.size() && text[pos] == 'i';
        if (imaginary) ++pos;
        if (digits.empty() && !imaginary) {
            throw ParseError(pos, "bad complex literal '" + text + "'");
        }
        if (digits.empty()) digits = "1";  // bare "i"
        Real part = Real::from_string(digits, prec);
        if (sign < 0) part = -part;
        if (imaginary) {
            if (seen_imag) {
                throw ParseError(pos, "two imaginary parts in '" + text + "'");
            }
            im = part;
            seen_imag = true;
        } else {
            if (seen_real) {
                throw ParseError(pos, "two real parts in '" + text + "'");
            }
            re = part;
            seen_real = true;
        }
        skip_space();
    }
    if (!seen_real && !seen_imag) throw ParseError(0, "empty complex literal");
    return Complex(re, im);
}

std::array<RiemannMatrix, 3> tau_triple_of_literal(const std::string& text,
                                                   mpfr_prec_t prec) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        parts.push_back(text.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (parts.size() != 3) {
        throw UsageError("tau literal must list exactly 3 components");
    }
    auto point = [&](const std::string& s) {
        CMat t(1, 1, prec);
        t.at(0, 0) = complex_of_literal(s, prec);
        return RiemannMatrix(t, prec);
    };
    return {point(parts[0]), point(parts[1]), point(parts[2])};
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw UsageError("malformed JSON in '" + path + "'");
    return j;
}

}  // namespace ciani
