#pragma once

#include <array>
#include <string>

#include "json.hpp"

#include "ciani/ciani.hpp"
#include "ciani/form.hpp"
#include "ciani/linalg.hpp"
#include "ciani/symplectic.hpp"

namespace ciani {

// Insertion-ordered so that repeated runs serialize byte-identically.
using Json = nlohmann::ordered_json;

// Significant decimal digits that round-trip a binary precision of p bits.
int decimal_digits(mpfr_prec_t p);

// Every numeric payload is transported as a string: rationals in the
// canonical "num" / "num/den" form, reals as decimal with an explicit
// precision field. Structural integers (degrees, exponents, counts) stay
// native JSON numbers.
Json json_of_real(const Real& x);
Json json_of_complex(const Complex& z);

// {"degree": d, "terms": [{"exp": [e0,e1,e2], "num": "...", "den": "..."}]}
Json json_of_form(const TernaryForm& f);
TernaryForm form_of_json(const Json& j);

// {"a": ["...","...","..."], "b": ["...","...","..."]}
Json json_of_matrix(const CianiMatrix& m);
CianiMatrix matrix_of_json(const Json& j);

// Square integer matrix as rows of decimal strings (numbers accepted too).
Json json_of_imat(const IMat& m);
IMat imat_of_json(const Json& j);

// {"g": g, "re": [[...]], "im": [[...]], "prec": p} with decimal strings.
// A nonzero prec override re-rounds the entries while reading.
Json json_of_tau(const RiemannMatrix& t);
RiemannMatrix tau_of_json(const Json& j, mpfr_prec_t prec_override = 0);

// Parses one complex literal: "1.5", "0.8i", "-0.25+1.3i", "i", "2-i".
// Exponents ("1e-3") are accepted inside the decimal parts.
Complex complex_of_literal(const std::string& text, mpfr_prec_t prec);

// Comma-separated list of three complex literals, each placed on the
// diagonal as a 1x1 upper-half-plane point: "0.8i,1.1i,1.3i".
std::array<RiemannMatrix, 3> tau_triple_of_literal(const std::string& text,
                                                   mpfr_prec_t prec);

// Reads and parses a JSON document; unreadable or malformed files are
// reported as usage errors.
Json load_json(const std::string& path);

}  // namespace ciani
