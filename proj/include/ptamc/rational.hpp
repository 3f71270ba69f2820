#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace ptamc {

// Exact rational arithmetic for the model layer. Floating point is allowed
// only inside the numeric solvers (see reach.hpp).
using Rational = mpq_class;

// Parses "3", "-1/2", "0.25", "9/10". Decimal literals are converted exactly.
Rational parse_rational(const std::string& text);

// Canonical text form: integers as "n", denominators that divide a power of
// ten render as short decimals ("0.9"), everything else as "n/d".
std::string rational_to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational rational_from_uint64(std::uint64_t v) {
    Rational r;
    mpz_import(r.get_num_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    r.canonicalize();
    return r;
}

}  // namespace ptamc
