#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace oovd {

// Arbitrary-precision rational with positive denominator and
// gcd(|num|, den) = 1. mpq_class keeps this canonical form after
// every arithmetic operation.
using Rational = mpq_class;

inline int rational_sign(const Rational& r) { return sgn(r); }

// Always "num/den", even for integers ("3/1"), so that serialized
// values round-trip bit-exactly.
inline std::string rational_to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Accepts "p/q" or plain "p".
inline Rational rational_from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational: '" + s + "'");
    if (sgn(q.get_den()) == 0)
        throw std::invalid_argument("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace oovd
