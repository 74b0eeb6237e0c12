#include "oovd/qs3.hpp"

#include <mpfr.h>

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace oovd {

int QS3::sign() const {
    int sa = sgn(a);
    int sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |a| vs sqrt(3)|b| decides, via a^2 vs 3 b^2.
    // Equality would force a = b = 0, already excluded.
    mpq_class a2 = a * a;
    mpq_class b23 = 3 * b * b;
    return cmp(a2, b23) > 0 ? sa : sb;
}

QS3& QS3::operator*=(const QS3& o) {
    // (a1 + b1 s)(a2 + b2 s) = (a1 a2 + 3 b1 b2) + (a1 b2 + a2 b1) s
    Rational na = a * o.a + 3 * b * o.b;
    Rational nb = a * o.b + o.a * b;
    a = std::move(na);
    b = std::move(nb);
    return *this;
}

QS3& QS3::operator/=(const QS3& o) {
    // Rationalize by the conjugate: norm(a2 + b2 s) = a2^2 - 3 b2^2,
    // zero only for the zero element.
    Rational norm = o.a * o.a - 3 * o.b * o.b;
    if (sgn(norm) == 0)
        throw std::domain_error("QS3: division by zero");
    Rational na = (a * o.a - 3 * b * o.b) / norm;
    Rational nb = (b * o.a - a * o.b) / norm;
    a = std::move(na);
    b = std::move(nb);
    return *this;
}

namespace {

// Evaluates a + b*sqrt(3) at precision `prec` and reports the double the
// enclosure [m - err, m + err] rounds to, or nothing if the enclosure
// straddles a rounding boundary.
bool try_round(const mpq_class& a, const mpq_class& b, mpfr_prec_t prec,
               double& out) {
    mpfr_t s, t, m, err, lo, hi;
    mpfr_inits2(prec, s, t, m, err, lo, hi, (mpfr_ptr) nullptr);

    mpfr_sqrt_ui(s, 3, MPFR_RNDN);
    mpfr_set_q(t, b.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(t, t, s, MPFR_RNDN);
    mpfr_set_q(m, a.get_mpq_t(), MPFR_RNDN);
    mpfr_add(m, m, t, MPFR_RNDN);

    // Absolute error bound: (4|t| + 2|m|) * 2^-prec covers the rounding of
    // sqrt, set_q, mul and add with slack.
    mpfr_abs(err, t, MPFR_RNDU);
    mpfr_mul_ui(err, err, 4, MPFR_RNDU);
    mpfr_abs(lo, m, MPFR_RNDU);
    mpfr_mul_ui(lo, lo, 2, MPFR_RNDU);
    mpfr_add(err, err, lo, MPFR_RNDU);
    mpfr_mul_2si(err, err, -static_cast<long>(prec), MPFR_RNDU);

    mpfr_sub(lo, m, err, MPFR_RNDD);
    mpfr_add(hi, m, err, MPFR_RNDU);
    double dlo = mpfr_get_d(lo, MPFR_RNDN);
    double dhi = mpfr_get_d(hi, MPFR_RNDN);
    mpfr_clears(s, t, m, err, lo, hi, (mpfr_ptr) nullptr);
    out = dlo;
    return dlo == dhi;
}

}  // namespace

double QS3::to_double() const {
    double d;
    if (sgn(b) == 0) {
        // Pure rational: one correctly rounded conversion.
        mpfr_t m;
        mpfr_init2(m, 53);
        mpfr_set_q(m, a.get_mpq_t(), MPFR_RNDN);
        d = mpfr_get_d(m, MPFR_RNDN);
        mpfr_clear(m);
    } else {
        // a + b*sqrt(3) with b != 0 is irrational, so it is never exactly
        // halfway between doubles and the enclosure eventually resolves.
        mpfr_prec_t prec = 128;
        while (!try_round(a, b, prec, d)) {
            prec *= 2;
            if (prec > (1 << 22))
                throw std::runtime_error("QS3::to_double: precision blow-up");
        }
    }
    if (!std::isfinite(d))
        throw std::overflow_error("QS3::to_double: out of double range");
    return d;
}

QS3 qs3_from_strings(const std::string& a, const std::string& b) {
    return QS3(rational_from_string(a), rational_from_string(b));
}

std::ostream& operator<<(std::ostream& os, const QS3& x) {
    os << rational_to_string(x.a);
    if (sgn(x.b) != 0) os << (sgn(x.b) > 0 ? "+" : "") << rational_to_string(x.b) << "*s3";
    return os;
}

}  // namespace oovd
