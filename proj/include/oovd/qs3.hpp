#pragma once

#include "oovd/rational.hpp"

#include <compare>
#include <iosfwd>
#include <string>

namespace oovd {

// Element of the field Q[sqrt(3)]: the value a + b*sqrt(3) with rational
// a, b. The representation is unique because sqrt(3) is irrational, so
// equality is component-wise. All diagram coordinates live here; the field
// is closed under every construction in this project (cone boundaries have
// slopes 0, +-sqrt(3), infinity, bisectors of rational points are rational,
// and line intersections stay in the field).
struct QS3 {
    Rational a;  // rational part
    Rational b;  // coefficient of sqrt(3)

    QS3() : a(0), b(0) {}
    QS3(long v) : a(v), b(0) {}
    QS3(const Rational& ra) : a(ra), b(0) {}
    QS3(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

    static QS3 sqrt3() { return QS3(Rational(0), Rational(1)); }

    bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
    bool is_rational() const { return sgn(b) == 0; }

    // Sign of the real number a + b*sqrt(3), by integer arithmetic only:
    // when a and b agree in sign the answer is immediate, otherwise the
    // dominant term is decided by comparing a^2 against 3*b^2.
    int sign() const;

    // Nearest double to a + b*sqrt(3) (round to nearest even). Uses MPFR
    // with adaptive precision and a certified enclosure, so the result is
    // correctly rounded (error <= 0.5 ulp). Throws std::overflow_error if
    // the value exceeds the double range.
    double to_double() const;

    QS3 operator-() const { return QS3(-a, -b); }
    QS3& operator+=(const QS3& o) { a += o.a; b += o.b; return *this; }
    QS3& operator-=(const QS3& o) { a -= o.a; b -= o.b; return *this; }
    QS3& operator*=(const QS3& o);
    QS3& operator/=(const QS3& o);

    friend QS3 operator+(QS3 x, const QS3& y) { x += y; return x; }
    friend QS3 operator-(QS3 x, const QS3& y) { x -= y; return x; }
    friend QS3 operator*(QS3 x, const QS3& y) { x *= y; return x; }
    friend QS3 operator/(QS3 x, const QS3& y) { x /= y; return x; }

    friend bool operator==(const QS3& x, const QS3& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const QS3& x, const QS3& y) { return !(x == y); }
    friend bool operator<(const QS3& x, const QS3& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QS3& x, const QS3& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const QS3& x, const QS3& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const QS3& x, const QS3& y) { return (x - y).sign() >= 0; }
};

QS3 qs3_from_strings(const std::string& a, const std::string& b);

// Component-wise ordering for use as a container key. Not the numeric
// order; use operator< for that.
struct QS3KeyLess {
    bool operator()(const QS3& x, const QS3& y) const {
        int c = cmp(x.a, y.a);
        if (c != 0) return c < 0;
        return cmp(x.b, y.b) < 0;
    }
};

std::ostream& operator<<(std::ostream& os, const QS3& x);

}  // namespace oovd
