// Shared geometry types for the diagram pipeline: TerminalSet, BBox and
// exact polygon predicates.
#include "oovd/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace oovd {

TerminalSet::TerminalSet(std::vector<Point2> pts) : points(std::move(pts)) {
    std::map<Point2, int, Point2KeyLess> seen;
    for (size_t i = 0; i < points.size(); ++i) {
        auto [it, fresh] = seen.emplace(points[i], static_cast<int>(i));
        if (!fresh)
            throw std::invalid_argument("TerminalSet: duplicate point at index " +
                                        std::to_string(i + 1));
    }
}

BBox BBox::domain(long grid) {
    Rational margin((grid + 99) / 100);  // 1%, rounded up to an integer
    BBox b;
    b.xmin = -margin;
    b.ymin = -margin;
    b.xmax = Rational(grid) + margin;
    b.ymax = Rational(grid) + margin;
    return b;
}

BBox BBox::around(const TerminalSet& P, long grid) {
    Rational lo_x(0), lo_y(0), hi_x(grid), hi_y(grid);
    for (const Point2& p : P.points) {
        // Conservative rational bounds from the correctly rounded double.
        Rational px(std::floor(p.x.to_double()) - 1);
        Rational py(std::floor(p.y.to_double()) - 1);
        lo_x = std::min(lo_x, px);
        lo_y = std::min(lo_y, py);
        hi_x = std::max(hi_x, Rational(px + 2));
        hi_y = std::max(hi_y, Rational(py + 2));
    }
    Rational span = std::max(Rational(hi_x - lo_x), Rational(hi_y - lo_y));
    // integer margin: keeps domain coordinates integral for integer inputs
    Rational margin = std::max(Rational((span + 99) / 100), Rational(1));
    mpz_class mfloor = margin.get_num() / margin.get_den();
    margin = Rational(mfloor + 1);
    BBox b;
    b.xmin = lo_x - margin;
    b.ymin = lo_y - margin;
    b.xmax = hi_x + margin;
    b.ymax = hi_y + margin;
    return b;
}

bool BBox::contains(const Point2& p) const {
    return (p.x - QS3(xmin)).sign() >= 0 && (QS3(xmax) - p.x).sign() >= 0 &&
           (p.y - QS3(ymin)).sign() >= 0 && (QS3(ymax) - p.y).sign() >= 0;
}

std::vector<Segment2> BBox::sides() const {
    Point2 a{QS3(xmin), QS3(ymin)};
    Point2 b{QS3(xmax), QS3(ymin)};
    Point2 c{QS3(xmax), QS3(ymax)};
    Point2 d{QS3(xmin), QS3(ymax)};
    return {Segment2(a, b), Segment2(b, c), Segment2(c, d), Segment2(d, a)};
}

QS3 polygon_area2(const std::vector<Point2>& poly) {
    QS3 acc(0);
    size_t k = poly.size();
    for (size_t i = 0; i < k; ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % k];
        acc += p.x * q.y - q.x * p.y;
    }
    return acc;
}

namespace {

bool on_segment(const Point2& r, const Point2& p, const Point2& q) {
    if (orientation(p, q, r) != 0) return false;
    int cx = (r.x - p.x).sign() * (r.x - q.x).sign();
    int cy = (r.y - p.y).sign() * (r.y - q.y).sign();
    return cx <= 0 && cy <= 0;
}

}  // namespace

int point_in_polygon(const Point2& r, const std::vector<Point2>& poly) {
    bool inside = false;
    size_t k = poly.size();
    for (size_t i = 0; i < k; ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % k];
        if (on_segment(r, p, q)) return 0;
        int pb = (p.y - r.y).sign();  // <= 0 means p at or below the ray
        int qb = (q.y - r.y).sign();
        if ((pb <= 0) != (qb <= 0)) {
            int o = orientation(p, q, r);
            if (pb <= 0 ? o > 0 : o < 0) inside = !inside;
        }
    }
    return inside ? 1 : -1;
}

}  // namespace oovd
