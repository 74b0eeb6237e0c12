#include "oovd/geom.hpp"

#include <array>
#include <stdexcept>

namespace oovd {

const Point2& cone_dir(int i) {
    static const std::array<Point2, 6> dirs = {
        Point2(QS3(1), QS3(0)),
        Point2(QS3(1), QS3::sqrt3()),
        Point2(QS3(-1), QS3::sqrt3()),
        Point2(QS3(-1), QS3(0)),
        Point2(QS3(-1), -QS3::sqrt3()),
        Point2(QS3(1), -QS3::sqrt3()),
    };
    int k = ((i - 1) % 6 + 6) % 6;
    return dirs[static_cast<size_t>(k)];
}

int orientation(const Point2& p, const Point2& q, const Point2& r) {
    return cross(q - p, r - p).sign();
}

bool in_cone(const Point2& apex, ConeIndex i, const Point2& x) {
    Point2 v = x - apex;
    if (v.x.is_zero() && v.y.is_zero()) return false;
    return cross(cone_dir(i), v).sign() >= 0 && cross(cone_dir(i + 1), v).sign() < 0;
}

ConeIndex cone_of(const Point2& v) {
    if (v.x.is_zero() && v.y.is_zero()) return 0;
    int sy = v.y.sign();
    // Halves first, then one or two cross signs inside the half.
    if (sy > 0 || (sy == 0 && v.x.sign() > 0)) {
        if (cross(cone_dir(2), v).sign() < 0) return 1;
        if (cross(cone_dir(3), v).sign() < 0) return 2;
        return 3;
    }
    if (cross(cone_dir(5), v).sign() < 0) return 4;
    if (cross(cone_dir(6), v).sign() < 0) return 5;
    return 6;
}

Line2 bisector(const Point2& p, const Point2& q) {
    if (p == q) throw std::invalid_argument("bisector: coincident points");
    QS3 a = (q.x - p.x) * QS3(2);
    QS3 b = (q.y - p.y) * QS3(2);
    QS3 c = p.x * p.x + p.y * p.y - q.x * q.x - q.y * q.y;
    return Line2(std::move(a), std::move(b), std::move(c));
}

std::optional<Point2> line_intersection(const Line2& l1, const Line2& l2) {
    QS3 det = l1.a * l2.b - l2.a * l1.b;
    if (det.is_zero()) return std::nullopt;
    QS3 x = (l1.b * l2.c - l2.b * l1.c) / det;
    QS3 y = (l1.c * l2.a - l2.c * l1.a) / det;
    return Point2(std::move(x), std::move(y));
}

QS3 squared_distance(const Point2& p, const Point2& q) {
    QS3 dx = q.x - p.x;
    QS3 dy = q.y - p.y;
    return dx * dx + dy * dy;
}

QS3 tangent_plane_gap(const Point2& p, const Point2& q) {
    // h_p(x,y) = 2 p_x x + 2 p_y y - p_x^2 - p_y^2
    QS3 fq = q.x * q.x + q.y * q.y;
    QS3 hpq = QS3(2) * (p.x * q.x + p.y * q.y) - p.x * p.x - p.y * p.y;
    return fq - hpq;
}

Point2 rotate60(const Point2& v, bool ccw) {
    // [[1/2, -+s3/2], [+-s3/2, 1/2]]
    QS3 half(Rational(1, 2));
    QS3 hs3(Rational(0), Rational(1, 2));
    if (ccw)
        return Point2(half * v.x - hs3 * v.y, hs3 * v.x + half * v.y);
    return Point2(half * v.x + hs3 * v.y, half * v.y - hs3 * v.x);
}

}  // namespace oovd
