#pragma once

#include "oovd/qs3.hpp"

#include <optional>

namespace oovd {

struct Point2 {
    QS3 x;
    QS3 y;

    Point2() = default;
    Point2(QS3 px, QS3 py) : x(std::move(px)), y(std::move(py)) {}
    Point2(long px, long py) : x(px), y(py) {}

    friend bool operator==(const Point2& p, const Point2& q) {
        return p.x == q.x && p.y == q.y;
    }
    friend bool operator!=(const Point2& p, const Point2& q) { return !(p == q); }
};

// Vector arithmetic on points.
inline Point2 operator-(const Point2& p, const Point2& q) { return {p.x - q.x, p.y - q.y}; }
inline Point2 operator+(const Point2& p, const Point2& q) { return {p.x + q.x, p.y + q.y}; }

inline QS3 cross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }
inline QS3 dot(const Point2& u, const Point2& v) { return u.x * v.x + u.y * v.y; }

// Component-wise key order for containers.
struct Point2KeyLess {
    bool operator()(const Point2& p, const Point2& q) const {
        QS3KeyLess less;
        if (less(p.x, q.x)) return true;
        if (less(q.x, p.x)) return false;
        return less(p.y, q.y);
    }
};

// Lexicographic order by numeric value of (x, y).
struct Point2XYLess {
    bool operator()(const Point2& p, const Point2& q) const {
        int c = (p.x - q.x).sign();
        if (c != 0) return c < 0;
        return (p.y - q.y).sign() < 0;
    }
};

// Oriented line a*x + b*y + c = 0 with (a, b) the positive-side normal.
struct Line2 {
    QS3 a, b, c;

    Line2(QS3 la, QS3 lb, QS3 lc) : a(std::move(la)), b(std::move(lb)), c(std::move(lc)) {}

    // Line through p with direction d, positive side to the left of d.
    static Line2 through(const Point2& p, const Point2& d) {
        return Line2(-d.y, d.x, d.y * p.x - d.x * p.y);
    }

    QS3 eval(const Point2& p) const { return a * p.x + b * p.y + c; }
    int side(const Point2& p) const { return eval(p).sign(); }
};

struct Segment2 {
    Point2 a;
    Point2 b;

    Segment2() = default;
    Segment2(Point2 pa, Point2 pb) : a(std::move(pa)), b(std::move(pb)) {}
};

// One of the six 60-degree cones partitioning the plane. Cone i spans polar
// angles [(i-1)*60, i*60): the lower boundary ray is included, the upper is
// excluded and the apex belongs to no cone.
using ConeIndex = int;  // 1..6

// Boundary direction of cone i (1-based, accepts any i and wraps mod 6):
// d1=(1,0), d2=(1,s3), d3=(-1,s3), d4=(-1,0), d5=(-1,-s3), d6=(1,-s3).
const Point2& cone_dir(int i);

// Sign of (q-p) x (r-p); +1 means p,q,r counter-clockwise.
int orientation(const Point2& p, const Point2& q, const Point2& r);

// True iff v = x - apex is nonzero and lies in cone i: cross(d_i, v) >= 0
// and cross(d_{i+1}, v) < 0. Every nonzero v is in exactly one cone.
bool in_cone(const Point2& apex, ConeIndex i, const Point2& x);

// The cone containing nonzero v, or 0 for v = 0.
ConeIndex cone_of(const Point2& v);

// Perpendicular bisector of p, q as the line 2(q-p).x = |q|^2 - |p|^2,
// oriented so the positive side is the open halfplane closer to q.
Line2 bisector(const Point2& p, const Point2& q);

// Intersection point of two lines, or nothing when parallel or identical.
std::optional<Point2> line_intersection(const Line2& l1, const Line2& l2);

QS3 squared_distance(const Point2& p, const Point2& q);

// f(q) - h_p(q) for the paraboloid f(x,y) = x^2 + y^2 and its tangent plane
// h_p at p; equals squared_distance(p, q) exactly. Kept as a verification
// hook for the envelope identity behind Voronoi-type diagrams.
QS3 tangent_plane_gap(const Point2& p, const Point2& q);

// Rotation of v by +60 or -60 degrees; stays in Q[sqrt(3)].
Point2 rotate60(const Point2& v, bool ccw);

}  // namespace oovd
