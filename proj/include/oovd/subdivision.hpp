#pragma once

#include "oovd/geom.hpp"

#include <array>
#include <string>
#include <vector>

namespace oovd {

// Input terminals. Indices used in tuples, buckets and trees are 1-based;
// 0 is reserved for "no terminal". Generated instances have integer
// coordinates, but any exact coordinates are accepted.
struct TerminalSet {
    std::vector<Point2> points;

    TerminalSet() = default;
    explicit TerminalSet(std::vector<Point2> pts);

    int size() const { return static_cast<int>(points.size()); }
    const Point2& terminal(int id) const { return points[static_cast<size_t>(id - 1)]; }
};

// Axis-aligned problem domain box; all terminals strictly inside.
struct BBox {
    Rational xmin, ymin, xmax, ymax;

    static BBox domain(long grid);  // [0, grid]^2 expanded by 1% on each side
    static BBox around(const TerminalSet& P, long grid = 10000);

    bool contains(const Point2& p) const;
    Rational area() const { return (xmax - xmin) * (ymax - ymin); }
    std::vector<Segment2> sides() const;
    Point2 corner_min() const { return Point2(QS3(xmin), QS3(ymin)); }
    Point2 corner_max() const { return Point2(QS3(xmax), QS3(ymax)); }
};

// Face data of the refined OOVD: nearest terminal in each of the six cones
// (0 = cone empty) plus the overall nearest terminal.
struct SevenTuple {
    std::array<int, 6> v{0, 0, 0, 0, 0, 0};
    int v7 = 0;

    friend bool operator==(const SevenTuple&, const SevenTuple&) = default;
    friend auto operator<=>(const SevenTuple&, const SevenTuple&) = default;
};

struct FaceRecord {
    std::vector<Point2> polygon;  // CCW outer boundary, collinear chain vertices removed
    Point2 rep;                   // strictly interior representative
    SevenTuple data;
};

struct Subdivision {
    std::vector<FaceRecord> faces;
    std::string provenance;
    BBox bbox;
    int premerge_faces = 0;  // face count before the equal-tuple merge
};

// Exact signed area times 2 of a polygon given by its vertex cycle.
QS3 polygon_area2(const std::vector<Point2>& poly);

// -1 outside, 0 on the boundary, +1 strictly inside. Works for any closed
// boundary walk by crossing parity.
int point_in_polygon(const Point2& p, const std::vector<Point2>& poly);

}  // namespace oovd
