#pragma once

#include "oovd/subdivision.hpp"

#include <vector>

namespace oovd {

// Planar subdivision induced by a set of segments inside a bounding box,
// with exact coordinates. Faces are the maximal connected open regions not
// crossed by any segment. Dangling edges (which separate nothing) are
// trimmed, so every face boundary is a closed walk.
struct Arrangement {
    std::vector<Point2> vertices;

    // Atomic edge k connects vertex pair edge_u[k], edge_v[k]. Half-edge
    // ids: 2k = u->v, 2k+1 = v->u.
    std::vector<int> edge_u;
    std::vector<int> edge_v;

    std::vector<int> next;     // per half-edge: successor in its face walk
    std::vector<int> face_of;  // per half-edge: face id, -1 for the outer face

    // Per face: one boundary half-edge and the precomputed walk data.
    std::vector<std::vector<int>> face_walk;      // half-edge ids, CCW
    std::vector<std::vector<Point2>> face_poly;   // cleaned polygon (collinear chain dropped)
    std::vector<Point2> face_rep;                 // strictly interior point

    int face_count() const { return static_cast<int>(face_walk.size()); }

    int twin(int h) const { return h ^ 1; }
    int origin(int h) const { return (h & 1) ? edge_v[h >> 1] : edge_u[h >> 1]; }
    int head(int h) const { return (h & 1) ? edge_u[h >> 1] : edge_v[h >> 1]; }
};

// Builds the arrangement of `segments` restricted to `bbox`. The four bbox
// sides are always part of the input. Duplicate and degenerate segments are
// tolerated; collinear overlaps are resolved by splitting. Throws if the
// segment graph is disconnected (a floating component would create a face
// with a hole, which this pipeline never produces).
Arrangement build_arrangement(const std::vector<Segment2>& segments, const BBox& bbox);

// Faces-only view of an arrangement: polygons and representatives, no data.
Subdivision arrangement_faces(const Arrangement& arr, const BBox& bbox);

// Strictly interior point of the region bounded by a CCW boundary walk.
Point2 interior_point(const std::vector<Point2>& poly);

}  // namespace oovd
