#pragma once

#include "oovd/arrangement.hpp"
#include "oovd/subdivision.hpp"

#include <vector>

namespace oovd {

// Brute-force evaluation of the face data definition at a point x: for each
// cone i the nearest terminal visible in that cone (ties to the lowest
// index, 0 if none), plus the overall nearest terminal. Throws if x
// coincides with a terminal.
SevenTuple oracle_seven_tuple(const TerminalSet& P, const Point2& x);

// Superset of the edges of the six OVDs, the classical Voronoi diagram and
// their common refinement: (a) the six cone boundary rays of every
// terminal, (b) per pair and cone, the bisector clipped to the two cone
// translates, (c) per pair, the bisector clipped to the bbox, (d) the four
// bbox sides.
std::vector<Segment2> candidate_segments(const TerminalSet& P, const BBox& bbox);

struct OovdOptions {
    // Clip candidates to their dominance-surviving portions before the
    // arrangement. Output is identical (extra candidate pieces only create
    // faces that the equal-tuple merge removes again); this keeps the
    // arrangement near the true diagram size. Disable to run the plain
    // superset pipeline on small instances.
    bool prune = true;
};

// Labels every arrangement face with the oracle tuple of its interior
// representative, merges edge-adjacent faces with identical tuples and
// re-traces the merged boundaries.
Subdivision label_and_merge(const Arrangement& arr, const TerminalSet& P, const BBox& bbox);

// Full pipeline: candidates -> arrangement -> label/merge.
Subdivision build_refined_oovd(const TerminalSet& P, const BBox& bbox,
                               const OovdOptions& opt = {});

}  // namespace oovd
