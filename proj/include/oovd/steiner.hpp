#pragma once

#include "oovd/oovd_build.hpp"
#include "oovd/subdivision.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oovd {

// Tree on nodes 1..n (terminals), optionally plus the Steiner node n+1.
// Edge weights carry both the float length and the exact squared length;
// all tree computations compare lengths through the exact squares.
struct TreeEdge {
    int u = 0, v = 0;       // u < v
    double weight = 0.0;    // Euclidean length
    QS3 exact_sq;           // exact squared length

    friend bool operator==(const TreeEdge& a, const TreeEdge& b) {
        return a.u == b.u && a.v == b.v;
    }
};

struct Tree {
    int nodes = 0;
    std::vector<TreeEdge> edges;

    double total_length() const;
};

// H[u][v] = index (into tree.edges) of the maximum-weight edge on the tree
// path between u and v; -1 on the diagonal. Maxima are taken under the
// total edge order (exact squared weight, u, v), so they are unique.
struct LongestEdgeTable {
    int nodes = 0;
    std::vector<int> idx;  // (nodes+1)^2, 1-based access

    int at(int u, int v) const { return idx[(size_t)u * (size_t)(nodes + 1) + (size_t)v]; }
    int& at(int u, int v) { return idx[(size_t)u * (size_t)(nodes + 1) + (size_t)v]; }
};

enum class BucketKind { TripleOdd, TripleEven, Quad14, Quad25, Quad36 };

std::string bucket_kind_name(BucketKind k);

// Candidate neighbour set for the Steiner point: 3 or 4 terminal indices.
struct Bucket {
    std::vector<int> members;  // sorted, distinct, nonzero
    BucketKind kind = BucketKind::TripleOdd;

    friend bool operator==(const Bucket& a, const Bucket& b) {
        return a.members == b.members;
    }
};

struct StatsRecord {
    double improvement_pct = 0.0;
    double add_delete_ratio = 1.0;  // 1.0 by convention for MST-only solutions
    bool same_triangle = false;
    int steiner_degree = 0;
};

struct SteinerSolution {
    Tree tree;
    std::optional<Point2> steiner;
    double steiner_x = 0.0, steiner_y = 0.0;
    std::optional<Bucket> bucket;
    double length = 0.0;
    double mst_length = 0.0;

    bool improved() const { return steiner.has_value(); }
};

// Euclidean MST by exact squared-distance comparisons; ties broken by the
// lexicographic (u, v) pair so the result is deterministic even for
// cocircular inputs. Throws on duplicate points.
Tree build_mst(const TerminalSet& X);

// O(n^2) table of the longest edge on every tree path.
LongestEdgeTable longest_edge_table(const Tree& t);

// Feasible buckets from face tuples: {v1,v3,v5}, {v2,v4,v6}, {v1,v2,v4,v5},
// {v1,v3,v4,v6}, {v2,v3,v5,v6}; subsets with an empty slot or without v7
// are discarded (at most 3 per tuple survive), duplicates across tuples are
// removed keeping the first kind.
std::vector<Bucket> extract_buckets(const std::vector<SevenTuple>& tuples);

struct FermatResult {
    std::optional<Point2> point;
    int degenerate_vertex = -1;  // 0-based input vertex when degenerate
};

// Fermat point of a triangle. If some internal angle is >= 120 degrees (or
// the points are collinear) the minimizer degenerates to a vertex, reported
// instead of a point. Otherwise the Torricelli point is constructed exactly
// by intersecting two Simpson lines.
FermatResult fermat_point_3(const Point2& a, const Point2& b, const Point2& c);

// Fermat point of four points: the diagonal intersection when they are in
// strictly convex position, nothing otherwise.
std::optional<Point2> fermat_point_4(const Point2& a, const Point2& b, const Point2& c,
                                     const Point2& d);

// Minimum spanning tree of G_b = (X + s, E(T') + {s x_i : x_i in b}),
// computed by inserting the s-edges in increasing order and evicting the
// current maximum edge of each created cycle (H answers the first cycle
// query). Exactly matches a from-scratch MST of G_b under the total edge
// order. Throws if s coincides with a terminal.
Tree update_mst(const Tree& tp, const LongestEdgeTable& h, const TerminalSet& X,
                const Point2& s, const Bucket& b);

// Full 1-Steiner run: refined OOVD -> buckets -> MST + table -> per-bucket
// Fermat point and MST update, tracking the minimum length. Candidate
// lengths compare in float64 with relative tolerance 1e-12, ties broken by
// lexicographic bucket members.
SteinerSolution solve_1steiner(const TerminalSet& X);

// Same loop against a prebuilt subdivision (the bench reuses its OOVD).
SteinerSolution solve_1steiner_with(const TerminalSet& X, const Subdivision& sub);

// Exhaustive reference solver: all C(n,3)+C(n,4) subsets, each with a
// from-scratch MST of X + s. Intended for n <= 12.
SteinerSolution brute_force_1steiner(const TerminalSet& X);

StatsRecord tree_stats(const SteinerSolution& sol, const Tree& tp);

}  // namespace oovd
