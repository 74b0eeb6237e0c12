#include "oovd/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace oovd {

namespace {

struct WorkSeg {
    Point2 a, b;
    std::vector<Point2> cuts;
    // float box for the bucketing grid
    double xlo, xhi, ylo, yhi;
};

bool same_point(const Point2& p, const Point2& q) { return p == q; }

// Strictly between the endpoints of a segment known to be collinear with r.
bool strictly_inside(const Point2& r, const Point2& p, const Point2& q) {
    if (same_point(r, p) || same_point(r, q)) return false;
    int cx = (r.x - p.x).sign() * (r.x - q.x).sign();
    int cy = (r.y - p.y).sign() * (r.y - q.y).sign();
    return cx <= 0 && cy <= 0;
}

// Exact pairwise intersection; pushes breakpoints that split either segment.
void intersect_pair(WorkSeg& s, WorkSeg& t) {
    int o1 = orientation(s.a, s.b, t.a);
    int o2 = orientation(s.a, s.b, t.b);
    if (o1 == 0 && o2 == 0) {
        // Collinear: endpoints of one strictly inside the other.
        if (strictly_inside(t.a, s.a, s.b)) s.cuts.push_back(t.a);
        if (strictly_inside(t.b, s.a, s.b)) s.cuts.push_back(t.b);
        if (strictly_inside(s.a, t.a, t.b)) t.cuts.push_back(s.a);
        if (strictly_inside(s.b, t.a, t.b)) t.cuts.push_back(s.b);
        return;
    }
    int o3 = orientation(t.a, t.b, s.a);
    int o4 = orientation(t.a, t.b, s.b);
    if (o1 * o2 > 0 || o3 * o4 > 0) return;  // no straddle
    auto x = line_intersection(Line2::through(s.a, s.b - s.a),
                               Line2::through(t.a, t.b - t.a));
    if (!x) return;  // parallel, non-collinear
    if (strictly_inside(*x, s.a, s.b)) s.cuts.push_back(*x);
    if (strictly_inside(*x, t.a, t.b)) t.cuts.push_back(*x);
}

// CCW angular order of direction vectors, starting just above (1, 0).
bool dir_less(const Point2& d1, const Point2& d2) {
    auto half = [](const Point2& d) {
        int sy = d.y.sign();
        return (sy > 0 || (sy == 0 && d.x.sign() > 0)) ? 0 : 1;
    };
    int h1 = half(d1), h2 = half(d2);
    if (h1 != h2) return h1 < h2;
    return cross(d1, d2).sign() > 0;
}

}  // namespace

Point2 interior_point(const std::vector<Point2>& poly) {
    size_t k = poly.size();
    if (k < 3) throw std::invalid_argument("interior_point: degenerate boundary");

    Point2XYLess lex;
    // Occurrences of the lexicographic minimum vertex first (one of them is
    // strictly convex on a CCW outer boundary), then everything else as a
    // fallback.
    size_t best = 0;
    for (size_t i = 1; i < k; ++i)
        if (lex(poly[i], poly[best])) best = i;

    std::vector<size_t> tries;
    for (size_t i = 0; i < k; ++i)
        if (poly[i] == poly[best]) tries.push_back(i);
    for (size_t i = 0; i < k; ++i)
        if (!(poly[i] == poly[best])) tries.push_back(i);

    for (size_t vi : tries) {
        const Point2& a = poly[(vi + k - 1) % k];
        const Point2& v = poly[vi];
        const Point2& b = poly[(vi + 1) % k];
        if (orientation(a, v, b) <= 0) continue;

        // Farthest boundary vertex inside the closed ear triangle; if none,
        // the ear centroid is interior, otherwise the midpoint of the
        // diagonal v-q is.
        Line2 ab = Line2::through(a, b - a);
        bool found = false;
        Point2 q;
        QS3 qdist(0);
        for (size_t j = 0; j < k; ++j) {
            const Point2& w = poly[j];
            if (w == a || w == v || w == b) continue;
            if (orientation(a, v, w) < 0 || orientation(v, b, w) < 0 ||
                orientation(b, a, w) < 0)
                continue;
            QS3 d = ab.eval(w);
            if (d.sign() < 0) d = -d;
            if (!found || (d - qdist).sign() > 0 ||
                ((d - qdist).sign() == 0 && lex(w, q))) {
                q = w;
                qdist = d;
                found = true;
            }
        }
        Point2 rep;
        QS3 half(Rational(1, 2));
        QS3 third(Rational(1, 3));
        if (found)
            rep = Point2((v.x + q.x) * half, (v.y + q.y) * half);
        else
            rep = Point2((a.x + v.x + b.x) * third, (a.y + v.y + b.y) * third);
        if (point_in_polygon(rep, poly) > 0) return rep;
    }
    throw std::runtime_error("interior_point: no valid representative found");
}

Arrangement build_arrangement(const std::vector<Segment2>& segments, const BBox& bbox) {
    // 1. Normalize: canonical endpoint order, drop degenerate, dedup, and
    //    always include the bbox frame.
    Point2XYLess lex;
    std::vector<WorkSeg> segs;
    std::vector<Segment2> input = segments;
    for (const Segment2& side : bbox.sides()) input.push_back(side);

    std::vector<std::pair<Point2, Point2>> canon;
    canon.reserve(input.size());
    for (const Segment2& s : input) {
        if (s.a == s.b) continue;
        if (lex(s.a, s.b))
            canon.emplace_back(s.a, s.b);
        else
            canon.emplace_back(s.b, s.a);
    }
    auto pair_less = [&lex](const std::pair<Point2, Point2>& x,
                            const std::pair<Point2, Point2>& y) {
        Point2KeyLess kl;
        if (kl(x.first, y.first)) return true;
        if (kl(y.first, x.first)) return false;
        return kl(x.second, y.second);
    };
    std::sort(canon.begin(), canon.end(), pair_less);
    canon.erase(std::unique(canon.begin(), canon.end(),
                            [](const auto& x, const auto& y) {
                                return x.first == y.first && x.second == y.second;
                            }),
                canon.end());

    segs.reserve(canon.size());
    for (auto& [a, b] : canon) {
        WorkSeg w;
        w.a = a;
        w.b = b;
        double ax = a.x.to_double(), ay = a.y.to_double();
        double bx = b.x.to_double(), by = b.y.to_double();
        w.xlo = std::min(ax, bx);
        w.xhi = std::max(ax, bx);
        w.ylo = std::min(ay, by);
        w.yhi = std::max(ay, by);
        segs.push_back(std::move(w));
    }

    // 2. Candidate pairs via a uniform grid over float boxes (expanded by
    //    one cell, so float rounding cannot hide a true intersection).
    size_t m = segs.size();
    double gxlo = bbox.xmin.get_d() - 1, gxhi = bbox.xmax.get_d() + 1;
    double gylo = bbox.ymin.get_d() - 1, gyhi = bbox.ymax.get_d() + 1;
    int ncell = std::max(1, (int)std::sqrt((double)m / 2.0));
    double cw = (gxhi - gxlo) / ncell, ch = (gyhi - gylo) / ncell;
    auto cell_range = [&](double lo, double hi, double glo, double csz) {
        int c0 = (int)std::floor((lo - glo) / csz) - 1;
        int c1 = (int)std::floor((hi - glo) / csz) + 1;
        return std::pair<int, int>(std::clamp(c0, 0, ncell - 1), std::clamp(c1, 0, ncell - 1));
    };
    std::vector<std::vector<int>> cells((size_t)ncell * ncell);
    for (size_t i = 0; i < m; ++i) {
        auto [cx0, cx1] = cell_range(segs[i].xlo, segs[i].xhi, gxlo, cw);
        auto [cy0, cy1] = cell_range(segs[i].ylo, segs[i].yhi, gylo, ch);
        for (int cx = cx0; cx <= cx1; ++cx)
            for (int cy = cy0; cy <= cy1; ++cy)
                cells[(size_t)cx * ncell + cy].push_back((int)i);
    }
    std::vector<std::pair<int, int>> pairs;
    for (const auto& cell : cells)
        for (size_t i = 0; i < cell.size(); ++i)
            for (size_t j = i + 1; j < cell.size(); ++j)
                pairs.emplace_back(cell[i], cell[j]);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    for (auto [i, j] : pairs) {
        // cheap float box reject before the exact test
        const WorkSeg& s = segs[(size_t)i];
        const WorkSeg& t = segs[(size_t)j];
        if (s.xhi < t.xlo - 1e-6 || t.xhi < s.xlo - 1e-6 || s.yhi < t.ylo - 1e-6 ||
            t.yhi < s.ylo - 1e-6)
            continue;
        intersect_pair(segs[(size_t)i], segs[(size_t)j]);
    }

    // 3. Split at breakpoints and collect atomic edges.
    std::vector<std::pair<Point2, Point2>> atomic;
    for (WorkSeg& s : segs) {
        Point2 dir = s.b - s.a;
        std::sort(s.cuts.begin(), s.cuts.end(), [&](const Point2& p, const Point2& q) {
            return (dot(p - s.a, dir) - dot(q - s.a, dir)).sign() < 0;
        });
        s.cuts.erase(std::unique(s.cuts.begin(), s.cuts.end(),
                                 [](const Point2& p, const Point2& q) { return p == q; }),
                     s.cuts.end());
        Point2 prev = s.a;
        for (const Point2& c : s.cuts) {
            atomic.emplace_back(prev, c);
            prev = c;
        }
        atomic.emplace_back(prev, s.b);
    }
    for (auto& e : atomic)
        if (!lex(e.first, e.second)) std::swap(e.first, e.second);
    std::sort(atomic.begin(), atomic.end(), pair_less);
    atomic.erase(std::unique(atomic.begin(), atomic.end(),
                             [](const auto& x, const auto& y) {
                                 return x.first == y.first && x.second == y.second;
                             }),
                 atomic.end());

    // 4. Vertex ids.
    Arrangement arr;
    std::map<Point2, int, Point2KeyLess> vid;
    auto vertex_id = [&](const Point2& p) {
        auto [it, fresh] = vid.emplace(p, (int)arr.vertices.size());
        if (fresh) arr.vertices.push_back(p);
        return it->second;
    };
    std::vector<std::pair<int, int>> edges;
    edges.reserve(atomic.size());
    for (auto& [a, b] : atomic) edges.emplace_back(vertex_id(a), vertex_id(b));

    // 5. Trim antennas: edges at degree-1 vertices separate nothing.
    size_t nv = arr.vertices.size();
    std::vector<int> degree(nv, 0);
    std::vector<std::vector<int>> vedges(nv);
    for (size_t e = 0; e < edges.size(); ++e) {
        degree[(size_t)edges[e].first]++;
        degree[(size_t)edges[e].second]++;
        vedges[(size_t)edges[e].first].push_back((int)e);
        vedges[(size_t)edges[e].second].push_back((int)e);
    }
    std::vector<bool> dead(edges.size(), false);
    std::vector<int> stack;
    for (size_t v = 0; v < nv; ++v)
        if (degree[v] == 1) stack.push_back((int)v);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (degree[(size_t)v] != 1) continue;
        for (int e : vedges[(size_t)v]) {
            if (dead[(size_t)e]) continue;
            dead[(size_t)e] = true;
            degree[(size_t)v]--;
            int w = edges[(size_t)e].first == v ? edges[(size_t)e].second
                                                : edges[(size_t)e].first;
            if (--degree[(size_t)w] == 1) stack.push_back(w);
            break;
        }
    }

    for (size_t e = 0; e < edges.size(); ++e) {
        if (dead[e]) continue;
        arr.edge_u.push_back(edges[e].first);
        arr.edge_v.push_back(edges[e].second);
    }
    size_t ne = arr.edge_u.size();
    if (ne == 0) throw std::runtime_error("build_arrangement: empty arrangement");

    // 6. Rotational order of half-edges at each vertex -> next pointers.
    std::vector<std::vector<int>> out(nv);  // outgoing half-edges per vertex
    for (size_t e = 0; e < ne; ++e) {
        out[(size_t)arr.edge_u[e]].push_back((int)(2 * e));
        out[(size_t)arr.edge_v[e]].push_back((int)(2 * e + 1));
    }
    for (size_t v = 0; v < nv; ++v) {
        std::sort(out[v].begin(), out[v].end(), [&](int h1, int h2) {
            Point2 d1 = arr.vertices[(size_t)arr.head(h1)] - arr.vertices[v];
            Point2 d2 = arr.vertices[(size_t)arr.head(h2)] - arr.vertices[v];
            return dir_less(d1, d2);
        });
    }
    std::vector<int> pos(2 * ne);  // position of each half-edge in its ring
    for (size_t v = 0; v < nv; ++v)
        for (size_t k = 0; k < out[v].size(); ++k) pos[(size_t)out[v][k]] = (int)k;

    arr.next.assign(2 * ne, -1);
    for (size_t h = 0; h < 2 * ne; ++h) {
        int rev = arr.twin((int)h);
        int v = arr.origin(rev);
        const auto& ring = out[(size_t)v];
        int k = pos[(size_t)rev];
        arr.next[h] = ring[(size_t)((k + ring.size() - 1) % ring.size())];
    }

    // 7. Trace faces; positive area cycles are the bounded faces.
    arr.face_of.assign(2 * ne, -2);
    int outer_cycles = 0;
    for (size_t h0 = 0; h0 < 2 * ne; ++h0) {
        if (arr.face_of[h0] != -2) continue;
        std::vector<int> walk;
        int h = (int)h0;
        do {
            walk.push_back(h);
            h = arr.next[(size_t)h];
        } while (h != (int)h0);
        std::vector<Point2> poly;
        poly.reserve(walk.size());
        for (int e : walk) poly.push_back(arr.vertices[(size_t)arr.origin(e)]);
        int s = polygon_area2(poly).sign();
        if (s > 0) {
            int f = arr.face_count();
            for (int e : walk) arr.face_of[(size_t)e] = f;
            // drop collinear chain vertices for the stored polygon
            std::vector<Point2> clean;
            size_t k = poly.size();
            for (size_t i = 0; i < k; ++i) {
                const Point2& prev = poly[(i + k - 1) % k];
                const Point2& cur = poly[i];
                const Point2& nxt = poly[(i + 1) % k];
                if (orientation(prev, cur, nxt) != 0) clean.push_back(cur);
            }
            arr.face_walk.push_back(std::move(walk));
            arr.face_poly.push_back(std::move(clean));
        } else if (s < 0) {
            for (int e : walk) arr.face_of[(size_t)e] = -1;
            outer_cycles++;
        } else {
            throw std::runtime_error("build_arrangement: zero-area face cycle");
        }
    }
    if (outer_cycles != 1)
        throw std::runtime_error("build_arrangement: disconnected input (" +
                                 std::to_string(outer_cycles) + " outer cycles)");

    arr.face_rep.reserve(arr.face_poly.size());
    for (const auto& poly : arr.face_poly) arr.face_rep.push_back(interior_point(poly));
    return arr;
}

Subdivision arrangement_faces(const Arrangement& arr, const BBox& bbox) {
    Subdivision sub;
    sub.bbox = bbox;
    sub.provenance = "arrangement";
    sub.premerge_faces = arr.face_count();
    sub.faces.reserve(arr.face_poly.size());
    for (size_t f = 0; f < arr.face_poly.size(); ++f) {
        FaceRecord rec;
        rec.polygon = arr.face_poly[f];
        rec.rep = arr.face_rep[f];
        sub.faces.push_back(std::move(rec));
    }
    return sub;
}

}  // namespace oovd
