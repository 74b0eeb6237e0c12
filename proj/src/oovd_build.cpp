#include "oovd/oovd_build.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace oovd {

namespace {

// Exact sign of a + b*sqrt(3) for 64-bit a, b (compare a^2 against 3 b^2 in
// 128-bit); a^2 = 3 b^2 is impossible for nonzero integers.
int sign_pair_i64(int64_t a, int64_t b) {
    if (b == 0) return a < 0 ? -1 : a > 0 ? 1 : 0;
    if (a == 0) return b < 0 ? -1 : 1;
    int sa = a < 0 ? -1 : 1, sb = b < 0 ? -1 : 1;
    if (sa == sb) return sa;
    unsigned __int128 a2 = (unsigned __int128)((__int128)a * a);
    unsigned __int128 b23 = 3 * (unsigned __int128)((__int128)b * b);
    return a2 > b23 ? sa : sb;
}

// Mirror of cone_of for integer vectors (scaled by a positive denominator).
int cone_of_i64(int64_t vx, int64_t vy) {
    if (vx == 0 && vy == 0) return 0;
    if (vy > 0 || (vy == 0 && vx > 0)) {
        if (sign_pair_i64(vy, -vx) < 0) return 1;  // cross(d2, v) < 0
        if (sign_pair_i64(-vy, -vx) < 0) return 2; // cross(d3, v) < 0
        return 3;
    }
    if (sign_pair_i64(-vy, vx) < 0) return 4;      // cross(d5, v) < 0
    if (sign_pair_i64(vy, vx) < 0) return 5;       // cross(d6, v) < 0
    return 6;
}

// Integer acceleration of the oracle: usable when the terminals are modest
// integers and the query is rational with a small denominator. The scaled
// computation is exact in 128-bit arithmetic.
struct FastOracle {
    bool ok = false;
    std::vector<int64_t> tx, ty;

    static FastOracle build(const TerminalSet& P) {
        FastOracle f;
        f.tx.reserve((size_t)P.size());
        f.ty.reserve((size_t)P.size());
        for (const Point2& p : P.points) {
            if (!p.x.is_rational() || !p.y.is_rational()) return f;
            const mpq_class& qx = p.x.a;
            const mpq_class& qy = p.y.a;
            if (qx.get_den() != 1 || qy.get_den() != 1) return f;
            if (!qx.get_num().fits_slong_p() || !qy.get_num().fits_slong_p()) return f;
            long nx = qx.get_num().get_si(), ny = qy.get_num().get_si();
            if (std::abs(nx) > (1L << 30) || std::abs(ny) > (1L << 30)) return f;
            f.tx.push_back(nx);
            f.ty.push_back(ny);
        }
        f.ok = true;
        return f;
    }

    bool tuple(const Point2& x, SevenTuple& out) const {
        if (!ok || !x.x.is_rational() || !x.y.is_rational()) return false;
        const mpq_class& qx = x.x.a;
        const mpq_class& qy = x.y.a;
        if (!qx.get_den().fits_slong_p() || !qy.get_den().fits_slong_p()) return false;
        if (!qx.get_num().fits_slong_p() || !qy.get_num().fits_slong_p()) return false;
        long dx = qx.get_den().get_si(), dy = qy.get_den().get_si();
        if (dx > (1L << 21) || dy > (1L << 21)) return false;
        int64_t d = std::lcm(dx, dy);
        if (d > (int64_t(1) << 21)) return false;  // keeps tx*d within int64
        int64_t ax = qx.get_num().get_si() * (d / dx);
        int64_t ay = qy.get_num().get_si() * (d / dy);
        if (std::abs(ax) > (int64_t(1) << 52) || std::abs(ay) > (int64_t(1) << 52))
            return false;

        SevenTuple t;
        std::array<unsigned __int128, 6> best{};
        unsigned __int128 best7 = 0;
        for (size_t i = 0; i < tx.size(); ++i) {
            int64_t vx = tx[i] * d - ax;  // |tx*d| <= 2^30 * 2^22, safe
            int64_t vy = ty[i] * d - ay;
            int cone = cone_of_i64(vx, vy);
            if (cone == 0)
                throw std::invalid_argument(
                    "oracle_seven_tuple: query point is a terminal");
            unsigned __int128 sq = (unsigned __int128)((__int128)vx * vx) +
                                   (unsigned __int128)((__int128)vy * vy);
            int id = (int)i + 1;
            int k = cone - 1;
            if (t.v[(size_t)k] == 0 || sq < best[(size_t)k]) {
                t.v[(size_t)k] = id;
                best[(size_t)k] = sq;
            }
            if (t.v7 == 0 || sq < best7) {
                t.v7 = id;
                best7 = sq;
            }
        }
        out = t;
        return true;
    }
};

}  // namespace

SevenTuple oracle_seven_tuple(const TerminalSet& P, const Point2& x) {
    FastOracle fo = FastOracle::build(P);
    SevenTuple t;
    if (fo.tuple(x, t)) return t;

    std::array<QS3, 7> best{};  // [1..6] per cone
    QS3 best7;
    for (int id = 1; id <= P.size(); ++id) {
        Point2 v = P.terminal(id) - x;
        ConeIndex i = cone_of(v);
        if (i == 0)
            throw std::invalid_argument("oracle_seven_tuple: query point is a terminal");
        QS3 sq = dot(v, v);
        int k = i - 1;
        if (t.v[(size_t)k] == 0 || (sq - best[(size_t)k]).sign() < 0) {
            t.v[(size_t)k] = id;
            best[(size_t)k] = sq;
        }
        if (t.v7 == 0 || (sq - best7).sign() < 0) {
            t.v7 = id;
            best7 = sq;
        }
    }
    return t;
}

namespace {

// Closed t-interval on a parameterized line.
struct TIv {
    QS3 lo, hi;
};

// Intersection of linear conditions c0 + t*c1 (>= 0 closed, > 0 open) as a
// t-interval. Open conditions are recorded by their closure; subtraction
// later removes only the interior, which is the conservative direction.
struct Clip {
    bool empty = false;
    std::optional<QS3> lo, hi;

    void add(QS3 c0, QS3 c1, bool strict) {
        if (empty) return;
        int s1 = c1.sign();
        if (s1 == 0) {
            int s0 = c0.sign();
            if (strict ? s0 <= 0 : s0 < 0) empty = true;
            return;
        }
        QS3 bound = -std::move(c0) / c1;
        if (s1 > 0) {
            if (!lo || *lo < bound) lo = std::move(bound);
        } else {
            if (!hi || bound < *hi) hi = std::move(bound);
        }
        if (lo && hi && *hi < *lo) empty = true;
    }
};

// kept := kept \ (lo, hi), all exact; unbounded sides use nullopt.
void subtract_open(std::vector<TIv>& kept, const Clip& cut) {
    if (cut.empty) return;
    if (cut.lo && cut.hi && !(*cut.lo < *cut.hi)) return;  // empty interior
    std::vector<TIv> out;
    out.reserve(kept.size() + 1);
    for (TIv& iv : kept) {
        bool cut_lo_below = !cut.lo || *cut.lo < iv.lo || *cut.lo == iv.lo;
        bool cut_hi_above = !cut.hi || iv.hi < *cut.hi || iv.hi == *cut.hi;
        // left piece [iv.lo, min(iv.hi, cut.lo)]
        if (!cut_lo_below) {
            QS3 r = *cut.lo < iv.hi ? *cut.lo : iv.hi;
            if (iv.lo < r) out.push_back({iv.lo, r});
        }
        // right piece [max(iv.lo, cut.hi), iv.hi]
        if (!cut_hi_above) {
            QS3 l = iv.lo < *cut.hi ? *cut.hi : iv.lo;
            if (l < iv.hi) out.push_back({l, iv.hi});
        }
    }
    kept = std::move(out);
}

std::vector<TIv> union_intervals(std::vector<TIv> a, const std::vector<TIv>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end(),
              [](const TIv& x, const TIv& y) { return x.lo < y.lo; });
    std::vector<TIv> out;
    for (TIv& iv : a) {
        if (!out.empty() && !(out.back().hi < iv.lo)) {
            if (out.back().hi < iv.hi) out.back().hi = iv.hi;
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

struct LineCand {
    Point2 base, dir;
    std::vector<TIv> kept;
};

// Conditions for x(t) = base + t*dir.

// line.eval(x(t)) >= 0
void clip_halfplane(Clip& c, const LineCand& lc, const Line2& line) {
    QS3 c0 = line.eval(lc.base);
    QS3 c1 = line.a * lc.dir.x + line.b * lc.dir.y;
    c.add(std::move(c0), std::move(c1), false);
}

// x(t) inside bbox
void clip_bbox(Clip& c, const LineCand& lc, const BBox& bb) {
    c.add(lc.base.x - QS3(bb.xmin), lc.dir.x, false);
    c.add(QS3(bb.xmax) - lc.base.x, -lc.dir.x, false);
    c.add(lc.base.y - QS3(bb.ymin), lc.dir.y, false);
    c.add(QS3(bb.ymax) - lc.base.y, -lc.dir.y, false);
}

// p - x(t) in the closed cone i (x(t) in the wedge of points that see p in
// cone i).
void clip_wedge_closed(Clip& c, const LineCand& lc, const Point2& p, ConeIndex i) {
    const Point2& d1 = cone_dir(i);
    const Point2& d2 = cone_dir(i + 1);
    Point2 rel = p - lc.base;
    // cross(d1, p - x(t)) >= 0
    c.add(cross(d1, rel), -cross(d1, lc.dir), false);
    // cross(d2, p - x(t)) <= 0
    c.add(-cross(d2, rel), cross(d2, lc.dir), false);
}

// Region where r strictly beats the reference terminal `ref` in cone i at
// x(t): r strictly inside the cone and strictly closer. Strictness makes the
// cut conservative; boundary slack is cleaned up by the tuple merge.
Clip dominance_cut(const LineCand& lc, const Point2& r, const Point2& ref, ConeIndex i) {
    Clip c;
    const Point2& d1 = cone_dir(i);
    const Point2& d2 = cone_dir(i + 1);
    Point2 rel = r - lc.base;
    c.add(cross(d1, rel), -cross(d1, lc.dir), true);
    c.add(-cross(d2, rel), cross(d2, lc.dir), true);
    // |x-ref|^2 - |x-r|^2 > 0, linear in t
    QS3 c0 = QS3(2) * dot(lc.base, r - ref) + dot(ref, ref) - dot(r, r);
    QS3 c1 = QS3(2) * dot(lc.dir, r - ref);
    c.add(std::move(c0), std::move(c1), true);
    return c;
}

// Voronoi dominance: r strictly closer than ref at x(t).
Clip closer_cut(const LineCand& lc, const Point2& r, const Point2& ref) {
    Clip c;
    QS3 c0 = QS3(2) * dot(lc.base, r - ref) + dot(ref, ref) - dot(r, r);
    QS3 c1 = QS3(2) * dot(lc.dir, r - ref);
    c.add(std::move(c0), std::move(c1), true);
    return c;
}

void emit(const LineCand& lc, std::vector<Segment2>& out) {
    for (const TIv& iv : lc.kept) {
        Point2 a(lc.base.x + iv.lo * lc.dir.x, lc.base.y + iv.lo * lc.dir.y);
        Point2 b(lc.base.x + iv.hi * lc.dir.x, lc.base.y + iv.hi * lc.dir.y);
        out.emplace_back(std::move(a), std::move(b));
    }
}

// Terminal indices ordered by distance from terminal p, nearest first.
// Heuristic processing order so pruned candidates die early.
std::vector<std::vector<int>> proximity_order(const TerminalSet& P,
                                              const std::vector<double>& px,
                                              const std::vector<double>& py) {
    int n = P.size();
    std::vector<std::vector<int>> order((size_t)n);
    for (int i = 0; i < n; ++i) {
        auto& row = order[(size_t)i];
        row.reserve((size_t)n - 1);
        for (int j = 0; j < n; ++j)
            if (j != i) row.push_back(j);
        std::sort(row.begin(), row.end(), [&](int a, int b) {
            double da = (px[(size_t)a] - px[(size_t)i]) * (px[(size_t)a] - px[(size_t)i]) +
                        (py[(size_t)a] - py[(size_t)i]) * (py[(size_t)a] - py[(size_t)i]);
            double db = (px[(size_t)b] - px[(size_t)i]) * (px[(size_t)b] - px[(size_t)i]) +
                        (py[(size_t)b] - py[(size_t)i]) * (py[(size_t)b] - py[(size_t)i]);
            if (da != db) return da < db;
            return a < b;
        });
    }
    return order;
}

// Float mirror of the interval clipping, used as a prescreen. The computed
// interval is widened into a superset of the exact one, so "float-empty"
// certifies "exactly empty" for integer instances (all inputs dyadic-exact
// in double, only the sqrt(3) factors and divisions round). It is applied
// two ways: skipping dominator cuts whose interval misses the candidate
// (pure under-pruning, safe for any input), and skipping entire wedge-pair
// candidates (integer instances only, where the widening is certified).
struct FLin {
    double lo = -1e300, hi = 1e300;
    bool empty = false;

    void add(double c0, double c1) {  // c0 + t*c1 >= 0, superset semantics
        if (empty) return;
        double a1 = std::abs(c1);
        if (a1 < 1e-4) {
            // near-degenerate slope: certified false only when negative
            // across the whole usable parameter range
            if (c0 + 1e6 * a1 < -0.05) empty = true;
            return;
        }
        double bound = -c0 / c1;
        double m = 0.01 + 1e-9 * std::abs(bound);
        if (c1 > 0)
            lo = std::max(lo, bound - m);
        else
            hi = std::min(hi, bound + m);
        if (hi < lo) empty = true;
    }
};

struct FCand {
    double bx, by, dx, dy;
};

struct FloatData {
    std::vector<double> px, py;
    double cdx[8], cdy[8];  // cone_dir floats, 1..7
    double xmin, xmax, ymin, ymax;
    bool integral = false;  // terminals and bbox are modest integers
};

void f_bbox(FLin& f, const FCand& c, const FloatData& fd) {
    f.add(c.bx - fd.xmin, c.dx);
    f.add(fd.xmax - c.bx, -c.dx);
    f.add(c.by - fd.ymin, c.dy);
    f.add(fd.ymax - c.by, -c.dy);
}

// apex - x(t) in cone i conditions (closed/open agree in the screen)
void f_wedge(FLin& f, const FCand& c, const FloatData& fd, double ax, double ay, int i) {
    double relx = ax - c.bx, rely = ay - c.by;
    f.add(fd.cdx[i] * rely - fd.cdy[i] * relx, -(fd.cdx[i] * c.dy - fd.cdy[i] * c.dx));
    f.add(-(fd.cdx[i + 1] * rely - fd.cdy[i + 1] * relx),
          fd.cdx[i + 1] * c.dy - fd.cdy[i + 1] * c.dx);
}

void f_closer(FLin& f, const FCand& c, double rx, double ry, double refx, double refy) {
    double c0 = 2.0 * (c.bx * (rx - refx) + c.by * (ry - refy)) + refx * refx +
                refy * refy - rx * rx - ry * ry;
    double c1 = 2.0 * (c.dx * (rx - refx) + c.dy * (ry - refy));
    f.add(c0, c1);
}

bool small_integer(const Rational& r) {
    return r.get_den() == 1 && r.get_num().fits_slong_p() &&
           std::abs(r.get_num().get_si()) <= (1L << 30);
}

FloatData make_float_data(const TerminalSet& P, const BBox& bbox) {
    FloatData fd;
    int n = P.size();
    fd.px.resize((size_t)n);
    fd.py.resize((size_t)n);
    fd.integral = true;
    for (int i = 0; i < n; ++i) {
        const Point2& p = P.points[(size_t)i];
        fd.px[(size_t)i] = p.x.to_double();
        fd.py[(size_t)i] = p.y.to_double();
        if (!p.x.is_rational() || !p.y.is_rational() || !small_integer(p.x.a) ||
            !small_integer(p.y.a))
            fd.integral = false;
    }
    for (int k = 1; k <= 7; ++k) {
        fd.cdx[k] = cone_dir(k).x.to_double();
        fd.cdy[k] = cone_dir(k).y.to_double();
    }
    fd.xmin = bbox.xmin.get_d();
    fd.xmax = bbox.xmax.get_d();
    fd.ymin = bbox.ymin.get_d();
    fd.ymax = bbox.ymax.get_d();
    if (!small_integer(bbox.xmin) || !small_integer(bbox.xmax) ||
        !small_integer(bbox.ymin) || !small_integer(bbox.ymax))
        fd.integral = false;
    return fd;
}

// True if the float cut interval certainly misses [tlo, thi].
bool cut_misses(const FLin& f, double tlo, double thi) {
    if (f.empty) return true;
    return f.hi < tlo - 0.01 || f.lo > thi + 0.01;
}

std::vector<Segment2> generate_candidates(const TerminalSet& P, const BBox& bbox,
                                          bool prune) {
    std::vector<Segment2> out;
    int n = P.size();
    FloatData fd = make_float_data(P, bbox);
    const std::vector<double>& px = fd.px;
    const std::vector<double>& py = fd.py;
    std::vector<std::vector<int>> near =
        prune ? proximity_order(P, px, py) : std::vector<std::vector<int>>{};

    // (a) cone boundary rays of every terminal, clipped to the bbox. The ray
    // with direction d_k bounds the wedges of cones k+2 and k+3; when
    // pruning, a ray point survives if the terminal is undominated in either
    // adjacent cone.
    for (int pi = 0; pi < n; ++pi) {
        const Point2& p = P.points[(size_t)pi];
        for (int k = 1; k <= 6; ++k) {
            LineCand lc{p, cone_dir(k), {}};
            Clip c;
            clip_bbox(c, lc, bbox);
            if (c.empty || !c.hi) continue;
            QS3 tmax = *c.hi;
            if (!(QS3(0) < tmax)) continue;
            if (!prune) {
                lc.kept = {{QS3(0), tmax}};
            } else {
                FCand fc{px[(size_t)pi], py[(size_t)pi], fd.cdx[k], fd.cdy[k]};
                double tmax_f = tmax.to_double();
                std::vector<TIv> all;
                for (ConeIndex jj : {k + 2, k + 3}) {
                    ConeIndex j = ((jj - 1) % 6) + 1;
                    std::vector<TIv> kept = {{QS3(0), tmax}};
                    for (int r : near[(size_t)pi]) {
                        FLin f;
                        f_wedge(f, fc, fd, px[(size_t)r], py[(size_t)r], j);
                        f_closer(f, fc, px[(size_t)r], py[(size_t)r], px[(size_t)pi],
                                 py[(size_t)pi]);
                        if (cut_misses(f, 0.0, tmax_f)) continue;
                        subtract_open(kept, dominance_cut(lc, P.points[(size_t)r], p, j));
                        if (kept.empty()) break;
                    }
                    all = union_intervals(std::move(all), kept);
                }
                lc.kept = std::move(all);
            }
            emit(lc, out);
        }
    }

    // (b) per pair and cone: bisector clipped to the intersection of the two
    // wedges; (c) per pair: bisector clipped to the bbox.
    for (int pi = 0; pi < n; ++pi) {
        const Point2& p = P.points[(size_t)pi];
        for (int qi = pi + 1; qi < n; ++qi) {
            const Point2& q = P.points[(size_t)qi];
            QS3 half(Rational(1, 2));
            Point2 mid((p.x + q.x) * half, (p.y + q.y) * half);
            Point2 dir(p.y - q.y, q.x - p.x);
            LineCand lc{mid, dir, {}};
            FCand fc{0.5 * (px[(size_t)pi] + px[(size_t)qi]),
                     0.5 * (py[(size_t)pi] + py[(size_t)qi]),
                     py[(size_t)pi] - py[(size_t)qi], px[(size_t)qi] - px[(size_t)pi]};

            for (ConeIndex i = 1; i <= 6; ++i) {
                if (fd.integral) {
                    FLin f;
                    f_bbox(f, fc, fd);
                    f_wedge(f, fc, fd, px[(size_t)pi], py[(size_t)pi], i);
                    f_wedge(f, fc, fd, px[(size_t)qi], py[(size_t)qi], i);
                    if (f.empty) continue;  // certified empty clip
                }
                Clip c;
                clip_bbox(c, lc, bbox);
                clip_wedge_closed(c, lc, p, i);
                clip_wedge_closed(c, lc, q, i);
                if (c.empty || !c.lo || !c.hi || !(*c.lo < *c.hi)) continue;
                lc.kept = {{*c.lo, *c.hi}};
                if (prune) {
                    double tlo = c.lo->to_double(), thi = c.hi->to_double();
                    for (int r : near[(size_t)pi]) {
                        if (r == qi) continue;
                        FLin f;
                        f_wedge(f, fc, fd, px[(size_t)r], py[(size_t)r], i);
                        f_closer(f, fc, px[(size_t)r], py[(size_t)r], px[(size_t)pi],
                                 py[(size_t)pi]);
                        if (cut_misses(f, tlo, thi)) continue;
                        subtract_open(lc.kept, dominance_cut(lc, P.points[(size_t)r], p, i));
                        if (lc.kept.empty()) break;
                    }
                }
                emit(lc, out);
            }

            Clip c;
            clip_bbox(c, lc, bbox);
            if (c.empty || !c.lo || !c.hi || !(*c.lo < *c.hi)) continue;
            lc.kept = {{*c.lo, *c.hi}};
            if (prune) {
                double tlo = c.lo->to_double(), thi = c.hi->to_double();
                for (int r : near[(size_t)pi]) {
                    if (r == qi) continue;
                    FLin f;
                    f_closer(f, fc, px[(size_t)r], py[(size_t)r], px[(size_t)pi],
                             py[(size_t)pi]);
                    if (cut_misses(f, tlo, thi)) continue;
                    subtract_open(lc.kept, closer_cut(lc, P.points[(size_t)r], p));
                    if (lc.kept.empty()) break;
                }
            }
            emit(lc, out);
        }
    }

    // (d) bbox sides
    for (const Segment2& s : bbox.sides()) out.push_back(s);
    return out;
}

}  // namespace

std::vector<Segment2> candidate_segments(const TerminalSet& P, const BBox& bbox) {
    return generate_candidates(P, bbox, false);
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent((size_t)n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[(size_t)x] != x) {
            parent[(size_t)x] = parent[(size_t)parent[(size_t)x]];
            x = parent[(size_t)x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[(size_t)std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

namespace {

// The oracle cost scales with coordinate bit length, and exact face
// representatives carry large denominators. Any interior point of the same
// (unmerged, open) face yields the same tuple, so labeling prefers a nearby
// point on a coarse rational grid and falls back to the exact
// representative when snapping fails.
SevenTuple label_tuple(const TerminalSet& P, const std::vector<Point2>& poly,
                       const Point2& rep) {
    double cx = 0, cy = 0;
    for (const Point2& p : poly) {
        cx += p.x.to_double();
        cy += p.y.to_double();
    }
    cx /= (double)poly.size();
    cy /= (double)poly.size();
    for (long den : {4096L, 1L << 20}) {
        double scaled_x = cx * (double)den, scaled_y = cy * (double)den;
        if (std::abs(scaled_x) > 9e18 || std::abs(scaled_y) > 9e18) break;
        Rational rx((long)std::llround(scaled_x), den);
        Rational ry((long)std::llround(scaled_y), den);
        rx.canonicalize();
        ry.canonicalize();
        Point2 cand{QS3(rx), QS3(ry)};
        if (point_in_polygon(cand, poly) != 1) continue;
        try {
            return oracle_seven_tuple(P, cand);
        } catch (const std::invalid_argument&) {
            break;  // snapped onto a terminal
        }
    }
    return oracle_seven_tuple(P, rep);
}

}  // namespace

Subdivision label_and_merge(const Arrangement& arr, const TerminalSet& P, const BBox& bbox) {
    int nf = arr.face_count();
    std::vector<SevenTuple> tuples((size_t)nf);
    for (int f = 0; f < nf; ++f)
        tuples[(size_t)f] =
            label_tuple(P, arr.face_poly[(size_t)f], arr.face_rep[(size_t)f]);

    Dsu dsu(nf);
    size_t ne = arr.edge_u.size();
    for (size_t e = 0; e < ne; ++e) {
        int f1 = arr.face_of[2 * e];
        int f2 = arr.face_of[2 * e + 1];
        if (f1 >= 0 && f2 >= 0 && tuples[(size_t)f1] == tuples[(size_t)f2]) dsu.unite(f1, f2);
    }

    auto group_of = [&](int h) {
        int f = arr.face_of[(size_t)h];
        return f >= 0 ? dsu.find(f) : -1;
    };
    auto is_boundary = [&](int h) {
        int g = group_of(h);
        return g >= 0 && g != group_of(arr.twin(h));
    };

    std::vector<char> visited(2 * ne, 0);
    std::vector<int> cycles_per_group((size_t)nf, 0);
    std::vector<std::vector<Point2>> group_poly((size_t)nf);

    for (size_t h0 = 0; h0 < 2 * ne; ++h0) {
        if (visited[h0] || !is_boundary((int)h0)) continue;
        int g = group_of((int)h0);
        std::vector<Point2> walk;
        int h = (int)h0;
        do {
            visited[(size_t)h] = 1;
            walk.push_back(arr.vertices[(size_t)arr.origin(h)]);
            int m = arr.next[(size_t)h];
            while (!is_boundary(m)) m = arr.next[(size_t)arr.twin(m)];
            h = m;
        } while (h != (int)h0);
        cycles_per_group[(size_t)g]++;
        if (cycles_per_group[(size_t)g] > 1)
            throw std::runtime_error("label_and_merge: merged face is not simply connected");
        group_poly[(size_t)g] = std::move(walk);
    }

    // Representative of a merged face: the lexicographically smallest
    // representative among its constituent arrangement faces. It is strictly
    // interior to an unmerged open face, so the stored tuple is exact there.
    std::vector<int> rep_face((size_t)nf, -1);
    Point2XYLess lex;
    for (int f = 0; f < nf; ++f) {
        int g = dsu.find(f);
        if (rep_face[(size_t)g] < 0 ||
            lex(arr.face_rep[(size_t)f], arr.face_rep[(size_t)rep_face[(size_t)g]]))
            rep_face[(size_t)g] = f;
    }

    Subdivision sub;
    sub.bbox = bbox;
    sub.provenance = "refined-oovd";
    sub.premerge_faces = nf;
    for (int g = 0; g < nf; ++g) {
        if (group_poly[(size_t)g].empty()) continue;
        FaceRecord rec;
        const auto& poly = group_poly[(size_t)g];
        size_t k = poly.size();
        for (size_t i = 0; i < k; ++i) {
            const Point2& prev = poly[(i + k - 1) % k];
            const Point2& cur = poly[i];
            const Point2& nxt = poly[(i + 1) % k];
            if (orientation(prev, cur, nxt) != 0) rec.polygon.push_back(cur);
        }
        if (polygon_area2(rec.polygon).sign() <= 0)
            throw std::runtime_error("label_and_merge: non-positive merged face area");
        rec.rep = arr.face_rep[(size_t)rep_face[(size_t)g]];
        rec.data = tuples[(size_t)g];
        sub.faces.push_back(std::move(rec));
    }
    return sub;
}

Subdivision build_refined_oovd(const TerminalSet& P, const BBox& bbox,
                               const OovdOptions& opt) {
    if (P.size() < 2)
        throw std::invalid_argument("build_refined_oovd: need at least 2 terminals");
    for (const Point2& p : P.points)
        if (!bbox.contains(p))
            throw std::invalid_argument("build_refined_oovd: terminal outside bbox");
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Segment2> segs = generate_candidates(P, bbox, opt.prune);
    auto t1 = std::chrono::steady_clock::now();
    Arrangement arr = build_arrangement(segs, bbox);
    auto t2 = std::chrono::steady_clock::now();
    Subdivision sub = label_and_merge(arr, P, bbox);
    auto t3 = std::chrono::steady_clock::now();
    if (std::getenv("OOVD_PROFILE")) {
        auto ms = [](auto a, auto b) {
            return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
        };
        std::fprintf(stderr, "oovd phases: candidates %ld ms (%zu segs), arrangement %ld ms, label+merge %ld ms\n",
                     ms(t0, t1), segs.size(), ms(t1, t2), ms(t2, t3));
    }
    return sub;
}

}  // namespace oovd
