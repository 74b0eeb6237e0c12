#include "oovd/steiner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace oovd {

double Tree::total_length() const {
    double acc = 0.0;
    for (const TreeEdge& e : edges) acc += e.weight;
    return acc;
}

std::string bucket_kind_name(BucketKind k) {
    switch (k) {
        case BucketKind::TripleOdd: return "triple-odd";
        case BucketKind::TripleEven: return "triple-even";
        case BucketKind::Quad14: return "quad-14";
        case BucketKind::Quad25: return "quad-25";
        case BucketKind::Quad36: return "quad-36";
    }
    return "?";
}

namespace {

double edge_length(const QS3& sq) { return std::sqrt(sq.to_double()); }

// Total order on edges: (exact squared weight, u, v). Makes every MST
// computation deterministic and every cycle maximum unique.
struct EdgeKey {
    const QS3* sq;
    int u, v;
};

bool key_less(const EdgeKey& a, const EdgeKey& b) {
    int c = (*a.sq - *b.sq).sign();
    if (c != 0) return c < 0;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
}

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
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[(size_t)b] = a;
        return true;
    }
};

}  // namespace

Tree build_mst(const TerminalSet& X) {
    int n = X.size();
    if (n < 2) throw std::invalid_argument("build_mst: need at least 2 points");

    struct Cand {
        int u, v;
        QS3 sq;
    };
    std::vector<Cand> cands;
    cands.reserve((size_t)n * (size_t)(n - 1) / 2);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            cands.push_back({u, v, squared_distance(X.terminal(u), X.terminal(v))});
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return key_less({&a.sq, a.u, a.v}, {&b.sq, b.u, b.v});
    });

    Tree t;
    t.nodes = n;
    Dsu dsu(n + 1);
    for (Cand& c : cands) {
        if (!dsu.unite(c.u, c.v)) continue;
        TreeEdge e;
        e.u = c.u;
        e.v = c.v;
        e.exact_sq = std::move(c.sq);
        e.weight = edge_length(e.exact_sq);
        t.edges.push_back(std::move(e));
        if ((int)t.edges.size() == n - 1) break;
    }
    return t;
}

LongestEdgeTable longest_edge_table(const Tree& t) {
    int n = t.nodes;
    if ((int)t.edges.size() != n - 1)
        throw std::invalid_argument("longest_edge_table: not a tree");

    std::vector<std::vector<std::pair<int, int>>> adj((size_t)n + 1);  // (node, edge idx)
    for (size_t i = 0; i < t.edges.size(); ++i) {
        adj[(size_t)t.edges[i].u].emplace_back(t.edges[i].v, (int)i);
        adj[(size_t)t.edges[i].v].emplace_back(t.edges[i].u, (int)i);
    }

    LongestEdgeTable h;
    h.nodes = n;
    h.idx.assign((size_t)(n + 1) * (size_t)(n + 1), -1);

    auto ekey = [&](int i) {
        return EdgeKey{&t.edges[(size_t)i].exact_sq, t.edges[(size_t)i].u,
                       t.edges[(size_t)i].v};
    };
    for (int src = 1; src <= n; ++src) {
        // DFS carrying the maximum edge so far.
        std::vector<std::pair<int, int>> stack{{src, -1}};
        std::vector<char> seen((size_t)n + 1, 0);
        seen[(size_t)src] = 1;
        while (!stack.empty()) {
            auto [v, maxe] = stack.back();
            stack.pop_back();
            for (auto [w, e] : adj[(size_t)v]) {
                if (seen[(size_t)w]) continue;
                seen[(size_t)w] = 1;
                int best = maxe;
                if (best < 0 || key_less(ekey(best), ekey(e))) best = e;
                h.at(src, w) = best;
                stack.emplace_back(w, best);
            }
        }
    }
    return h;
}

std::vector<Bucket> extract_buckets(const std::vector<SevenTuple>& tuples) {
    static constexpr int kTriples[2][3] = {{0, 2, 4}, {1, 3, 5}};
    static constexpr BucketKind kTripleKind[2] = {BucketKind::TripleOdd,
                                                  BucketKind::TripleEven};
    static constexpr int kQuads[3][4] = {{0, 1, 3, 4}, {0, 2, 3, 5}, {1, 2, 4, 5}};
    static constexpr BucketKind kQuadKind[3] = {BucketKind::Quad14, BucketKind::Quad25,
                                                BucketKind::Quad36};

    std::vector<Bucket> out;
    std::map<std::vector<int>, size_t> seen;
    auto consider = [&](const SevenTuple& t, const int* slots, int k, BucketKind kind) {
        std::vector<int> members;
        members.reserve((size_t)k);
        bool has_v7 = false;
        for (int i = 0; i < k; ++i) {
            int m = t.v[(size_t)slots[i]];
            if (m == 0) return;
            if (m == t.v7) has_v7 = true;
            members.push_back(m);
        }
        if (!has_v7) return;
        std::sort(members.begin(), members.end());
        if (seen.emplace(members, out.size()).second) {
            Bucket b;
            b.members = std::move(members);
            b.kind = kind;
            out.push_back(std::move(b));
        }
    };
    for (const SevenTuple& t : tuples) {
        for (int i = 0; i < 2; ++i) consider(t, kTriples[i], 3, kTripleKind[i]);
        for (int i = 0; i < 3; ++i) consider(t, kQuads[i], 4, kQuadKind[i]);
    }
    return out;
}

FermatResult fermat_point_3(const Point2& a, const Point2& b, const Point2& c) {
    const Point2* pts[3] = {&a, &b, &c};
    if (a == b || b == c || a == c)
        throw std::invalid_argument("fermat_point_3: coincident points");

    FermatResult res;
    if (orientation(a, b, c) == 0) {
        // Collinear: the middle point minimizes the distance sum.
        for (int i = 0; i < 3; ++i) {
            const Point2& m = *pts[i];
            const Point2& p = *pts[(i + 1) % 3];
            const Point2& q = *pts[(i + 2) % 3];
            if (dot(p - m, q - m).sign() <= 0) {
                res.degenerate_vertex = i;
                return res;
            }
        }
        throw std::logic_error("fermat_point_3: collinear middle not found");
    }

    // Angle >= 120 degrees at a vertex: 2 u.v <= -|u||v|, tested as
    // u.v < 0 together with 4 (u.v)^2 >= |u|^2 |v|^2.
    for (int i = 0; i < 3; ++i) {
        Point2 u = *pts[(i + 1) % 3] - *pts[i];
        Point2 v = *pts[(i + 2) % 3] - *pts[i];
        QS3 s = dot(u, v);
        if (s.sign() < 0) {
            QS3 lhs = QS3(4) * s * s - dot(u, u) * dot(v, v);
            if (lhs.sign() >= 0) {
                res.degenerate_vertex = i;
                return res;
            }
        }
    }

    // Torricelli construction: outward equilateral apex on two sides, then
    // intersect the Simpson lines. Rotation by 60 degrees stays in the field.
    auto apex = [](const Point2& p, const Point2& q, const Point2& opp) {
        Point2 cand = p + rotate60(q - p, true);
        if (orientation(p, q, cand) != orientation(p, q, opp))
            return cand;
        return p + rotate60(q - p, false);
    };
    Point2 apex_a = apex(b, c, a);  // on side bc, away from a
    Point2 apex_b = apex(c, a, b);
    auto s = line_intersection(Line2::through(a, apex_a - a),
                               Line2::through(b, apex_b - b));
    if (!s) throw std::logic_error("fermat_point_3: Simpson lines parallel");
    res.point = std::move(*s);
    return res;
}

std::optional<Point2> fermat_point_4(const Point2& a, const Point2& b, const Point2& c,
                                     const Point2& d) {
    const Point2* p[4] = {&a, &b, &c, &d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (*p[i] == *p[j]) return std::nullopt;
    // Any collinear triple rules out strictly convex position.
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                if (orientation(*p[i], *p[j], *p[k]) == 0) return std::nullopt;

    static constexpr int kPairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    for (const auto& pr : kPairings) {
        const Point2& s1 = *p[pr[0]];
        const Point2& t1 = *p[pr[1]];
        const Point2& s2 = *p[pr[2]];
        const Point2& t2 = *p[pr[3]];
        if (orientation(s1, t1, s2) * orientation(s1, t1, t2) < 0 &&
            orientation(s2, t2, s1) * orientation(s2, t2, t1) < 0) {
            return line_intersection(Line2::through(s1, t1 - s1),
                                     Line2::through(s2, t2 - s2));
        }
    }
    return std::nullopt;  // not in convex position
}

namespace {

struct PoolEdge {
    int u, v;
    QS3 sq;
    double w;
    bool alive;
};

int cycle_max_by_walk(const std::vector<PoolEdge>& pool,
                      const std::vector<std::vector<int>>& adj, int from, int to) {
    // Parent BFS over alive edges; returns the max-key edge on the path.
    std::vector<int> parent_edge(adj.size(), -2);
    parent_edge[(size_t)from] = -1;
    std::queue<int> q;
    q.push(from);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (v == to) break;
        for (int e : adj[(size_t)v]) {
            if (!pool[(size_t)e].alive) continue;
            int w = pool[(size_t)e].u == v ? pool[(size_t)e].v : pool[(size_t)e].u;
            if (parent_edge[(size_t)w] != -2) continue;
            parent_edge[(size_t)w] = e;
            q.push(w);
        }
    }
    if (parent_edge[(size_t)to] == -2)
        throw std::logic_error("update_mst: path not found");
    int best = -1;
    int v = to;
    while (v != from) {
        int e = parent_edge[(size_t)v];
        if (best < 0 ||
            key_less({&pool[(size_t)best].sq, pool[(size_t)best].u, pool[(size_t)best].v},
                     {&pool[(size_t)e].sq, pool[(size_t)e].u, pool[(size_t)e].v}))
            best = e;
        v = pool[(size_t)e].u == v ? pool[(size_t)e].v : pool[(size_t)e].u;
    }
    return best;
}

}  // namespace

Tree update_mst(const Tree& tp, const LongestEdgeTable& h, const TerminalSet& X,
                const Point2& s, const Bucket& b) {
    int n = X.size();
    if (tp.nodes != n || (int)tp.edges.size() != n - 1)
        throw std::invalid_argument("update_mst: T' does not span X");
    for (int m : b.members)
        if (m < 1 || m > n) throw std::invalid_argument("update_mst: bad bucket member");
    for (int id = 1; id <= n; ++id)
        if (X.terminal(id) == s)
            throw std::invalid_argument("update_mst: Steiner point equals a terminal");

    int snode = n + 1;
    std::vector<PoolEdge> pool;
    pool.reserve(tp.edges.size() + b.members.size());
    for (const TreeEdge& e : tp.edges) pool.push_back({e.u, e.v, e.exact_sq, e.weight, true});

    std::vector<PoolEdge> sedges;
    for (int m : b.members) {
        QS3 sq = squared_distance(X.terminal(m), s);
        sedges.push_back({m, snode, std::move(sq), 0.0, true});
    }
    for (PoolEdge& e : sedges) e.w = edge_length(e.sq);
    std::sort(sedges.begin(), sedges.end(), [](const PoolEdge& a, const PoolEdge& b2) {
        return key_less({&a.sq, a.u, a.v}, {&b2.sq, b2.u, b2.v});
    });

    std::vector<std::vector<int>> adj((size_t)n + 2);
    for (size_t e = 0; e < pool.size(); ++e) {
        adj[(size_t)pool[e].u].push_back((int)e);
        adj[(size_t)pool[e].v].push_back((int)e);
    }
    auto add_edge = [&](PoolEdge e) {
        int id = (int)pool.size();
        pool.push_back(std::move(e));
        adj[(size_t)pool.back().u].push_back(id);
        adj[(size_t)pool.back().v].push_back(id);
        return id;
    };

    // Insert s-edges in increasing order, evicting the maximum edge of each
    // created cycle. While the tree is still T' plus the first attachment,
    // the H table answers the cycle maximum in constant time.
    int attach_member = -1;
    int attach_edge = -1;
    bool tprime_intact = true;
    bool attached = false;
    for (PoolEdge& se : sedges) {
        if (!attached) {
            attach_member = se.u;
            attach_edge = add_edge(se);
            attached = true;
            continue;
        }
        int evict;
        if (tprime_intact) {
            int he = h.at(se.u, attach_member);  // max on the T' path
            evict = he;
            const PoolEdge& cand = pool[(size_t)attach_edge];
            if (he < 0 ||
                key_less({&pool[(size_t)he].sq, pool[(size_t)he].u, pool[(size_t)he].v},
                         {&cand.sq, cand.u, cand.v}))
                evict = attach_edge;
        } else {
            evict = cycle_max_by_walk(pool, adj, se.u, snode);
        }
        const PoolEdge& ev = pool[(size_t)evict];
        if (key_less({&ev.sq, ev.u, ev.v}, {&se.sq, se.u, se.v}))
            continue;  // the new edge itself is the cycle maximum
        pool[(size_t)evict].alive = false;
        add_edge(se);
        tprime_intact = false;
    }

    Tree out;
    out.nodes = n + 1;
    for (const PoolEdge& e : pool) {
        if (!e.alive) continue;
        TreeEdge te;
        te.u = e.u;
        te.v = e.v;
        te.exact_sq = e.sq;
        te.weight = e.w;
        out.edges.push_back(std::move(te));
    }
    std::sort(out.edges.begin(), out.edges.end(), [](const TreeEdge& a, const TreeEdge& b2) {
        return a.u != b2.u ? a.u < b2.u : a.v < b2.v;
    });
    return out;
}

namespace {

constexpr double kRelTol = 1e-12;

// Full MST of X plus one extra point, for the brute-force solver.
double mst_with_extra_length(const TerminalSet& X, const Point2& s, Tree* out) {
    int n = X.size();
    int total = n + 1;
    auto coord = [&](int id) -> Point2 {
        return id <= n ? X.terminal(id) : s;
    };
    struct Cand {
        int u, v;
        QS3 sq;
    };
    std::vector<Cand> cands;
    cands.reserve((size_t)total * (size_t)(total - 1) / 2);
    for (int u = 1; u <= total; ++u)
        for (int v = u + 1; v <= total; ++v)
            cands.push_back({u, v, squared_distance(coord(u), coord(v))});
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return key_less({&a.sq, a.u, a.v}, {&b.sq, b.u, b.v});
    });
    Dsu dsu(total + 1);
    Tree t;
    t.nodes = total;
    double len = 0.0;
    for (Cand& c : cands) {
        if (!dsu.unite(c.u, c.v)) continue;
        TreeEdge e;
        e.u = c.u;
        e.v = c.v;
        e.exact_sq = std::move(c.sq);
        e.weight = edge_length(e.exact_sq);
        len += e.weight;
        t.edges.push_back(std::move(e));
        if ((int)t.edges.size() == total - 1) break;
    }
    if (out) *out = std::move(t);
    return len;
}

std::optional<Point2> fermat_of(const TerminalSet& X, const std::vector<int>& members) {
    if (members.size() == 3) {
        FermatResult f = fermat_point_3(X.terminal(members[0]), X.terminal(members[1]),
                                        X.terminal(members[2]));
        return f.point;
    }
    return fermat_point_4(X.terminal(members[0]), X.terminal(members[1]),
                          X.terminal(members[2]), X.terminal(members[3]));
}

bool equals_some_terminal(const TerminalSet& X, const Point2& s,
                          const std::vector<double>& tx, const std::vector<double>& ty) {
    double sx = s.x.to_double();
    double sy = s.y.to_double();
    for (int id = 1; id <= X.size(); ++id) {
        if (std::abs(tx[(size_t)id - 1] - sx) > 1e-9 ||
            std::abs(ty[(size_t)id - 1] - sy) > 1e-9)
            continue;
        if (X.terminal(id) == s) return true;
    }
    return false;
}

}  // namespace

SteinerSolution solve_1steiner_with(const TerminalSet& X, const Subdivision& sub) {
    int n = X.size();
    if (n < 3) throw std::invalid_argument("solve_1steiner: need at least 3 terminals");

    std::vector<SevenTuple> tuples;
    tuples.reserve(sub.faces.size());
    for (const FaceRecord& f : sub.faces) tuples.push_back(f.data);
    std::vector<Bucket> buckets = extract_buckets(tuples);
    std::sort(buckets.begin(), buckets.end(),
              [](const Bucket& a, const Bucket& b) { return a.members < b.members; });

    Tree mst = build_mst(X);
    LongestEdgeTable h = longest_edge_table(mst);
    double mst_len = mst.total_length();

    std::vector<double> tx((size_t)n), ty((size_t)n);
    for (int id = 1; id <= n; ++id) {
        tx[(size_t)id - 1] = X.terminal(id).x.to_double();
        ty[(size_t)id - 1] = X.terminal(id).y.to_double();
    }

    SteinerSolution best;
    best.tree = mst;
    best.length = mst_len;
    best.mst_length = mst_len;

    for (const Bucket& b : buckets) {
        std::optional<Point2> s = fermat_of(X, b.members);
        if (!s) continue;
        if (equals_some_terminal(X, *s, tx, ty)) continue;
        Tree cand = update_mst(mst, h, X, *s, b);
        double len = cand.total_length();
        if (len < best.length * (1.0 - kRelTol)) {
            best.tree = std::move(cand);
            best.steiner = std::move(*s);
            best.bucket = b;
            best.length = len;
        }
    }
    if (best.steiner) {
        best.steiner_x = best.steiner->x.to_double();
        best.steiner_y = best.steiner->y.to_double();
    }
    return best;
}

SteinerSolution solve_1steiner(const TerminalSet& X) {
    if (X.size() < 3) throw std::invalid_argument("solve_1steiner: need at least 3 terminals");
    Subdivision sub = build_refined_oovd(X, BBox::around(X));
    return solve_1steiner_with(X, sub);
}

SteinerSolution brute_force_1steiner(const TerminalSet& X) {
    int n = X.size();
    if (n < 3) throw std::invalid_argument("brute_force_1steiner: need at least 3 terminals");

    std::vector<double> tx((size_t)n), ty((size_t)n);
    for (int id = 1; id <= n; ++id) {
        tx[(size_t)id - 1] = X.terminal(id).x.to_double();
        ty[(size_t)id - 1] = X.terminal(id).y.to_double();
    }

    Tree mst = build_mst(X);
    double mst_len = mst.total_length();

    SteinerSolution best;
    best.tree = mst;
    best.length = mst_len;
    best.mst_length = mst_len;

    auto try_subset = [&](std::vector<int> members, BucketKind kind) {
        std::optional<Point2> s = fermat_of(X, members);
        if (!s) return;
        if (equals_some_terminal(X, *s, tx, ty)) return;
        Tree cand;
        double len = mst_with_extra_length(X, *s, &cand);
        if (len < best.length * (1.0 - kRelTol)) {
            best.tree = std::move(cand);
            best.steiner = std::move(*s);
            Bucket b;
            b.members = std::move(members);
            b.kind = kind;
            best.bucket = std::move(b);
            best.length = len;
        }
    };

    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                try_subset({i, j, k}, BucketKind::TripleOdd);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (int l = k + 1; l <= n; ++l)
                    try_subset({i, j, k, l}, BucketKind::Quad14);

    if (best.steiner) {
        best.steiner_x = best.steiner->x.to_double();
        best.steiner_y = best.steiner->y.to_double();
    }
    return best;
}

StatsRecord tree_stats(const SteinerSolution& sol, const Tree& tp) {
    StatsRecord st;
    st.improvement_pct =
        sol.mst_length > 0 ? 100.0 * (sol.mst_length - sol.length) / sol.mst_length : 0.0;

    std::vector<const TreeEdge*> deleted;
    std::vector<const TreeEdge*> added;
    auto has_edge = [](const Tree& t, int u, int v) {
        for (const TreeEdge& e : t.edges)
            if (e.u == u && e.v == v) return true;
        return false;
    };
    for (const TreeEdge& e : tp.edges)
        if (!has_edge(sol.tree, e.u, e.v)) deleted.push_back(&e);
    for (const TreeEdge& e : sol.tree.edges)
        if (!has_edge(tp, e.u, e.v)) added.push_back(&e);

    st.steiner_degree = 0;
    for (const TreeEdge& e : sol.tree.edges)
        if (e.v == tp.nodes + 1) st.steiner_degree++;

    if (deleted.empty()) {
        st.add_delete_ratio = 1.0;
    } else {
        double dlen = 0.0, alen = 0.0;
        for (auto* e : deleted) dlen += e->weight;
        for (auto* e : added) alen += e->weight;
        st.add_delete_ratio = dlen > 0 ? alen / dlen : 1.0;
    }

    st.same_triangle = deleted.size() == 2 &&
                       (deleted[0]->u == deleted[1]->u || deleted[0]->u == deleted[1]->v ||
                        deleted[0]->v == deleted[1]->u || deleted[0]->v == deleted[1]->v);
    return st;
}

}  // namespace oovd
