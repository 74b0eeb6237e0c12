#include "oovd/bench.hpp"

#include "oovd/oovd_build.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <stdexcept>

namespace oovd {

uint64_t brute_force_bucket_count(int n) {
    if (n < 3) return 0;
    uint64_t n3 = (uint64_t)n * (n - 1) * (n - 2) / 6;
    uint64_t n4 = n >= 4 ? (uint64_t)n * (n - 1) * (n - 2) * (n - 3) / 24 : 0;
    return n3 + n4;
}

BenchRow run_instance(const InstanceSpec& spec) {
    auto t0 = std::chrono::steady_clock::now();

    TerminalSet X = gen_points(spec);
    BBox bbox = BBox::domain(spec.grid);
    Subdivision sub = build_refined_oovd(X, bbox);

    std::vector<SevenTuple> tuples;
    tuples.reserve(sub.faces.size());
    for (const FaceRecord& f : sub.faces) tuples.push_back(f.data);
    std::vector<Bucket> buckets = extract_buckets(tuples);

    Tree mst = build_mst(X);
    SteinerSolution sol = solve_1steiner_with(X, sub);
    StatsRecord st = tree_stats(sol, mst);

    auto t1 = std::chrono::steady_clock::now();

    BenchRow row;
    row.n = spec.n;
    row.seed = spec.seed;
    row.faces_premerge = sub.premerge_faces;
    row.faces = (long)sub.faces.size();
    row.buckets_naive35 = 35u * (uint64_t)sub.faces.size();
    row.buckets_pruned = (uint64_t)buckets.size();
    row.buckets_bruteforce = brute_force_bucket_count(spec.n);
    row.mst_length = sol.mst_length;
    row.steiner_length = sol.length;
    row.improvement_pct = st.improvement_pct;
    row.add_delete_ratio = st.add_delete_ratio;
    row.same_triangle = st.same_triangle;
    row.steiner_degree = st.steiner_degree;
    row.wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return row;
}

BenchReport run_bench(const std::vector<int>& sizes, int seeds_per_size,
                      const std::string& out, long grid) {
    BenchReport report;
    for (int n : sizes) {
        for (int s = 1; s <= seeds_per_size; ++s) {
            InstanceSpec spec{n, (uint64_t)s, grid};
            try {
                report.rows.push_back(run_instance(spec));
            } catch (const std::exception& e) {
                report.failures.push_back("n=" + std::to_string(n) +
                                          " seed=" + std::to_string(s) + ": " + e.what());
            }
        }
    }
    std::sort(report.rows.begin(), report.rows.end(), [](const BenchRow& a, const BenchRow& b) {
        if (a.n != b.n) return a.n < b.n;
        return a.seed < b.seed;
    });
    if (!out.empty()) write_csv(report, out);
    return report;
}

void write_csv(const BenchReport& report, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write CSV: " + path);
    f << "n,seed,faces_premerge,faces,buckets_naive35,buckets_pruned,buckets_bruteforce,"
         "mst_length,steiner_length,improvement_pct,add_delete_ratio,same_triangle,"
         "steiner_degree,wall_ms\n";
    f.precision(12);
    for (const BenchRow& r : report.rows) {
        f << r.n << ',' << r.seed << ',' << r.faces_premerge << ',' << r.faces << ','
          << r.buckets_naive35 << ',' << r.buckets_pruned << ',' << r.buckets_bruteforce
          << ',' << r.mst_length << ',' << r.steiner_length << ',' << r.improvement_pct
          << ',' << r.add_delete_ratio << ',' << (r.same_triangle ? 1 : 0) << ','
          << r.steiner_degree << ',' << r.wall_ms << "\n";
    }

    // Per-size means as trailing comment lines.
    std::map<int, std::vector<const BenchRow*>> by_n;
    for (const BenchRow& r : report.rows) by_n[r.n].push_back(&r);
    for (auto& [n, rows] : by_n) {
        double faces = 0, pruned = 0, naive = 0, impr = 0, ratio = 0, same = 0, deg4 = 0;
        for (const BenchRow* r : rows) {
            faces += (double)r->faces;
            pruned += (double)r->buckets_pruned;
            naive += (double)r->buckets_naive35;
            impr += r->improvement_pct;
            ratio += r->add_delete_ratio;
            same += r->same_triangle ? 1.0 : 0.0;
            deg4 += r->steiner_degree == 4 ? 1.0 : 0.0;
        }
        double k = (double)rows.size();
        f << "# mean n=" << n << " instances=" << rows.size() << " faces=" << faces / k
          << " faces_per_n=" << faces / k / n << " buckets_pruned=" << pruned / k
          << " naive35_over_pruned=" << (pruned > 0 ? naive / pruned : 0)
          << " improvement_pct=" << impr / k << " add_delete_ratio=" << ratio / k
          << " same_triangle_frac=" << same / k << " degree4_count=" << (long)deg4 << "\n";
    }
    for (const std::string& e : report.failures) f << "# FAILED " << e << "\n";
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace oovd
