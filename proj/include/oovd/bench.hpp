#pragma once

#include "oovd/pointgen.hpp"
#include "oovd/steiner.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace oovd {

struct BenchRow {
    int n = 0;
    uint64_t seed = 0;
    long faces_premerge = 0;
    long faces = 0;
    uint64_t buckets_naive35 = 0;
    uint64_t buckets_pruned = 0;
    uint64_t buckets_bruteforce = 0;  // C(n,3) + C(n,4)
    double mst_length = 0.0;
    double steiner_length = 0.0;
    double improvement_pct = 0.0;
    double add_delete_ratio = 1.0;
    bool same_triangle = false;
    int steiner_degree = 0;
    long wall_ms = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;                 // sorted by (n, seed)
    std::vector<std::string> failures;          // per-instance error notes
};

uint64_t brute_force_bucket_count(int n);

// Full pipeline for one instance.
BenchRow run_instance(const InstanceSpec& spec);

// Runs sizes x seeds (seed values 1..seeds_per_size) and writes the CSV to
// `out` (empty path writes nothing). The CSV ends with '#'-prefixed
// per-size summary lines; the wall_ms column is informational, everything
// else is deterministic.
BenchReport run_bench(const std::vector<int>& sizes, int seeds_per_size,
                      const std::string& out, long grid = 10000);

void write_csv(const BenchReport& report, const std::string& path);

}  // namespace oovd
