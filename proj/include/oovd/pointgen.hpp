#pragma once

#include "oovd/subdivision.hpp"

#include <cstdint>

namespace oovd {

struct InstanceSpec {
    int n = 0;
    uint64_t seed = 0;
    long grid = 10000;
};

// Deterministic uniform point set on the integer grid [0, grid]^2.
// PRNG discipline (fixed, portable): std::mt19937_64 seeded directly with
// `seed`; each coordinate is drawn by unbiased rejection sampling on
// [0, grid]; x first, then y; a point equal to an earlier one is discarded
// and both coordinates redrawn.
TerminalSet gen_points(const InstanceSpec& spec);

}  // namespace oovd
