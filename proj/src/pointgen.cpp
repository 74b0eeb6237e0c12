#include "oovd/pointgen.hpp"

#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oovd {

namespace {

// Unbiased draw from [0, m-1] by rejection.
uint64_t draw_below(std::mt19937_64& rng, uint64_t m) {
    uint64_t limit = uint64_t(-1) - uint64_t(-1) % m;
    uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % m;
}

}  // namespace

TerminalSet gen_points(const InstanceSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("gen_points: n must be positive");
    if (spec.grid < 1) throw std::invalid_argument("gen_points: grid must be positive");
    uint64_t cells = (uint64_t(spec.grid) + 1) * (uint64_t(spec.grid) + 1);
    if ((uint64_t)spec.n > cells)
        throw std::invalid_argument("gen_points: more points than grid cells");

    std::mt19937_64 rng(spec.seed);
    uint64_t m = uint64_t(spec.grid) + 1;
    std::set<std::pair<long, long>> seen;
    std::vector<Point2> pts;
    pts.reserve((size_t)spec.n);
    while ((int)pts.size() < spec.n) {
        long x = (long)draw_below(rng, m);
        long y = (long)draw_below(rng, m);
        if (!seen.emplace(x, y).second) continue;
        pts.emplace_back(x, y);
    }
    return TerminalSet(std::move(pts));
}

}  // namespace oovd
