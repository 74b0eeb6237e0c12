#pragma once

#include "oovd/steiner.hpp"
#include "oovd/subdivision.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace oovd {

// QS3 as {"a": "p/q", "b": "p/q", "float": d}; the rational strings
// round-trip bit-exactly.
nlohmann::json qs3_to_json(const QS3& x);
QS3 qs3_from_json(const nlohmann::json& j);

nlohmann::json point_to_json(const Point2& p);
Point2 point_from_json(const nlohmann::json& j);

nlohmann::json subdivision_to_json(const Subdivision& sub);

nlohmann::json solution_to_json(const TerminalSet& X, const SteinerSolution& sol,
                                const StatsRecord& stats);

// Point file: one "x y" integer pair per line, '#' starts a comment.
TerminalSet read_points(const std::string& path);
void write_points(const TerminalSet& X, const std::string& path);

}  // namespace oovd
