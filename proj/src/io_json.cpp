#include "oovd/io_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oovd {

using nlohmann::json;

json qs3_to_json(const QS3& x) {
    return json{{"a", rational_to_string(x.a)},
                {"b", rational_to_string(x.b)},
                {"float", x.to_double()}};
}

QS3 qs3_from_json(const json& j) {
    return qs3_from_strings(j.at("a").get<std::string>(), j.at("b").get<std::string>());
}

json point_to_json(const Point2& p) {
    return json{{"x", qs3_to_json(p.x)}, {"y", qs3_to_json(p.y)}};
}

Point2 point_from_json(const json& j) {
    return Point2(qs3_from_json(j.at("x")), qs3_from_json(j.at("y")));
}

json subdivision_to_json(const Subdivision& sub) {
    json faces = json::array();
    for (const FaceRecord& f : sub.faces) {
        json poly = json::array();
        for (const Point2& p : f.polygon) poly.push_back(point_to_json(p));
        json data = json::array();
        for (int v : f.data.v) data.push_back(v);
        data.push_back(f.data.v7);
        faces.push_back(json{{"polygon", poly}, {"rep", point_to_json(f.rep)}, {"data", data}});
    }
    return json{{"provenance", sub.provenance},
                {"faces", faces},
                {"premerge_faces", sub.premerge_faces},
                {"bbox",
                 {{"xmin", rational_to_string(sub.bbox.xmin)},
                  {"ymin", rational_to_string(sub.bbox.ymin)},
                  {"xmax", rational_to_string(sub.bbox.xmax)},
                  {"ymax", rational_to_string(sub.bbox.ymax)}}}};
}

json solution_to_json(const TerminalSet& X, const SteinerSolution& sol,
                      const StatsRecord& stats) {
    json terms = json::array();
    for (const Point2& p : X.points)
        terms.push_back(json{{"x", p.x.to_double()}, {"y", p.y.to_double()}});
    json edges = json::array();
    for (const TreeEdge& e : sol.tree.edges)
        edges.push_back(json{{"u", e.u}, {"v", e.v}, {"weight", e.weight}});
    json j{{"terminals", terms},
           {"edges", edges},
           {"length", sol.length},
           {"mst_length", sol.mst_length},
           {"stats",
            {{"improvement_pct", stats.improvement_pct},
             {"add_delete_ratio", stats.add_delete_ratio},
             {"same_triangle", stats.same_triangle},
             {"steiner_degree", stats.steiner_degree}}}};
    if (sol.steiner) {
        j["steiner"] = point_to_json(*sol.steiner);
        j["bucket"] = json{{"members", sol.bucket->members},
                           {"kind", bucket_kind_name(sol.bucket->kind)}};
    } else {
        j["steiner"] = nullptr;
        j["bucket"] = nullptr;
    }
    return j;
}

TerminalSet read_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open point file: " + path);
    std::vector<Point2> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long x, y;
        if (!(ls >> x)) continue;  // blank or comment-only line
        if (!(ls >> y))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'x y'");
        long extra;
        if (ls >> extra)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": trailing data");
        pts.emplace_back(x, y);
    }
    return TerminalSet(std::move(pts));
}

void write_points(const TerminalSet& X, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write point file: " + path);
    for (const Point2& p : X.points) {
        // Generated points are integers; emit them as such.
        out << p.x.a.get_num().get_str() << " " << p.y.a.get_num().get_str() << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace oovd
