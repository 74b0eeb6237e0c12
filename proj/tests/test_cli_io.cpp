#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oovd/bench.hpp"
#include "oovd/io_json.hpp"
#include "oovd/oovd_build.hpp"
#include "oovd/pointgen.hpp"
#include "oovd/svg.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

using namespace oovd;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/oovd_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("gen_points determinism and range") {
    TerminalSet a = gen_points({10, 1, 10000});
    TerminalSet b = gen_points({10, 1, 10000});
    REQUIRE(a.size() == 10);
    CHECK(a.points == b.points);

    TerminalSet c = gen_points({10, 2, 10000});
    CHECK(a.points != c.points);

    TerminalSet big = gen_points({500, 7, 10000});
    CHECK(big.size() == 500);
    std::set<std::pair<std::string, std::string>> uniq;
    for (const Point2& p : big.points) {
        CHECK(p.x >= QS3(0));
        CHECK(p.x <= QS3(10000));
        CHECK(p.y >= QS3(0));
        CHECK(p.y <= QS3(10000));
        uniq.emplace(rational_to_string(p.x.a), rational_to_string(p.y.a));
    }
    CHECK(uniq.size() == 500);
}

TEST_CASE("point file round-trip") {
    TempFile tf("points.txt");
    TerminalSet X = gen_points({25, 3, 10000});
    write_points(X, tf.path);
    TerminalSet Y = read_points(tf.path);
    CHECK(X.points == Y.points);
}

TEST_CASE("point file parsing details") {
    TempFile tf("points_comments.txt");
    {
        std::ofstream f(tf.path);
        f << "# header comment\n"
          << "3 4\n"
          << "\n"
          << "10 20 # trailing comment\n";
    }
    TerminalSet X = read_points(tf.path);
    REQUIRE(X.size() == 2);
    CHECK(X.points[0] == Point2(3, 4));
    CHECK(X.points[1] == Point2(10, 20));

    {
        std::ofstream f(tf.path);
        f << "1 2 3\n";
    }
    CHECK_THROWS(read_points(tf.path));
    CHECK_THROWS(read_points("/nonexistent/file.txt"));
}

TEST_CASE("QS3 JSON round-trip is bit-exact") {
    QS3 x = qs3_from_strings("-355/113", "2/7");
    auto j = qs3_to_json(x);
    CHECK(j.at("a").get<std::string>() == "-355/113");
    CHECK(j.at("b").get<std::string>() == "2/7");
    QS3 y = qs3_from_json(j);
    CHECK(x == y);
    CHECK(j.at("float").get<double>() == x.to_double());
}

TEST_CASE("subdivision JSON shape") {
    TerminalSet P = gen_points({5, 1, 1000});
    Subdivision sub = build_refined_oovd(P, BBox::domain(1000));
    auto j = subdivision_to_json(sub);
    CHECK(j.at("provenance") == "refined-oovd");
    CHECK(j.at("faces").size() == sub.faces.size());
    CHECK(j.at("premerge_faces").get<int>() == sub.premerge_faces);
    const auto& f0 = j.at("faces").at(0);
    CHECK(f0.at("data").size() == 7);
    CHECK(f0.at("polygon").size() >= 3);
    // polygon vertices round-trip exactly
    Point2 v = point_from_json(f0.at("polygon").at(0));
    CHECK(v == sub.faces[0].polygon[0]);
}

TEST_CASE("solution JSON") {
    Point2 a(0, 0), b(10, 0);
    Point2 c{QS3(5), QS3(5) * QS3::sqrt3()};
    TerminalSet X({a, b, c});
    SteinerSolution sol = solve_1steiner(X);
    Tree mst = build_mst(X);
    StatsRecord st = tree_stats(sol, mst);
    auto j = solution_to_json(X, sol, st);
    CHECK(j.at("terminals").size() == 3);
    CHECK(!j.at("steiner").is_null());
    CHECK(j.at("bucket").at("members").size() == 3);
    CHECK(j.at("stats").at("steiner_degree").get<int>() == 3);
    CHECK(j.at("length").get<double>() == sol.length);
    // steiner coordinates round-trip exactly
    Point2 s = point_from_json(j.at("steiner"));
    CHECK(s == *sol.steiner);
}

TEST_CASE("SVG rendering") {
    SUBCASE("subdivision") {
        TempFile tf("oovd.svg");
        TerminalSet P = gen_points({10, 1, 1000});
        Subdivision sub = build_refined_oovd(P, BBox::domain(1000));
        render_svg(sub, tf.path);
        std::string body = slurp(tf.path);
        CHECK(body.find("<svg") != std::string::npos);
        CHECK(body.find("</svg>") != std::string::npos);
        size_t count = 0, pos = 0;
        while ((pos = body.find("<polygon", pos)) != std::string::npos) {
            ++count;
            pos += 8;
        }
        CHECK(count == sub.faces.size());
    }
    SUBCASE("solution highlights the Steiner point") {
        TempFile tf("tree.svg");
        Point2 a(0, 0), b(10, 0);
        Point2 c{QS3(5), QS3(5) * QS3::sqrt3()};
        TerminalSet X({a, b, c});
        SteinerSolution sol = solve_1steiner(X);
        render_svg(X, sol, tf.path);
        std::string body = slurp(tf.path);
        CHECK(body.find("crimson") != std::string::npos);
        CHECK(body.find("<circle") != std::string::npos);
    }
    SUBCASE("empty tree is an error") {
        TerminalSet X({Point2(0, 0), Point2(1, 0)});
        Tree empty;
        CHECK_THROWS_AS(render_svg(X, empty, "/tmp/oovd_test_empty.svg"),
                        std::invalid_argument);
    }
}

TEST_CASE("bench report shape and invariants") {
    TempFile tf("bench.csv");
    BenchReport rep = run_bench({10}, 2, tf.path, 10000);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.failures.empty());
    for (const BenchRow& r : rep.rows) {
        CHECK(r.n == 10);
        CHECK(r.buckets_naive35 == 35u * (uint64_t)r.faces);
        CHECK(r.buckets_pruned <= 3u * (uint64_t)r.faces);
        CHECK(r.buckets_bruteforce == 120u + 210u);  // C(10,3) + C(10,4)
        CHECK(r.steiner_length <= r.mst_length);
        CHECK(r.faces_premerge >= r.faces);
    }
    CHECK(rep.rows[0].seed == 1);
    CHECK(rep.rows[1].seed == 2);

    std::string body = slurp(tf.path);
    CHECK(body.find("n,seed,faces_premerge,faces,") == 0);
    CHECK(body.find("# mean n=10") != std::string::npos);

    // deterministic numeric columns across reruns
    BenchReport rep2 = run_bench({10}, 2, "", 10000);
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        CHECK(rep.rows[i].faces == rep2.rows[i].faces);
        CHECK(rep.rows[i].buckets_pruned == rep2.rows[i].buckets_pruned);
        CHECK(rep.rows[i].mst_length == rep2.rows[i].mst_length);
        CHECK(rep.rows[i].steiner_length == rep2.rows[i].steiner_length);
        CHECK(rep.rows[i].improvement_pct == rep2.rows[i].improvement_pct);
        CHECK(rep.rows[i].same_triangle == rep2.rows[i].same_triangle);
        CHECK(rep.rows[i].steiner_degree == rep2.rows[i].steiner_degree);
    }
}

TEST_CASE("brute force bucket count") {
    CHECK(brute_force_bucket_count(3) == 1);
    CHECK(brute_force_bucket_count(4) == 5);
    CHECK(brute_force_bucket_count(10) == 330);
    CHECK(brute_force_bucket_count(500) == 2573031125ull + 20708500ull);
}
