// Command line front end: instance generation, OOVD construction, 1-Steiner
// solving, benchmarking and SVG rendering.
#include "oovd/bench.hpp"
#include "oovd/io_json.hpp"
#include "oovd/oovd_build.hpp"
#include "oovd/pointgen.hpp"
#include "oovd/steiner.hpp"
#include "oovd/svg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct CommonInput {
    std::string input;
    int n = 0;
    uint64_t seed = 0;
    long grid = 10000;
};

oovd::TerminalSet load_terminals(const CommonInput& ci) {
    if (!ci.input.empty()) return oovd::read_points(ci.input);
    if (ci.n > 0) return oovd::gen_points({ci.n, ci.seed, ci.grid});
    throw CLI::ValidationError("provide --input or --n/--seed");
}

void add_common(CLI::App* cmd, CommonInput& ci) {
    cmd->add_option("--input", ci.input, "point file (one 'x y' pair per line)");
    cmd->add_option("--n", ci.n, "number of generated terminals");
    cmd->add_option("--seed", ci.seed, "generator seed");
    cmd->add_option("--grid", ci.grid, "integer grid extent")->capture_default_str();
}

int run(int argc, char** argv) {
    CLI::App app{"overlaid oriented Voronoi diagrams and optimal 1-Steiner trees"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random point set");
    int gen_n = 0;
    uint64_t gen_seed = 0;
    long gen_grid = 10000;
    std::string gen_out;
    gen->add_option("--n", gen_n, "number of terminals")->required();
    gen->add_option("--seed", gen_seed, "generator seed")->required();
    gen->add_option("--grid", gen_grid, "integer grid extent")->capture_default_str();
    gen->add_option("--out", gen_out, "output point file (default: stdout)");

    // oovd
    auto* ov = app.add_subcommand("oovd", "build the refined OOVD");
    CommonInput ov_in;
    std::string ov_out, ov_svg;
    add_common(ov, ov_in);
    ov->add_option("--out", ov_out, "subdivision JSON output");
    ov->add_option("--svg", ov_svg, "SVG rendering of the subdivision");

    // solve
    auto* so = app.add_subcommand("solve", "compute an optimal 1-Steiner tree");
    CommonInput so_in;
    std::string so_out, so_svg;
    add_common(so, so_in);
    so->add_option("--out", so_out, "solution JSON output");
    so->add_option("--svg", so_svg, "SVG rendering of the tree");

    // bench
    auto* be = app.add_subcommand("bench", "run the experiment harness");
    std::vector<int> be_sizes;
    int be_seeds = 1;
    long be_grid = 10000;
    std::string be_csv;
    be->add_option("--sizes", be_sizes, "instance sizes")->required()->delimiter(',');
    be->add_option("--seeds", be_seeds, "instances per size (seeds 1..k)")->required();
    be->add_option("--grid", be_grid, "integer grid extent")->capture_default_str();
    be->add_option("--csv", be_csv, "CSV report path")->required();

    // render
    auto* re = app.add_subcommand("render", "render an object to SVG");
    CommonInput re_in;
    std::string re_what = "oovd", re_svg;
    add_common(re, re_in);
    re->add_option("--what", re_what, "oovd | mst | solution")->capture_default_str()
        ->check(CLI::IsMember({"oovd", "mst", "solution"}));
    re->add_option("--svg", re_svg, "SVG output path")->required();

    app.parse(argc, argv);

    if (*gen) {
        oovd::TerminalSet X = oovd::gen_points({gen_n, gen_seed, gen_grid});
        if (gen_out.empty()) {
            for (const oovd::Point2& p : X.points)
                std::cout << p.x.a.get_num().get_str() << " " << p.y.a.get_num().get_str()
                          << "\n";
        } else {
            oovd::write_points(X, gen_out);
        }
        return 0;
    }

    if (*ov) {
        oovd::TerminalSet X = load_terminals(ov_in);
        oovd::Subdivision sub =
            oovd::build_refined_oovd(X, oovd::BBox::around(X, ov_in.grid));
        if (!ov_out.empty()) {
            std::ofstream f(ov_out);
            f << oovd::subdivision_to_json(sub).dump(1) << "\n";
            if (!f) throw std::runtime_error("cannot write " + ov_out);
        } else {
            std::cout << "faces=" << sub.faces.size()
                      << " premerge=" << sub.premerge_faces << "\n";
        }
        if (!ov_svg.empty()) oovd::render_svg(sub, ov_svg);
        return 0;
    }

    if (*so) {
        oovd::TerminalSet X = load_terminals(so_in);
        oovd::SteinerSolution sol = oovd::solve_1steiner(X);
        oovd::Tree mst = oovd::build_mst(X);
        oovd::StatsRecord st = oovd::tree_stats(sol, mst);
        if (!so_out.empty()) {
            std::ofstream f(so_out);
            f << oovd::solution_to_json(X, sol, st).dump(1) << "\n";
            if (!f) throw std::runtime_error("cannot write " + so_out);
        } else {
            std::cout << "mst_length=" << sol.mst_length << " length=" << sol.length
                      << " improvement_pct=" << st.improvement_pct
                      << " steiner_degree=" << st.steiner_degree << "\n";
        }
        if (!so_svg.empty()) oovd::render_svg(X, sol, so_svg);
        return 0;
    }

    if (*be) {
        oovd::BenchReport rep = oovd::run_bench(be_sizes, be_seeds, be_csv, be_grid);
        for (const std::string& e : rep.failures) std::cerr << "FAILED " << e << "\n";
        std::cout << "rows=" << rep.rows.size() << " failures=" << rep.failures.size()
                  << " csv=" << be_csv << "\n";
        return rep.failures.empty() ? 0 : 1;
    }

    if (*re) {
        oovd::TerminalSet X = load_terminals(re_in);
        if (re_what == "oovd") {
            oovd::Subdivision sub =
                oovd::build_refined_oovd(X, oovd::BBox::around(X, re_in.grid));
            oovd::render_svg(sub, re_svg);
        } else if (re_what == "mst") {
            oovd::render_svg(X, oovd::build_mst(X), re_svg);
        } else {
            oovd::render_svg(X, oovd::solve_1steiner(X), re_svg);
        }
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
