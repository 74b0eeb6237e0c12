#include "oovd/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oovd {

namespace {

struct Frame {
    double xmin, ymin, xmax, ymax;

    double w() const { return xmax - xmin; }
    double h() const { return ymax - ymin; }
    // y flipped: SVG has y growing downward
    double tx(double x) const { return x - xmin; }
    double ty(double y) const { return ymax - y; }
};

Frame frame_of_points(const std::vector<Point2>& pts) {
    Frame f{0, 0, 1, 1};
    bool first = true;
    for (const Point2& p : pts) {
        double x = p.x.to_double(), y = p.y.to_double();
        if (first) {
            f = {x, y, x, y};
            first = false;
        } else {
            f.xmin = std::min(f.xmin, x);
            f.ymin = std::min(f.ymin, y);
            f.xmax = std::max(f.xmax, x);
            f.ymax = std::max(f.ymax, y);
        }
    }
    double pad = std::max({f.w(), f.h(), 1.0}) * 0.05;
    f.xmin -= pad;
    f.ymin -= pad;
    f.xmax += pad;
    f.ymax += pad;
    return f;
}

std::string face_color(int v7) {
    // Spread hues so neighbouring indices differ visibly.
    int hue = (v7 * 47) % 360;
    std::ostringstream os;
    os << "hsl(" << hue << ",55%,75%)";
    return os.str();
}

void open_svg(std::ofstream& out, const Frame& f) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" "
        << "viewBox=\"0 0 " << f.w() << " " << f.h() << "\">\n";
}

}  // namespace

void render_svg(const Subdivision& sub, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write SVG: " + path);
    Frame f{sub.bbox.xmin.get_d(), sub.bbox.ymin.get_d(), sub.bbox.xmax.get_d(),
            sub.bbox.ymax.get_d()};
    open_svg(out, f);
    double stroke = std::max(f.w(), f.h()) / 1500.0;
    for (const FaceRecord& face : sub.faces) {
        out << "<polygon points=\"";
        for (const Point2& p : face.polygon)
            out << f.tx(p.x.to_double()) << "," << f.ty(p.y.to_double()) << " ";
        out << "\" fill=\"" << face_color(face.data.v7) << "\" stroke=\"black\" stroke-width=\""
            << stroke << "\"/>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

void render_tree_impl(const TerminalSet& X, const Tree& tree, const Point2* steiner,
                      const std::string& path) {
    if (tree.edges.empty()) throw std::invalid_argument("render_svg: empty tree");
    std::vector<Point2> all = X.points;
    if (steiner) all.push_back(*steiner);
    Frame f = frame_of_points(all);

    auto coord = [&](int id) -> const Point2& {
        if (id <= X.size()) return X.terminal(id);
        if (!steiner) throw std::invalid_argument("render_svg: tree references a Steiner node");
        return *steiner;
    };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write SVG: " + path);
    open_svg(out, f);
    double stroke = std::max(f.w(), f.h()) / 400.0;
    double r = stroke * 2.0;
    for (const TreeEdge& e : tree.edges) {
        const Point2& a = coord(e.u);
        const Point2& b = coord(e.v);
        bool added = e.v > X.size();
        out << "<line x1=\"" << f.tx(a.x.to_double()) << "\" y1=\"" << f.ty(a.y.to_double())
            << "\" x2=\"" << f.tx(b.x.to_double()) << "\" y2=\"" << f.ty(b.y.to_double())
            << "\" stroke=\"" << (added ? "crimson" : "black") << "\" stroke-width=\""
            << stroke * (added ? 1.4 : 1.0) << "\"/>\n";
    }
    for (const Point2& p : X.points)
        out << "<circle cx=\"" << f.tx(p.x.to_double()) << "\" cy=\"" << f.ty(p.y.to_double())
            << "\" r=\"" << r << "\" fill=\"black\"/>\n";
    if (steiner)
        out << "<circle cx=\"" << f.tx(steiner->x.to_double()) << "\" cy=\""
            << f.ty(steiner->y.to_double()) << "\" r=\"" << r * 1.4
            << "\" fill=\"crimson\"/>\n";
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void render_svg(const TerminalSet& X, const Tree& tree, const std::string& path) {
    render_tree_impl(X, tree, nullptr, path);
}

void render_svg(const TerminalSet& X, const SteinerSolution& sol, const std::string& path) {
    render_tree_impl(X, sol.tree, sol.steiner ? &*sol.steiner : nullptr, path);
}

}  // namespace oovd
