#pragma once

#include "oovd/steiner.hpp"
#include "oovd/subdivision.hpp"

#include <string>

namespace oovd {

// Faces colored by their overall-nearest terminal (v7).
void render_svg(const Subdivision& sub, const std::string& path);

// Terminals as dots, tree edges as lines. Throws on an empty tree.
void render_svg(const TerminalSet& X, const Tree& tree, const std::string& path);

// Like the tree rendering, with the Steiner point highlighted and the
// added edges styled distinctly.
void render_svg(const TerminalSet& X, const SteinerSolution& sol, const std::string& path);

}  // namespace oovd
