#pragma once

#include <string>

#include "seamkit/flatten.hpp"

namespace seamkit {

struct SvgOptions {
  double px_per_cm = 2.0;
  double margin_cm = 5.0;
  int columns = 4;
};

/// Flat layout of every panel in a grid, seams of each stitch in a shared
/// colour. Curves are emitted as native path commands.
std::string render_svg(const FlatPattern& p, const SvgOptions& options = {});

}  // namespace seamkit
