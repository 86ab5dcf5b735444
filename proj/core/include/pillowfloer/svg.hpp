#pragma once

// SVG rendering of pillowcase pictures: the fundamental domain with corner
// markers and fold edges, curves, labeled generators, shaded bigons.

#include <string>
#include <vector>

#include "pillowfloer/floer.hpp"

namespace pillowfloer {

struct SvgOptions {
  double scale = 120.0;  // pixels per radian
  bool label_generators = true;
};

std::string render_svg(const LiftedCurve& L0, const std::vector<LiftedCurve>& L1_components,
                       const ChainComplexZ4* complex = nullptr, const SvgOptions& opt = {});

void save_svg(const std::string& svg, const std::string& path);

}  // namespace pillowfloer
