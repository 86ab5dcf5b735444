#pragma once

// Shared JSON curve format and report serialization.  Curves:
//   {"curves":[{"kind":"circle"|"arc","label":str,"vertices":[[gamma,theta],...],
//               "closure":{"m":int,"n":int,"sigma":1|-1}}]}
// coordinates in radians, lift coordinates.

#include <optional>
#include <string>
#include <vector>

#include "pillowfloer/knots.hpp"

namespace pillowfloer {

std::vector<LiftedCurve> load_curves(const std::string& path);
std::vector<LiftedCurve> parse_curves(const std::string& json_text);
std::string curves_to_json(const std::vector<LiftedCurve>& curves);
void save_curves(const std::vector<LiftedCurve>& curves, const std::string& path);

// Reproducibility sidecar for traced varieties:
//   {"samples":[[u,v,tau],...], "kind":..., "residual":...}
std::string trace_sidecar_json(const TraceResult& trace);

struct RunReport {
  std::string command;
  std::string input;
  ChainComplexZ4 complex;
  std::vector<GradedRanks> component_homology;
  GradedRanks total_homology;
  std::vector<std::string> warnings;
  // recorded parameters
  double eps = 0.1;
  PerturbationFunction g;
  double epsA = 0.0, epsB = 0.0;
  std::optional<int> signature;
  int samples = 512;
  int window = 1;
  int kmax = 2;
  double tol = 1e-9;
  int seed_grid = 64;
};

std::string report_to_json(const RunReport& report);
std::string report_to_text(const RunReport& report);

}  // namespace pillowfloer
