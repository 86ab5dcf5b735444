#include "pillowfloer/json_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pillowfloer/errors.hpp"

namespace pillowfloer {

using nlohmann::json;

namespace {

json curve_to_json(const LiftedCurve& c) {
  json j;
  j["kind"] = c.kind == CurveKind::Circle ? "circle" : "arc";
  j["label"] = c.label;
  json verts = json::array();
  for (const auto& v : c.vertices) verts.push_back({v.x, v.y});
  j["vertices"] = verts;
  if (c.kind == CurveKind::Circle)
    j["closure"] = {{"m", c.closure.m}, {"n", c.closure.n}, {"sigma", c.closure.sigma}};
  if (c.limiting_slopes)
    j["limiting_slopes"] = {c.limiting_slopes->first, c.limiting_slopes->second};
  return j;
}

LiftedCurve curve_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  std::vector<Vec2> verts;
  for (const auto& v : j.at("vertices")) verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  const std::string label = j.value("label", "");
  if (kind == "arc") return make_arc(std::move(verts), label);
  if (kind != "circle") throw InvalidSpec("curve kind must be 'circle' or 'arc'");
  const auto& cl = j.at("closure");
  DeckElement closure{cl.at("m").get<long>(), cl.at("n").get<long>(), cl.at("sigma").get<int>()};
  // append the closing vertex when the file stores one period without it
  if (dist(verts.back(), closure.apply(verts.front())) > 1e-6) verts.push_back(closure.apply(verts.front()));
  return make_circle(std::move(verts), closure, label);
}

}  // namespace

std::vector<LiftedCurve> parse_curves(const std::string& text) {
  const json j = json::parse(text);
  std::vector<LiftedCurve> out;
  for (const auto& c : j.at("curves")) out.push_back(curve_from_json(c));
  return out;
}

std::vector<LiftedCurve> load_curves(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSpec("cannot open curve file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_curves(ss.str());
}

std::string curves_to_json(const std::vector<LiftedCurve>& curves) {
  json j;
  j["curves"] = json::array();
  for (const auto& c : curves) j["curves"].push_back(curve_to_json(c));
  return j.dump(1);
}

void save_curves(const std::vector<LiftedCurve>& curves, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidSpec("cannot write curve file " + path);
  out << curves_to_json(curves) << "\n";
}

std::string trace_sidecar_json(const TraceResult& trace) {
  json j = json::array();
  for (const auto& c : trace.components) {
    json comp;
    comp["kind"] = c.kind == ComponentKind::CircleComponent ? "circle" : "arc";
    comp["residual"] = c.max_residual;
    json samples = json::array();
    for (const auto& s : c.samples) samples.push_back({s.u, s.v, s.tau});
    comp["samples"] = samples;
    j.push_back(comp);
  }
  json root;
  root["components"] = j;
  json sing = json::array();
  for (const auto& s : trace.singularities)
    sing.push_back({{"u", s.where.u}, {"v", s.where.v}, {"tau", s.where.tau},
                    {"sigma_min", s.sigma_min}});
  root["singularities"] = sing;
  return root.dump(1);
}

namespace {

json ranks_json(const GradedRanks& r) { return {r.n[0], r.n[1], r.n[2], r.n[3]}; }

}  // namespace

std::string report_to_json(const RunReport& rep) {
  json j;
  j["schema"] = "pillowfloer/1";
  j["command"] = rep.command;
  j["input"] = rep.input;
  j["parameters"] = {{"eps", rep.eps},
                     {"g", rep.g.coeffs},
                     {"epsA", rep.epsA},
                     {"epsB", rep.epsB},
                     {"samples", rep.samples},
                     {"window", rep.window},
                     {"kmax", rep.kmax},
                     {"tol", rep.tol},
                     {"seed_grid", rep.seed_grid}};
  if (rep.signature) j["parameters"]["signature"] = *rep.signature;
  json comps = json::array();
  for (size_t ci = 0; ci < rep.complex.components.size(); ++ci) {
    const auto& c = rep.complex.components[ci];
    json jc;
    jc["label"] = c.label;
    jc["kind"] = c.kind == CurveKind::Circle ? "circle" : "arc";
    json gens = json::array();
    for (size_t i = 0; i < c.generators.size(); ++i) {
      const auto& g = c.generators[i];
      gens.push_back({{"label", c.generator_labels[i]},
                      {"grading", c.grading.grading[i]},
                      {"s0", g.s0},
                      {"s1", g.s1},
                      {"gamma", g.point.gamma},
                      {"theta", g.point.theta}});
    }
    jc["generators"] = gens;
    json diff = json::array();
    for (auto [from, to] : c.differential) diff.push_back({from, to});
    jc["differential"] = diff;
    jc["chain_ranks"] = ranks_json(c.chain_ranks());
    if (ci < rep.component_homology.size())
      jc["homology"] = ranks_json(rep.component_homology[ci]);
    comps.push_back(jc);
  }
  j["components"] = comps;
  j["chain_ranks"] = ranks_json(rep.complex.chain_ranks());
  j["homology"] = ranks_json(rep.total_homology);
  j["warnings"] = rep.warnings;
  return j.dump(1);
}

std::string report_to_text(const RunReport& rep) {
  std::ostringstream os;
  os << "pillowfloer " << rep.command << " " << rep.input << "\n";
  for (size_t ci = 0; ci < rep.complex.components.size(); ++ci) {
    const auto& c = rep.complex.components[ci];
    os << "  component " << c.label << " (" << (c.kind == CurveKind::Circle ? "circle" : "arc")
       << "): " << c.generators.size() << " generators, chain " << c.chain_ranks().str();
    if (ci < rep.component_homology.size()) os << ", H " << rep.component_homology[ci].str();
    os << "\n";
    for (size_t i = 0; i < c.generators.size(); ++i)
      os << "    " << c.generator_labels[i] << "  gr=" << c.grading.grading[i] << "  at ("
         << c.generators[i].point.gamma << ", " << c.generators[i].point.theta << ")\n";
    for (auto [from, to] : c.differential)
      os << "    d " << c.generator_labels[from] << " = " << c.generator_labels[to] << "\n";
  }
  os << "  chain " << rep.complex.chain_ranks().str() << "\n";
  os << "  homology " << rep.total_homology.str() << "\n";
  for (const auto& w : rep.warnings) os << "  warning: " << w << "\n";
  return os.str();
}

}  // namespace pillowfloer
