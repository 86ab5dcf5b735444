#include "pillowfloer/svg.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pillowfloer/errors.hpp"

namespace pillowfloer {

namespace {

// Sutherland-Hodgman clip of a polygon against the fundamental-domain
// rectangle [0,pi]x[0,2pi].
std::vector<Vec2> clip_rect(std::vector<Vec2> poly) {
  struct Edge {
    int axis;
    double v;
    bool keep_less;
  };
  const Edge edges[4] = {{0, 0.0, false}, {0, kPi, true}, {1, 0.0, false}, {1, kTwoPi, true}};
  for (const auto& e : edges) {
    std::vector<Vec2> out;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec2 a = poly[i], b = poly[(i + 1) % n];
      const double va = e.axis == 0 ? a.x : a.y;
      const double vb = e.axis == 0 ? b.x : b.y;
      const bool ina = e.keep_less ? va <= e.v : va >= e.v;
      const bool inb = e.keep_less ? vb <= e.v : vb >= e.v;
      if (ina) out.push_back(a);
      if (ina != inb) {
        const double t = (e.v - va) / (vb - va);
        out.push_back(a + (b - a) * t);
      }
    }
    poly = std::move(out);
    if (poly.empty()) break;
  }
  return poly;
}

struct Painter {
  std::ostringstream body;
  double scale;
  double x(double g) const { return 20 + scale * g; }
  double y(double t) const { return 20 + scale * (kTwoPi - t); }

  void polyline(const std::vector<Vec2>& pts, const std::string& color, double width,
                bool closed = false, const std::string& fill = "none") {
    if (pts.size() < 2) return;
    body << "<path d=\"M";
    for (size_t i = 0; i < pts.size(); ++i)
      body << (i ? " L" : " ") << x(pts[i].x) << " " << y(pts[i].y);
    if (closed) body << " Z";
    body << "\" fill=\"" << fill << "\" stroke=\"" << color << "\" stroke-width=\"" << width
         << "\"/>\n";
  }
  void dot(const Vec2& p, const std::string& color, double r) {
    body << "<circle cx=\"" << x(p.x) << "\" cy=\"" << y(p.y) << "\" r=\"" << r << "\" fill=\""
         << color << "\"/>\n";
  }
  void text(const Vec2& p, const std::string& s) {
    body << "<text x=\"" << x(p.x) + 5 << "\" y=\"" << y(p.y) - 5
         << "\" font-size=\"11\" font-family=\"sans-serif\">" << s << "</text>\n";
  }
};

// fold a lift polyline into the fundamental domain, splitting at fold edges
std::vector<std::vector<Vec2>> fold_polyline(const std::vector<Vec2>& pts) {
  std::vector<std::vector<Vec2>> runs;
  std::vector<Vec2> cur;
  const int oversample = 6;
  Vec2 prev_canon;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    for (int k = 0; k < oversample; ++k) {
      const double f = static_cast<double>(k) / oversample;
      const Vec2 p = pts[i] * (1 - f) + pts[i + 1] * f;
      const auto c = canonicalize(LiftPoint(p));
      const Vec2 cp = c.point.vec();
      if (!cur.empty() && dist(cp, prev_canon) > 0.5) {
        runs.push_back(cur);
        cur.clear();
      }
      cur.push_back(cp);
      prev_canon = cp;
    }
  }
  if (!pts.empty()) {
    const auto c = canonicalize(LiftPoint(pts.back()));
    cur.push_back(c.point.vec());
  }
  if (!cur.empty()) runs.push_back(cur);
  return runs;
}

}  // namespace

std::string render_svg(const LiftedCurve& L0, const std::vector<LiftedCurve>& L1_components,
                       const ChainComplexZ4* complex, const SvgOptions& opt) {
  Painter p;
  p.scale = opt.scale;
  const double W = 40 + opt.scale * kPi, H = 40 + opt.scale * kTwoPi;

  // fundamental domain, fold edges dashed
  p.body << "<rect x=\"" << p.x(0) << "\" y=\"" << p.y(kTwoPi) << "\" width=\"" << opt.scale * kPi
         << "\" height=\"" << opt.scale * kTwoPi
         << "\" fill=\"white\" stroke=\"#888\" stroke-dasharray=\"6 3\"/>\n";
  // corners
  for (double g : {0.0, kPi})
    for (double t : {0.0, kPi, kTwoPi}) p.dot({g, t}, "#444", 3.5);

  // shaded bigons first (under the curves): clip every deck image of the
  // boundary polygon against the domain
  if (complex) {
    for (const auto& comp : complex->components) {
      for (const auto& b : comp.bigons) {
        BBox bb = bbox_of(b.boundary_loop);
        for (long m = static_cast<long>(std::floor(-bb.hi.x / kTwoPi)) - 1;
             m <= std::ceil((kPi - bb.lo.x) / kTwoPi) + 1; ++m)
          for (long n = static_cast<long>(std::floor(-bb.hi.y / kTwoPi)) - 1;
               n <= std::ceil((kTwoPi - bb.lo.y) / kTwoPi) + 1; ++n)
            for (int sigma : {1, -1}) {
              const DeckElement g{m, n, sigma};
              std::vector<Vec2> poly;
              poly.reserve(b.boundary_loop.size());
              for (const auto& v : b.boundary_loop) poly.push_back(g.apply(v));
              poly = clip_rect(std::move(poly));
              if (poly.size() >= 3)
                p.polyline(poly, "none", 0, true, "rgba(255,170,0,0.45)");
            }
      }
    }
  }

  for (const auto& run : fold_polyline(L0.vertices)) p.polyline(run, "#c22", 1.6);
  const char* palette[] = {"#226", "#262", "#626", "#266", "#622"};
  for (size_t i = 0; i < L1_components.size(); ++i)
    for (const auto& run : fold_polyline(L1_components[i].vertices))
      p.polyline(run, palette[i % 5], 1.6);

  if (complex) {
    for (const auto& comp : complex->components) {
      for (size_t i = 0; i < comp.generators.size(); ++i) {
        const Vec2 pos = comp.generators[i].point.vec();
        p.dot(pos, "#000", 2.8);
        if (opt.label_generators)
          p.text(pos, comp.generator_labels[i] + " (" +
                          std::to_string(comp.grading.grading[i]) + ")");
      }
    }
  }

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
     << p.body.str() << "</svg>\n";
  return os.str();
}

void save_svg(const std::string& svg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidSpec("cannot write svg file " + path);
  out << svg;
}

}  // namespace pillowfloer
