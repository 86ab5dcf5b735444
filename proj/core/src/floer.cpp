#include "pillowfloer/floer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>

#include "pillowfloer/errors.hpp"

namespace pillowfloer {

namespace detail {
bool immersed_disk_exists(const std::vector<Vec2>& loop);
}

std::string GradedRanks::str() const {
  std::ostringstream os;
  os << "(" << n[0] << "," << n[1] << "," << n[2] << "," << n[3] << ")";
  return os.str();
}

GradedRanks ComplexComponent::chain_ranks() const {
  GradedRanks r;
  for (int g : grading.grading) r.n[g]++;
  return r;
}

GradedRanks ChainComplexZ4::chain_ranks() const {
  GradedRanks r;
  for (const auto& c : components) r = r + c.chain_ranks();
  return r;
}

int ChainComplexZ4::differential_rank() const {
  int rank = 0;
  for (const auto& comp : components) {
    // F2 rank of the differential matrix, rows indexed by targets
    const int n = static_cast<int>(comp.generators.size());
    std::vector<std::vector<uint64_t>> rows(n, std::vector<uint64_t>((n + 63) / 64, 0));
    for (auto [from, to] : comp.differential) rows[from][to / 64] ^= (1ull << (to % 64));
    // gaussian elimination
    int r = 0;
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int i = r; i < n; ++i)
        if (rows[i][col / 64] & (1ull << (col % 64))) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(rows[r], rows[piv]);
      for (int i = 0; i < n; ++i)
        if (i != r && (rows[i][col / 64] & (1ull << (col % 64))))
          for (size_t w = 0; w < rows[i].size(); ++w) rows[i][w] ^= rows[r][w];
      ++r;
    }
    rank += r;
  }
  return rank;
}

bool check_admissible(const LiftedCurve& L0, const LiftedCurve& L1, std::string* why) {
  const bool circle0 = L0.kind == CurveKind::Circle;
  const bool circle1 = L1.kind == CurveKind::Circle;
  if (!circle0 && !circle1) {
    if (why) *why = "neither curve is a circle";
    return false;
  }
  if (!circle0 || !circle1) return true;  // arcs carry no essential classes
  const auto w0 = primitive_root(loop_word(circle_loop(L0)));
  const auto w1 = primitive_root(loop_word(circle_loop(L1)));
  if (w0.empty() || w1.empty()) return true;  // nullhomotopic word: obstruction elsewhere
  std::vector<int> w1inv;
  for (auto it = w1.rbegin(); it != w1.rend(); ++it) w1inv.push_back(-*it);
  if (cyclic_equal(w0, w1) || cyclic_equal(w0, w1inv)) {
    if (why) *why = "curves share an essential free homotopy class";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// bigon search

namespace {

// Does g lie in the cyclic group generated by the closure translation?
// Returns the power when it does.
std::optional<long> closure_power(const DeckElement& g, const DeckElement& closure) {
  if (g.is_identity()) return 0;
  if (g.sigma != 1 || closure.sigma != 1) {
    // sigma = -1 closures square to the identity; only j in {0} matters for
    // translations, and sigma mismatches never match
    return std::nullopt;
  }
  if (closure.m == 0 && closure.n == 0) return std::nullopt;
  long j = 0;
  if (closure.m != 0) {
    if (g.m % closure.m != 0) return std::nullopt;
    j = g.m / closure.m;
  } else {
    if (g.n % closure.n != 0) return std::nullopt;
    j = g.n / closure.n;
  }
  if (g.m == j * closure.m && g.n == j * closure.n) return j;
  return std::nullopt;
}

}  // namespace

std::vector<BigonCertificate> find_bigons(const LiftedCurve& L0, const LiftedCurve& L1,
                                          const std::vector<IntersectionPoint>& gens,
                                          const BigonOptions& opt) {
  std::vector<BigonCertificate> out;
  const int N = static_cast<int>(gens.size());
  const double per0 = L0.kind == CurveKind::Circle ? L0.period() : 0;
  const double per1 = L1.kind == CurveKind::Circle ? L1.period() : 0;
  const int K = opt.k_max;

  for (int pi = 0; pi < N; ++pi) {
    for (int qi = 0; qi < N; ++qi) {
      if (pi == qi) continue;
      const auto& p = gens[pi];
      const auto& q = gens[qi];
      bool found = false;
      for (long kq = -(L0.kind == CurveKind::Circle ? K : 0);
           kq <= (L0.kind == CurveKind::Circle ? K : 0) && !found; ++kq) {
        // q-corner lifted by closure0^kq; need both corners on one L1 lift
        const DeckElement E =
            p.lift_offset.inverse().compose(L0.closure.pow(kq)).compose(q.lift_offset);
        long j = 0;
        if (L1.kind == CurveKind::Circle) {
          auto jj = closure_power(E, L1.closure);
          if (!jj) continue;
          j = *jj;
          if (std::labs(j) > K) continue;
        } else {
          if (!E.is_identity()) continue;
        }
        const double q_s0 = q.s0 + kq * per0;
        const double q_s1 = q.s1 + j * per1;
        if (std::abs(q_s0 - p.s0) < 1e-12) continue;

        // boundary: gamma0 on L0 from q to p, gamma1 on (g_p * L1) from p to q
        std::vector<Vec2> g0 = L0.subpath(q_s0, p.s0);
        std::vector<Vec2> g1raw = L1.subpath(p.s1, q_s1);
        std::vector<Vec2> g1;
        g1.reserve(g1raw.size());
        for (const auto& v : g1raw) g1.push_back(p.lift_offset.apply(v));
        if (dist(g0.back(), g1.front()) > 1e-6 || dist(g1.back(), g0.front()) > 1e-6)
          continue;  // lift bookkeeping mismatch; not a closed candidate

        // snap the corners so the loop closes exactly
        g1.front() = g0.back();
        g1.back() = g0.front();

        int mas;
        try {
          mas = mas_ngon({g0, g1});
        } catch (const NonGenericVertex&) {
          continue;
        }
        if (mas != 1) continue;

        std::vector<Vec2> beta(g0.begin(), g0.end() - 1);
        beta.insert(beta.end(), g1.begin(), g1.end() - 1);
        if (beta.size() < 3) continue;

        // lattice points must have winding zero
        BBox bb = bbox_of(beta);
        bool lattice_ok = true;
        for (long i = static_cast<long>(std::floor(bb.lo.x / kPi)) - 1;
             i <= std::ceil(bb.hi.x / kPi) + 1 && lattice_ok; ++i)
          for (long jj = static_cast<long>(std::floor(bb.lo.y / kPi)) - 1;
               jj <= std::ceil(bb.hi.y / kPi) + 1 && lattice_ok; ++jj) {
            const Vec2 lp{kPi * i, kPi * jj};
            if (winding_number(beta, lp) != 0) lattice_ok = false;
          }
        if (!lattice_ok) continue;

        BigonCertificate cert;
        cert.from = pi;
        cert.to = qi;
        cert.alpha0_from = q_s0;
        cert.alpha0_to = p.s0;
        cert.alpha1_from = p.s1;
        cert.alpha1_to = q_s1;
        cert.deck = p.lift_offset;
        cert.boundary_loop = beta;

        if (is_simple_loop(beta, opt.tol)) {
          if (signed_area(beta) < 0) {
            cert.interior_class = BigonInterior::EmbeddedDisk;
            out.push_back(cert);
            found = true;
          }
          continue;
        }
        if (!opt.allow_tier2) continue;
        bool glued = false;
        try {
          glued = detail::immersed_disk_exists(beta);
        } catch (const NonTransverse&) {
          continue;
        }
        if (glued) {
          cert.interior_class = BigonInterior::ImmersedGlued;
          out.push_back(cert);
          found = true;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// complex assembly and homology

ChainComplexZ4 build_complex(const LiftedCurve& L0, const std::vector<LiftedCurve>& L1_components,
                             std::optional<int> signature, const BigonOptions& opt) {
  ChainComplexZ4 cx;
  cx.l0_label = L0.label;

  for (const auto& L1 : L1_components) {
    std::string why;
    if (!check_admissible(L0, L1, &why)) throw NotAdmissible(L1.label + ": " + why);

    ComplexComponent comp;
    comp.label = L1.label;
    comp.kind = L1.kind;
    IntersectionOptions iopt;
    iopt.tol = opt.tol;
    iopt.window_periods = opt.window_periods;
    comp.generators = intersections(L0, L1, iopt);
    const int n = static_cast<int>(comp.generators.size());

    comp.grading.grading.assign(n, 0);
    for (int i = 1; i < n; ++i)
      comp.grading.grading[i] =
          relative_grading(comp.generators[i], comp.generators[0], L0, L1);

    if (L1.kind == CurveKind::Arc && signature && n > 0) {
      // r_+^eps: the generator nearest the arc end whose corner folds to (0,0)
      auto corner_class = [](const Vec2& v) {
        const long a = std::lround(v.x / kPi), b = std::lround(v.y / kPi);
        return std::pair<long, long>(((a % 2) + 2) % 2, ((b % 2) + 2) % 2);
      };
      const bool front_is_origin = corner_class(L1.vertices.front()) == std::pair<long, long>(0, 0);
      int rplus = 0;
      for (int i = 1; i < n; ++i) {
        const bool closer = front_is_origin ? comp.generators[i].s1 < comp.generators[rplus].s1
                                            : comp.generators[i].s1 > comp.generators[rplus].s1;
        if (closer) rplus = i;
      }
      comp.grading = anchor_absolute(comp.grading, rplus, mod4(*signature),
                                     AnchorProvenance::Signature);
      comp.generator_labels.assign(n, "");
    }

    comp.bigons = find_bigons(L0, L1, comp.generators, opt);
    for (const auto& b : comp.bigons) {
      comp.differential.push_back({b.from, b.to});
      // a bigon from p to q forces gr(p,q) = 1
      const int gp = comp.grading.grading[b.from];
      const int gq = comp.grading.grading[b.to];
      if (mod4(gp - gq) != 1) {
        std::ostringstream os;
        os << "bigon " << b.from << "->" << b.to << " violates gr(p,q)=1 on " << comp.label;
        cx.warnings.push_back(os.str());
      }
    }

    // default labels
    if (comp.generator_labels.size() != static_cast<size_t>(n)) comp.generator_labels.assign(n, "");
    for (int i = 0; i < n; ++i)
      if (comp.generator_labels[i].empty())
        comp.generator_labels[i] = comp.label + ":" + std::to_string(i);

    cx.components.push_back(std::move(comp));
    cx.l1_label += (cx.l1_label.empty() ? "" : "+") + L1.label;
  }
  return cx;
}

namespace {

int f2_rank(const std::vector<std::vector<int>>& cols, int nrows) {
  // columns as bitsets
  std::vector<std::vector<uint64_t>> mat;
  for (const auto& col : cols) {
    std::vector<uint64_t> b((nrows + 63) / 64, 0);
    for (int r : col) b[r / 64] ^= 1ull << (r % 64);
    mat.push_back(b);
  }
  int rank = 0;
  std::vector<int> pivot_row;
  std::vector<std::vector<uint64_t>> basis;
  for (auto col : mat) {
    for (size_t k = 0; k < basis.size(); ++k) {
      if (col[pivot_row[k] / 64] & (1ull << (pivot_row[k] % 64)))
        for (size_t w = 0; w < col.size(); ++w) col[w] ^= basis[k][w];
    }
    int pr = -1;
    for (int r = 0; r < nrows && pr < 0; ++r)
      if (col[r / 64] & (1ull << (r % 64))) pr = r;
    if (pr >= 0) {
      basis.push_back(col);
      pivot_row.push_back(pr);
      ++rank;
    }
  }
  return rank;
}

}  // namespace

GradedRanks homology_component(const ComplexComponent& comp) {
  const int n = static_cast<int>(comp.generators.size());
  // check d^2 = 0 and grading drop
  std::vector<std::vector<int>> d(n);
  for (auto [from, to] : comp.differential) d[from].push_back(to);
  for (int x = 0; x < n; ++x) {
    std::map<int, int> counts;
    for (int y : d[x])
      for (int z : d[y]) counts[z] ^= 1;
    for (auto [z, c] : counts)
      if (c) {
        std::ostringstream os;
        os << "d^2 != 0: " << comp.label << " generator " << x << " -> " << z;
        throw DifferentialNotSquareZero(os.str());
      }
  }

  GradedRanks h;
  for (int g = 0; g < 4; ++g) {
    // generators in grading g, and the maps C_g -> C_{g-1}, C_{g+1} -> C_g
    std::vector<int> idx(n, -1);
    int ng = 0, ngm1 = 0, ngp1 = 0;
    std::vector<int> row_of(n, -1);
    for (int i = 0; i < n; ++i) {
      if (comp.grading.grading[i] == g) idx[i] = ng++;
      if (comp.grading.grading[i] == mod4(g - 1)) row_of[i] = ngm1++;
    }
    std::vector<std::vector<int>> cols_out;
    for (int i = 0; i < n; ++i) {
      if (comp.grading.grading[i] != g) continue;
      std::vector<int> col;
      for (int y : d[i]) {
        if (row_of[y] < 0) throw DifferentialNotSquareZero("differential does not drop grading by 1");
        col.push_back(row_of[y]);
      }
      cols_out.push_back(col);
    }
    std::vector<int> row_g(n, -1);
    int ng2 = 0;
    for (int i = 0; i < n; ++i)
      if (comp.grading.grading[i] == g) row_g[i] = ng2++;
    std::vector<std::vector<int>> cols_in;
    for (int i = 0; i < n; ++i) {
      if (comp.grading.grading[i] != mod4(g + 1)) continue;
      std::vector<int> col;
      for (int y : d[i]) col.push_back(row_g[y]);
      cols_in.push_back(col);
      ++ngp1;
    }
    const int rank_out = f2_rank(cols_out, std::max(ngm1, 1));
    const int rank_in = f2_rank(cols_in, std::max(ng, 1));
    h.n[g] = ng - rank_out - rank_in;
  }
  return h;
}

GradedRanks homology(const ChainComplexZ4& c) {
  GradedRanks total;
  for (const auto& comp : c.components) total = total + homology_component(comp);
  return total;
}

GradedRanks vertically_monotonic_fastpath(const LiftedCurve& L0, const LiftedCurve& L1_circle) {
  (void)L0;
  if (!is_vertically_monotonic(L1_circle))
    throw NotMonotonic(L1_circle.label + " is not vertically monotonic");
  const int d = vertical_degree(L1_circle);
  if (d % 2 != 0) throw NonIntegralDegree("vertical degree of a restricted circle must be even");
  GradedRanks r;
  r.n = {d / 2, d / 2, d / 2, d / 2};
  return r;
}

}  // namespace pillowfloer
