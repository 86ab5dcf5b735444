#pragma once

// Bigon enumeration, the F2 differential and Z/4-graded homology of C(L0,L1).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pillowfloer/maslov.hpp"

namespace pillowfloer {

enum class BigonInterior { EmbeddedDisk, ImmersedGlued };

struct BigonCertificate {
  int from = -1;  // generator indices into the component's generator list
  int to = -1;
  double alpha0_from = 0, alpha0_to = 0;  // parameter range on L0 (lift units)
  double alpha1_from = 0, alpha1_to = 0;  // parameter range on L1
  DeckElement deck;                       // placement of the L1 lift
  std::vector<Vec2> boundary_loop;        // closed polyline in R^2
  BigonInterior interior_class = BigonInterior::EmbeddedDisk;
};

struct GradedRanks {
  std::array<int, 4> n{0, 0, 0, 0};
  int total() const { return n[0] + n[1] + n[2] + n[3]; }
  bool operator==(const GradedRanks& o) const { return n == o.n; }
  GradedRanks operator+(const GradedRanks& o) const {
    return {{n[0] + o.n[0], n[1] + o.n[1], n[2] + o.n[2], n[3] + o.n[3]}};
  }
  std::string str() const;
};

struct ComplexComponent {
  std::string label;
  CurveKind kind = CurveKind::Circle;
  std::vector<IntersectionPoint> generators;
  std::vector<std::string> generator_labels;
  GradingAssignment grading;
  std::vector<std::pair<int, int>> differential;  // (from, to): d from = ... + to
  std::vector<BigonCertificate> bigons;
  GradedRanks chain_ranks() const;
};

struct ChainComplexZ4 {
  std::vector<ComplexComponent> components;
  std::string l0_label, l1_label;
  std::vector<std::string> warnings;
  GradedRanks chain_ranks() const;
  int rank() const { return chain_ranks().total(); }
  int differential_rank() const;
};

struct BigonOptions {
  double tol = kDefaultTol;
  int k_max = 2;           // winding cap, in periods, for boundary subpaths
  int window_periods = 1;
  bool allow_tier2 = true;
};

// Admissibility: at least one circle among {L0, L1}; no common essential
// free-homotopy classes (checked via cyclically reduced arc-crossing words).
bool check_admissible(const LiftedCurve& L0, const LiftedCurve& L1, std::string* why = nullptr);

// All Maslov-index-1 immersed bigons between generators of (L0, L1).
// Tier 1 certifies embedded boundary loops bounding lattice-free disks;
// tier 2 runs the complementary-region gluing for immersed interiors.
std::vector<BigonCertificate> find_bigons(const LiftedCurve& L0, const LiftedCurve& L1,
                                          const std::vector<IntersectionPoint>& gens,
                                          const BigonOptions& opt = {});

// Assemble the relatively Z/4 graded complex of L0 against the components of
// L1.  When `signature` is given, the arc component is anchored at
// gr(r_+^eps) = signature mod 4.
ChainComplexZ4 build_complex(const LiftedCurve& L0, const std::vector<LiftedCurve>& L1_components,
                             std::optional<int> signature = std::nullopt,
                             const BigonOptions& opt = {});

// Z/4-graded homology ranks over F2 via exact Gaussian elimination.  Throws
// DifferentialNotSquareZero listing the offending compositions.
GradedRanks homology(const ChainComplexZ4& c);
GradedRanks homology_component(const ComplexComponent& c);

// Prop-vm fast path for vertically monotonic circles: (d/2,d/2,d/2,d/2) with
// zero differential.  Throws NotMonotonic.
GradedRanks vertically_monotonic_fastpath(const LiftedCurve& L0, const LiftedCurve& L1_circle);

}  // namespace pillowfloer
