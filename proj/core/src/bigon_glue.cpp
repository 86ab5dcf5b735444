// Tier-2 bigon certification: decide whether a closed polyline with
// self-crossings bounds an orientation-preserving immersed disk, by building
// the planar arrangement of the loop, reading off complementary-region
// multiplicities, and searching the finitely many region-copy gluings.

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "pillowfloer/errors.hpp"
#include "pillowfloer/geom.hpp"

namespace pillowfloer {
namespace detail {

namespace {

struct Node {
  Vec2 pos;
  std::vector<int> ends;  // half-edge ids incident, sorted by angle later
};

struct Arc {
  std::vector<Vec2> pts;  // directed along the loop
  int tail_node, head_node;
  int left_face = -1, right_face = -1;
};

struct Event {
  double t;        // cyclic parameter along the loop
  int node;
};

constexpr double kMergeTol = 1e-9;

}  // namespace

// Returns true iff an orientation-preserving immersed disk with the given
// clockwise boundary loop exists.  The loop is a closed polyline (first
// vertex not repeated).  Throws NonTransverse on tangencies / triple points.
bool immersed_disk_exists(const std::vector<Vec2>& loop) {
  const int n = static_cast<int>(loop.size());
  auto pt = [&](int i) { return loop[((i % n) + n) % n]; };

  // 1. self-crossings of the cyclic polyline
  std::vector<std::pair<double, double>> xpairs;
  std::vector<Vec2> xpos;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool adj = (j == i + 1) || (i == 0 && j == n - 1);
      if (adj) continue;
      auto h = segment_hit(pt(i), pt(i + 1), pt(j), pt(j + 1), kMergeTol);
      if (!h) continue;
      if (h->degenerate) throw NonTransverse("overlapping boundary segments");
      xpairs.push_back({i + h->t, j + h->u});
      xpos.push_back(pt(i) * (1 - h->t) + pt(i + 1) * h->t);
    }
  }
  if (xpairs.empty()) {
    // embedded: clockwise boundary of a disk
    return signed_area(loop) < 0;
  }

  // merge duplicate events (vertex hits show up from two edge pairs)
  std::vector<int> keep;
  for (size_t a = 0; a < xpairs.size(); ++a) {
    bool dup = false;
    for (int b : keep)
      if (dist(xpos[a], xpos[b]) < 1e-7) dup = true;
    if (!dup) keep.push_back(static_cast<int>(a));
  }

  // nodes and the split parameters
  std::vector<Node> nodes;
  std::vector<Event> events;
  for (int a : keep) {
    const int id = static_cast<int>(nodes.size());
    nodes.push_back({xpos[a], {}});
    events.push_back({xpairs[a].first, id});
    events.push_back({xpairs[a].second, id});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.t < b.t; });

  // 2. arcs between consecutive events (cyclic)
  const int A = static_cast<int>(events.size());
  std::vector<Arc> arcs(A);
  auto point_at = [&](double t) {
    const int i = static_cast<int>(std::floor(t));
    const double f = t - i;
    return pt(i) * (1 - f) + pt(i + 1) * f;
  };
  for (int a = 0; a < A; ++a) {
    const Event& e0 = events[a];
    const Event& e1 = events[(a + 1) % A];
    Arc& arc = arcs[a];
    arc.tail_node = e0.node;
    arc.head_node = e1.node;
    arc.pts.push_back(nodes[e0.node].pos);
    double t0 = e0.t, t1 = e1.t;
    if (a + 1 == A) t1 += n;
    for (int i = static_cast<int>(std::floor(t0)) + 1; i <= static_cast<int>(std::floor(t1)); ++i) {
      const Vec2 p = pt(i);
      if (dist(p, arc.pts.back()) > 1e-9 && dist(p, nodes[e1.node].pos) > 1e-9)
        arc.pts.push_back(p);
    }
    arc.pts.push_back(nodes[e1.node].pos);
    (void)point_at;
  }

  // 3. half-edges and the rotation system.  Half-edge 2a = arc a forward
  // (tail->head), 2a+1 = backward.
  const int H = 2 * A;
  auto he_node = [&](int h) { return h % 2 == 0 ? arcs[h / 2].tail_node : arcs[h / 2].head_node; };
  auto he_dir = [&](int h) {
    const Arc& arc = arcs[h / 2];
    if (h % 2 == 0) return arc.pts[1] - arc.pts[0];
    return arc.pts[arc.pts.size() - 2] - arc.pts[arc.pts.size() - 1];
  };
  for (int h = 0; h < H; ++h) nodes[he_node(h)].ends.push_back(h);
  for (auto& v : nodes) {
    if (v.ends.size() != 4) throw NonTransverse("non-double self-crossing of bigon boundary");
    std::sort(v.ends.begin(), v.ends.end(), [&](int a, int b) {
      const Vec2 da = he_dir(a), db = he_dir(b);
      return std::atan2(da.y, da.x) < std::atan2(db.y, db.x);
    });
  }

  // faces: orbits of h |-> ccw-next at head of twin(h)
  auto twin = [&](int h) { return h ^ 1; };
  std::vector<int> nextInRot(H);
  for (const auto& v : nodes) {
    const int k = static_cast<int>(v.ends.size());
    for (int i = 0; i < k; ++i) nextInRot[v.ends[i]] = v.ends[(i + 1) % k];
  }
  auto face_next = [&](int h) { return nextInRot[twin(h)]; };

  std::vector<int> face_of(H, -1);
  int F = 0;
  for (int h = 0; h < H; ++h) {
    if (face_of[h] != -1) continue;
    int cur = h;
    do {
      face_of[cur] = F;
      cur = face_next(cur);
    } while (cur != h);
    ++F;
  }
  for (int a = 0; a < A; ++a) {
    // face to the left of the forward half-edge is face_of(2a)
    arcs[a].left_face = face_of[2 * a];
    arcs[a].right_face = face_of[2 * a + 1];
  }

  // 4. winding per face: BFS from the outer face; crossing the loop from
  // right to left raises the winding by one.
  int lowest_arc = 0;
  double lowest_y = 1e300;
  int lowest_idx = 0;
  for (int a = 0; a < A; ++a)
    for (size_t i = 0; i + 1 < arcs[a].pts.size(); ++i) {
      const double ymid = 0.5 * (arcs[a].pts[i].y + arcs[a].pts[i + 1].y);
      if (ymid < lowest_y) {
        lowest_y = ymid;
        lowest_arc = a;
        lowest_idx = static_cast<int>(i);
      }
    }
  const Vec2 dlow = arcs[lowest_arc].pts[lowest_idx + 1] - arcs[lowest_arc].pts[lowest_idx];
  // below the lowest edge lies the outer face
  const int outer =
      dlow.x > 0 ? arcs[lowest_arc].right_face : arcs[lowest_arc].left_face;

  std::vector<int> wind(F, INT_MIN);
  wind[outer] = 0;
  std::vector<int> stack{outer};
  while (!stack.empty()) {
    const int f = stack.back();
    stack.pop_back();
    for (int a = 0; a < A; ++a) {
      const int L = arcs[a].left_face, R = arcs[a].right_face;
      if (L == f && wind[R] == INT_MIN) {
        wind[R] = wind[f] - 1;
        stack.push_back(R);
      }
      if (R == f && wind[L] == INT_MIN) {
        wind[L] = wind[f] + 1;
        stack.push_back(L);
      }
    }
  }
  for (int f = 0; f < F; ++f)
    if (wind[f] == INT_MIN) return false;  // disconnected arrangement: bail out

  // local degrees of the putative disk
  std::vector<int> mult(F);
  for (int f = 0; f < F; ++f) {
    mult[f] = -wind[f];
    if (mult[f] < 0) return false;
  }

  // 5. gluing search: along each arc, min(mL,mR) interior sheet pairs; the
  // unmatched copy on the heavier side carries the boundary.
  // sheet id = offset[f] + copy
  std::vector<int> offset(F + 1, 0);
  for (int f = 0; f < F; ++f) offset[f + 1] = offset[f] + mult[f];
  const int S = offset[F];
  if (S == 0) return false;

  // enumerate matchings per arc
  struct ArcGlue {
    int arc;
    std::vector<std::vector<std::pair<int, int>>> options;  // list of (Lcopy,Rcopy) pairings
    std::vector<int> boundary_copy_per_option;              // copy index on heavy side
    bool heavy_left;
  };
  std::vector<ArcGlue> glues;
  for (int a = 0; a < A; ++a) {
    const int L = arcs[a].left_face, R = arcs[a].right_face;
    const int mL = mult[L], mR = mult[R];
    if (std::abs(mL - mR) != 1) return false;
    ArcGlue g;
    g.arc = a;
    g.heavy_left = mL > mR;
    const int heavy = std::max(mL, mR), light = std::min(mL, mR);
    // choose which heavy copy is boundary, then biject the rest with light
    std::vector<int> perm(light);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> heavies(heavy);
    std::iota(heavies.begin(), heavies.end(), 0);
    do {
      for (int bcopy = 0; bcopy < heavy; ++bcopy) {
        std::vector<std::pair<int, int>> pairs;
        int li = 0;
        for (int hc = 0; hc < heavy; ++hc) {
          if (hc == bcopy) continue;
          if (g.heavy_left)
            pairs.push_back({hc, perm[li++]});
          else
            pairs.push_back({perm[li++], hc});
        }
        g.options.push_back(pairs);
        g.boundary_copy_per_option.push_back(bcopy);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    glues.push_back(g);
  }

  // wedge bookkeeping for vertex links: at each node the four quadrants in
  // ccw order between consecutive half-edge ends; a wedge belongs to the face
  // between them.
  struct Wedge {
    int node, face;
    int end_a, end_b;  // bounding half-edge ends (ccw: end_a then end_b)
  };
  std::vector<Wedge> wedges;
  std::vector<std::vector<int>> node_wedges(nodes.size());
  for (size_t v = 0; v < nodes.size(); ++v) {
    const auto& ends = nodes[v].ends;
    for (size_t i = 0; i < ends.size(); ++i) {
      Wedge w;
      w.node = static_cast<int>(v);
      w.end_a = ends[i];
      w.end_b = ends[(i + 1) % ends.size()];
      // the ccw sector from end_a to end_b lies to the left of end_a
      w.face = face_of[w.end_a];
      node_wedges[v].push_back(static_cast<int>(wedges.size()));
      wedges.push_back(w);
    }
  }
  // wedge on the arc's left/right side at a given half-edge end
  auto wedge_at = [&](int h, bool left_of_arc) -> int {
    // h leaves its node; the left sector of h starts at h (end_a == h), the
    // right sector ends at h (end_b == h).  For the backward half-edge the
    // arc's left side is the half-edge's right side.
    const bool forward = (h % 2 == 0);
    const bool want_left_of_h = left_of_arc == forward;
    for (int w : node_wedges[he_node(h)]) {
      if (want_left_of_h && wedges[w].end_a == h) return w;
      if (!want_left_of_h && wedges[w].end_b == h) return w;
    }
    return -1;
  };

  // backtracking over arcs (tiny numbers in practice)
  std::vector<int> choice(A, -1);
  long budget = 200000;

  // given full choices, verify the assembly is a disk
  auto assembled_is_disk = [&]() -> bool {
    // union-find over sheet-corner copies for vertex orbits, and over sheets
    // for connectivity
    // sheet corner copy: (wedge, copy): id = wedge_index * maxcopy + copy
    int maxm = 0;
    for (int f = 0; f < F; ++f) maxm = std::max(maxm, mult[f]);
    const int W = static_cast<int>(wedges.size());
    std::vector<int> parent(W * maxm);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    auto wid = [&](int w, int copy) { return w * maxm + copy; };

    std::vector<int> sheet_parent(S);
    std::iota(sheet_parent.begin(), sheet_parent.end(), 0);
    std::function<int(int)> sfind = [&](int x) {
      while (sheet_parent[x] != x) x = sheet_parent[x] = sheet_parent[sheet_parent[x]];
      return x;
    };

    int interior_edges = 0;
    // for each arc: glue wedge copies at both endpoints across the arc
    for (int a = 0; a < A; ++a) {
      const auto& pairs = glues[a].options[choice[a]];
      interior_edges += static_cast<int>(pairs.size());
      const int L = arcs[a].left_face, R = arcs[a].right_face;
      for (auto [lc, rc] : pairs) {
        sheet_parent[sfind(offset[L] + lc)] = sfind(offset[R] + rc);
        // at each endpoint node of the arc: the wedge on the arc's left glues
        // to the wedge on its right across the interior edge copy
        for (int side = 0; side < 2; ++side) {
          const int h = side == 0 ? 2 * a : 2 * a + 1;  // end at tail / head
          const int wl = wedge_at(h, /*left_of_arc=*/true);
          const int wr = wedge_at(h, /*left_of_arc=*/false);
          if (wl < 0 || wr < 0) return false;
          unite(wid(wl, lc), wid(wr, rc));
        }
      }
    }

    // vertex orbit consistency: each orbit either covers all quadrants of its
    // node exactly once (interior vertex) or is a chain (boundary vertex)
    std::map<int, std::vector<int>> orbits;
    for (int w = 0; w < W; ++w)
      for (int c = 0; c < mult[wedges[w].face]; ++c) orbits[find(wid(w, c))].push_back(wid(w, c));
    int V = static_cast<int>(orbits.size());
    for (auto& [root, members] : orbits) {
      // count distinct wedges; an immersed interior vertex covers each of the
      // node's quadrants at most once
      std::map<int, int> per_wedge;
      for (int m : members) per_wedge[m / maxm]++;
      for (auto& [w, cnt] : per_wedge)
        if (cnt > 1) return false;  // branch point
    }

    // Euler characteristic: F - E + V with boundary edges included
    const int E = interior_edges + A;
    // boundary vertices: each boundary edge endpoint joins the orbits counted
    // above, so V is already complete
    const int chi = S - E + V;
    if (chi != 1) return false;

    // connectivity of the sheet surface
    for (auto& [root, members] : orbits) {
      int first_sheet = -1;
      for (int m : members) {
        const int w = m / maxm, c = m % maxm;
        const int sheet = offset[wedges[w].face] + c;
        if (first_sheet < 0)
          first_sheet = sheet;
        else
          sheet_parent[sfind(sheet)] = sfind(first_sheet);
      }
    }
    int comp = 0;
    for (int s = 0; s < S; ++s)
      if (sfind(s) == s) ++comp;
    return comp == 1;
  };

  std::function<bool(int)> rec = [&](int a) -> bool {
    if (budget-- < 0) throw WindowExhausted("tier-2 gluing search budget exhausted");
    if (a == A) return assembled_is_disk();
    for (size_t o = 0; o < glues[a].options.size(); ++o) {
      choice[a] = static_cast<int>(o);
      if (rec(a + 1)) return true;
    }
    choice[a] = -1;
    return false;
  };
  return rec(0);
}

}  // namespace detail
}  // namespace pillowfloer
