#pragma once

// Shared test support: random diagram generation, exhaustive base-point
// enumeration, the independent floating-point skein oracle, and the frozen
// figure-eight fixture with a two-branching compressed resolving tree.

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "skein/diagram.hpp"
#include "skein/moves.hpp"
#include "skein/resolve.hpp"

namespace skein::test {

inline BraidWord random_braid(std::mt19937& rng, int max_strands = 4, int max_len = 12) {
  std::uniform_int_distribution<int> ks(2, max_strands);
  BraidWord w;
  w.strands = ks(rng);
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> gen(1, w.strands - 1);
  std::uniform_int_distribution<int> sg(0, 1);
  int n = len(rng);
  for (int i = 0; i < n; ++i) w.letters.push_back(gen(rng) * (sg(rng) ? 1 : -1));
  return w;
}

// Random small diagram: braid closure, occasionally with extra free loops or
// a disjoint union / connected sum.
inline Diagram random_diagram(std::mt19937& rng, int max_crossings = 12) {
  std::uniform_int_distribution<int> mode(0, 9);
  int m = mode(rng);
  Diagram d = close_braid(random_braid(rng, 4, std::min(10, max_crossings)));
  if (m == 8) {
    Diagram e = close_braid(random_braid(rng, 3, 4));
    if (d.num_crossings() + e.num_crossings() <= max_crossings) d = disjoint_union(d, e);
  } else if (m == 9 && !d.edges().empty()) {
    Diagram e = close_braid(random_braid(rng, 3, 4));
    if (!e.edges().empty() && d.num_crossings() + e.num_crossings() <= max_crossings) {
      std::uniform_int_distribution<size_t> p1(0, d.edges().size() - 1),
          p2(0, e.edges().size() - 1);
      d = connected_sum(d, d.edges()[p1(rng)], e, e.edges()[p2(rng)]);
    }
  }
  if (m == 7) d = disjoint_union(d, Diagram::unlink(1));
  return d;
}

// All base point states (component orders x base edges) of small diagrams.
inline std::vector<BasePoints> all_base_points(const Diagram& d) {
  int k = d.num_strand_components();
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<BasePoints> out;
  do {
    std::vector<int> idx(k, 0);
    while (true) {
      BasePoints bp;
      bp.comp_order = order;
      for (int i = 0; i < k; ++i)
        bp.base_edge.push_back(d.component_edges(order[i])[idx[i]]);
      out.push_back(bp);
      int j = 0;
      while (j < k) {
        if (++idx[j] < static_cast<int>(d.component_edges(order[j]).size())) break;
        idx[j++] = 0;
      }
      if (j == k || k == 0) break;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

// Independent numeric oracle: the two-variable skein recursion evaluated in
// doubles at a sample point, sharing only the diagram operations with the
// library (no polynomials, no algebra code, no memoization).
//   x P(L+) + y P(L-) = P(L0),  P(untangled n-component) = (x+y)^(n-1)
inline double numeric_p2(const Diagram& d, double x, double y,
                         Convention conv = Convention::modern) {
  BasePoints bp = default_base_points(d);
  int p = first_bad_crossing(d, bp);
  if (p < 0) return std::pow(x + y, d.num_components() - 1);
  bool positive = (d.sign(p) > 0) == (conv == Convention::modern);
  double sw = numeric_p2(d.with_switch(p), x, y, conv);
  double sm = numeric_p2(d.with_smooth(p), x, y, conv);
  // positive: this diagram is L+, switched is L-: P = (P0 - y P-)/x
  // negative: this diagram is L-, switched is L+: P = (P0 - x P+)/y
  return positive ? (sm - y * sw) / x : (sm - x * sw) / y;
}

// The frozen figure-eight fixture: a 5-crossing projection of the
// figure-eight knot whose standard tree folds to a1*(a2|a1). The base-point
// table is recomputed deterministically from the pinned PD text.
inline const char* fig8_compressed_pd() {
  return "X(1,7,2,6) X(2,9,3,10) X(4,7,5,8) X(5,1,6,10) X(8,3,9,4)";
}

// Strategy realizing that tree on fig8_compressed_pd(): first base-point
// state (in enumeration order) that keeps the compressed shape at each level.
inline BaseStrategy fig8_compressed_strategy() {
  Diagram root = Diagram::parse_pd(fig8_compressed_pd());
  auto leaf_bp = [](const Diagram& d, int n, BasePoints* out) {
    if (d.num_components() != n) return false;
    for (const auto& bp : all_base_points(d))
      if (is_untangled(d, bp)) {
        *out = bp;
        return true;
      }
    return false;
  };
  std::map<std::string, BasePoints> table;
  bool found = false;
  for (const auto& bp : all_base_points(root)) {
    if (found) break;
    auto bad = bad_crossings(root, bp);
    if (bad.size() != 1) continue;
    int p = bad[0];
    if (resolves_with_pipe(root.sign(p), Convention::modern)) continue;
    Diagram l0 = root.with_smooth(p);
    if (l0.num_components() != 2) continue;
    for (const auto& bp2 : all_base_points(l0)) {
      if (found) break;
      auto bad2 = bad_crossings(l0, bp2);
      if (bad2.size() != 1) continue;
      int q = bad2[0];
      if (!resolves_with_pipe(l0.sign(q), Convention::modern)) continue;
      Diagram l00 = l0.with_smooth(q);
      BasePoints bp3;
      if (!leaf_bp(l00, 1, &bp3)) continue;
      table[root.canonical_key()] = bp;
      table[l0.canonical_key()] = bp2;
      table[l00.canonical_key()] = bp3;
      found = true;
    }
  }
  check(found, Err::Internal, "figure-eight fixture strategy not realizable");
  return [table](const Diagram& d) {
    auto it = table.find(d.canonical_key());
    return it != table.end() ? it->second : default_base_points(d);
  };
}

}  // namespace skein::test
