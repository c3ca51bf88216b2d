#pragma once

// The invariant evaluator: fold a diagram through a (quasi) Conway algebra by
// the resolving recursion, memoized on canonical diagram keys. Also the
// weighted-simplex construction over sublinks and its equivalence test.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "skein/algebras.hpp"
#include "skein/conway.hpp"
#include "skein/diagram.hpp"
#include "skein/resolve.hpp"

namespace skein {

// Memoizing evaluation session. The memo table may be shared across many
// diagrams of one algebra/convention; values are pure functions of the
// diagram, so reuse across base strategies is sound for Conway algebras.
template <class Algebra>
class EvalSession {
 public:
  using Value = typename Algebra::Value;

  explicit EvalSession(const Algebra& alg, Convention conv = Convention::modern,
                       BaseStrategy strat = default_strategy())
      : alg_(alg), conv_(conv), strat_(std::move(strat)) {}

  Value evaluate(const Diagram& d) {
    try {
      return eval_inner(d, strat_(d));
    } catch (const Error& e) {
      if (e.kind == Err::OutsideDomainB)
        fail(Err::GeometricInsufficiency,
             std::string("operation undefined during resolution: ") + e.what());
      throw;
    }
  }

  size_t memo_size() const { return memo_.size(); }

 private:
  Value eval_inner(const Diagram& d, const BasePoints& bp) {
    std::string key = d.canonical_key();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    int p = first_bad_crossing(d, bp);
    Value v = [&] {
      if (p < 0) return alg_.constant(d.num_components());
      BasePoints sbp = bp;
      for (auto& e : sbp.base_edge) e = d.switch_dart_map(p, e);
      Value sw = eval_inner(d.with_switch(p), sbp);
      Diagram smd = d.with_smooth(p);
      Value sm = eval_inner(smd, strat_(smd));
      return resolves_with_pipe(d.sign(p), conv_) ? alg_.pipe(sw, sm)
                                                  : alg_.star(sw, sm);
    }();
    memo_.emplace(std::move(key), v);
    return v;
  }

  const Algebra& alg_;
  Convention conv_;
  BaseStrategy strat_;
  std::unordered_map<std::string, Value> memo_;
};

template <class Algebra>
typename Algebra::Value evaluate(const Diagram& d, const Algebra& alg,
                                 Convention conv = Convention::modern,
                                 BaseStrategy strat = default_strategy()) {
  EvalSession<Algebra> session(alg, conv, std::move(strat));
  return session.evaluate(d);
}

// Unmemoized reference: materialize the full resolving tree and fold it.
template <class Algebra>
typename Algebra::Value naive_evaluate(const Diagram& d, const Algebra& alg,
                                       Convention conv = Convention::modern,
                                       BaseStrategy strat = default_strategy(),
                                       size_t node_cap = 1000000) {
  ResolvingTree t = build_resolving_tree(d, strat, node_cap);
  return fold_tree(t, alg, conv);
}

// P of the diagram and of its mirror image, asserting the mirror identity
// P_mirror(x,y,z) = P(y,x,z).
inline std::pair<LaurentPoly, LaurentPoly> evaluate_mirror_pair(
    const Diagram& d, Convention conv = Convention::modern) {
  PolyAlgebra alg = three_var_algebra();
  LaurentPoly p = evaluate(d, alg, conv);
  LaurentPoly m = evaluate(d.mirrored(), alg, conv);
  LaurentPoly swapped = p.rename({{PolyAlgebra::kX, PolyAlgebra::kY},
                                  {PolyAlgebra::kY, PolyAlgebra::kX}});
  check(m == swapped, Err::Internal, "mirror identity violated");
  return {p, m};
}

// --- weighted simplices ---------------------------------------------------------

template <class Value>
struct WeightedSimplex {
  int vertices = 0;
  std::map<uint32_t, Value> weights;  // nonempty subset bitmask -> invariant
};

template <class Algebra>
WeightedSimplex<typename Algebra::Value> weighted_simplex(const Diagram& d,
                                                          const Algebra& alg,
                                                          Convention conv =
                                                              Convention::modern) {
  int n = d.num_components();
  check(n <= 12, Err::TooManyComponents, std::to_string(n) + " components");
  WeightedSimplex<typename Algebra::Value> s;
  s.vertices = n;
  EvalSession<Algebra> session(alg, conv);
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::set<int> keep;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) keep.insert(i);
    s.weights[mask] = session.evaluate(d.delete_components(keep));
  }
  return s;
}

// Equivalence: a vertex bijection matching all face weights. The search runs
// over permutations pruned by singleton weights.
template <class Value>
bool simplex_equivalent(const WeightedSimplex<Value>& a, const WeightedSimplex<Value>& b) {
  if (a.vertices != b.vertices) return false;
  int n = a.vertices;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    // singletons first (cheap pruning), then everything
    for (int i = 0; i < n && ok; ++i)
      ok = a.weights.at(1u << i) == b.weights.at(1u << perm[i]);
    if (!ok) continue;
    for (uint32_t mask = 1; mask < (1u << n) && ok; ++mask) {
      uint32_t mapped = 0;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) mapped |= 1u << perm[i];
      ok = a.weights.at(mask) == b.weights.at(mapped);
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Referee identity: with denominators cleared,
//   (1-x-y) w_L(x,y,z) = (1-x-y-z) w'_L(x,y) + z
// relating the three- and two-variable invariants of the same diagram.
inline bool referee_identity_check(const Diagram& d, Convention conv = Convention::modern) {
  LaurentPoly wl = evaluate(d, three_var_algebra(), conv);
  LaurentPoly wp = evaluate(d, two_var_algebra(), conv);
  LaurentPoly x = LaurentPoly::var(PolyAlgebra::kX), y = LaurentPoly::var(PolyAlgebra::kY),
              z = LaurentPoly::var(PolyAlgebra::kZ);
  LaurentPoly one = LaurentPoly::one();
  return (one - x - y) * wl == (one - x - y - z) * wp + z;
}

}  // namespace skein
