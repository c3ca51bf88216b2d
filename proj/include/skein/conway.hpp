#pragma once

// Conway algebras: constants a_1, a_2, ... and binary operations | and *
// subject to axioms 1.1-1.7; quasi algebras define | and * only on declared
// domains and satisfy the axioms whenever both sides are defined. The axiom
// verifier treats failures as data and reports witnesses.

#include <array>
#include <concepts>
#include <functional>
#include <string>
#include <vector>

#include "skein/error.hpp"

namespace skein {

template <class A>
concept ConwayAlgebraType = requires(const A& a, const typename A::Value& u,
                                     const typename A::Value& v, int n) {
  typename A::Value;
  { a.constant(n) } -> std::same_as<typename A::Value>;
  { a.pipe(u, v) } -> std::same_as<typename A::Value>;
  { a.star(u, v) } -> std::same_as<typename A::Value>;
  { a.defined(u, v) } -> std::convertible_to<bool>;
  { a.to_string(u) } -> std::convertible_to<std::string>;
  { a.name() } -> std::convertible_to<std::string>;
};

template <class A>
concept HasCircle = ConwayAlgebraType<A> && A::kHasCircle;

// --- the free term algebra ------------------------------------------------------

// Terms over constants a_n and the two operations, with structural equality.
// Not a Conway algebra (no axioms hold); it records the shape of a resolving
// tree's fold, e.g. a1*(a2|a1) for the figure-eight tree.
class FreeTermAlgebra {
 public:
  using Value = std::string;
  static constexpr bool kHasCircle = false;

  std::string name() const { return "free"; }
  Value constant(int n) const { return "a" + std::to_string(n); }
  bool defined(const Value&, const Value&) const { return true; }
  Value pipe(const Value& u, const Value& v) const { return wrap(u) + "|" + wrap(v); }
  Value star(const Value& u, const Value& v) const { return wrap(u) + "*" + wrap(v); }
  std::string to_string(const Value& v) const { return v; }

 private:
  static std::string wrap(const Value& v) {
    return v.find_first_of("|*") == std::string::npos ? v : "(" + v + ")";
  }
};

// --- axiom verification ----------------------------------------------------------

struct AxiomResult {
  std::string axiom;
  long checked = 0;
  long skipped = 0;  // quasi instances where a side is undefined
  bool passed = true;
  std::string witness;  // first counterexample
};

struct AxiomReport {
  std::string algebra;
  std::vector<AxiomResult> axioms;

  bool all_passed() const {
    for (const auto& a : axioms)
      if (!a.passed) return false;
    return true;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& a : axioms) {
      out += a.axiom + ": " + (a.passed ? "pass" : "FAIL") + " (" +
             std::to_string(a.checked) + " checked, " + std::to_string(a.skipped) +
             " skipped)";
      if (!a.passed) out += "  witness: " + a.witness;
      out += "\n";
    }
    return out;
  }
};

namespace detail {

// Guarded evaluation: false in `ok` when some operation is undefined.
template <class A>
struct Guarded {
  const A& alg;
  bool ok = true;
  typename A::Value pipe(const typename A::Value& u, const typename A::Value& v) {
    if (!ok || !alg.defined(u, v)) {
      ok = false;
      return u;
    }
    return alg.pipe(u, v);
  }
  typename A::Value star(const typename A::Value& u, const typename A::Value& v) {
    if (!ok || !alg.defined(u, v)) {
      ok = false;
      return u;
    }
    return alg.star(u, v);
  }
};

template <class A>
void run_law(const A& alg, AxiomResult& res,
             const std::array<typename A::Value, 4>& q,
             const std::function<typename A::Value(detail::Guarded<A>&,
                                                   const std::array<typename A::Value, 4>&)>& lhs,
             const std::function<typename A::Value(detail::Guarded<A>&,
                                                   const std::array<typename A::Value, 4>&)>& rhs) {
  Guarded<A> gl{alg}, gr{alg};
  auto l = lhs(gl, q);
  auto r = rhs(gr, q);
  if (!gl.ok || !gr.ok) {
    res.skipped++;
    return;
  }
  res.checked++;
  if (!(l == r) && res.passed) {
    res.passed = false;
    res.witness = "a=" + alg.to_string(q[0]) + " b=" + alg.to_string(q[1]) +
                  " c=" + alg.to_string(q[2]) + " d=" + alg.to_string(q[3]) +
                  " lhs=" + alg.to_string(l) + " rhs=" + alg.to_string(r);
  }
}

}  // namespace detail

// Verify axioms 1.1-1.7 (and the derived circle laws when the algebra has a
// circle operation) against a stream of value quadruples. The caller supplies
// the sampling: an exhaustive product for finite universes or a randomized
// generator; quasi-algebra instances with an undefined side are skipped (the
// laws bind only where both sides are defined).
template <class A, class QuadrupleSource>
AxiomReport verify_axioms(const A& alg, QuadrupleSource next_quadruple, long samples,
                          int const_max = 8) {
  using V = typename A::Value;
  using Q = std::array<V, 4>;
  AxiomReport report;
  report.algebra = alg.name();

  AxiomResult a11{"1.1  a_n | a_{n+1} = a_n"};
  AxiomResult a12{"1.2  a_n * a_{n+1} = a_n"};
  for (int n = 1; n <= const_max; ++n) {
    V an = alg.constant(n), an1 = alg.constant(n + 1);
    if (alg.defined(an, an1)) {
      a11.checked++;
      if (!(alg.pipe(an, an1) == an) && a11.passed) {
        a11.passed = false;
        a11.witness = "n=" + std::to_string(n);
      }
      a12.checked++;
      if (!(alg.star(an, an1) == an) && a12.passed) {
        a12.passed = false;
        a12.witness = "n=" + std::to_string(n);
      }
    } else {
      a11.skipped++;
      a12.skipped++;
    }
  }
  report.axioms.push_back(a11);
  report.axioms.push_back(a12);

  AxiomResult a13{"1.3  (a|b)|(c|d) = (a|c)|(b|d)"};
  AxiomResult a14{"1.4  (a|b)*(c|d) = (a*c)|(b*d)"};
  AxiomResult a15{"1.5  (a*b)*(c*d) = (a*c)*(b*d)"};
  AxiomResult a16{"1.6  (a|b)*b = a"};
  AxiomResult a17{"1.7  (a*b)|b = a"};
  AxiomResult acirc{"circle  v|(u o v) = u, u*(u o v) = v"};

  for (long it = 0; it < samples; ++it) {
    Q q = next_quadruple();
    detail::run_law<A>(alg, a13, q,
                       [](detail::Guarded<A>& g, const Q& x) {
                         return g.pipe(g.pipe(x[0], x[1]), g.pipe(x[2], x[3]));
                       },
                       [](detail::Guarded<A>& g, const Q& x) {
                         return g.pipe(g.pipe(x[0], x[2]), g.pipe(x[1], x[3]));
                       });
    detail::run_law<A>(alg, a14, q,
                       [](detail::Guarded<A>& g, const Q& x) {
                         return g.star(g.pipe(x[0], x[1]), g.pipe(x[2], x[3]));
                       },
                       [](detail::Guarded<A>& g, const Q& x) {
                         return g.pipe(g.star(x[0], x[2]), g.star(x[1], x[3]));
                       });
    detail::run_law<A>(alg, a15, q,
                       [](detail::Guarded<A>& g, const Q& x) {
                         return g.star(g.star(x[0], x[1]), g.star(x[2], x[3]));
                       },
                       [](detail::Guarded<A>& g, const Q& x) {
                         return g.star(g.star(x[0], x[2]), g.star(x[1], x[3]));
                       });
    detail::run_law<A>(alg, a16, q,
                       [](detail::Guarded<A>& g, const Q& x) {
                         return g.star(g.pipe(x[0], x[1]), x[1]);
                       },
                       [](detail::Guarded<A>&, const Q& x) { return x[0]; });
    detail::run_law<A>(alg, a17, q,
                       [](detail::Guarded<A>& g, const Q& x) {
                         return g.pipe(g.star(x[0], x[1]), x[1]);
                       },
                       [](detail::Guarded<A>&, const Q& x) { return x[0]; });
    if constexpr (HasCircle<A>) {
      const auto& u = q[0];
      const auto& v = q[1];
      auto w = alg.circle(u, v);
      acirc.checked++;
      bool ok = alg.defined(v, w) && alg.defined(u, w) && alg.pipe(v, w) == u &&
                alg.star(u, w) == v;
      if (!ok && acirc.passed) {
        acirc.passed = false;
        acirc.witness = "u=" + alg.to_string(u) + " v=" + alg.to_string(v);
      }
    }
  }
  report.axioms.push_back(a13);
  report.axioms.push_back(a14);
  report.axioms.push_back(a15);
  report.axioms.push_back(a16);
  report.axioms.push_back(a17);

  if constexpr (HasCircle<A>) {
    AxiomResult ac2{"circle constants  a_n = a_{n-1} o a_{n-1}"};
    for (int n = 2; n <= const_max; ++n) {
      ac2.checked++;
      if (!(alg.constant(n) == alg.circle(alg.constant(n - 1), alg.constant(n - 1))) &&
          ac2.passed) {
        ac2.passed = false;
        ac2.witness = "n=" + std::to_string(n);
      }
    }
    report.axioms.push_back(acirc);
    report.axioms.push_back(ac2);
  }

  return report;
}

// Exhaustive verification over a finite universe (all |U|^4 quadruples).
template <class A>
AxiomReport verify_axioms_exhaustive(const A& alg,
                                     const std::vector<typename A::Value>& universe,
                                     int const_max = 8) {
  size_t n = universe.size();
  size_t total = n * n * n * n;
  size_t idx = 0;
  auto gen = [&]() {
    std::array<typename A::Value, 4> q{
        universe[idx % n], universe[(idx / n) % n], universe[(idx / n / n) % n],
        universe[(idx / n / n / n) % n]};
    ++idx;
    return q;
  };
  return verify_axioms(alg, gen, static_cast<long>(total), const_max);
}

}  // namespace skein
