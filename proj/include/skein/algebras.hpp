#pragma once

// The concrete algebras: component count, the three-element table algebra,
// the two- and three-variable polynomial algebras, the linking-number
// algebra, and the quasi algebra over infinitely many variables with domain
// |n1 - n2| = 1. Also the Conway and Jones specializations of two-variable
// values.

#include <array>
#include <cstdlib>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "skein/conway.hpp"
#include "skein/error.hpp"
#include "skein/laurent.hpp"

namespace skein {

// --- number of components ---------------------------------------------------

class ComponentCountAlgebra {
 public:
  using Value = long;
  static constexpr bool kHasCircle = false;  // 2|1 = 2*1 = 2 = 2|3, not unique

  std::string name() const { return "components"; }
  Value constant(int n) const { return n; }
  bool defined(const Value&, const Value&) const { return true; }
  Value pipe(const Value& u, const Value&) const { return u; }
  Value star(const Value& u, const Value&) const { return u; }
  std::string to_string(const Value& v) const { return std::to_string(v); }

  template <class Rng>
  std::array<Value, 4> random_quadruple(Rng& rng) const {
    std::uniform_int_distribution<long> d(1, 8);
    return {d(rng), d(rng), d(rng), d(rng)};
  }
};

// --- the three-element table algebra ------------------------------------------

class Mod3Algebra {
 public:
  using Value = int;
  static constexpr bool kHasCircle = true;

  std::string name() const { return "mod3"; }
  Value constant(int n) const { return n % 3; }
  bool defined(const Value&, const Value&) const { return true; }
  Value pipe(const Value& u, const Value& v) const { return kTable[u][v]; }
  Value star(const Value& u, const Value& v) const { return kTable[u][v]; }
  // unique w with v|w = u and u*w = v
  Value circle(const Value& u, const Value& v) const { return kCircle[u][v]; }
  std::string to_string(const Value& v) const { return std::to_string(v); }

  std::vector<Value> universe() const { return {0, 1, 2}; }

  template <class Rng>
  std::array<Value, 4> random_quadruple(Rng& rng) const {
    std::uniform_int_distribution<int> d(0, 2);
    return {d(rng), d(rng), d(rng), d(rng)};
  }

 private:
  // 0|0=1, 1|0=0, 2|0=2, 0|1=0, 1|1=2, 2|1=1, 0|2=2, 1|2=1, 2|2=0
  static constexpr int kTable[3][3] = {{1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  // solved from the table: w with v|w = u, u|w = v
  static constexpr int kCircle[3][3] = {{1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
};

// --- the two- and three-variable polynomial algebras ---------------------------

// Values in Z[x^{+-1}, y^{+-1}] (P2) or Z[x^{+-1}, y^{+-1}, z] (P3); the
// operations solve x*w1 + y*w2 = w0 - z for the missing entry (z absent in
// P2). Constants: a_n = (x+y)^{n-1} + z * sum_{j<n-1} (x+y)^j.
class PolyAlgebra {
 public:
  using Value = LaurentPoly;
  static constexpr bool kHasCircle = true;

  explicit PolyAlgebra(bool with_z) : with_z_(with_z) {}

  std::string name() const { return with_z_ ? "P3" : "P2"; }

  Value constant(int n) const {
    LaurentPoly xy = x() + y();
    LaurentPoly acc = xy.pow(n - 1);
    if (with_z_) {
      LaurentPoly geom;
      for (int j = 0; j <= n - 2; ++j) geom = geom + xy.pow(j);
      acc = acc + z() * geom;
    }
    return acc;
  }

  bool defined(const Value&, const Value&) const { return true; }

  // u = w(L-), v = w(L0): solve x*w + y*u = v - z
  Value pipe(const Value& u, const Value& v) const {
    return (v - zterm() - y() * u).div_monomial(x());
  }
  // u = w(L+), v = w(L0): solve x*u + y*w = v - z
  Value star(const Value& u, const Value& v) const {
    return (v - zterm() - x() * u).div_monomial(y());
  }
  // w(L0) from u = w(L+), v = w(L-)
  Value circle(const Value& u, const Value& v) const {
    return x() * u + y() * v + zterm();
  }

  std::string to_string(const Value& v) const { return v.to_string(); }

  template <class Rng>
  std::array<Value, 4> random_quadruple(Rng& rng) const {
    return {random_value(rng), random_value(rng), random_value(rng), random_value(rng)};
  }

  template <class Rng>
  Value random_value(Rng& rng) const {
    std::uniform_int_distribution<int> nterms(0, 4), expo(-2, 2), zexpo(0, 2),
        coeff(-4, 4);
    LaurentPoly p;
    for (int t = nterms(rng); t > 0; --t) {
      Monomial m;
      int ex = expo(rng), ey = expo(rng);
      if (ex) m.emplace_back(kX, ex);
      if (ey) m.emplace_back(kY, ey);
      if (with_z_) {
        int ez = zexpo(rng);
        if (ez) m.emplace_back(kZ, ez);
      }
      p = p + LaurentPoly::term(m, coeff(rng));
    }
    return p;
  }

  static constexpr VarId kX{Family::x, 1}, kY{Family::y, 1}, kZ{Family::z, 1};

 private:
  LaurentPoly x() const { return LaurentPoly::var(kX); }
  LaurentPoly y() const { return LaurentPoly::var(kY); }
  LaurentPoly z() const { return LaurentPoly::var(kZ); }
  LaurentPoly zterm() const { return with_z_ ? z() : LaurentPoly::zero(); }

  bool with_z_;
};

inline PolyAlgebra two_var_algebra() { return PolyAlgebra(false); }
inline PolyAlgebra three_var_algebra() { return PolyAlgebra(true); }

// --- the linking-number algebra -------------------------------------------------

class LinkingAlgebra {
 public:
  using Value = std::pair<long, long>;  // (components, linking weight)
  static constexpr bool kHasCircle = false;

  std::string name() const { return "linking"; }
  Value constant(int n) const { return {n, 0}; }
  bool defined(const Value&, const Value&) const { return true; }
  Value pipe(const Value& u, const Value& v) const {
    return u.first > v.first ? Value{u.first, u.second - 1} : u;
  }
  Value star(const Value& u, const Value& v) const {
    return u.first > v.first ? Value{u.first, u.second + 1} : u;
  }
  std::string to_string(const Value& v) const {
    return "(" + std::to_string(v.first) + "," + std::to_string(v.second) + ")";
  }

  template <class Rng>
  std::array<Value, 4> random_quadruple(Rng& rng) const {
    std::uniform_int_distribution<long> n(1, 5), b(-4, 4);
    return {Value{n(rng), b(rng)}, Value{n(rng), b(rng)}, Value{n(rng), b(rng)},
            Value{n(rng), b(rng)}};
  }
};

// --- the quasi algebra over infinitely many variables ---------------------------

// Universe N x Z[y1^{+-1}, x'2^{+-1}, z'2, x_i^{+-1}, z_i, ...]; | and * are
// defined exactly on pairs with |n1 - n2| = 1 and solve equation (n) or (n')
// of the system. Derived generators:
//   y_i  = x_i  * y1 / x1
//   x'_i = x'_2 * x1 / x_{i-1}          (i >= 2)
//   y'_i = x'_i * y1 / x1               (i >= 2)
//   z'_{i+1} = z_{i-1} + x1 x'2 (1 + y1/x1)(z'_i/x'_i - z_i/x_i),  z'_2 free.
// Conditions (ii) and (v) below force y'_i/x'_i = y_i/x_i = y1/x1; that is
// what pins the y'_i formula (dividing by x_i instead of x1 breaks them).
class Quasi39Algebra {
 public:
  using Value = std::pair<long, LaurentPoly>;
  static constexpr bool kHasCircle = false;

  std::string name() const { return "quasi39"; }

  Value constant(int n) const {
    check(n >= 1, Err::Internal, "constants start at a_1");
    // a_n = prod_{i=1}^{n-1}(x_i+y_i) + sum_k z_k prod_{i=k+1}^{n-1}(x_i+y_i)
    LaurentPoly w = tail_product(1, n - 1);
    for (int k = 1; k <= n - 1; ++k) w = w + zgen(k) * tail_product(k + 1, n - 1);
    return {n, w};
  }

  bool defined(const Value& u, const Value& v) const {
    long d = u.first - v.first;
    return d == 1 || d == -1;
  }

  Value pipe(const Value& u, const Value& v) const {
    require_domain(u, v);
    long n = u.first;
    const LaurentPoly &w1 = u.second, &w2 = v.second;
    if (n == v.first - 1) {
      // x_n w + y_n w1 = w2 - z_n
      return {n, (w2 - zgen(n) - ygen(n) * w1).div_monomial(x(n))};
    }
    // x'_n w + y'_n w1 = w2 - z'_n
    return {n, (w2 - zpgen(n) - ypgen(n) * w1).div_monomial(xpgen(n))};
  }

  Value star(const Value& u, const Value& v) const {
    require_domain(u, v);
    long n = u.first;
    const LaurentPoly &w1 = u.second, &w2 = v.second;
    if (n == v.first - 1) {
      // x_n w1 + y_n w = w2 - z_n
      return {n, (w2 - zgen(n) - x(n) * w1).div_monomial(ygen(n))};
    }
    // x'_n w1 + y'_n w = w2 - z'_n
    return {n, (w2 - zpgen(n) - xpgen(n) * w1).div_monomial(ypgen(n))};
  }

  std::string to_string(const Value& v) const {
    return "(" + std::to_string(v.first) + ", " + v.second.to_string() + ")";
  }

  // free generators
  LaurentPoly x(long i) const { return LaurentPoly::var(VarId{Family::x, static_cast<int>(i)}); }
  LaurentPoly zgen(long i) const { return LaurentPoly::var(VarId{Family::z, static_cast<int>(i)}); }
  LaurentPoly y1() const { return LaurentPoly::var(VarId{Family::y, 1}); }

  // derived generators (cached; concurrent readers, serialized idempotent fill)
  LaurentPoly ygen(long i) const {
    check(i >= 1, Err::NoSuchGenerator, "y_" + std::to_string(i));
    if (i == 1) return y1();
    return x(i) * y1().div_monomial(x(1));
  }

  LaurentPoly xpgen(long i) const {
    check(i >= 2, Err::NoSuchGenerator, "x'_" + std::to_string(i));
    if (i == 2) return LaurentPoly::var(VarId{Family::xp, 2});
    return (LaurentPoly::var(VarId{Family::xp, 2}) * x(1)).div_monomial(x(i - 1));
  }

  LaurentPoly ypgen(long i) const {
    check(i >= 2, Err::NoSuchGenerator, "y'_" + std::to_string(i));
    return xpgen(i) * y1().div_monomial(x(1));
  }

  LaurentPoly zpgen(long i) const {
    check(i >= 2, Err::NoSuchGenerator, "z'_" + std::to_string(i));
    if (i == 2) return LaurentPoly::var(VarId{Family::zp, 2});
    std::lock_guard<std::mutex> lock(mu_);
    auto it = zp_cache_.find(i);
    if (it != zp_cache_.end()) return it->second;
    LaurentPoly zp = LaurentPoly::var(VarId{Family::zp, 2});
    long have = 2;
    for (auto jt = zp_cache_.rbegin(); jt != zp_cache_.rend(); ++jt) {
      if (jt->first < i) {
        have = jt->first;
        zp = jt->second;
        break;
      }
    }
    for (long j = have; j < i; ++j) {
      // z'_{j+1} = z_{j-1} + x1 x'2 (1 + y1/x1)(z'_j/x'_j - z_j/x_j)
      LaurentPoly bracket = zp.div_monomial(xpgen_nolock(j)) - zgen(j).div_monomial(x(j));
      LaurentPoly factor = LaurentPoly::one() + y1().div_monomial(x(1));
      zp = zgen(j - 1) + x(1) * LaurentPoly::var(VarId{Family::xp, 2}) * factor * bracket;
      zp_cache_[j + 1] = zp;
    }
    return zp;
  }

  // the generator families by name, for the CLI and tests
  LaurentPoly derived_generator(Family fam, long i) const {
    switch (fam) {
      case Family::x: check(i >= 1, Err::NoSuchGenerator, "x"); return x(i);
      case Family::y: return ygen(i);
      case Family::z: check(i >= 1, Err::NoSuchGenerator, "z"); return zgen(i);
      case Family::xp: return xpgen(i);
      case Family::yp: return ypgen(i);
      case Family::zp: return zpgen(i);
    }
    fail(Err::NoSuchGenerator, "unknown family");
  }

  template <class Rng>
  std::array<Value, 4> random_quadruple(Rng& rng) const {
    // level patterns (|a|,|b|,|c|,|d|) making both sides of 1.3-1.5 defined:
    // |b| = |a|+-1, |c| = |a|+-1, |d| adjacent to both |b| and |c|
    std::uniform_int_distribution<long> base(2, 4);
    std::uniform_int_distribution<int> c2(0, 1);
    long na = base(rng);
    long nb = na + (c2(rng) ? 1 : -1);
    long nc = na + (c2(rng) ? 1 : -1);
    long nd;
    if (nb == nc) {
      nd = nb + (c2(rng) ? 1 : -1);
    } else {
      nd = na;
    }
    if (nb < 1 || nc < 1 || nd < 1) return random_quadruple(rng);
    return {Value{na, random_poly(rng)}, Value{nb, random_poly(rng)},
            Value{nc, random_poly(rng)}, Value{nd, random_poly(rng)}};
  }

  template <class Rng>
  LaurentPoly random_poly(Rng& rng) const {
    std::uniform_int_distribution<int> nterms(0, 3), expo(-1, 1), zexpo(0, 1),
        coeff(-3, 3), idx(1, 3);
    LaurentPoly p;
    for (int t = nterms(rng); t > 0; --t) {
      Monomial m;
      int e1 = expo(rng);
      if (e1) m.emplace_back(VarId{Family::x, idx(rng)}, e1);
      int e2 = expo(rng);
      if (e2) m.emplace_back(VarId{Family::y, 1}, e2);
      int e3 = zexpo(rng);
      if (e3) m.emplace_back(VarId{Family::z, idx(rng)}, e3);
      int e4 = expo(rng);
      if (e4) m.emplace_back(VarId{Family::xp, 2}, e4);
      std::sort(m.begin(), m.end());
      Monomial merged;
      for (auto& [var, e] : m) {
        if (!merged.empty() && merged.back().first == var)
          merged.back().second += e;
        else
          merged.emplace_back(var, e);
      }
      merged.erase(std::remove_if(merged.begin(), merged.end(),
                                  [](const auto& t2) { return t2.second == 0; }),
                   merged.end());
      p = p + LaurentPoly::term(merged, coeff(rng));
    }
    return p;
  }

 private:
  void require_domain(const Value& u, const Value& v) const {
    if (!defined(u, v))
      fail(Err::OutsideDomainB,
           "|n1-n2| = " + std::to_string(std::labs(u.first - v.first)));
    if (u.first == v.first + 1)
      check(u.first >= 2, Err::Internal,
            "equation (1') required; component counts below 1 cannot occur");
  }

  LaurentPoly xpgen_nolock(long i) const {
    if (i == 2) return LaurentPoly::var(VarId{Family::xp, 2});
    return (LaurentPoly::var(VarId{Family::xp, 2}) * x(1)).div_monomial(x(i - 1));
  }

  LaurentPoly tail_product(int from, int to) const {
    LaurentPoly acc = LaurentPoly::one();
    for (int i = from; i <= to; ++i) acc = acc * (x(i) + ygen(i));
    return acc;
  }

  mutable std::mutex mu_;
  mutable std::map<long, LaurentPoly> zp_cache_;
};

// Symbolic check of the derived-generator compatibility conditions (i)-(v),
// for n up to a bound.
struct ConstraintReport {
  struct Line {
    std::string condition;
    int n;
    bool passed;
  };
  std::vector<Line> lines;
  bool all_passed() const {
    for (const auto& l : lines)
      if (!l.passed) return false;
    return true;
  }
  std::string to_string() const {
    std::string out;
    for (const auto& l : lines)
      out += l.condition + " at n=" + std::to_string(l.n) + ": " +
             (l.passed ? "pass" : "FAIL") + "\n";
    return out;
  }
};

inline ConstraintReport verify_constraints_i_to_v(const Quasi39Algebra& alg, int max_n = 6) {
  ConstraintReport rep;
  auto add = [&](const std::string& cond, int n, bool ok) {
    rep.lines.push_back({cond, n, ok});
  };
  for (int n = 2; n <= max_n; ++n) {
    // (i) x_{n-1} x'_n = x_n x'_{n+1}
    add("(i)   x_{n-1}x'_n = x_n x'_{n+1}", n,
        alg.x(n - 1) * alg.xpgen(n) == alg.x(n) * alg.xpgen(n + 1));
    // (ii) y'_{n+1}/x'_{n+1} = y'_n/x'_n  (cross-multiplied)
    add("(ii)  y'_{n+1}/x'_{n+1} = y'_n/x'_n", n,
        alg.ypgen(n + 1) * alg.xpgen(n) == alg.ypgen(n) * alg.xpgen(n + 1));
    // (iii) y_n/x_n = y_{n-1}/x_{n-1}
    add("(iii) y_n/x_n = y_{n-1}/x_{n-1}", n,
        alg.ygen(n) * alg.x(n - 1) == alg.ygen(n - 1) * alg.x(n));
    // (iv) z'_{n+1}/(x_n x'_{n+1}) + z_n/x_n - y_n z'_n/(x_n x'_n)
    //    = z_{n-1}/(x'_n x_{n-1}) + z'_n/x'_n - y'_n z_n/(x_n x'_n)
    LaurentPoly lhs = alg.zpgen(n + 1)
                          .div_monomial(alg.x(n) * alg.xpgen(n + 1)) +
                      alg.zgen(n).div_monomial(alg.x(n)) -
                      (alg.ygen(n) * alg.zpgen(n))
                          .div_monomial(alg.x(n) * alg.xpgen(n));
    LaurentPoly rhs = alg.zgen(n - 1)
                          .div_monomial(alg.xpgen(n) * alg.x(n - 1)) +
                      alg.zpgen(n).div_monomial(alg.xpgen(n)) -
                      (alg.ypgen(n) * alg.zgen(n))
                          .div_monomial(alg.x(n) * alg.xpgen(n));
    add("(iv)  z' recursion identity", n, lhs == rhs);
    // (v) y_n/x_n = y'_{n+1}/x'_{n+1}
    add("(v)   y_n/x_n = y'_{n+1}/x'_{n+1}", n,
        alg.ygen(n) * alg.xpgen(n + 1) == alg.ypgen(n + 1) * alg.x(n));
  }
  return rep;
}

// --- specializations of the two-variable invariant ------------------------------

enum class SpecTarget { conway, jones };

inline SpecTarget parse_spec_target(const std::string& s) {
  if (s == "conway") return SpecTarget::conway;
  if (s == "jones") return SpecTarget::jones;
  fail(Err::UnknownFormat, "specialization target " + s);
}

// Conway: substitute x = -1/z, y = 1/z. Jones: substitute
// x = (1/t)/(sqrt t - 1/sqrt t), y = -t/(sqrt t - 1/sqrt t) with s = t^{1/2}
// kept as a formal variable, so the result is an exact Laurent polynomial in
// s. Denominators must clear exactly; a residue signals a bug upstream.
inline Poly1 specialize(const LaurentPoly& p, SpecTarget target) {
  for (VarId v : p.variables())
    check(v == PolyAlgebra::kX || v == PolyAlgebra::kY, Err::UndefinedOperation,
          "specialize needs a two-variable invariant, found " + var_name(v));
  if (target == SpecTarget::conway) {
    Poly1 out;
    out.var = "z";
    for (const auto& [m, c] : p.terms()) {
      int a = 0, b = 0;
      for (const auto& [v, e] : m) (v == PolyAlgebra::kX ? a : b) = e;
      Int coeff = (a % 2 == 0) ? c : -c;
      out = out + Poly1::mono("z", -a - b, coeff);
    }
    return out;
  }
  Poly1 s = Poly1::mono("s", 1, 1);
  Poly1 g = s + Poly1::mono("s", -1, -1);  // s - s^{-1}
  Frac1 xf = Frac1::of(Poly1::mono("s", -2, 1), g);
  Frac1 yf = Frac1::of(Poly1::mono("s", 2, -1), g);
  Frac1 acc = Frac1::of(Poly1{{}, "s"});
  for (const auto& [m, c] : p.terms()) {
    int a = 0, b = 0;
    for (const auto& [v, e] : m) (v == PolyAlgebra::kX ? a : b) = e;
    Frac1 term = Frac1::of(Poly1::constant("s", c)) * xf.pow(a) * yf.pow(b);
    acc = acc + term;
  }
  return acc.clear();
}

}  // namespace skein
