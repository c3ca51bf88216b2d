#pragma once

// Exact multivariate Laurent polynomials with integer coefficients: the value
// carrier for the polynomial algebras. Representation is canonical (sorted
// terms, no zero coefficients), so structural equality is mathematical
// equality. Families x and x' are invertible at any index, y only at index 1;
// z-family exponents must stay >= 0.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "skein/error.hpp"

namespace skein {

using Int = mpz_class;
using Rat = mpq_class;

enum class Family : uint8_t { x = 0, y = 1, z = 2, xp = 3, yp = 4, zp = 5 };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::x: return "x";
    case Family::y: return "y";
    case Family::z: return "z";
    case Family::xp: return "x'";
    case Family::yp: return "y'";
    case Family::zp: return "z'";
  }
  return "?";
}

struct VarId {
  Family fam;
  int idx;  // >= 1

  friend bool operator==(const VarId& a, const VarId& b) {
    return a.fam == b.fam && a.idx == b.idx;
  }
  friend auto operator<=>(const VarId& a, const VarId& b) {
    if (a.fam != b.fam) return a.fam <=> b.fam;
    return a.idx <=> b.idx;
  }
};

// Invertible generators: every x_i and x'_i, and y_1. The z families are
// never inverted (their exponents are held >= 0).
inline bool invertible(VarId v) {
  if (v.fam == Family::x || v.fam == Family::xp) return true;
  if (v.fam == Family::y && v.idx == 1) return true;
  return false;
}

inline std::string var_name(VarId v) {
  std::string s = family_name(v.fam);
  if (v.idx != 1) s += std::to_string(v.idx);
  return s;
}

// Sparse exponent vector: sorted by VarId, exponents nonzero.
using Monomial = std::vector<std::pair<VarId, int>>;

// Term order for canonical serialization: compare the support entry lists as
// (family, index, exponent) tuples; an exhausted list sorts last, so the
// constant term prints last:  x^-1*y^-1 - x^-1*y - x*y^-1 - 1.
inline bool mono_less(const Monomial& a, const Monomial& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i].first != b[i].first) return a[i].first < b[i].first;
    if (a[i].second != b[i].second) return a[i].second < b[i].second;
  }
  return a.size() > b.size();  // longer support sorts first
}

inline void validate_monomial(const Monomial& m) {
  for (size_t i = 0; i < m.size(); ++i) {
    check(m[i].second != 0, Err::Internal, "zero exponent stored");
    if (i + 1 < m.size())
      check(m[i].first < m[i + 1].first, Err::Internal, "unsorted monomial");
    if (m[i].second < 0)
      check(invertible(m[i].first), Err::NonUnitDivisor,
            "negative exponent on non-invertible generator " + var_name(m[i].first));
  }
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      int e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i, ++j;
    }
  }
  return out;
}

inline Monomial mono_inverse(const Monomial& a) {
  Monomial out = a;
  for (auto& [v, e] : out) {
    check(invertible(v), Err::NonUnitDivisor, "cannot invert " + var_name(v));
    e = -e;
  }
  return out;
}

class LaurentPoly {
 public:
  using Term = std::pair<Monomial, Int>;

  LaurentPoly() = default;

  static LaurentPoly constant(Int c) {
    LaurentPoly p;
    if (c != 0) p.terms_.emplace_back(Monomial{}, std::move(c));
    return p;
  }
  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return constant(1); }

  static LaurentPoly var(VarId v, int exp = 1, Int coeff = 1) {
    LaurentPoly p;
    if (coeff == 0) return p;
    Monomial m;
    if (exp != 0) m.emplace_back(v, exp);
    if (exp < 0)
      check(invertible(v), Err::NonUnitDivisor, "negative power of " + var_name(v));
    p.terms_.emplace_back(std::move(m), std::move(coeff));
    return p;
  }

  static LaurentPoly term(Monomial m, Int coeff) {
    LaurentPoly p;
    if (coeff == 0) return p;
    validate_monomial(m);
    p.terms_.emplace_back(std::move(m), std::move(coeff));
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_[0].first.empty() && terms_[0].second == 1;
  }

  bool is_monomial() const { return terms_.size() == 1; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() ||
          (i < a.terms_.size() && mono_less(a.terms_[i].first, b.terms_[j].first))) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || mono_less(b.terms_[j].first, a.terms_[i].first)) {
        out.terms_.push_back(b.terms_[j++]);
      } else {
        Int c = a.terms_[i].second + b.terms_[j].second;
        if (c != 0) out.emplace_term(a.terms_[i].first, std::move(c));
        ++i, ++j;
      }
    }
    return out;
  }

  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly out = a;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
  }

  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    std::map<Monomial, Int, decltype(&mono_less)> acc(&mono_less);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = mono_mul(ma, mb);
        auto it = acc.find(m);
        if (it == acc.end())
          acc.emplace(std::move(m), ca * cb);
        else
          it->second += ca * cb;
      }
    LaurentPoly out;
    out.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) out.terms_.emplace_back(m, c);
    return out;
  }

  LaurentPoly pow(int n) const {
    check(n >= 0 || is_monomial(), Err::NonUnitDivisor, "negative power of non-monomial");
    if (n < 0) {
      const auto& [m, c] = terms_[0];
      check(c == 1 || c == -1, Err::NonUnitDivisor, "negative power of non-unit coefficient");
      LaurentPoly inv = term(mono_inverse(m), c);
      return inv.pow(-n);
    }
    LaurentPoly r = one(), base = *this;
    while (n > 0) {
      if (n & 1) r = r * base;
      base = n > 1 ? base * base : base;
      n >>= 1;
    }
    return r;
  }

  // Exact division by a single +-1-coefficient term in invertible generators.
  LaurentPoly div_monomial(const LaurentPoly& m) const {
    check(m.terms_.size() == 1, Err::NonUnitDivisor, "divisor is not a single term");
    const auto& [mono, c] = m.terms_[0];
    check(c == 1 || c == -1, Err::NonUnitDivisor, "divisor coefficient is not a unit");
    for (const auto& [v, e] : mono)
      check(invertible(v), Err::NonUnitDivisor, "divisor contains " + var_name(v));
    Monomial inv = mono_inverse(mono);
    LaurentPoly out;
    out.terms_.reserve(terms_.size());
    for (const auto& [mm, cc] : terms_)
      out.terms_.emplace_back(mono_mul(mm, inv), c == 1 ? cc : -cc);
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const Term& x, const Term& y) { return mono_less(x.first, y.first); });
    return out;
  }

  // Simultaneous variable renaming (used for the x <-> y mirror identity).
  LaurentPoly rename(const std::vector<std::pair<VarId, VarId>>& map) const {
    LaurentPoly out;
    out.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      Monomial nm;
      nm.reserve(m.size());
      for (const auto& [v, e] : m) {
        VarId w = v;
        for (const auto& [from, to] : map)
          if (v == from) { w = to; break; }
        nm.emplace_back(w, e);
      }
      std::sort(nm.begin(), nm.end());
      validate_monomial(nm);
      out.terms_.emplace_back(std::move(nm), c);
    }
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const Term& x, const Term& y) { return mono_less(x.first, y.first); });
    for (size_t i = 0; i + 1 < out.terms_.size(); ++i)
      check(mono_less(out.terms_[i].first, out.terms_[i + 1].first), Err::Internal,
            "rename collided monomials");
    return out;
  }

  std::vector<VarId> variables() const {
    std::vector<VarId> vs;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  // Exact evaluation with rational bindings. Every variable must be bound;
  // zero may not be substituted for a variable that occurs with a negative
  // exponent (units stay units).
  Rat substitute(const std::map<VarId, Rat>& bindings) const {
    Rat acc = 0;
    for (const auto& [m, c] : terms_) {
      Rat t(c);
      for (const auto& [v, e] : m) {
        auto it = bindings.find(v);
        if (it == bindings.end()) fail(Err::UnboundVariable, var_name(v));
        Rat val = it->second;
        if (val == 0 && e < 0) fail(Err::ZeroSubstitutedForUnit, var_name(v));
        if (val == 0) { t = 0; break; }
        Rat p = 1;
        Rat base = e > 0 ? val : Rat(1) / val;
        for (int k = 0; k < std::abs(e); ++k) p *= base;
        t *= p;
      }
      acc += t;
    }
    acc.canonicalize();
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Int a = abs(c);
      bool neg = c < 0;
      if (first) {
        if (neg) s += "-";
        first = false;
      } else {
        s += neg ? " - " : " + ";
      }
      std::string factors;
      for (const auto& [v, e] : m) {
        if (!factors.empty()) factors += "*";
        factors += var_name(v);
        if (e != 1) factors += "^" + std::to_string(e);
      }
      if (factors.empty()) {
        s += a.get_str();
      } else {
        if (a != 1) s += a.get_str() + "*";
        s += factors;
      }
    }
    return s;
  }

  static LaurentPoly parse(const std::string& text);

 private:
  void emplace_term(Monomial m, Int c) { terms_.emplace_back(std::move(m), std::move(c)); }

  std::vector<Term> terms_;
};

inline LaurentPoly operator*(const Int& c, const LaurentPoly& p) {
  return LaurentPoly::constant(c) * p;
}

// --- polynomial text grammar (documented in docs/FORMATS.md) ---------------
//   poly   := [ '-' ] term ( ('+'|'-') term )*
//   term   := integer | [integer '*'] factor ('*' factor)*
//   factor := var [ '^' integer ]
//   var    := ('x'|'y'|'z') [ '\'' ] [ index ]        (index defaults to 1)

namespace detail {

struct PolyLexer {
  const std::string& s;
  size_t i = 0;
  explicit PolyLexer(const std::string& text) : s(text) {}
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) { ++i; return true; }
    return false;
  }
  long integer() {
    skip_ws();
    bool neg = accept('-');
    skip_ws();
    check(i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])), Err::SyntaxError,
          "expected integer in polynomial at offset " + std::to_string(i));
    long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      v = v * 10 + (s[i++] - '0');
    return neg ? -v : v;
  }
};

}  // namespace detail

inline LaurentPoly LaurentPoly::parse(const std::string& text) {
  detail::PolyLexer lx(text);
  LaurentPoly acc;
  bool first = true;
  while (!lx.eof()) {
    int sign = 1;
    if (first) {
      if (lx.accept('-')) sign = -1;
      else lx.accept('+');
    } else {
      if (lx.accept('-')) sign = -1;
      else if (lx.accept('+')) sign = 1;
      else fail(Err::SyntaxError, "expected '+' or '-' in polynomial");
    }
    first = false;
    Int coeff = sign;
    Monomial mono;
    bool want_factor = true;
    bool saw_any = false;
    while (want_factor) {
      char c = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= Int(lx.integer());
        saw_any = true;
      } else if (c == 'x' || c == 'y' || c == 'z') {
        ++lx.i;
        Family fam = c == 'x' ? Family::x : c == 'y' ? Family::y : Family::z;
        if (lx.i < lx.s.size() && lx.s[lx.i] == '\'') {
          fam = c == 'x' ? Family::xp : c == 'y' ? Family::yp : Family::zp;
          ++lx.i;
        }
        int idx = 1;
        if (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
          idx = 0;
          while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i])))
            idx = idx * 10 + (lx.s[lx.i++] - '0');
        }
        int exp = 1;
        if (lx.accept('^')) exp = static_cast<int>(lx.integer());
        if (exp != 0) mono.emplace_back(VarId{fam, idx}, exp);
        saw_any = true;
      } else {
        fail(Err::SyntaxError, "expected coefficient or variable in polynomial");
      }
      want_factor = lx.accept('*');
    }
    check(saw_any, Err::SyntaxError, "empty term");
    std::sort(mono.begin(), mono.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Monomial merged;
    for (const auto& [v, e] : mono) {
      if (!merged.empty() && merged.back().first == v)
        merged.back().second += e;
      else
        merged.emplace_back(v, e);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& p) { return p.second == 0; }),
                 merged.end());
    validate_monomial(merged);
    acc = acc + LaurentPoly::term(std::move(merged), coeff);
  }
  return acc;
}

// --- univariate Laurent values for the Conway / Jones specializations ------

// One-variable Laurent polynomial over Z with a display name for the
// variable; exponents may be negative (Jones lives in Z[s^{+-1}], s=t^{1/2}).
struct Poly1 {
  std::map<int, Int> c;  // exponent -> nonzero coefficient
  std::string var = "z";

  static Poly1 mono(std::string v, int e, Int coeff) {
    Poly1 p;
    p.var = std::move(v);
    if (coeff != 0) p.c[e] = std::move(coeff);
    return p;
  }
  static Poly1 constant(std::string v, Int coeff) { return mono(std::move(v), 0, std::move(coeff)); }

  bool is_zero() const { return c.empty(); }

  friend bool operator==(const Poly1& a, const Poly1& b) { return a.c == b.c; }

  friend Poly1 operator+(const Poly1& a, const Poly1& b) {
    Poly1 out = a;
    if (out.c.empty()) out.var = b.var;
    for (const auto& [e, k] : b.c) {
      auto it = out.c.find(e);
      if (it == out.c.end())
        out.c[e] = k;
      else {
        it->second += k;
        if (it->second == 0) out.c.erase(it);
      }
    }
    return out;
  }
  friend Poly1 operator-(const Poly1& a) {
    Poly1 out = a;
    for (auto& [e, k] : out.c) k = -k;
    return out;
  }
  friend Poly1 operator-(const Poly1& a, const Poly1& b) { return a + (-b); }
  friend Poly1 operator*(const Poly1& a, const Poly1& b) {
    Poly1 out;
    out.var = a.c.empty() ? b.var : a.var;
    for (const auto& [ea, ka] : a.c)
      for (const auto& [eb, kb] : b.c) {
        out.c[ea + eb] += ka * kb;
      }
    for (auto it = out.c.begin(); it != out.c.end();)
      it = it->second == 0 ? out.c.erase(it) : std::next(it);
    return out;
  }

  Poly1 pow(int n) const {
    check(n >= 0 || c.size() == 1, Err::NonUnitDivisor, "negative power of non-monomial");
    if (n < 0) {
      auto [e, k] = *c.begin();
      check(k == 1 || k == -1, Err::NonUnitDivisor, "negative power of non-unit");
      return mono(var, -e, k).pow(-n);
    }
    Poly1 r = constant(var, 1), base = *this;
    while (n > 0) {
      if (n & 1) r = r * base;
      base = n > 1 ? base * base : base;
      n >>= 1;
    }
    return r;
  }

  // Exact division; throws NonLaurentResult if *this is not a multiple of d.
  // If num = den * quot then min-exponents add, so the quotient's exponents
  // are bounded below by min(num) - min(den); descent past that bound means
  // the division is inexact.
  Poly1 div_exact(const Poly1& d) const {
    check(!d.is_zero(), Err::NonLaurentResult, "division by zero polynomial");
    if (is_zero()) {
      Poly1 q;
      q.var = var;
      return q;
    }
    const int cutoff = c.begin()->first - d.c.begin()->first;
    Poly1 rem = *this, quot;
    quot.var = var;
    auto dlead = std::prev(d.c.end());
    while (!rem.is_zero()) {
      auto rlead = std::prev(rem.c.end());
      int e = rlead->first - dlead->first;
      if (e < cutoff) fail(Err::NonLaurentResult, "denominator does not clear");
      Int q = rlead->second / dlead->second;
      if (q * dlead->second != rlead->second)
        fail(Err::NonLaurentResult, "coefficient not divisible");
      Poly1 t = mono(var, e, q);
      quot = quot + t;
      rem = rem - t * d;
    }
    return quot;
  }

  double eval(double x) const {
    double acc = 0;
    for (const auto& [e, k] : c) acc += k.get_d() * std::pow(x, e);
    return acc;
  }

  std::string to_string() const {
    if (c.empty()) return "0";
    std::string s;
    bool first = true;
    // highest exponent first
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      const auto& [e, k] = *it;
      Int a = abs(k);
      bool neg = k < 0;
      if (first) {
        if (neg) s += "-";
        first = false;
      } else {
        s += neg ? " - " : " + ";
      }
      if (e == 0) {
        s += a.get_str();
      } else {
        if (a != 1) s += a.get_str() + "*";
        s += var;
        if (e != 1) s += "^" + std::to_string(e);
      }
    }
    return s;
  }
};

// Fraction of univariate Laurent polynomials; no reduction, denominators are
// cleared once at the end of a specialization by exact division.
struct Frac1 {
  Poly1 num, den;

  static Frac1 of(Poly1 n) {
    Frac1 f{std::move(n), {}};
    f.den = Poly1::constant(f.num.var, 1);
    return f;
  }
  static Frac1 of(Poly1 n, Poly1 d) { return Frac1{std::move(n), std::move(d)}; }

  friend Frac1 operator+(const Frac1& a, const Frac1& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend Frac1 operator*(const Frac1& a, const Frac1& b) {
    return {a.num * b.num, a.den * b.den};
  }
  Frac1 pow(int n) const {
    if (n < 0) {
      check(!num.is_zero(), Err::ZeroSubstitutedForUnit, "inverting zero");
      return Frac1{den, num}.pow(-n);
    }
    return Frac1{num.pow(n), den.pow(n)};
  }
  Poly1 clear() const { return num.div_exact(den); }
};

}  // namespace skein
