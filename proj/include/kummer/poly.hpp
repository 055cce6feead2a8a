#pragma once
// Dense univariate polynomials over an exact coefficient ring.
//
// Poly<Rat> is Q[t]. Poly<Poly<Rat>> is Q[u][t] (outer variable first), used
// for elimination and square-free work over the fraction field Q(u).

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <optional>
#include <vector>

#include "kummer/rational.hpp"

namespace kummer {

template <class R>
class Poly;

template <class R>
bool is_zero(const Poly<R>& p);

template <class R>
class Poly {
 public:
  using coeff_type = R;
  std::vector<R> c;  // c[i] multiplies var^i

  Poly() = default;
  Poly(const R& constant) {  // NOLINT(implicit)
    if (!is_zero(constant)) c.push_back(constant);
  }
  template <class T, class = std::enable_if_t<std::is_integral_v<T>>>
  Poly(T constant) : Poly(R(constant)) {}  // NOLINT(implicit)
  explicit Poly(std::vector<R> coeffs) : c(std::move(coeffs)) { trim(); }

  static Poly var() { return monomial(R(1), 1); }
  static Poly monomial(const R& coef, size_t deg) {
    Poly p;
    if (is_zero(coef)) return p;
    p.c.assign(deg + 1, R(0));
    p.c[deg] = coef;
    return p;
  }

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool zero() const { return c.empty(); }
  const R& lead() const {
    if (c.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c.back();
  }
  R coeff(size_t i) const { return i < c.size() ? c[i] : R(0); }
  void trim() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }
  /// Lowest exponent with nonzero coefficient (order at 0); -1 for zero.
  int low_deg() const {
    for (size_t i = 0; i < c.size(); ++i)
      if (!is_zero(c[i])) return static_cast<int>(i);
    return -1;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), R(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), R(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.zero() || b.zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, R(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (is_zero(a.c[i])) continue;
      for (size_t j = 0; j < b.c.size(); ++j) {
        if (is_zero(b.c[j])) continue;
        r.c[i + j] += a.c[i] * b.c[j];
      }
    }
    r.trim();
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Multiplication by a coefficient-ring element.
  Poly scaled(const R& s) const {
    Poly r = *this;
    for (auto& x : r.c) x *= s;
    r.trim();
    return r;
  }
  Poly shifted(size_t k) const {  // times var^k
    if (zero()) return *this;
    Poly r;
    r.c.assign(k, R(0));
    r.c.insert(r.c.end(), c.begin(), c.end());
    return r;
  }

  /// Horner evaluation at a value of any type S supporting S*S and S+R.
  template <class S>
  S eval(const S& v) const {
    S acc(0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * v + S(c[i]);
    return acc;
  }
  /// Composition p(q) with q in the same ring.
  Poly compose(const Poly& q) const {
    Poly acc;
    for (size_t i = c.size(); i-- > 0;) acc = acc * q + Poly(c[i]);
    return acc;
  }
  Poly derivative() const {
    Poly r;
    if (c.size() <= 1) return r;
    r.c.resize(c.size() - 1, R(0));
    for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * R(static_cast<long>(i));
    r.trim();
    return r;
  }
  /// var^d * p(1/var) for d >= deg.
  Poly reversed(int d) const {
    if (d < deg()) throw std::invalid_argument("reversal degree below polynomial degree");
    Poly r;
    if (zero()) return r;
    r.c.assign(static_cast<size_t>(d) + 1, R(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[static_cast<size_t>(d) - i] = c[i];
    r.trim();
    return r;
  }
};

template <class R>
bool is_zero(const Poly<R>& p) {
  return p.zero();
}

using UPoly = Poly<Rat>;
using BPoly = Poly<UPoly>;  // Q[u][t]: outer t, coefficients in Q[u]

// ---- scalar (Rat) helpers that recurse through nesting ----

inline Rat scale_by(const Rat& a, const Rat& s) { return a * s; }
template <class R>
Poly<R> scale_by(const Poly<R>& p, const Rat& s) {
  Poly<R> r = p;
  for (auto& x : r.c) x = scale_by(x, s);
  r.trim();
  return r;
}

/// The rational "unit" of an element: its innermost leading coefficient.
inline Rat unit_part(const Rat& r) { return r; }
template <class R>
Rat unit_part(const Poly<R>& p) {
  if (p.zero()) return Rat(0);
  return unit_part(p.lead());
}

template <class T>
T normalize_unit(const T& p) {
  Rat u = unit_part(p);
  if (sgn(u) == 0) return p;
  return scale_by(p, 1 / u);
}

// ---- division ----

inline Rat exact_div(const Rat& a, const Rat& b) {
  if (sgn(b) == 0) throw std::domain_error("division by zero");
  return a / b;
}

template <class R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& a, const Poly<R>& b);

/// Exact division; throws if b does not divide a.
template <class R>
Poly<R> exact_div(const Poly<R>& a, const Poly<R>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

/// Division with remainder. Requires each leading-coefficient quotient to be
/// exact in R (always true over a field).
template <class R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& a, const Poly<R>& b) {
  if (b.zero()) throw std::domain_error("polynomial division by zero");
  Poly<R> q, r = a;
  if (a.deg() < b.deg()) return {q, r};
  q.c.assign(static_cast<size_t>(a.deg() - b.deg() + 1), R(0));
  const R& lb = b.lead();
  while (!r.zero() && r.deg() >= b.deg()) {
    size_t k = static_cast<size_t>(r.deg() - b.deg());
    R f = exact_div(r.lead(), lb);
    q.c[k] = f;
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i + k] -= f * b.c[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) a mod b, computed fraction-free.
template <class R>
Poly<R> pseudo_rem(Poly<R> a, const Poly<R>& b) {
  if (b.zero()) throw std::domain_error("pseudo-remainder by zero");
  int e = a.deg() - b.deg() + 1;
  if (e <= 0) return a;
  const R& lb = b.lead();
  while (!a.zero() && a.deg() >= b.deg()) {
    size_t k = static_cast<size_t>(a.deg() - b.deg());
    R f = a.lead();
    for (auto& x : a.c) x *= lb;
    for (size_t i = 0; i < b.c.size(); ++i) a.c[i + k] -= f * b.c[i];
    a.trim();
    --e;
  }
  for (; e > 0; --e) a = a.scaled(lb);
  return a;
}

// ---- gcd ----

inline Rat gcd(const Rat& a, const Rat& b) { return (is_zero(a) && is_zero(b)) ? Rat(0) : Rat(1); }

inline std::vector<Int> integer_coefficients(const UPoly& p);

namespace detail {
using ZPoly = std::vector<Int>;  // low degree first, no trailing zeros

inline void z_primitive(ZPoly& a) {
  Int g = 0;
  for (const auto& x : a) g = gcd(g, x);
  if (g == 0) return;
  if (sgn(a.back()) < 0) g = -g;
  for (auto& x : a) x /= g;
}

inline ZPoly z_prem(ZPoly a, const ZPoly& b) {
  const Int& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    size_t k = a.size() - b.size();
    Int f = a.back();
    for (auto& x : a) x *= lb;
    for (size_t i = 0; i < b.size(); ++i) a[i + k] -= f * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}
}  // namespace detail

/// Monic gcd over Q, via the primitive remainder sequence over Z (plain
/// Euclid over Q swells coefficients badly).
inline UPoly gcd(const UPoly& a, const UPoly& b) {
  if (a.zero() || b.zero()) return normalize_unit(a.zero() ? b : a);
  if (a.deg() == 0 || b.deg() == 0) return UPoly(Rat(1));
  detail::ZPoly x = integer_coefficients(a), y = integer_coefficients(b);
  if (x.size() < y.size()) std::swap(x, y);
  detail::z_primitive(x);
  detail::z_primitive(y);
  while (!y.empty()) {
    detail::ZPoly r = detail::z_prem(x, y);
    detail::z_primitive(r);
    x = std::move(y);
    y = std::move(r);
  }
  UPoly out;
  for (auto& v : x) out.c.push_back(Rat(v));
  out.trim();
  return normalize_unit(out);
}

template <class R>
R content(const Poly<R>& p) {
  R g(0);
  for (const auto& x : p.c) {
    g = gcd(g, x);
    if (unit_part(g) != 0 && g == R(1)) break;
  }
  return g;
}

template <class R>
Poly<R> primitive_part(const Poly<R>& p) {
  if (p.zero()) return p;
  R g = content(p);
  Poly<R> r = p;
  for (auto& x : r.c) x = exact_div(x, g);
  return normalize_unit(r);
}

/// gcd over a polynomial ring R[t] with R a gcd domain (primitive PRS),
/// normalized so the innermost leading coefficient is 1.
template <class R>
Poly<R> gcd(const Poly<R>& a0, const Poly<R>& b0) {
  if (a0.zero()) return normalize_unit(b0.zero() ? b0 : Poly<R>(content(b0)) * primitive_part(b0));
  if (b0.zero()) return normalize_unit(Poly<R>(content(a0)) * primitive_part(a0));
  R g = gcd(content(a0), content(b0));
  Poly<R> a = primitive_part(a0), b = primitive_part(b0);
  if (a.deg() < b.deg()) std::swap(a, b);
  while (!b.zero()) {
    Poly<R> r = pseudo_rem(a, b);
    a = std::move(b);
    b = r.zero() ? r : primitive_part(r);
  }
  return normalize_unit(Poly<R>(g) * a);
}

template <class P>
bool divides(const P& d, const P& a) {
  if (d.zero()) return a.zero();
  try {
    (void)exact_div(a, d);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

/// Multiplicity of d as a factor of a (d non-constant).
template <class P>
int multiplicity(const P& d, P a) {
  if (d.deg() < 1) throw std::invalid_argument("multiplicity of a constant");
  if (a.zero()) throw std::invalid_argument("multiplicity in zero");
  int m = 0;
  while (true) {
    auto [q, r] = divmod_general(a, d);
    if (!r.zero()) break;
    a = q;
    ++m;
  }
  return m;
}

/// divmod that falls back to "not divisible" when leading quotients are inexact.
template <class R>
std::pair<Poly<R>, Poly<R>> divmod_general(const Poly<R>& a, const Poly<R>& d) {
  try {
    return divmod(a, d);
  } catch (const std::domain_error&) {
    return {Poly<R>(), a};
  }
}

// ---- square-free decomposition ----

/// Factors h_i (normalized) with a = unit * prod h_i^i; entry i-1 holds h_i.
template <class P>
std::vector<P> squarefree_factors(const P& a) {
  if (a.zero()) throw std::invalid_argument("square-free decomposition of zero");
  std::vector<P> out;
  if (a.deg() < 1) return out;
  P g = gcd(a, a.derivative());
  P w = exact_div(a, g);
  while (w.deg() >= 1) {
    P y = gcd(w, g);
    out.push_back(normalize_unit(exact_div(w, y)));
    w = y;
    g = exact_div(g, y);
  }
  return out;
}

struct SquarefreePart {
  Rat c;
  UPoly s;  // squarefree, monic
  UPoly r;  // monic; p = c * s * r^2
};

/// p = c·s·r² with s squarefree monic.
inline SquarefreePart squarefree_part(const UPoly& p) {
  if (p.zero()) throw std::invalid_argument("squarefree_part of zero polynomial");
  auto f = squarefree_factors(p);
  UPoly s(Rat(1)), r(Rat(1));
  for (size_t i = 0; i < f.size(); ++i) {
    size_t m = i + 1;
    if (m % 2 == 1) s *= f[i];
    for (size_t k = 0; k < m / 2; ++k) r *= f[i];
  }
  return {p.lead(), s, r};
}

/// Squarefree radical (product of distinct factors), normalized.
template <class P>
P radical(const P& a) {
  auto f = squarefree_factors(a);
  P out(1);
  for (auto& h : f) out *= h;
  return normalize_unit(out);
}

template <class R>
Poly<R> pow(const Poly<R>& p, unsigned e) {
  Poly<R> r(R(1)), b = p;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

// ---- printing ----

inline std::string poly_to_string(const UPoly& p, const std::string& var = "t") {
  if (p.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = p.c.size(); i-- > 0;) {
    const Rat& x = p.c[i];
    if (is_zero(x)) continue;
    Rat a = abs(x);
    if (!first) os << (sgn(x) < 0 ? " - " : " + ");
    else if (sgn(x) < 0) os << "-";
    first = false;
    bool one = (a == 1);
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (!one) os << a.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

// ---- rational roots over Q ----

/// Content-free integer version of p (primitive integer coefficients).
inline std::vector<Int> integer_coefficients(const UPoly& p) {
  Int l = 1;
  for (auto& x : p.c) l = lcm(l, x.get_den());
  std::vector<Int> out;
  Int g = 0;
  for (auto& x : p.c) {
    Rat y = x * Rat(l);
    out.push_back(y.get_num());
    g = gcd(g, y.get_num());
  }
  if (g != 0)
    for (auto& v : out) v /= g;
  return out;
}

/// Sign of p at x.
inline int sign_at(const UPoly& p, const Rat& x) { return sgn(p.eval(x)); }

namespace detail {
inline Int mod_eval(const std::vector<Int>& c, const Int& x, const Int& m) {
  Int acc = 0;
  for (size_t i = c.size(); i-- > 0;) {
    acc = acc * x + c[i];
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

/// True if the reduction mod p keeps its degree and stays squarefree.
inline bool good_prime(const std::vector<Int>& c, unsigned long p) {
  Int P(p);
  auto red = [&](const std::vector<Int>& v) {
    std::vector<long> r;
    for (const auto& x : v) {
      Int y;
      mpz_mod(y.get_mpz_t(), x.get_mpz_t(), P.get_mpz_t());
      r.push_back(y.get_si());
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  };
  auto f = red(c);
  if (f.size() != c.size()) return false;
  std::vector<Int> dc;
  for (size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * Int(static_cast<long>(i)));
  auto g = red(dc);
  long pl = static_cast<long>(p);
  auto inv = [&](long a) {
    long r = 1, e = pl - 2, b = a % pl;
    while (e) {
      if (e & 1) r = r * b % pl;
      b = b * b % pl;
      e >>= 1;
    }
    return r;
  };
  // Euclid over F_p.
  while (!g.empty()) {
    while (f.size() >= g.size()) {
      long q = f.back() * inv(g.back()) % pl;
      size_t sh = f.size() - g.size();
      for (size_t i = 0; i < g.size(); ++i) f[i + sh] = ((f[i + sh] - q * g[i]) % pl + pl) % pl;
      while (!f.empty() && f.back() == 0) f.pop_back();
      if (f.empty()) break;
    }
    std::swap(f, g);
  }
  return f.size() == 1;
}

/// n/d = r mod m with |n| <= N and 0 < d, by the half extended Euclid.
inline std::optional<Rat> rational_reconstruct(const Int& r, const Int& m, const Int& N, const Int& D) {
  Int r0 = m, r1 = r, s0 = 0, s1 = 1;
  while (abs(r1) > N) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    Int t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > D) return std::nullopt;
  return rat(r1, s1);
}
}  // namespace detail

/// All distinct rational roots of p, ascending. Roots modulo a prime at which
/// p stays squarefree are Hensel-lifted beyond 2 |a0| |lc| and recovered by
/// rational reconstruction; every candidate is checked exactly.
inline std::vector<Rat> rational_roots(const UPoly& p0) {
  std::vector<Rat> roots;
  if (p0.deg() < 1) return roots;
  UPoly p = radical(p0);
  if (is_zero(p.coeff(0))) {
    roots.push_back(0);
    p = exact_div(p, UPoly::var());
  }
  if (p.deg() < 1) return roots;
  auto ic = integer_coefficients(p);
  std::vector<Int> dc;
  for (size_t i = 1; i < ic.size(); ++i) dc.push_back(ic[i] * Int(static_cast<long>(i)));
  Int a0 = abs(ic.front()), lc = abs(ic.back());
  unsigned long prime = 0;
  for (unsigned long q = 101;; q += 2) {
    bool is_prime = true;
    for (unsigned long k = 3; k * k <= q; k += 2)
      if (q % k == 0) is_prime = false;
    if (is_prime && detail::good_prime(ic, q)) {
      prime = q;
      break;
    }
  }
  Int P(prime), bound = 2 * a0 * lc;
  for (unsigned long x = 0; x < prime; ++x) {
    Int r(x);
    if (detail::mod_eval(ic, r, P) != 0) continue;
    Int m = P;
    while (m <= bound) {
      m = m * m;
      Int f = detail::mod_eval(ic, r, m), df = detail::mod_eval(dc, r, m), inv;
      mpz_invert(inv.get_mpz_t(), df.get_mpz_t(), m.get_mpz_t());
      r = r - f * inv;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    }
    auto cand = detail::rational_reconstruct(r, m, a0, lc);
    if (cand && is_zero(p.eval(*cand))) roots.push_back(*cand);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Monic linear factor t - r.
inline UPoly linear(const Rat& r) { return UPoly(std::vector<Rat>{-r, Rat(1)}); }

/// Exact square root with positive leading coefficient, if p is a square in Q[t].
inline std::optional<UPoly> poly_sqrt(const UPoly& p) {
  if (p.zero()) return UPoly();
  int n = p.deg();
  Rat lead;
  if (n % 2 || !is_square(p.c.back(), &lead)) return std::nullopt;
  int h = n / 2;
  std::vector<Rat> s(h + 1);
  s[h] = lead;
  for (int k = h - 1; k >= 0; --k) {
    // coefficient of t^(h+k) in p minus the part of s^2 already fixed
    Rat acc = p.c[h + k];
    for (int i = k + 1; i <= h; ++i) {
      int j = h + k - i;
      if (j > k && j <= h) acc -= s[i] * s[j];
    }
    s[k] = acc / (2 * lead);
  }
  UPoly r(s);
  if (!(r * r == p)) return std::nullopt;
  return r;
}

}  // namespace kummer
