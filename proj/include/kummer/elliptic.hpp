#pragma once
// Elliptic surfaces over Q(t): invariants, minimal short models, Kodaira
// fibers at every place including infinity, the group law on sections,
// torsion, heights and the discriminant bookkeeping of NS.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/lattice.hpp"
#include "kummer/matrix.hpp"
#include "kummer/mpoly.hpp"
#include "kummer/poly.hpp"
#include "kummer/ratfunc.hpp"

namespace kummer {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q[t].
struct WeierstrassModel {
  std::array<UPoly, 5> a;  // a1, a2, a3, a4, a6
  int chi = 2;

  static WeierstrassModel short_form(const UPoly& A, const UPoly& B, int chi = 2) {
    WeierstrassModel w;
    w.a[3] = A;
    w.a[4] = B;
    w.chi = chi;
    return w;
  }
  const UPoly& a1() const { return a[0]; }
  const UPoly& a2() const { return a[1]; }
  const UPoly& a3() const { return a[2]; }
  const UPoly& a4() const { return a[3]; }
  const UPoly& a6() const { return a[4]; }
  bool is_short() const { return a[0].zero() && a[1].zero() && a[2].zero(); }

  UPoly b2() const { return a1() * a1() + a2().scaled(Rat(4)); }
  UPoly b4() const { return a1() * a3() + a4().scaled(Rat(2)); }
  UPoly b6() const { return a3() * a3() + a6().scaled(Rat(4)); }
  UPoly b8() const {
    return a1() * a1() * a6() + (a2() * a6()).scaled(Rat(4)) - a1() * a3() * a4() + a2() * a3() * a3() - a4() * a4();
  }
  UPoly c4() const { return b2() * b2() - b4().scaled(Rat(24)); }
  UPoly c6() const { return -(b2() * b2() * b2()) + (b2() * b4()).scaled(Rat(36)) - b6().scaled(Rat(216)); }
  UPoly discriminant() const {
    UPoly B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -(B2 * B2 * B8) - (B4 * B4 * B4).scaled(Rat(8)) - (B6 * B6).scaled(Rat(27)) + (B2 * B4 * B6).scaled(Rat(9));
  }
  /// Right side minus left side as a polynomial in (t, x, y).
  MPoly equation() const {
    MPoly x = MPoly::var(3, 1), y = MPoly::var(3, 2);
    auto P = [](const UPoly& p) { return MPoly::from_upoly(p, 3, 0); };
    return x.pow(3) + P(a2()) * x * x + P(a4()) * x + P(a6()) - y * y - P(a1()) * x * y - P(a3()) * y;
  }
  friend bool operator==(const WeierstrassModel& u, const WeierstrassModel& v) { return u.a == v.a && u.chi == v.chi; }
};

struct Invariants {
  UPoly c4, c6, disc;
  RatFunc j;
};

inline Invariants invariants(const WeierstrassModel& w) {
  Invariants r{w.c4(), w.c6(), w.discriminant(), RatFunc()};
  if (r.disc.zero()) throw std::domain_error("discriminant vanishes identically: not an elliptic surface");
  r.j = RatFunc(r.c4 * r.c4 * r.c4, r.disc);
  return r;
}

// ---------------------------------------------------------------------------
// Sections and the group law.

struct SectionPoint {
  bool infinity = true;
  RatFunc x, y;
  static SectionPoint zero() { return {}; }
  static SectionPoint at(RatFunc x, RatFunc y) { return {false, std::move(x), std::move(y)}; }
  friend bool operator==(const SectionPoint& p, const SectionPoint& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
  }
  friend bool operator!=(const SectionPoint& p, const SectionPoint& q) { return !(p == q); }
};

inline bool on_curve(const WeierstrassModel& w, const SectionPoint& p) {
  if (p.infinity) return true;
  RatFunc a1 = w.a1(), a2 = w.a2(), a3 = w.a3(), a4 = w.a4(), a6 = w.a6();
  RatFunc lhs = p.y * p.y + a1 * p.x * p.y + a3 * p.y;
  RatFunc rhs = p.x * p.x * p.x + a2 * p.x * p.x + a4 * p.x + a6;
  return lhs == rhs;
}

inline SectionPoint neg(const WeierstrassModel& w, const SectionPoint& p) {
  if (p.infinity) return p;
  return SectionPoint::at(p.x, -p.y - RatFunc(w.a1()) * p.x - RatFunc(w.a3()));
}

inline SectionPoint add(const WeierstrassModel& w, const SectionPoint& p, const SectionPoint& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  RatFunc a1 = w.a1(), a2 = w.a2(), a3 = w.a3(), a4 = w.a4(), a6 = w.a6();
  RatFunc lambda, nu;
  if (p.x == q.x) {
    RatFunc den = p.y + p.y + a1 * p.x + a3;
    if (p.y != q.y || den.zero()) return SectionPoint::zero();
    lambda = (p.x * p.x * RatFunc(3) + a2 * p.x * RatFunc(2) + a4 - a1 * p.y) / den;
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  nu = p.y - lambda * p.x;
  RatFunc x3 = lambda * lambda + a1 * lambda - a2 - p.x - q.x;
  RatFunc y3 = -(lambda + a1) * x3 - nu - a3;
  return SectionPoint::at(x3, y3);
}

inline SectionPoint multiple(const WeierstrassModel& w, const SectionPoint& p, long n) {
  if (n < 0) return multiple(w, neg(w, p), -n);
  SectionPoint r = SectionPoint::zero(), b = p;
  while (n) {
    if (n & 1) r = add(w, r, b);
    n >>= 1;
    if (n) b = add(w, b, b);
  }
  return r;
}

namespace detail {
struct QPoint {
  bool inf = true;
  Rat x, y;
};
inline QPoint add_q(const std::array<Rat, 5>& a, const QPoint& p, const QPoint& q) {
  if (p.inf) return q;
  if (q.inf) return p;
  Rat lambda;
  if (p.x == q.x) {
    Rat den = 2 * p.y + a[0] * p.x + a[2];
    if (p.y != q.y || den == 0) return {};
    lambda = (3 * p.x * p.x + 2 * a[1] * p.x + a[3] - a[0] * p.y) / den;
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  Rat nu = p.y - lambda * p.x;
  Rat x3 = lambda * lambda + a[0] * lambda - a[1] - p.x - q.x;
  return {false, x3, -(lambda + a[0]) * x3 - nu - a[2]};
}
}  // namespace detail

/// Smallest n <= bound with nP = O, or nullopt. A good specialization
/// proposes the order, which is then confirmed over Q(t).
inline std::optional<int> torsion_order(const WeierstrassModel& w, const SectionPoint& p, int bound = 12) {
  if (p.infinity) return 1;
  UPoly disc = w.discriminant();
  for (long k = 0; k < 64; ++k) {
    Rat t0 = Rat(k % 2 ? -(k + 1) / 2 : k / 2) + rat(1, 3);
    if (disc.eval(t0) == 0 || p.x.den().eval(t0) == 0 || p.y.den().eval(t0) == 0) continue;
    std::array<Rat, 5> a;
    for (int i = 0; i < 5; ++i) a[i] = w.a[i].eval(t0);
    detail::QPoint q0{false, p.x.eval(t0), p.y.eval(t0)}, q = q0;
    int n = 1;
    while (!q.inf && n < bound) {
      q = detail::add_q(a, q, q0);
      ++n;
    }
    if (!q.inf) return std::nullopt;
    if (multiple(w, p, n).infinity) return n;
    return std::nullopt;
  }
  throw std::domain_error("no good specialization for the torsion test");
}

// ---------------------------------------------------------------------------
// Short minimal models.

/// A short model y^2 = x^3 + A x + B with the coordinate change from the
/// model it came from: X = (x + r) / u^2, Y = (y + s x + q) / u^3.
struct MinimalModel {
  WeierstrassModel w;  // short
  WeierstrassModel original;
  UPoly u;
  UPoly r;     // b2 / 12
  UPoly s, q;  // a1 / 2, a3 / 2
  const UPoly& A() const { return w.a[3]; }
  const UPoly& B() const { return w.a[4]; }

  SectionPoint map_point(const SectionPoint& p) const {
    if (p.infinity) return p;
    RatFunc u2 = RatFunc(u * u), u3 = RatFunc(u * u * u);
    return SectionPoint::at((p.x + RatFunc(r)) / u2, (p.y + RatFunc(s) * p.x + RatFunc(q)) / u3);
  }
};

namespace detail {
inline int ord_or(const UPoly& g, const UPoly& f, int inf = 1000) { return f.zero() ? inf : multiplicity(g, f); }

/// Product of the irreducible p with p^4 | A and p^6 | B.
inline UPoly nonminimal_part(const UPoly& A, const UPoly& B) {
  UPoly g;
  UPoly d = A;
  for (int i = 0; i < 4; ++i) {
    g = gcd(g, d);
    d = d.derivative();
  }
  d = B;
  for (int i = 0; i < 6; ++i) {
    g = gcd(g, d);
    d = d.derivative();
  }
  if (g.zero()) throw std::domain_error("A and B both vanish");
  return g.deg() > 0 ? radical(g) : UPoly(Rat(1));
}
}  // namespace detail

/// Short form, then removal of every (u^4, u^6) factor at finite places.
inline MinimalModel minimalize(const WeierstrassModel& w) {
  MinimalModel m;
  m.original = w;
  UPoly A, B;
  if (w.is_short()) {
    A = w.a4();
    B = w.a6();
  } else {
    A = w.c4().scaled(rat(-1, 48));
    B = w.c6().scaled(rat(-1, 864));
    m.r = w.b2().scaled(rat(1, 12));
    m.s = w.a1().scaled(rat(1, 2));
    m.q = w.a3().scaled(rat(1, 2));
  }
  m.u = UPoly(Rat(1));
  while (true) {
    UPoly p = detail::nonminimal_part(A, B);
    if (p.deg() <= 0) break;
    UPoly p2 = p * p;
    A = exact_div(A, p2 * p2);
    B = exact_div(B, p2 * p2 * p2);
    m.u = m.u * p;
  }
  // Smallest chi with deg A <= 4 chi and deg B <= 6 chi; 0 for a constant curve.
  int chi = std::max({0, (A.deg() + 3) / 4, (B.deg() + 5) / 6});
  m.w = WeierstrassModel::short_form(A, B, chi);
  if (m.w.discriminant().zero()) throw std::domain_error("discriminant vanishes identically: not an elliptic surface");
  return m;
}

// ---------------------------------------------------------------------------
// Places and Kodaira fibers.

struct Place {
  bool infinity = false;
  UPoly poly;  // monic squarefree; linear for rational places
  int degree() const { return infinity ? 1 : poly.deg(); }
  bool rational() const { return infinity || poly.deg() == 1; }
  Rat position() const {
    if (!rational() || infinity) throw std::logic_error("place has no rational position");
    return -poly.c[0] / poly.c[1];
  }
  std::string to_string() const {
    if (infinity) return "t=oo";
    if (poly.deg() == 1) return "t=" + kummer::to_string(position());
    return poly_to_string(poly, "t") + "=0";
  }
  static Place at(const Rat& r) { return {false, linear(r)}; }
  static Place inf() { return {true, UPoly()}; }
  friend bool operator==(const Place& a, const Place& b) { return a.infinity == b.infinity && a.poly == b.poly; }
};

enum class FiberKind { I0, In, InStar, II, III, IV, IVStar, IIIStar, IIStar };

struct KodairaFiber {
  Place place;
  FiberKind kind = FiberKind::I0;
  int n = 0;
  int vA = 0, vB = 0, vD = 0;

  std::string type() const {
    switch (kind) {
      case FiberKind::I0: return "I0";
      case FiberKind::In: return "I" + std::to_string(n);
      case FiberKind::InStar: return "I" + std::to_string(n) + "*";
      case FiberKind::II: return "II";
      case FiberKind::III: return "III";
      case FiberKind::IV: return "IV";
      case FiberKind::IVStar: return "IV*";
      case FiberKind::IIIStar: return "III*";
      case FiberKind::IIStar: return "II*";
    }
    return "?";
  }
  /// Root lattice of the non-identity components, e.g. "D4"; "" if none.
  std::string root_lattice() const {
    switch (kind) {
      case FiberKind::In: return n >= 2 ? "A" + std::to_string(n - 1) : "";
      case FiberKind::InStar: return "D" + std::to_string(n + 4);
      case FiberKind::III: return "A1";
      case FiberKind::IV: return "A2";
      case FiberKind::IVStar: return "E6";
      case FiberKind::IIIStar: return "E7";
      case FiberKind::IIStar: return "E8";
      default: return "";
    }
  }
  int euler() const {
    switch (kind) {
      case FiberKind::I0: return 0;
      case FiberKind::In: return n;
      case FiberKind::InStar: return n + 6;
      case FiberKind::II: return 2;
      case FiberKind::III: return 3;
      case FiberKind::IV: return 4;
      case FiberKind::IVStar: return 8;
      case FiberKind::IIIStar: return 9;
      case FiberKind::IIStar: return 10;
    }
    return 0;
  }
  int components() const {
    switch (kind) {
      case FiberKind::I0: return 1;
      case FiberKind::In: return n;
      case FiberKind::InStar: return n + 5;
      case FiberKind::II: return 1;
      case FiberKind::III: return 2;
      case FiberKind::IV: return 3;
      case FiberKind::IVStar: return 7;
      case FiberKind::IIIStar: return 8;
      case FiberKind::IIStar: return 9;
    }
    return 1;
  }
  int group_order() const {
    switch (kind) {
      case FiberKind::In: return n;
      case FiberKind::InStar: return 4;
      case FiberKind::III: return 2;
      case FiberKind::IV: return 3;
      case FiberKind::IVStar: return 3;
      case FiberKind::IIIStar: return 2;
      default: return 1;
    }
  }
  bool reducible() const { return components() > 1; }
};

/// Classification from valuations of A, B and the discriminant on a model
/// minimal at the place, residue characteristic 0.
inline KodairaFiber classify(const Place& pl, int vA, int vB, int vD) {
  KodairaFiber f;
  f.place = pl;
  f.vA = vA;
  f.vB = vB;
  f.vD = vD;
  if (vA >= 4 && vB >= 6) throw std::domain_error("model not minimal at " + pl.to_string() + "; call minimalize first");
  if (vD == 0) {
    f.kind = FiberKind::I0;
  } else if (vA == 0 || vB == 0) {
    // vB = 0 forces vA = 0 when the discriminant vanishes.
    f.kind = FiberKind::In;
    f.n = vD;
  } else if (vD == 2) {
    f.kind = FiberKind::II;
  } else if (vD == 3) {
    f.kind = FiberKind::III;
  } else if (vD == 4) {
    f.kind = FiberKind::IV;
  } else if (vD == 6 && vA >= 2 && vB >= 3) {
    f.kind = FiberKind::InStar;
    f.n = 0;
  } else if (vA == 2 && vB == 3 && vD > 6) {
    f.kind = FiberKind::InStar;
    f.n = vD - 6;
  } else if (vD == 8) {
    f.kind = FiberKind::IVStar;
  } else if (vD == 9) {
    f.kind = FiberKind::IIIStar;
  } else if (vD == 10) {
    f.kind = FiberKind::IIStar;
  } else {
    throw std::domain_error("unclassifiable valuations at " + pl.to_string() + ": v(A)=" + std::to_string(vA) +
                            " v(B)=" + std::to_string(vB) + " v(D)=" + std::to_string(vD));
  }
  return f;
}

namespace detail {
/// Short-model discriminant 4A^3 + 27B^2 (same zeros and orders as Delta).
inline UPoly short_disc(const UPoly& A, const UPoly& B) {
  return (A * A * A).scaled(Rat(4)) + (B * B).scaled(Rat(27));
}
}  // namespace detail

inline KodairaFiber kodaira_at(const MinimalModel& m, const Place& pl) {
  UPoly D = detail::short_disc(m.A(), m.B());
  int chi = m.w.chi;
  if (pl.infinity) {
    auto vinf = [](const UPoly& p, int weight) { return p.zero() ? 1000 : weight - p.deg(); };
    int vA = vinf(m.A(), 4 * chi), vB = vinf(m.B(), 6 * chi), vD = vinf(D, 12 * chi);
    if (vA < 0 || vB < 0) throw std::domain_error("coefficients exceed the degree bound for chi");
    return classify(pl, vA, vB, vD);
  }
  return classify(pl, detail::ord_or(pl.poly, m.A()), detail::ord_or(pl.poly, m.B()), detail::ord_or(pl.poly, D));
}

namespace detail {
/// Pairwise coprime squarefree polynomials whose products give each input's
/// squarefree factors.
inline std::vector<UPoly> gcd_free_basis(const std::vector<UPoly>& inputs) {
  std::vector<UPoly> basis;
  for (const auto& in : inputs) {
    if (in.zero() || in.deg() <= 0) continue;
    for (const auto& sf : squarefree_factors(in)) {
      UPoly f = normalize_unit(sf);
      if (f.deg() <= 0) continue;
      std::vector<UPoly> next;
      for (const auto& b : basis) {
        UPoly g = gcd(f, b);
        if (g.deg() > 0) {
          next.push_back(g);
          UPoly rest = exact_div(b, g);
          if (rest.deg() > 0) next.push_back(normalize_unit(rest));
          f = exact_div(f, g);
        } else {
          next.push_back(b);
        }
      }
      if (f.deg() > 0) next.push_back(normalize_unit(f));
      basis = next;
    }
  }
  return basis;
}
}  // namespace detail

struct FiberConfiguration {
  std::vector<KodairaFiber> fibers;  // every singular fiber group, rational places first
  int euler_sum = 0;
  std::vector<KodairaFiber> reducible() const {
    std::vector<KodairaFiber> r;
    for (const auto& f : fibers)
      if (f.reducible()) r.push_back(f);
    return r;
  }
  /// e.g. "D4^2 A1^6", sorted by lattice family then rank descending.
  std::string root_type() const;
};

inline std::string FiberConfiguration::root_type() const {
  std::map<std::string, int> count;
  for (const auto& f : fibers)
    if (f.reducible()) count[f.root_lattice()] += f.place.degree();
  std::vector<std::pair<std::string, int>> v(count.begin(), count.end());
  auto key = [](const std::string& s) {
    int fam = s[0] == 'E' ? 0 : s[0] == 'D' ? 1 : 2;
    return std::make_pair(fam, -std::stoi(s.substr(1)));
  };
  std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) { return key(a.first) < key(b.first); });
  std::string out;
  for (const auto& [name, k] : v) {
    if (!out.empty()) out += " ";
    out += name;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "none" : out;
}

/// Every singular fiber: rational roots of the discriminant, infinity, and
/// groups of conjugate places from the residual factor.
inline FiberConfiguration fiber_configuration(const MinimalModel& m) {
  FiberConfiguration cfg;
  UPoly D = detail::short_disc(m.A(), m.B());
  UPoly rest = D;
  for (const Rat& r : rational_roots(D)) {
    Place p = Place::at(r);
    cfg.fibers.push_back(kodaira_at(m, p));
    while (divides(p.poly, rest)) rest = exact_div(rest, p.poly);
  }
  KodairaFiber inf = kodaira_at(m, Place::inf());
  if (inf.kind != FiberKind::I0) cfg.fibers.push_back(inf);
  if (rest.deg() > 0) {
    for (const auto& g : detail::gcd_free_basis({rest, m.A(), m.B()})) {
      if (!divides(g, rest)) continue;
      cfg.fibers.push_back(kodaira_at(m, Place{false, g}));
    }
  }
  for (const auto& f : cfg.fibers) cfg.euler_sum += f.euler() * f.place.degree();
  return cfg;
}

// ---------------------------------------------------------------------------
// Heights.

namespace detail {
inline int ord_rf(const RatFunc& f, const UPoly& g) {
  if (f.zero()) return 1000;
  return ord_or(g, f.num()) - ord_or(g, f.den());
}
inline int ord_inf_rf(const RatFunc& f) { return f.zero() ? 1000 : f.ord_inf(); }

/// Splits g until every factor meets each of the polys with a single order.
inline std::vector<UPoly> refine_place(const UPoly& g, const std::vector<UPoly>& polys) {
  std::vector<UPoly> out{g};
  for (const auto& f0 : polys) {
    if (f0.zero()) continue;
    std::vector<UPoly> next;
    std::vector<UPoly> work = out;
    while (!work.empty()) {
      UPoly h = work.back();
      work.pop_back();
      UPoly f = f0;
      bool split = false;
      while (true) {
        UPoly c = gcd(h, f);
        if (c.deg() <= 0) break;
        if (c.deg() < h.deg()) {
          work.push_back(normalize_unit(c));
          work.push_back(normalize_unit(exact_div(h, c)));
          split = true;
          break;
        }
        f = exact_div(f, h);
      }
      if (!split) next.push_back(h);
    }
    out = next;
  }
  return out;
}
}  // namespace detail

/// Valuation-based local correction at one place, for a point on a short
/// model minimal there: 0 on the identity component, i(n-i)/n on I_n,
/// 2B/3 or C/4 on additive fibers.
struct LocalValuations {
  int vx = 0, a = 0, b = 0, c = 0;
};

inline Rat local_correction(const KodairaFiber& f, const LocalValuations& v) {
  if (!f.reducible()) return 0;
  if (v.vx < 0 || v.a <= 0 || v.b <= 0) return 0;
  if (f.kind == FiberKind::In) {
    Rat n = f.n;
    Rat M = std::min<Rat>(Rat(v.b), n / 2);
    return M * (n - M) / n;
  }
  if (v.c >= 3 * v.b) return rat(2 * v.b, 3);
  return rat(v.c, 4);
}

/// Component of the fiber met by the point, named from its local data.
inline std::string component_name(const KodairaFiber& f, const LocalValuations& v) {
  if (!f.reducible() || v.vx < 0 || v.a <= 0 || v.b <= 0) return "identity";
  Rat c = local_correction(f, v);
  switch (f.kind) {
    case FiberKind::In: {
      Rat n = f.n;
      Rat M = std::min<Rat>(Rat(v.b), n / 2);
      return "a" + M.get_str();  // index i, up to i <-> n - i
    }
    case FiberKind::InStar:
      if (c == 1) return f.n == 0 ? "non-identity" : "near";
      return "far";
    default: return "non-identity";
  }
}

/// Contribution table: I_n components i <= j give i(n-j)/n; I_n*: 1 for the
/// near component, (n+4)/4 on the far diagonal, 1/2 or (n+2)/4 between far
/// components; III 1/2, III* 3/2, IV 2/3, IV* 4/3; II, II* 0.
inline Rat local_contribution(const KodairaFiber& f, int i, int j) {
  if (i == 0 || j == 0) return 0;
  switch (f.kind) {
    case FiberKind::In: {
      int lo = std::min(i, j), hi = std::max(i, j);
      return Rat(lo * (f.n - hi), f.n);
    }
    case FiberKind::InStar:
      // 1 = near, 2 and 3 = far
      if (i == 1 && j == 1) return 1;
      if (i == 1 || j == 1) return rat(1, 2);
      if (i == j) return rat(f.n + 4, 4);
      return rat(f.n + 2, 4);
    case FiberKind::III: return rat(1, 2);
    case FiberKind::IIIStar: return rat(3, 2);
    case FiberKind::IV: return i == j ? rat(2, 3) : rat(1, 3);
    case FiberKind::IVStar: return i == j ? rat(4, 3) : rat(2, 3);
    default: return 0;
  }
}

class HeightPairing {
 public:
  explicit HeightPairing(const MinimalModel& m) : m_(m), cfg_(fiber_configuration(m)) {
    for (const auto& f : cfg_.fibers)
      if (f.reducible()) bad_.push_back(f);
  }

  const FiberConfiguration& configuration() const { return cfg_; }
  const MinimalModel& model() const { return m_; }

  /// Intersection number with the zero section, point in minimal coordinates.
  Rat contact_with_zero(const SectionPoint& p) const {
    if (p.infinity) return 0;
    Rat total = 0;
    const UPoly& den = p.x.den();
    for (const auto& sf : detail::gcd_free_basis({den})) {
      int k = multiplicity(sf, den);
      if (k % 2) throw std::domain_error("odd pole order of x on a minimal model");
      total += Rat(k / 2 * sf.deg());
    }
    int excess = p.x.num().deg() - den.deg() - 2 * m_.w.chi;
    if (excess > 0) {
      if (excess % 2) throw std::domain_error("odd pole order of x at infinity");
      total += excess / 2;
    }
    return total;
  }

  struct LocalTerm {
    KodairaFiber fiber;
    std::string component;
    Rat contribution;
  };

  std::vector<LocalTerm> local_terms(const SectionPoint& p) const {
    std::vector<LocalTerm> out;
    if (p.infinity) return out;
    const UPoly& A = m_.A();
    const UPoly& B = m_.B();
    RatFunc X = p.x, Y = p.y;
    RatFunc fa = X * X * RatFunc(3) + RatFunc(A);
    RatFunc psi3 = X * X * X * X * RatFunc(3) + X * X * RatFunc(A.scaled(Rat(6))) + X * RatFunc(B.scaled(Rat(12))) -
                   RatFunc(A * A);
    for (const auto& f : bad_) {
      if (f.place.infinity) {
        int chi = m_.w.chi;
        LocalValuations v{detail::ord_inf_rf(X) + 2 * chi, detail::ord_inf_rf(fa) + 4 * chi,
                          detail::ord_inf_rf(Y) + 3 * chi, detail::ord_inf_rf(psi3) + 8 * chi};
        out.push_back({f, component_name(f, v), local_correction(f, v)});
        continue;
      }
      std::vector<UPoly> pieces{f.place.poly};
      if (f.place.degree() > 1)
        pieces = detail::refine_place(f.place.poly, {X.num(), X.den(), fa.num(), fa.den(), Y.num(), Y.den(),
                                                      psi3.num(), psi3.den()});
      for (const auto& g : pieces) {
        LocalValuations v{detail::ord_rf(X, g), detail::ord_rf(fa, g), detail::ord_rf(Y, g), detail::ord_rf(psi3, g)};
        KodairaFiber piece = f;
        piece.place.poly = g;
        Rat c = local_correction(f, v) * g.deg();
        out.push_back({piece, component_name(f, v), c});
      }
    }
    return out;
  }

  Rat correction_sum(const SectionPoint& p) const {
    Rat s = 0;
    for (const auto& t : local_terms(p)) s += t.contribution;
    return s;
  }

  /// Height of a point given in minimal coordinates.
  Rat height(const SectionPoint& p) const {
    if (p.infinity) return 0;
    return Rat(2 * m_.w.chi) + 2 * contact_with_zero(p) - correction_sum(p);
  }

  Rat pairing(const SectionPoint& p, const SectionPoint& q) const {
    SectionPoint s = add(m_.w, p, q);
    return (height(s) - height(p) - height(q)) / 2;
  }

  RatMatrix gram(const std::vector<SectionPoint>& basis) const {
    std::vector<Rat> h;
    for (const auto& p : basis) h.push_back(height(p));
    RatMatrix g(basis.size(), basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
      g(i, i) = h[i];
      for (size_t j = i + 1; j < basis.size(); ++j) {
        Rat v = (height(add(m_.w, basis[i], basis[j])) - h[i] - h[j]) / 2;
        g(i, j) = g(j, i) = v;
      }
    }
    return g;
  }

 private:
  MinimalModel m_;
  FiberConfiguration cfg_;
  std::vector<KodairaFiber> bad_;
};

// ---------------------------------------------------------------------------
// Torsion.

namespace detail {
inline std::vector<uint64_t> small_primes(uint64_t lo, uint64_t hi) {
  std::vector<uint64_t> out;
  for (uint64_t p = std::max<uint64_t>(lo, 2); p <= hi; ++p) {
    bool prime = true;
    for (uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(p);
  }
  return out;
}
inline std::optional<uint64_t> mod_p(const Rat& r, uint64_t p) {
  Int num = r.get_num(), den = r.get_den();
  Int dm = den % Int(static_cast<unsigned long>(p));
  if (dm == 0) return std::nullopt;
  Int inv;
  Int pz(static_cast<unsigned long>(p));
  mpz_invert(inv.get_mpz_t(), dm.get_mpz_t(), pz.get_mpz_t());
  Int v = (num % pz) * inv % pz;
  if (v < 0) v += pz;
  return v.get_ui();
}
/// #E(F_p) for y^2 = x^3 + a x + b.
inline uint64_t count_points(uint64_t a, uint64_t b, uint64_t p) {
  std::vector<int> sq(p, 0);
  for (uint64_t y = 0; y < p; ++y) sq[(y * y) % p] += 1;
  uint64_t n = 1;
  for (uint64_t x = 0; x < p; ++x) n += sq[(x * x % p * x + a * x + b) % p];
  return n;
}
inline UPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  UPoly acc;
  for (size_t i = 0; i < xs.size(); ++i) {
    UPoly term(ys[i]);
    for (size_t j = 0; j < xs.size(); ++j)
      if (j != i) term = (term * linear(xs[j])).scaled(1 / (xs[i] - xs[j]));
    acc += term;
  }
  return acc;
}
}  // namespace detail

/// Nonzero 2-torsion points of a short model: polynomial roots of x^3 + Ax + B.
inline std::vector<SectionPoint> two_torsion(const MinimalModel& m) {
  const UPoly &A = m.A(), &B = m.B();
  int bound = std::max(A.zero() ? 0 : (A.deg() + 1) / 2, B.zero() ? 0 : (B.deg() + 2) / 3);
  size_t need = static_cast<size_t>(bound) + 1;
  std::vector<Rat> xs;
  std::vector<std::vector<Rat>> roots;
  for (long t0 = 0; xs.size() < need && t0 < 400; ++t0) {
    Rat tv = (t0 % 2 ? Rat(-(t0 + 1) / 2) : Rat(t0 / 2)) + rat(1, 7);
    UPoly cubic(std::vector<Rat>{B.eval(tv), A.eval(tv), Rat(0), Rat(1)});
    xs.push_back(tv);
    roots.push_back(rational_roots(cubic));
    if (roots.back().empty()) return {};
  }
  std::vector<SectionPoint> out;
  std::vector<size_t> idx(need, 0);
  while (true) {
    std::vector<Rat> ys;
    for (size_t i = 0; i < need; ++i) ys.push_back(roots[i][idx[i]]);
    UPoly x = detail::interpolate(xs, ys);
    UPoly val = x * x * x + A * x + B;
    if (val.zero()) {
      SectionPoint p = SectionPoint::at(RatFunc(x), RatFunc(Rat(0)));
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    size_t k = 0;
    while (k < need && ++idx[k] == roots[k].size()) idx[k++] = 0;
    if (k == need) break;
  }
  return out;
}

/// Upper bound for the torsion order: gcd of #E(F_p) over good
/// specializations, since torsion injects into each reduction.
inline uint64_t torsion_bound(const MinimalModel& m, unsigned long long seed = 1) {
  SeededRng rng(seed);
  UPoly D = detail::short_disc(m.A(), m.B());
  uint64_t g = 0;
  auto primes = detail::small_primes(11, 200);
  for (int trial = 0; trial < 6; ++trial) {
    Rat t0 = Rat(rng.range(-50, 50)) + rat(1, trial + 2);
    if (D.eval(t0) == 0) continue;
    for (uint64_t p : primes) {
      auto a = detail::mod_p(m.A().eval(t0), p), b = detail::mod_p(m.B().eval(t0), p);
      auto d = detail::mod_p(D.eval(t0), p);
      if (!a || !b || !d || *d == 0) continue;
      g = std::gcd(g, detail::count_points(*a, *b, p));
      if (g == 1) return 1;
    }
  }
  return g;
}

struct TorsionInfo {
  int order = 1;
  std::string structure;  // "0", "Z/2", "Z/2+Z/2", ...
  std::vector<SectionPoint> points;  // nonzero torsion points found
  uint64_t bound = 0;
  bool certified = false;  // bound equals the order found
};

inline TorsionInfo torsion_subgroup(const MinimalModel& m) {
  TorsionInfo t;
  t.points = two_torsion(m);
  t.order = static_cast<int>(t.points.size()) + 1;
  t.structure = t.order == 1 ? "0" : t.order == 2 ? "Z/2" : "Z/2+Z/2";
  t.bound = torsion_bound(m);
  t.certified = t.bound == static_cast<uint64_t>(t.order);
  return t;
}

/// |disc(trivial lattice)| * det(MW) / |tors|^2.
inline Rat ns_discriminant(const FiberConfiguration& cfg, const Rat& mw_det, int torsion) {
  Rat d = 1;
  for (const auto& f : cfg.fibers) d *= pow(Rat(f.group_order()), f.place.degree());
  return d * mw_det / Rat(torsion * torsion);
}

}  // namespace kummer
