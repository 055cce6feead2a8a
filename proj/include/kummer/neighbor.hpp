#pragma once
// Two-neighbor steps. A new elliptic parameter u on a surface y^2 = cubic
// over Q(t) cuts out a genus one curve over Q(u); we reduce it to
// z^2 = quartic(t), take the Jacobian, and compare with a target model up to
// a Moebius change of the base and an admissible coordinate change.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kummer/catalog.hpp"
#include "kummer/elliptic.hpp"
#include "kummer/formula.hpp"
#include "kummer/matrix.hpp"
#include "kummer/mpoly.hpp"
#include "kummer/poly.hpp"
#include "kummer/ratfunc.hpp"

namespace kummer {

// ---------------------------------------------------------------------------
// Section spaces of O(F') and the ansatz for the new parameter.

enum class HorizontalKind { TwoO, OPlusP, OPlusT };

struct HorizontalCase {
  HorizontalKind kind = HorizontalKind::TwoO;
  SectionPoint P;  // the section for OPlusP, the 2-torsion point for OPlusT
};

/// A fiber component: place, id ("0" is the identity component) and the
/// multiplicity it carries in F'.
struct VerticalComponent {
  Place place;
  std::string component;
  int multiplicity = 0;
};

struct EllipticDivisorSpec {
  HorizontalCase horizontal;
  std::vector<VerticalComponent> vertical;
};

namespace detail {
inline MPoly tpoly(const UPoly& p, int nvars = 3) { return MPoly::from_upoly(p, nvars, 0); }
}  // namespace detail

/// Functions (1, s) spanning the sections of the horizontal part, as
/// fractions in (t, x, y).
inline std::pair<MFrac, MFrac> section_basis(const WeierstrassModel& W, const HorizontalCase& hc) {
  MPoly one(3, Rat(1)), x = MPoly::var(3, 1), y = MPoly::var(3, 2);
  switch (hc.kind) {
    case HorizontalKind::TwoO: return {MFrac(one), MFrac(x)};
    case HorizontalKind::OPlusT: {
      if (hc.P.infinity) throw std::invalid_argument("O + T needs a 2-torsion point");
      if (!hc.P.x.zero() || !hc.P.y.zero())
        throw std::invalid_argument("translate the model so that T = (0, 0) first");
      auto ord = torsion_order(W, hc.P);
      if (!ord || *ord != 2) throw std::invalid_argument("T is not 2-torsion");
      return {MFrac(one), MFrac(y, x)};
    }
    case HorizontalKind::OPlusP: {
      if (hc.P.infinity) throw std::invalid_argument("O + P needs an affine section");
      if (!on_curve(W, hc.P)) throw std::invalid_argument("P is not on the curve");
      using detail::tpoly;
      MFrac x0(tpoly(hc.P.x.num()), tpoly(hc.P.x.den())), y0(tpoly(hc.P.y.num()), tpoly(hc.P.y.den()));
      return {MFrac(one), (MFrac(y) + y0) / (MFrac(x) - x0)};
    }
  }
  throw std::logic_error("bad horizontal case");
}

/// Valuation along one component of a fiber, as a monomial valuation in local
/// coordinates T (t - t0, or s = 1/t in the chart at infinity) and
/// X = x - center(T): v(T) = wT, v(X) = wX.
struct ComponentValuation {
  std::string id;
  int wT = 1, wX = 0;
  UPoly center;  // in T
};

namespace detail {
/// e(t0 + T) as a polynomial in T.
inline UPoly shifted_poly(const UPoly& e, const Rat& t0) {
  return e.compose(UPoly(std::vector<Rat>{t0, Rat(1)}));
}

/// s^w e(1/s).
inline UPoly chart_poly(const UPoly& e, int w) {
  if (e.deg() > w) throw std::domain_error("root exceeds the degree bound of the chart");
  std::vector<Rat> c(static_cast<size_t>(w) + 1, Rat(0));
  for (int k = 0; k <= e.deg(); ++k) c[static_cast<size_t>(w - k)] = e.c[static_cast<size_t>(k)];
  return UPoly(c);
}

inline int ord0(const UPoly& p) { return p.zero() ? 1000 : p.low_deg(); }

inline Rat binom(int n, int k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(r);
}
}  // namespace detail

/// Components of the fiber at T = 0 of y^2 = prod (x - e_i(T)); handles the
/// smooth, I2 and I0* cases, which is what the worked derivations need.
/// Far components of I0* are "far:i" after the root they meet.
inline std::vector<ComponentValuation> fiber_components(const std::array<UPoly, 3>& e) {
  std::vector<ComponentValuation> out{{"0", 1, 0, UPoly()}};
  int d01 = detail::ord0(e[0] - e[1]), d12 = detail::ord0(e[1] - e[2]), d02 = detail::ord0(e[0] - e[2]);
  int touching = (d01 > 0) + (d12 > 0) + (d02 > 0);
  if (touching == 0) return out;
  if (touching == 1) {
    int k = d01 > 0 ? 0 : d12 > 0 ? 1 : 0;
    int d = std::max({d01, d12, d02});
    if (d != 1) throw std::domain_error("I_n with n > 2 is not handled by the component model");
    out.push_back({"node", 1, 1, UPoly(e[static_cast<size_t>(k)].coeff(0))});
    return out;
  }
  if (d01 != 1 || d12 != 1 || d02 != 1) throw std::domain_error("fiber is not of type I0*");
  out.push_back({"central", 2, 2, UPoly(e[0].coeff(0))});
  for (int i = 0; i < 3; ++i) out.push_back({"far:" + std::to_string(i), 1, 2, e[static_cast<size_t>(i)]});
  return out;
}

/// The three roots e_i(t) of the cubic in x, in the model's own coordinates.
inline std::array<UPoly, 3> two_torsion_roots(const WeierstrassModel& W) {
  if (!W.a1().zero() || !W.a3().zero()) throw std::domain_error("model must have a1 = a3 = 0");
  MinimalModel m = minimalize(W);
  auto pts = two_torsion(m);
  if (pts.size() != 3) throw std::domain_error("full 2-torsion is required");
  std::array<UPoly, 3> e;
  for (size_t i = 0; i < 3; ++i) {
    RatFunc x = pts[i].x * RatFunc(m.u * m.u) - RatFunc(m.r);
    if (!x.is_poly()) throw std::domain_error("2-torsion root is not polynomial");
    e[i] = x.num();
  }
  std::sort(e.begin(), e.end(), [](const UPoly& p, const UPoly& q) {
    return poly_to_string(p) < poly_to_string(q);
  });
  return e;
}

struct DerivedParameter {
  Rat c;              // coefficient of x
  UPoly p;            // polynomial part
  UPoly den;          // product of place polynomials
  size_t unknowns = 0;
  size_t rank = 0;    // of the homogeneous vanishing-order system
  size_t residual = 0;  // solution dimension modulo constants
  MFrac formula() const {
    MPoly x = MPoly::var(3, 1);
    return MFrac(x.scaled(c) + detail::tpoly(p), detail::tpoly(den));
  }
};

/// Solves for w = (c x + p(t)) / D(t) with poles bounded by spec (TwoO case).
/// D comes from the identity components at finite places; the degree of p
/// from the identity component at infinity. The constant solution w = 1 is
/// removed by zeroing the coefficient of t^kill in p (default deg D), and
/// the scaling by c = 1.
inline DerivedParameter derive_parameter(const WeierstrassModel& W, const EllipticDivisorSpec& spec, int kill = -1) {
  if (spec.horizontal.kind != HorizontalKind::TwoO)
    throw std::invalid_argument("derive_parameter handles the 2O case");
  const int chi = W.chi;
  auto e = two_torsion_roots(W);

  auto allowed = [&](const Place& pl, const std::string& id) {
    int m = 0;
    for (const auto& v : spec.vertical)
      if (v.place == pl && v.component == id) m += v.multiplicity;
    return m;
  };
  UPoly D(Rat(1));
  std::vector<Place> places;
  for (const auto& v : spec.vertical) {
    if (v.place.infinity) continue;
    if (!v.place.rational()) throw std::invalid_argument("places must be rational");
    if (std::find(places.begin(), places.end(), v.place) == places.end()) places.push_back(v.place);
    if (v.component == "0") D *= pow(v.place.poly, static_cast<unsigned>(v.multiplicity));
  }
  places.push_back(Place::inf());
  const int dD = D.deg();
  const int d = dD + allowed(Place::inf(), "0");
  if (d > 2 * chi) throw std::invalid_argument("identity multiplicity at infinity exceeds the chart");
  const size_t n = static_cast<size_t>(d) + 2;  // c, a_0..a_d

  std::vector<std::vector<Rat>> rows;
  for (const auto& pl : places) {
    std::array<UPoly, 3> loc;
    Rat t0 = 0;
    if (pl.infinity) {
      for (size_t i = 0; i < 3; ++i) loc[i] = detail::chart_poly(e[i], 2 * chi);
    } else {
      t0 = pl.position();
      for (size_t i = 0; i < 3; ++i) loc[i] = detail::shifted_poly(e[i], t0);
    }
    auto comps = fiber_components(loc);
    for (const auto& v : spec.vertical) {
      if (!(v.place == pl)) continue;
      bool known = std::any_of(comps.begin(), comps.end(), [&](const auto& c) { return c.id == v.component; });
      if (!known) throw std::invalid_argument("no component " + v.component + " at " + pl.to_string());
    }
    for (const auto& comp : comps) {
      int m = allowed(pl, comp.id);
      int need = pl.infinity ? (2 * chi - dD) * comp.wT - m : comp.wT * detail::ord_or(pl.poly, D) - m;
      if (need <= 0) continue;
      if (comp.wX < need) {
        std::vector<Rat> r(n, Rat(0));
        r[0] = 1;
        rows.push_back(r);
      }
      for (int i = 0; comp.wT * i < need; ++i) {
        std::vector<Rat> r(n, Rat(0));
        r[0] = comp.center.coeff(static_cast<size_t>(i));
        for (int k = 0; k <= d; ++k) {
          Rat coef = 0;
          if (pl.infinity) {
            if (i == 2 * chi - k) coef = 1;
          } else if (k >= i) {
            coef = detail::binom(k, i) * pow(t0, k - i);
          }
          r[static_cast<size_t>(k) + 1] = coef;
        }
        rows.push_back(r);
      }
    }
  }
  RatMatrix M(rows.size(), n);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < n; ++j) M(i, j) = rows[i][j];
  DerivedParameter out;
  out.den = D;
  out.unknowns = n;
  out.rank = rows.empty() ? 0 : rank(M);
  size_t dim = n - out.rank;
  out.residual = dim == 0 ? 0 : dim - 1;
  if (dim != 2)
    throw std::domain_error("vanishing conditions leave a " + std::to_string(dim) +
                            "-dimensional space (rank " + std::to_string(out.rank) + " of " + std::to_string(n) +
                            "); expected 1 and x-type solution");

  // Normalization rows: c = 1 and a_kill = 0.
  if (kill < 0) kill = dD;
  if (kill > d || is_zero(D.coeff(static_cast<size_t>(kill))))
    throw std::invalid_argument("normalization index does not remove the constant solution");
  RatMatrix N(rows.size() + 2, n);
  std::vector<Rat> b(rows.size() + 2, Rat(0));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < n; ++j) N(i, j) = rows[i][j];
  N(rows.size(), 0) = 1;
  b[rows.size()] = 1;
  N(rows.size() + 1, static_cast<size_t>(kill) + 1) = 1;
  auto sol = solve_linear(N, b);
  if (!sol.consistent || !sol.kernel.empty())
    throw std::domain_error("normalization does not single out a parameter (c = 0 forced?)");
  out.c = sol.particular[0];
  std::vector<Rat> pc(sol.particular.begin() + 1, sol.particular.end());
  out.p = UPoly(pc);
  return out;
}

// ---------------------------------------------------------------------------
// Reduction to z^2 = quartic(t) over Q(u).

struct QuarticModel {
  BPoly q;         // outer variable t, coefficients in Q[u]
  BPoly absorbed;  // square root of the removed square factor
  int degree() const { return q.deg(); }
  UPoly coeff(int i) const { return q.coeff(static_cast<size_t>(i)); }
};

namespace detail {
// Variables of the elimination: u, t, x, y.
inline MPoly lift4(const MPoly& m3) {
  MPoly out(4);
  for (const auto& [e, c] : m3.terms) out.add_term({0, e[0], e[1], e[2]}, c);
  return out;
}
inline MPoly t4(const UPoly& p) { return MPoly::from_upoly(p, 4, 1); }

/// Keeps the odd part of the square-free decomposition in t (and in u for
/// the content): q = kept * absorbed^2.
inline QuarticModel absorb_squares(const BPoly& F) {
  if (F.zero()) throw std::domain_error("the new parameter is constant on the surface");
  UPoly cont = content(F);
  BPoly P = F;
  for (auto& c : P.c) c = exact_div(c, cont);
  auto cs = squarefree_part(cont);
  QuarticModel out;
  BPoly kept(UPoly(cs.c) * cs.s), root(cs.r);
  if (P.deg() > 0) {
    auto fs = squarefree_factors(P);
    BPoly prod(UPoly(Rat(1)));
    for (size_t i = 0; i < fs.size(); ++i) {
      size_t mlt = i + 1;
      prod *= pow(fs[i], static_cast<unsigned>(mlt));
      if (mlt % 2 == 1) kept *= fs[i];
      for (size_t k = 0; k < mlt / 2; ++k) root *= fs[i];
    }
    BPoly unit = exact_div(P, prod);
    if (unit.deg() != 0) throw std::logic_error("square-free decomposition lost a factor");
    kept *= unit;
  } else {
    kept *= P;
  }
  out.q = kept;
  out.absorbed = root;
  return out;
}
}  // namespace detail

/// Substitutes phi(t, x, y) = u into W and eliminates x and y: the fiber
/// over u is birational to z^2 = Delta(u, t).
inline BPoly parameter_discriminant(const WeierstrassModel& W, const MFrac& phi) {
  using detail::t4;
  MPoly u = MPoly::var(4, 0), x = MPoly::var(4, 2), y = MPoly::var(4, 3);
  MPoly num = detail::lift4(phi.num), den = detail::lift4(phi.den);
  // y^2 = f(x) after completing the square.
  std::array<UPoly, 4> f{W.a6(), W.a4(), W.a2(), UPoly(Rat(1))};
  if (!W.a1().zero() || !W.a3().zero()) {
    MPoly shift = (t4(W.a1()) * x + t4(W.a3())).scaled(rat(1, 2));
    num = num.substitute(3, y - shift);
    den = den.substitute(3, y - shift);
    UPoly a1 = W.a1(), a3 = W.a3();
    f[2] += (a1 * a1).scaled(rat(1, 4));
    f[1] += (a1 * a3).scaled(rat(1, 2));
    f[0] += (a3 * a3).scaled(rat(1, 4));
  }
  MPoly fx = t4(f[0]) + t4(f[1]) * x + t4(f[2]) * x * x + x * x * x;
  MPoly H = u * den - num;
  auto hy = H.coeffs_in(3);
  MPoly H0(4), H1(4), fpow(4, Rat(1));
  for (size_t k = 0; k < hy.size(); ++k) {
    if (k % 2 == 0) H0 += hy[k] * fpow;
    else H1 += hy[k] * fpow;
    if (k % 2 == 1) fpow *= fx;
  }

  MPoly Delta(4);
  if (H1.zero()) {
    auto hx = H0.coeffs_in(2);
    if (hx.size() != 2) throw std::domain_error("parameter without y must be linear in x");
    const MPoly &h0 = hx[0], &h1 = hx[1];
    // h1^4 f(-h0/h1)
    Delta = h1 * (-(h0 * h0 * h0) + t4(f[2]) * h0 * h0 * h1 - t4(f[1]) * h0 * h1 * h1 + t4(f[0]) * h1 * h1 * h1);
  } else {
    MPoly R = H0 * H0 - H1 * H1 * fx;
    // Drop the factor common to all u-coefficients: it does not involve the
    // new parameter (the x - x0 or x factor, or pure t factors).
    using TX = Poly<UPoly>;  // x over Q[t]
    auto RU = nest<Poly<TX>>(R, {0, 2, 1});
    TX g = content(RU);
    if (!g.zero())
      for (auto& c : RU.c) c = exact_div(c, g);
    MPoly R2 = unnest(RU, 4, {0, 2, 1});
    auto rx = R2.coeffs_in(2);
    if (rx.size() != 3)
      throw std::domain_error("after removing the fixed factor the equation has degree " +
                              std::to_string(static_cast<int>(rx.size()) - 1) + " in x, expected 2");
    Delta = rx[1] * rx[1] - (rx[2] * rx[0]).scaled(Rat(4));
  }
  return nest<BPoly>(Delta, {1, 0});
}

/// parameter_discriminant with square factors absorbed into z^2.
inline QuarticModel apply_parameter(const WeierstrassModel& W, const MFrac& phi) {
  QuarticModel q = detail::absorb_squares(parameter_discriminant(W, phi));
  if (q.degree() < 3 || q.degree() > 4)
    throw std::domain_error("reduced model has degree " + std::to_string(q.degree()) +
                            " in t: the parameter does not give a genus one fibration");
  return q;
}

/// Jacobian of z^2 = q(t) from the classical invariants:
/// Y^2 = X^3 - 27 I X - 27 J over Q[u].
inline WeierstrassModel quartic_jacobian(const QuarticModel& q) {
  UPoly a = q.coeff(4), b = q.coeff(3), c = q.coeff(2), d = q.coeff(1), e = q.coeff(0);
  UPoly I = (a * e).scaled(Rat(12)) - (b * d).scaled(Rat(3)) + c * c;
  UPoly J = (a * c * e).scaled(Rat(72)) + (b * c * d).scaled(Rat(9)) - (a * d * d).scaled(Rat(27)) -
            (e * b * b).scaled(Rat(27)) - (c * c * c).scaled(Rat(2));
  return WeierstrassModel::short_form(I.scaled(Rat(-27)), J.scaled(Rat(-27)));
}

// ---------------------------------------------------------------------------
// Quartic to cubic with a rational point.

struct QuarticPoint {
  bool infinity = false;
  RatFunc t, z;
};

/// Birational map from z^2 = q(t) (coefficients in Q(u)) to a Weierstrass
/// model with the supplied point sent to O.
struct QuarticConversion {
  WeierstrassModel w;  // over Q[u]
  bool flipped = false;
  RatFunc t0;          // translation after the flip
  RatFunc A, B, C, D;
  RatFunc lambda;      // X = lambda^2 U, Y = lambda^3 V

  /// (t, z) to (X, Y); nullopt where the map is not defined by the formula.
  std::optional<SectionPoint> forward(const QuarticPoint& p) const {
    RatFunc tau, z;
    if (flipped) {
      if (p.infinity || p.t.zero()) return std::nullopt;
      tau = p.t.inverse() - t0;
      z = p.z / (p.t * p.t);
    } else {
      if (p.infinity) return std::nullopt;
      tau = p.t - t0;
      z = p.z;
    }
    if (tau.zero()) {
      if (z == A) return SectionPoint::zero();
      return std::nullopt;
    }
    RatFunc V = (z - A - B * tau - C * tau * tau) / (D * tau * tau * tau);
    RatFunc U = tau * V, l2 = lambda * lambda;
    return SectionPoint::at(l2 * U, l2 * lambda * V);
  }
  std::optional<QuarticPoint> inverse(const SectionPoint& P) const {
    if (P.infinity) return std::nullopt;
    RatFunc l2 = lambda * lambda;
    RatFunc U = P.x / l2, V = P.y / (l2 * lambda);
    if (V.zero()) return std::nullopt;
    RatFunc tau = U / V;
    RatFunc z = (A * V * V + B * U * V + C * U * U + D * U * U * U) / (V * V);
    RatFunc xi = tau + t0;
    if (!flipped) return QuarticPoint{false, xi, z};
    if (xi.zero()) return QuarticPoint{true, RatFunc(), z};
    return QuarticPoint{false, xi.inverse(), z * xi.inverse() * xi.inverse()};
  }
};

namespace detail {
inline std::optional<RatFunc> rf_sqrt(const RatFunc& f) {
  if (f.zero()) return RatFunc();
  auto r = poly_sqrt(f.num() * f.den());
  if (!r) return std::nullopt;
  return RatFunc(*r) / RatFunc(f.den());
}
inline UPoly lcm(const UPoly& a, const UPoly& b) { return exact_div(a * b, gcd(a, b)); }
}  // namespace detail

inline QuarticConversion quartic_to_weierstrass(const QuarticModel& q, const QuarticPoint& pt) {
  std::array<RatFunc, 5> a;  // a[i] multiplies t^i
  for (int i = 0; i <= 4; ++i) a[static_cast<size_t>(i)] = RatFunc(q.coeff(i));
  QuarticConversion cv;
  RatFunc beta;
  if (pt.infinity) {
    auto alpha = detail::rf_sqrt(a[4]);
    if (!alpha) throw std::domain_error("point at infinity needs a square leading coefficient");
    std::reverse(a.begin(), a.end());
    cv.flipped = true;
    cv.t0 = RatFunc();
    beta = *alpha;
  } else {
    cv.t0 = pt.t;
    beta = pt.z;
  }
  // Translate the point to t = 0.
  std::array<RatFunc, 5> s;
  {
    RatFunc h = cv.t0;
    for (int i = 0; i <= 4; ++i) {
      RatFunc binom(Rat(1)), hp(Rat(1));
      for (int j = i; j >= 0; --j) {
        s[static_cast<size_t>(j)] = s[static_cast<size_t>(j)] + a[static_cast<size_t>(i)] * RatFunc(detail::binom(i, j)) * hp;
        hp = hp * h;
      }
    }
  }
  if (!(s[0] == beta * beta)) throw std::invalid_argument("point is not on the quartic");
  if (beta.zero()) throw std::domain_error("point has z = 0: supply a point with nonzero ordinate");
  cv.A = beta;
  cv.B = s[1] / (RatFunc(2) * beta);
  cv.C = (RatFunc(4) * s[2] * beta * beta - s[1] * s[1]) / (RatFunc(8) * beta * beta * beta);
  cv.D = RatFunc(-2) * beta;
  RatFunc fb = RatFunc(4) * beta * beta;
  RatFunc b1 = cv.B / beta, b2 = RatFunc() - cv.C / beta;
  RatFunc b3 = (s[3] - RatFunc(2) * cv.B * cv.C) / fb, b4 = (cv.C * cv.C - s[4]) / fb;
  UPoly L = detail::lcm(detail::lcm(b1.den(), b2.den()), detail::lcm(b3.den(), b4.den()));
  cv.lambda = RatFunc(L);
  auto poly = [](const RatFunc& r) {
    if (!r.is_poly()) throw std::logic_error("scaling left a denominator");
    return r.num();
  };
  RatFunc l = cv.lambda;
  cv.w.a[0] = poly(l * b1);
  cv.w.a[1] = poly(l * l * b2);
  cv.w.a[2] = poly(l * l * l * b3);
  cv.w.a[3] = poly(l * l * l * l * b4);
  cv.w.a[4] = UPoly();
  return cv;
}

/// Cubic model from a rational root t0 of q (constant in u): t = t0 + 1/s.
inline WeierstrassModel quartic_root_to_weierstrass(const QuarticModel& q, const Rat& t0) {
  BPoly shift(std::vector<UPoly>{UPoly(t0), UPoly(Rat(1))});
  BPoly r = q.q.compose(shift);
  if (!r.coeff(0).zero()) throw std::invalid_argument("t0 is not a root");
  // s^4 q(t0 + 1/s) = k1 s^3 + k2 s^2 + k3 s + k4 with k_i = coeff of T^i.
  UPoly k3 = r.coeff(1), k2 = r.coeff(2), k1 = r.coeff(3), k0 = r.coeff(4);
  if (k3.zero()) throw std::domain_error("t0 is a multiple root");
  WeierstrassModel w;
  w.a[1] = k2;
  w.a[3] = k1 * k3;
  w.a[4] = k0 * k3 * k3;
  return w;
}

/// Bounded search for a point with t constant: q(t0) must be a square in
/// Q[u]. Infinity is tried first.
inline std::optional<QuarticPoint> find_quartic_point(const QuarticModel& q, long bound = 50) {
  if (auto r = poly_sqrt(q.coeff(4)); r && q.degree() == 4) return QuarticPoint{true, RatFunc(), RatFunc(*r)};
  Rat probe = rat(3, 11);
  for (long den = 1; den <= bound; ++den)
    for (long num = -bound; num <= bound; ++num) {
      if (std::gcd(num, den) != 1) continue;
      Rat t0 = rat(num, den);
      UPoly v;
      for (int i = q.degree(); i >= 0; --i) v = v.scaled(t0) + q.coeff(i);
      if (v.zero() || !is_square(v.eval(probe))) continue;
      if (auto r = poly_sqrt(v)) return QuarticPoint{false, RatFunc(t0), RatFunc(*r)};
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Comparison of two elliptic surfaces.

struct P1Point {
  Rat x;
  bool infinity = false;
  friend bool operator==(const P1Point& a, const P1Point& b) {
    return a.infinity == b.infinity && (a.infinity || a.x == b.x);
  }
};

struct SurfaceMatch {
  bool same = false;
  std::array<Rat, 4> mobius{1, 0, 0, 1};  // t1 = (p t2 + q) / (r t2 + s)
  std::string detail;
};

namespace detail {
using Tag = std::array<int, 3>;  // (v(A), v(B), v(Delta))

inline Tag tag_at(const MinimalModel& m, const P1Point& p) {
  UPoly D = short_disc(m.A(), m.B());
  int chi = m.w.chi;
  if (p.infinity) {
    auto vinf = [](const UPoly& f, int w) { return f.zero() ? 1000 : w - f.deg(); };
    return {vinf(m.A(), 4 * chi), vinf(m.B(), 6 * chi), vinf(D, 12 * chi)};
  }
  UPoly l = linear(p.x);
  return {ord_or(l, m.A()), ord_or(l, m.B()), ord_or(l, D)};
}

inline std::vector<std::pair<P1Point, Tag>> special_places(const MinimalModel& m) {
  std::vector<Rat> xs;
  for (const UPoly* f : {&m.A(), &m.B()})
    for (const Rat& r : rational_roots(*f)) xs.push_back(r);
  for (const Rat& r : rational_roots(short_disc(m.A(), m.B()))) xs.push_back(r);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<std::pair<P1Point, Tag>> out;
  for (const Rat& r : xs) out.push_back({P1Point{r}, tag_at(m, P1Point{r})});
  Tag ti = tag_at(m, P1Point{Rat(0), true});
  if (ti != Tag{0, 0, 0}) out.push_back({P1Point{Rat(0), true}, ti});
  return out;
}

using Mat2 = std::array<Rat, 4>;  // (p, q, r, s)
inline Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}
inline Mat2 adj(const Mat2& a) { return {a[3], -a[1], -a[2], a[0]}; }
inline std::array<Rat, 2> vec(const P1Point& p) { return p.infinity ? std::array<Rat, 2>{1, 0} : std::array<Rat, 2>{p.x, 1}; }

/// Matrix sending infinity, 0, 1 to p1, p2, p3.
inline std::optional<Mat2> frame(const P1Point& p1, const P1Point& p2, const P1Point& p3) {
  auto v1 = vec(p1), v2 = vec(p2), v3 = vec(p3);
  // beta v1 + alpha v2 = v3
  Rat d = v1[0] * v2[1] - v1[1] * v2[0];
  if (d == 0) return std::nullopt;
  Rat beta = (v3[0] * v2[1] - v3[1] * v2[0]) / d, alpha = (v1[0] * v3[1] - v1[1] * v3[0]) / d;
  if (alpha == 0 || beta == 0) return std::nullopt;
  return Mat2{beta * v1[0], alpha * v2[0], beta * v1[1], alpha * v2[1]};
}

/// f((p t + q)/(r t + s)) (r t + s)^w for deg f <= w.
inline UPoly homogeneous_pullback(const UPoly& f, int w, const Mat2& m) {
  UPoly num(std::vector<Rat>{m[1], m[0]}), den(std::vector<Rat>{m[3], m[2]});
  UPoly out;
  for (int i = 0; i <= f.deg(); ++i) out += (pow(num, static_cast<unsigned>(i)) * pow(den, static_cast<unsigned>(w - i))).scaled(f.c[static_cast<size_t>(i)]);
  return out;
}

inline std::optional<Rat> value_at(const RatFunc& f, const P1Point& p) {
  if (p.infinity) {
    int dn = f.num().deg(), dd = f.den().deg();
    if (f.zero() || dn < dd) return Rat(0);
    if (dn > dd) return std::nullopt;
    return f.num().lead() / f.den().lead();
  }
  Rat dv = f.den().eval(p.x);
  if (dv == 0) return std::nullopt;
  return f.num().eval(p.x) / dv;
}
}  // namespace detail

/// W1 and W2 define the same surface if j1(mu(t)) = j2(t) for a Moebius mu
/// and the residual twist is a square. The search pins three places of W2
/// (j = 0, 1728 or singular fibers, else generic values) to candidate places
/// of W1 with the same local data.
inline SurfaceMatch same_surface(const MinimalModel& W1, const MinimalModel& W2) {
  SurfaceMatch res;
  if (W1.A().zero() || W1.B().zero() || W2.A().zero() || W2.B().zero())
    throw std::domain_error("j = 0 or 1728 identically is not supported");
  if (W1.w.chi != W2.w.chi) {
    res.detail = "different Euler characteristic";
    return res;
  }
  const int chi = W1.w.chi;
  RatFunc j1 = invariants(W1.w).j, j2 = invariants(W2.w).j;
  if (std::max(j1.num().deg(), j1.den().deg()) != std::max(j2.num().deg(), j2.den().deg())) {
    res.detail = "j-invariants have different degrees";
    return res;
  }
  auto s1 = detail::special_places(W1), s2 = detail::special_places(W2);
  {
    std::vector<detail::Tag> t1, t2;
    for (auto& [p, t] : s1) t1.push_back(t);
    for (auto& [p, t] : s2) t2.push_back(t);
    std::sort(t1.begin(), t1.end());
    std::sort(t2.begin(), t2.end());
    if (t1 != t2) {
      res.detail = "rational special places differ";
      return res;
    }
  }
  // Anchors: rarest tags first.
  std::vector<std::pair<P1Point, std::vector<P1Point>>> anchors;
  {
    std::vector<std::pair<size_t, size_t>> order;  // (count, index)
    for (size_t i = 0; i < s2.size(); ++i) {
      size_t cnt = 0;
      for (auto& [p, t] : s2)
        if (t == s2[i].second) ++cnt;
      order.push_back({cnt, i});
    }
    std::sort(order.begin(), order.end());
    for (auto [cnt, i] : order) {
      if (anchors.size() == 3) break;
      std::vector<P1Point> cands;
      for (auto& [p, t] : s1)
        if (t == s2[i].second) cands.push_back(p);
      anchors.push_back({s2[i].first, cands});
    }
  }
  for (long k = 0; anchors.size() < 3 && k < 200; ++k) {
    P1Point p{Rat(k % 2 ? -(k + 1) / 2 : k / 2) + rat(1, 3)};
    bool used = std::any_of(anchors.begin(), anchors.end(), [&](const auto& a) { return a.first == p; });
    auto v = detail::value_at(j2, p);
    if (used || !v) continue;
    std::vector<P1Point> cands;
    for (const Rat& r : rational_roots(j1.num() - j1.den().scaled(*v))) cands.push_back(P1Point{r});
    if (auto vi = detail::value_at(j1, P1Point{Rat(0), true}); vi && *vi == *v) cands.push_back(P1Point{Rat(0), true});
    anchors.push_back({p, cands});
  }
  if (anchors.size() < 3) {
    res.detail = "no anchors";
    return res;
  }
  auto Mp = detail::frame(anchors[0].first, anchors[1].first, anchors[2].first);
  if (!Mp) throw std::logic_error("anchors are not distinct");
  SeededRng rng(17);
  std::vector<Rat> probes;
  for (int i = 0; i < 4; ++i) probes.push_back(rng.rational(97));

  auto try_map = [&](const detail::Mat2& mu) -> bool {
    // quick numerical filter
    for (const Rat& x : probes) {
      Rat dd = mu[2] * x + mu[3];
      if (dd == 0) continue;
      auto a = detail::value_at(j1, P1Point{(mu[0] * x + mu[1]) / dd});
      auto b = detail::value_at(j2, P1Point{x});
      if (a && b && *a != *b) return false;
    }
    UPoly A1 = detail::homogeneous_pullback(W1.A(), 4 * chi, mu), B1 = detail::homogeneous_pullback(W1.B(), 6 * chi, mu);
    // j1(mu) = j2 exactly: A1^3 B2^2 = A2^3 B1^2 up to the common factor.
    RatFunc jm = RatFunc(A1 * A1 * A1) / RatFunc(detail::short_disc(A1, B1));
    RatFunc jt = RatFunc(W2.A() * W2.A() * W2.A()) / RatFunc(detail::short_disc(W2.A(), W2.B()));
    if (!(jm == jt)) return false;
    RatFunc l2 = RatFunc(W2.B() * A1) / RatFunc(W2.A() * B1);
    return detail::rf_sqrt(l2).has_value();
  };

  const auto &c0 = anchors[0].second, &c1 = anchors[1].second, &c2 = anchors[2].second;
  size_t tried = 0;
  for (const auto& q0 : c0)
    for (const auto& q1 : c1) {
      if (q1 == q0) continue;
      for (const auto& q2 : c2) {
        if (q2 == q0 || q2 == q1) continue;
        auto Mq = detail::frame(q0, q1, q2);
        if (!Mq) continue;
        detail::Mat2 mu = detail::mul(*Mq, detail::adj(*Mp));
        ++tried;
        if (try_map(mu)) {
          Rat k = mu[3] != 0 ? mu[3] : mu[2];
          for (auto& v : mu) v /= k;
          res.same = true;
          res.mobius = mu;
          res.detail = "matched after " + std::to_string(tried) + " candidate maps";
          return res;
        }
      }
    }
  res.detail = "no Moebius map among " + std::to_string(tried) + " candidates";
  return res;
}

// ---------------------------------------------------------------------------
// Catalog edges.

struct StepReport {
  std::string source, target;
  bool pass = false;
  int quartic_degree = 0;
  std::string config_derived, config_target;
  std::string j_derived, j_target;
  std::array<Rat, 4> mobius{1, 0, 0, 1};
  bool used_erratum = false;
  std::string printed_failure;
  std::string detail;
};

inline std::string mobius_to_string(const std::array<Rat, 4>& m) {
  return "(" + to_string(m[0]) + "*t + " + to_string(m[1]) + ")/(" + to_string(m[2]) + "*t + " + to_string(m[3]) + ")";
}

/// Applies fibration n's printed parameter to fibration m's model and
/// compares the Jacobian with n's equation. A catalog erratum replaces the
/// printed parameter only after the printed one has been tried; the failure
/// is kept in the report.
inline StepReport run_catalog_step(const std::vector<FibrationRecord>& cat, const std::string& m, const std::string& n,
                                   const ParamEnv& env) {
  StepReport rep;
  rep.source = m;
  rep.target = n;
  const auto& src = find_fibration(cat, m);
  const auto& tgt = find_fibration(cat, n);
  if (tgt.parameter.empty()) throw CatalogError("fibration " + n + " has no parameter");
  WeierstrassModel W = model_of(src, env);
  auto reduce = [&](const std::string& text) {
    return apply_parameter(W, eval_formula_poly(parse_formula(text), {"t", "x", "y"}, env));
  };
  std::optional<QuarticModel> q;
  try {
    q = reduce(tgt.parameter);
  } catch (const std::domain_error& e) {
    if (tgt.parameter_erratum.empty()) {
      rep.detail = e.what();
      return rep;
    }
    rep.printed_failure = e.what();
  }
  if (!q) {
    rep.used_erratum = true;
    q = reduce(tgt.parameter_erratum);
  }
  rep.quartic_degree = q->degree();
  MinimalModel derived = minimalize(quartic_jacobian(*q));
  MinimalModel target = minimalize(model_of(tgt, env));
  auto cd = fiber_configuration(derived), ct = fiber_configuration(target);
  rep.config_derived = cd.root_type();
  rep.config_target = ct.root_type();
  auto jstr = [](const MinimalModel& mm) {
    RatFunc j = invariants(mm.w).j;
    return "(" + poly_to_string(j.num()) + ")/(" + poly_to_string(j.den()) + ")";
  };
  if (cd.euler_sum != 24 || rep.config_derived != rep.config_target) {
    rep.detail = "fiber configurations differ";
    rep.j_derived = jstr(derived);
    rep.j_target = jstr(target);
    return rep;
  }
  SurfaceMatch sm = same_surface(derived, target);
  rep.pass = sm.same;
  rep.mobius = sm.mobius;
  rep.detail = sm.detail;
  if (!sm.same) {
    rep.j_derived = jstr(derived);
    rep.j_target = jstr(target);
  }
  return rep;
}

/// Every (source, target) pair recorded in the catalog.
inline std::vector<std::pair<std::string, std::string>> catalog_edges(const std::vector<FibrationRecord>& cat) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& r : cat)
    if (!r.is_variant() && !r.source.empty() && !r.parameter.empty()) out.push_back({r.source, r.id});
  return out;
}

/// The divisor of fibration 2 on fibration 1: O and the central component at
/// infinity twice, the two far components met by T3, T4, T5 other than `skip`'s,
/// and the identity components over t = 0 and t = a.
inline EllipticDivisorSpec fibration_two_on_one(const FibrationRecord& f1, const WeierstrassModel& W, const ParamEnv& env,
                                                const std::string& skip = "T5") {
  auto e = two_torsion_roots(W);
  EllipticDivisorSpec spec;
  spec.vertical.push_back({Place::inf(), "0", 2});
  spec.vertical.push_back({Place::inf(), "central", 2});
  for (const std::string name : {"T3", "T4", "T5"}) {
    if (name == skip) continue;
    UPoly x = eval_formula_ratfunc(f1.section(name).x, env).num();
    for (size_t i = 0; i < 3; ++i)
      if (e[i] == x) spec.vertical.push_back({Place::inf(), "far:" + std::to_string(i), 1});
  }
  spec.vertical.push_back({Place::at(0), "0", 1});
  spec.vertical.push_back({Place::at(env.at("a")), "0", 1});
  return spec;
}

}  // namespace kummer
