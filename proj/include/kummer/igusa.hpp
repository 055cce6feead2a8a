#pragma once
// Igusa-Clebsch invariants of binary sextics: closed forms in the elementary
// symmetric functions of (a, b, c), root partition sums, covariance under
// GL2, and the (alpha, beta, gamma, mu) normalization.

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "kummer/kummer_quartic.hpp"
#include "kummer/poly.hpp"
#include "kummer/rational.hpp"

namespace kummer {

struct ICInvariants {
  Rat I2, I4, I6, I10;
  std::optional<Rat> I5;
  friend bool operator==(const ICInvariants& x, const ICInvariants& y) {
    return x.I2 == y.I2 && x.I4 == y.I4 && x.I6 == y.I6 && x.I10 == y.I10;
  }
};

struct ICNormalized {
  Rat alpha, beta, gamma, mu;
};

inline ICInvariants ic_from_sigma(const GenusTwoParams& p) {
  validate_params(p);
  Rat s1 = p.a + p.b + p.c, s2 = p.a * p.b + p.b * p.c + p.c * p.a, s3 = p.a * p.b * p.c;
  ICInvariants r;
  r.I2 = 2 * (3 * s1 * s1 - 2 * (s2 + 4 * s3) * s1 + 3 * s2 * s2 - 8 * s2 + 12 * s3);
  r.I4 = 4 * (-3 * s3 * pow(s1, 3) + (s2 * s2 - s3 * s2 + s3 * s3 + 3 * s3) * s1 * s1 +
              (-s2 * s2 + 11 * s3 * s2 - 3 * s3) * s1 - 3 * pow(s2, 3) + (3 * s3 + 1) * s2 * s2 -
              3 * s3 * s3 * s2 - 18 * s3 * s3);
  Rat t5 = -12 * s3 * pow(s1, 5);
  Rat t4 = 2 * (2 * s2 * s2 + 5 * s3 * s2 + 12 * s3 * s3 + 6 * s3) * pow(s1, 4);
  Rat t3 = (-4 * pow(s2, 3) - 2 * (9 * s3 + 2) * s2 * s2 + (10 * s3 + 59) * s3 * s2 -
            4 * (3 * s3 * s3 + 17 * s3 + 3) * s3) *
           pow(s1, 3);
  Rat t2 = (4 * pow(s2, 4) - 2 * (2 * s3 + 9) * pow(s2, 3) + 4 * (s3 * s3 + 1) * s2 * s2 -
            (97 * s3 + 33) * s3 * s2 + 16 * pow(s3, 3) + 5 * s3 * s3) *
           s1 * s1;
  Rat t1 = (10 * pow(s2, 4) + (59 * s3 + 10) * pow(s2, 3) - (33 * s3 + 97) * s3 * s2 * s2 +
            2 * (19 * s3 * s3 + 103 * s3 + 19) * s3 * s2 + 3 * (25 * s3 - 7) * s3 * s3) *
           s1;
  Rat t0 = -12 * pow(s2, 5) + 12 * (s3 + 2) * pow(s2, 4) - 4 * (3 * s3 * s3 + 17 * s3 + 3) * pow(s2, 3) +
           (5 * s3 + 16) * s3 * s2 * s2 - 3 * (7 * s3 - 25) * s3 * s3 * s2 - 18 * (s3 * s3 + 7 * s3 + 1) * s3 * s3;
  r.I6 = 2 * (t5 + t4 + t3 + t2 + t1 + t0);
  const Rat &a = p.a, &b = p.b, &c = p.c;
  r.I5 = a * b * c * (a - 1) * (b - 1) * (c - 1) * (a - b) * (b - c) * (c - a);
  r.I10 = *r.I5 * *r.I5;
  return r;
}

/// A point of P^1: (x : 1) or infinity.
struct ProjRoot {
  Rat x;
  bool infinity = false;
  static ProjRoot inf() { return {Rat(0), true}; }
};

namespace detail {
using PairSet = std::vector<std::pair<int, int>>;

inline PairSet canonical(PairSet s) {
  for (auto& pr : s)
    if (pr.first > pr.second) std::swap(pr.first, pr.second);
  std::sort(s.begin(), s.end());
  return s;
}

/// Sum of prod (r_i - r_j)^2 over the S6-orbit of a pattern of index pairs.
inline Rat orbit_sum(const std::vector<Rat>& r, const PairSet& pattern) {
  std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
  std::set<PairSet> seen;
  Rat total = 0;
  do {
    PairSet img;
    for (auto [i, j] : pattern) img.push_back({perm[i], perm[j]});
    img = canonical(img);
    if (!seen.insert(img).second) continue;
    Rat term = 1;
    for (auto [i, j] : img) term *= (r[i] - r[j]) * (r[i] - r[j]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline ICInvariants ic_finite_roots(const std::vector<Rat>& r, const Rat& lead) {
  ICInvariants ic;
  ic.I2 = pow(lead, 2) * orbit_sum(r, {{0, 1}, {2, 3}, {4, 5}});
  ic.I4 = pow(lead, 4) * orbit_sum(r, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  ic.I6 = pow(lead, 6) * orbit_sum(r, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
  Rat v = 1;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) v *= r[i] - r[j];
  ic.I5 = pow(lead, 5) * v;
  ic.I10 = *ic.I5 * *ic.I5;
  return ic;
}
}  // namespace detail

/// Invariants of lead * prod (x - r_i); a root at infinity lowers the degree
/// and is handled by moving every root to a finite place and applying the
/// covariance law. I5 is the alternating product in the given root order.
inline ICInvariants ic_from_roots(const std::vector<ProjRoot>& roots, const Rat& lead = 1) {
  if (roots.size() != 6) throw std::invalid_argument("need six roots");
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = i + 1; j < 6; ++j)
      if (roots[i].infinity == roots[j].infinity && (roots[i].infinity || roots[i].x == roots[j].x))
        throw std::domain_error("repeated root: I10 vanishes");
  bool has_inf = std::any_of(roots.begin(), roots.end(), [](const ProjRoot& r) { return r.infinity; });
  if (!has_inf) {
    std::vector<Rat> r;
    for (const auto& p : roots) r.push_back(p.x);
    return detail::ic_finite_roots(r, lead);
  }
  // Pick a shift so that no finite root sits at the pole x = 1 of the map.
  Rat pole = 1;
  while (true) {
    bool hit = false;
    for (const auto& p : roots)
      if (!p.infinity && p.x == pole) hit = true;
    if (!hit) break;
    pole += 1;
  }
  // g^{-1} = [[pole, 0], [1, -1]]: x -> pole x / (x - 1); det(g^{-1}) = -pole.
  std::vector<Rat> r;
  Rat lead2 = lead;
  for (const auto& p : roots) {
    if (p.infinity) {
      r.push_back(Rat(1));
    } else {
      // pole x/(x-1) = rho  =>  x = rho / (rho - pole)
      r.push_back(p.x / (p.x - pole));
      lead2 *= (pole - p.x);
    }
  }
  // (g.f)(x) = lead prod_finite (pole x - rho (x - 1)) (x - 1)^{6-5}: leading
  // coefficient lead * prod (pole - rho).
  ICInvariants h = detail::ic_finite_roots(r, lead2);
  Rat det_g = 1 / (-pole);
  ICInvariants out;
  out.I2 = pow(det_g, 6) * h.I2;
  out.I4 = pow(det_g, 12) * h.I4;
  out.I6 = pow(det_g, 18) * h.I6;
  out.I10 = pow(det_g, 30) * h.I10;
  out.I5 = pow(det_g, 15) * *h.I5;
  return out;
}

/// Roots in the canonical order 0, 1, a, b, c, infinity.
inline std::vector<ProjRoot> canonical_roots(const GenusTwoParams& p) {
  return {{Rat(0)}, {Rat(1)}, {p.a}, {p.b}, {p.c}, ProjRoot::inf()};
}

/// Invariants of a sextic (or quintic) given by coefficients f0..f6 with all
/// roots rational.
inline std::vector<ProjRoot> roots_of(const UPoly& f) {
  std::vector<ProjRoot> out;
  UPoly rest = f;
  for (const Rat& r : rational_roots(f)) {
    while (divides(linear(r), rest)) {
      out.push_back({r});
      rest = exact_div(rest, linear(r));
    }
  }
  if (rest.deg() > 0) throw std::domain_error("sextic does not split over Q");
  if (f.deg() == 5) out.push_back(ProjRoot::inf());
  if (out.size() != 6) throw std::domain_error("form must have degree 5 or 6");
  return out;
}

inline ICInvariants ic_of_form(const UPoly& f) { return ic_from_roots(roots_of(f), f.c.back()); }

/// (g.f)(x) = f((a x + b)/(c x + d)) (c x + d)^6 with g^{-1} = [[a, b], [c, d]].
inline UPoly act(const UPoly& f, const std::array<Rat, 4>& ginv) {
  UPoly num(std::vector<Rat>{ginv[1], ginv[0]}), den(std::vector<Rat>{ginv[3], ginv[2]});
  UPoly out;
  for (int i = 0; i <= f.deg(); ++i) out += (pow(num, i) * pow(den, 6 - i)).scaled(f.c[i]);
  return out;
}

/// I_d(g.f) = det(g)^{-3d} I_d(f) for d in {2, 4, 6, 10}.
inline bool covariance_check(const UPoly& f, const std::array<Rat, 4>& ginv) {
  Rat det_inv = ginv[0] * ginv[3] - ginv[1] * ginv[2];
  if (det_inv == 0) throw std::invalid_argument("singular matrix");
  ICInvariants a = ic_of_form(f), b = ic_of_form(act(f, ginv));
  // det(g)^{-3d} = det(g^{-1})^{3d}
  return b.I2 == pow(det_inv, 6) * a.I2 && b.I4 == pow(det_inv, 12) * a.I4 && b.I6 == pow(det_inv, 18) * a.I6 &&
         b.I10 == pow(det_inv, 30) * a.I10;
}

inline ICNormalized normalize(const ICInvariants& ic) {
  if (ic.I2 == 0) throw std::domain_error("normalization needs I2 != 0");
  if (!ic.I5) throw std::domain_error("normalization needs I5");
  return {pow(ic.I2, 3) * ic.I4 / ic.I10, pow(ic.I2, 2) * ic.I6 / ic.I10, pow(ic.I2, 5) / ic.I10,
          *ic.I5 / pow(ic.I2, 2)};
}

}  // namespace kummer
