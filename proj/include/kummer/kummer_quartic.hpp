#pragma once
// The singular Kummer quartic of y^2 = x(x-1)(x-a)(x-b)(x-c): equation,
// nodes, tropes, the (16,6) configuration, and the projection from n0, n1
// that yields Fibration 1.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/formula.hpp"
#include "kummer/mpoly.hpp"
#include "kummer/poly.hpp"

namespace kummer {

struct GenusTwoParams {
  Rat a, b, c;
  std::map<std::string, Rat> env() const { return {{"a", a}, {"b", b}, {"c", c}}; }
  std::string to_string() const { return kummer::to_string(a) + "," + kummer::to_string(b) + "," + kummer::to_string(c); }
};

/// Throws invalid_argument naming the violated genericity condition.
inline void validate_params(const GenusTwoParams& p) {
  const Rat v[3] = {p.a, p.b, p.c};
  const char* n[3] = {"a", "b", "c"};
  for (int i = 0; i < 3; ++i) {
    if (v[i] == 0) throw std::invalid_argument(std::string(n[i]) + " = 0 collides with the Weierstrass point 0");
    if (v[i] == 1) throw std::invalid_argument(std::string(n[i]) + " = 1 collides with the Weierstrass point 1");
    for (int j = i + 1; j < 3; ++j)
      if (v[i] == v[j]) throw std::invalid_argument(std::string(n[i]) + " = " + n[j] + ": Weierstrass points collide");
  }
}

inline GenusTwoParams parse_params(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3) throw std::invalid_argument("expected three rationals a,b,c");
  GenusTwoParams p{parse_rat(parts[0]), parse_rat(parts[1]), parse_rat(parts[2])};
  validate_params(p);
  return p;
}

/// Labels in basis order: 0, 1..5, 12..15, 23..25, 34, 35, 45.
inline const std::array<std::string, 16>& node_labels() {
  static const std::array<std::string, 16> l{"0", "1", "2", "3", "4", "5", "12", "13", "14", "15", "23", "24", "25", "34", "35", "45"};
  return l;
}

inline int label_index(const std::string& label) {
  const auto& l = node_labels();
  for (size_t i = 0; i < l.size(); ++i)
    if (l[i] == label) return static_cast<int>(i);
  if (label.size() == 2 && label[0] == '0') return label_index(label.substr(1));
  throw std::invalid_argument("invalid node/trope label '" + label + "'");
}

struct QuarticSurface {
  MPoly K2, K1, K0;  // in z1, z2, z3
  /// K2 z4^2 + K1 z4 + K0 in z1..z4.
  MPoly full() const {
    auto lift = [](const MPoly& m) {
      MPoly r(4);
      for (const auto& [e, c] : m.terms) r.add_term({e[0], e[1], e[2], 0}, c);
      return r;
    };
    MPoly z4 = MPoly::var(4, 3);
    return lift(K2) * z4 * z4 + lift(K1) * z4 + lift(K0);
  }
};

namespace detail {
inline std::vector<std::string> quartic_allowed() { return {"z1", "z2", "z3", "z4", "a", "b", "c"}; }

inline const char* kK2 = "z2^2 - 4*z1*z3";
inline const char* kK1 =
    "(-2*z2 + 4*(a+b+c+1)*z1)*z3^2"
    " + (-2*(b*c+a*c+c+a*b+b+a)*z1*z2 + 4*(a*b*c+b*c+a*c+a*b)*z1^2)*z3"
    " - 2*a*b*c*z1^2*z2";
inline const char* kK0 =
    "z3^4 - 2*(b*c+a*c+c+a*b+b+a)*z1*z3^3"
    " + (4*(a*b*c+b*c+a*c+a*b)*z1*z2"
    "    + (a^2+b^2+c^2 - 2*a*b*(a+b+1) - 2*b*c*(b+c+1) - 2*a*c*(a+c+1)"
    "       + a^2*b^2 + b^2*c^2 + a^2*c^2 - 2*a*b*c*(a+b+c+4))*z1^2)*z3^2"
    " + (-4*a*b*c*z1*z2^2 + 4*a*b*c*(c+b+a+1)*z1^2*z2 - 2*a*b*c*(b*c+a*c+c+a*b+b+a)*z1^3)*z3"
    " + a^2*b^2*c^2*z1^4";

// Homogeneous coordinates, in node_labels() order.
inline const std::array<std::array<const char*, 4>, 16> kNodes{{
    {"0", "0", "0", "1"},
    {"0", "1", "0", "0"},
    {"0", "1", "1", "1"},
    {"0", "1", "a", "a^2"},
    {"0", "1", "b", "b^2"},
    {"0", "1", "c", "c^2"},
    {"1", "1", "0", "a*b*c"},
    {"1", "a", "0", "b*c"},
    {"1", "b", "0", "c*a"},
    {"1", "c", "0", "a*b"},
    {"1", "a+1", "a", "a*(b+c)"},
    {"1", "b+1", "b", "b*(c+a)"},
    {"1", "c+1", "c", "c*(a+b)"},
    {"1", "a+b", "a*b", "a*b*(c+1)"},
    {"1", "a+c", "c*a", "a*c*(b+1)"},
    {"1", "b+c", "b*c", "b*c*(a+1)"},
}};
// Dual coordinates of the trope planes.
inline const std::array<std::array<const char*, 4>, 16> kTropes{{
    {"1", "0", "0", "0"},
    {"0", "0", "1", "0"},
    {"1", "-1", "1", "0"},
    {"a^2", "-a", "1", "0"},
    {"b^2", "-b", "1", "0"},
    {"c^2", "-c", "1", "0"},
    {"-a*b*c", "0", "-1", "1"},
    {"-b*c", "0", "-a", "1"},
    {"-c*a", "0", "-b", "1"},
    {"-a*b", "0", "-c", "1"},
    {"-a*(b+c)", "a", "-(a+1)", "1"},
    {"-b*(c+a)", "b", "-(b+1)", "1"},
    {"-c*(a+b)", "c", "-(c+1)", "1"},
    {"-a*b*(c+1)", "a*b", "-(a+b)", "1"},
    {"-c*a*(b+1)", "c*a", "-(c+a)", "1"},
    {"-b*c*(a+1)", "b*c", "-(b+c)", "1"},
}};
}  // namespace detail

inline QuarticSurface build_quartic(const GenusTwoParams& p) {
  validate_params(p);
  std::vector<std::string> v3{"z1", "z2", "z3"};
  auto env = p.env();
  auto al = detail::quartic_allowed();
  return {eval_formula_mpoly(parse_formula(detail::kK2, al), v3, env),
          eval_formula_mpoly(parse_formula(detail::kK1, al), v3, env),
          eval_formula_mpoly(parse_formula(detail::kK0, al), v3, env)};
}

using Point4 = std::array<Rat, 4>;

struct NodesAndTropes {
  std::array<Point4, 16> nodes;   // points
  std::array<Point4, 16> tropes;  // dual coordinates
};

namespace detail {
inline bool proportional(const Point4& u, const Point4& v) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (u[i] * v[j] != u[j] * v[i]) return false;
  return true;
}
}  // namespace detail

inline NodesAndTropes nodes_and_tropes(const GenusTwoParams& p) {
  validate_params(p);
  NodesAndTropes r;
  auto env = p.env();
  for (size_t i = 0; i < 16; ++i)
    for (size_t k = 0; k < 4; ++k) {
      r.nodes[i][k] = eval_formula(parse_formula(detail::kNodes[i][k], {"a", "b", "c"}), env);
      r.tropes[i][k] = eval_formula(parse_formula(detail::kTropes[i][k], {"a", "b", "c"}), env);
    }
  for (size_t i = 0; i < 16; ++i)
    for (size_t j = i + 1; j < 16; ++j) {
      if (detail::proportional(r.nodes[i], r.nodes[j]))
        throw std::invalid_argument("nodes n" + node_labels()[i] + " and n" + node_labels()[j] + " coincide");
      if (detail::proportional(r.tropes[i], r.tropes[j]))
        throw std::invalid_argument("tropes T" + node_labels()[i] + " and T" + node_labels()[j] + " coincide");
    }
  return r;
}

/// incidence[t][n] = node n lies on trope t.
inline std::array<std::array<bool, 16>, 16> incidence(const NodesAndTropes& nt) {
  std::array<std::array<bool, 16>, 16> m{};
  for (size_t t = 0; t < 16; ++t)
    for (size_t n = 0; n < 16; ++n) {
      Rat s = 0;
      for (size_t k = 0; k < 4; ++k) s += nt.tropes[t][k] * nt.nodes[n][k];
      m[t][n] = s == 0;
    }
  return m;
}

/// True iff the form is a nonzero constant times the square of a form.
inline bool is_constant_times_square(const MPoly& f3) {
  if (f3.zero()) return false;
  // Dehomogenize at the last variable; even total degree keeps the test exact.
  MPoly g(2);
  for (const auto& [e, c] : f3.terms) g.add_term({e[0], e[1]}, c);
  if (g.is_constant()) return true;
  auto bp = nest<BPoly>(g, {1, 0});
  auto fs = squarefree_factors(bp);
  for (size_t i = 0; i < fs.size(); i += 2)
    if (fs[i].deg() > 0) return false;
  // Multiplicity bookkeeping inside the content in the inner variable.
  UPoly cont = content(bp);
  if (cont.deg() > 0) {
    auto cf = squarefree_factors(cont);
    for (size_t i = 0; i < cf.size(); i += 2)
      if (cf[i].deg() > 0) return false;
  }
  return true;
}

struct ConfigurationReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::array<int, 16> trope_sizes{}, node_degrees{};
};

inline ConfigurationReport verify_configuration(const QuarticSurface& Q, const NodesAndTropes& nt) {
  ConfigurationReport rep;
  MPoly F = Q.full();
  std::array<MPoly, 4> grad;
  for (int i = 0; i < 4; ++i) grad[static_cast<size_t>(i)] = F.derivative(i);
  for (size_t n = 0; n < 16; ++n) {
    std::vector<Rat> pt(nt.nodes[n].begin(), nt.nodes[n].end());
    bool sing = F.eval(pt) == 0;
    for (const auto& g : grad) sing = sing && g.eval(pt) == 0;
    if (!sing) {
      rep.ok = false;
      rep.failures.push_back("node n" + node_labels()[n] + " is not a singular point");
    }
  }
  for (size_t t = 0; t < 16; ++t) {
    const auto& L = nt.tropes[t];
    size_t k = 0;
    while (L[k] == 0) ++k;
    // z_k = -(sum_{j != k} L_j z_j) / L_k, over the remaining three coordinates.
    std::vector<int> rest;
    for (int j = 0; j < 4; ++j)
      if (static_cast<size_t>(j) != k) rest.push_back(j);
    MPoly zk(3);
    for (size_t r = 0; r < 3; ++r) zk += MPoly::var(3, static_cast<int>(r)).scaled(-L[static_cast<size_t>(rest[r])] / L[k]);
    MPoly restricted(3);
    for (const auto& [e, c] : F.terms) {
      MPoly term(3, c);
      for (size_t r = 0; r < 3; ++r) term = term * MPoly::var(3, static_cast<int>(r), e[static_cast<size_t>(rest[r])]);
      restricted += term * zk.pow(static_cast<unsigned>(e[k]));
    }
    if (!is_constant_times_square(restricted)) {
      rep.ok = false;
      rep.failures.push_back("trope T" + node_labels()[t] + " does not meet the quartic in a double conic");
    }
  }
  auto inc = incidence(nt);
  for (size_t t = 0; t < 16; ++t)
    for (size_t n = 0; n < 16; ++n)
      if (inc[t][n]) {
        ++rep.trope_sizes[t];
        ++rep.node_degrees[n];
      }
  for (size_t i = 0; i < 16; ++i) {
    if (rep.trope_sizes[i] != 6) {
      rep.ok = false;
      rep.failures.push_back("trope T" + node_labels()[i] + " contains " + std::to_string(rep.trope_sizes[i]) + " nodes");
    }
    if (rep.node_degrees[i] != 6) {
      rep.ok = false;
      rep.failures.push_back("node n" + node_labels()[i] + " lies on " + std::to_string(rep.node_degrees[i]) + " tropes");
    }
  }
  return rep;
}

/// Projection from n0 and n1 with t = z3/z1, xi = z2/z1.
struct FibrationOneDerivation {
  MPoly eta_squared;  // in (t, xi): the discriminant in z4 divided by 4
  MPoly printed_intermediate;
  bool intermediate_matches = false;
  MPoly cubic;  // in (t, x): right side after the displayed substitution
  MPoly printed_cubic;
  bool cubic_matches = false;
};

inline FibrationOneDerivation derive_fibration_one(const QuarticSurface& Q, const GenusTwoParams& p) {
  FibrationOneDerivation d;
  // Affine chart z1 = 1, z2 = xi, z3 = t; variables (t, xi).
  auto chart = [](const MPoly& m) {
    MPoly r(2);
    for (const auto& [e, c] : m.terms) r.add_term({e[2], e[1]}, c);
    return r;
  };
  MPoly k2 = chart(Q.K2), k1 = chart(Q.K1), k0 = chart(Q.K0);
  d.eta_squared = (k1 * k1 - (k2 * k0).scaled(Rat(4))).scaled(rat(1, 4));
  auto env = p.env();
  std::vector<std::string> tv{"t", "xi"};
  std::vector<std::string> allowed{"t", "xi", "a", "b", "c"};
  d.printed_intermediate = eval_formula_mpoly(
      parse_formula("4*t*(xi - t - 1)*(a*xi - t - a^2)*(b*xi - t - b^2)*(c*xi - t - c^2)", allowed), tv, env);
  d.intermediate_matches = d.eta_squared == d.printed_intermediate;

  // xi = 1 + t + M/x and eta = y M / x^2 turn eta^2 = R(xi) into
  // y^2 = x^4 R(1 + t + M/x) / M^2, a cubic in x.
  MPoly M = eval_formula_mpoly(parse_formula("4*(a-1)*(b-1)*(c-1)*t*(t-a)*(t-b)*(t-c)", allowed), {"t"}, env);
  UPoly Mu = M.to_upoly(0);
  auto R = nest<BPoly>(d.eta_squared, {1, 0});  // coefficients in t, outer variable xi
  // R(1 + t + s) as a polynomial in s, then x^4 R / M^2 with s = M/x.
  BPoly shift(std::vector<UPoly>{UPoly(std::vector<Rat>{Rat(1), Rat(1)}), UPoly(Rat(1))});
  BPoly Rs = R.compose(shift);
  if (Rs.deg() > 4 || !Rs.coeff(0).zero()) throw std::logic_error("xi = 1 + t is not a root of the quartic");
  MPoly cubic(2);
  MPoly xv = MPoly::var(2, 1);
  for (int i = 1; i <= Rs.deg(); ++i) {
    // coefficient * M^i * x^(4-i) / M^2
    UPoly num = Rs.coeff(i) * pow(Mu, static_cast<unsigned>(i));
    UPoly q = exact_div(num, Mu * Mu);
    cubic += MPoly::from_upoly(q, 2, 0) * xv.pow(static_cast<unsigned>(4 - i));
  }
  d.cubic = cubic;
  d.printed_cubic = eval_formula_mpoly(
      parse_formula("(x + 4*(a-1)*(b-1)*c*t*(t-a)*(t-b))*(x + 4*(b-1)*(c-1)*a*t*(t-b)*(t-c))"
                    "*(x + 4*(c-1)*(a-1)*b*t*(t-c)*(t-a))"),
      {"t", "x"}, env);
  d.cubic_matches = d.cubic == d.printed_cubic;
  return d;
}

}  // namespace kummer
