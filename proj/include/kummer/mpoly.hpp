#pragma once
// Sparse multivariate polynomials over Q with a fixed variable count.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/poly.hpp"

namespace kummer {

class MPoly {
 public:
  using Exp = std::vector<int>;
  std::map<Exp, Rat> terms;
  int nvars = 0;

  MPoly() = default;
  explicit MPoly(int n) : nvars(n) {}
  MPoly(int n, const Rat& c) : nvars(n) {
    if (!is_zero(c)) terms[Exp(static_cast<size_t>(n), 0)] = c;
  }
  static MPoly var(int n, int i, int power = 1) {
    MPoly m(n);
    Exp e(static_cast<size_t>(n), 0);
    e[static_cast<size_t>(i)] = power;
    m.terms[e] = 1;
    return m;
  }

  bool zero() const { return terms.empty(); }
  size_t size() const { return terms.size(); }
  bool is_constant() const { return terms.empty() || (terms.size() == 1 && total_degree() == 0); }
  Rat constant_value() const {
    if (terms.empty()) return 0;
    if (!is_constant()) throw std::domain_error("not a constant polynomial");
    return terms.begin()->second;
  }

  int degree_in(int v) const {
    int d = -1;
    for (auto& [e, c] : terms) d = std::max(d, e[static_cast<size_t>(v)]);
    return d;
  }
  int total_degree() const {
    int d = -1;
    for (auto& [e, c] : terms) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  void add_term(const Exp& e, const Rat& c) {
    if (is_zero(c)) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
      terms.emplace(e, c);
    } else {
      it->second += c;
      if (is_zero(it->second)) terms.erase(it);
    }
  }

  MPoly& operator+=(const MPoly& o) {
    check(o);
    if (terms.empty()) nvars = std::max(nvars, o.nvars);
    for (auto& [e, c] : o.terms) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check(o);
    if (terms.empty()) nvars = std::max(nvars, o.nvars);
    for (auto& [e, c] : o.terms) add_term(e, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(MPoly a) {
    for (auto& [e, c] : a.terms) c = -c;
    return a;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check(b);
    MPoly r(std::max(a.nvars, b.nvars));
    Exp e(static_cast<size_t>(r.nvars));
    for (auto& [ea, ca] : a.terms)
      for (auto& [eb, cb] : b.terms) {
        for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly scaled(const Rat& s) const {
    MPoly r(nvars);
    if (is_zero(s)) return r;
    r.terms = terms;
    for (auto& [e, c] : r.terms) c *= s;
    return r;
  }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms == b.terms; }

  MPoly pow(unsigned k) const {
    MPoly r(nvars, Rat(1)), b = *this;
    while (k) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k) b *= b;
    }
    return r;
  }

  Rat eval(const std::vector<Rat>& pt) const {
    if (static_cast<int>(pt.size()) != nvars) throw std::invalid_argument("evaluation point size mismatch");
    // Cache powers per variable.
    std::vector<std::vector<Rat>> pw(static_cast<size_t>(nvars));
    Rat s = 0;
    for (auto& [e, c] : terms) {
      Rat t = c;
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        auto& v = pw[i];
        if (v.empty()) v.push_back(1);
        while (static_cast<int>(v.size()) <= e[i]) v.push_back(v.back() * pt[i]);
        t *= v[static_cast<size_t>(e[i])];
      }
      s += t;
    }
    return s;
  }

  /// Substitute variable v by a polynomial (same variable count).
  MPoly substitute(int v, const MPoly& q) const {
    int d = degree_in(v);
    std::vector<MPoly> pw{MPoly(nvars, Rat(1))};
    for (int i = 1; i <= d; ++i) pw.push_back(pw.back() * q);
    MPoly r(nvars);
    for (auto& [e, c] : terms) {
      Exp e2 = e;
      int k = e2[static_cast<size_t>(v)];
      e2[static_cast<size_t>(v)] = 0;
      MPoly mono(nvars);
      mono.terms[e2] = c;
      r += mono * pw[static_cast<size_t>(k)];
    }
    return r;
  }
  MPoly substitute(int v, const Rat& x) const { return substitute(v, MPoly(nvars, x)); }

  /// Coefficients as a polynomial in variable v (each free of v).
  std::vector<MPoly> coeffs_in(int v) const {
    int d = degree_in(v);
    std::vector<MPoly> out(static_cast<size_t>(std::max(d + 1, 0)), MPoly(nvars));
    for (auto& [e, c] : terms) {
      Exp e2 = e;
      int k = e2[static_cast<size_t>(v)];
      e2[static_cast<size_t>(v)] = 0;
      out[static_cast<size_t>(k)].terms[e2] = c;
    }
    return out;
  }

  MPoly derivative(int v) const {
    MPoly r(nvars);
    for (auto& [e, c] : terms) {
      int k = e[static_cast<size_t>(v)];
      if (k == 0) continue;
      Exp e2 = e;
      e2[static_cast<size_t>(v)] = k - 1;
      r.add_term(e2, c * Rat(k));
    }
    return r;
  }

  /// Univariate view when only variable v occurs.
  UPoly to_upoly(int v) const {
    UPoly p;
    for (auto& [e, c] : terms) {
      for (size_t i = 0; i < e.size(); ++i)
        if (static_cast<int>(i) != v && e[i] != 0) throw std::domain_error("polynomial is not univariate");
      size_t k = static_cast<size_t>(e[static_cast<size_t>(v)]);
      if (p.c.size() <= k) p.c.resize(k + 1, Rat(0));
      p.c[k] += c;
    }
    p.trim();
    return p;
  }
  static MPoly from_upoly(const UPoly& p, int n, int v) {
    MPoly m(n);
    Exp e(static_cast<size_t>(n), 0);
    for (size_t k = 0; k < p.c.size(); ++k) {
      e[static_cast<size_t>(v)] = static_cast<int>(k);
      m.add_term(e, p.c[k]);
    }
    return m;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      auto& [e, c] = *it;
      Rat a = abs(c);
      s += first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
      first = false;
      std::string mono;
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names.at(i);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) s += a.get_str();
      else if (a == 1) s += mono;
      else s += a.get_str() + "*" + mono;
    }
    return s;
  }

 private:
  void check(const MPoly& o) const {
    if (nvars != o.nvars && !(o.terms.empty() || terms.empty()))
      throw std::invalid_argument("variable count mismatch");
  }
};

/// Converts to nested dense form with the listed variables, outermost first.
template <class T>
struct Nest;

template <>
struct Nest<Rat> {
  static Rat from(const MPoly& m, const std::vector<int>& vars, size_t k) {
    (void)vars;
    (void)k;
    if (m.terms.empty()) return 0;
    for (auto& [e, c] : m.terms)
      for (int x : e)
        if (x != 0) throw std::domain_error("unexpected variable during nesting");
    return m.terms.begin()->second;
  }
  static MPoly to(const Rat& r, int n, const std::vector<int>&, size_t) { return MPoly(n, r); }
};

template <class R>
struct Nest<Poly<R>> {
  static Poly<R> from(const MPoly& m, const std::vector<int>& vars, size_t k) {
    auto cs = m.coeffs_in(vars.at(k));
    Poly<R> p;
    for (auto& c : cs) p.c.push_back(Nest<R>::from(c, vars, k + 1));
    p.trim();
    return p;
  }
  static MPoly to(const Poly<R>& p, int n, const std::vector<int>& vars, size_t k) {
    MPoly out(n);
    MPoly x = MPoly::var(n, vars.at(k));
    MPoly pw(n, Rat(1));
    for (size_t i = 0; i < p.c.size(); ++i) {
      out += Nest<R>::to(p.c[i], n, vars, k + 1) * pw;
      pw *= x;
    }
    return out;
  }
};

template <class T>
T nest(const MPoly& m, const std::vector<int>& vars) {
  return Nest<T>::from(m, vars, 0);
}
template <class T>
MPoly unnest(const T& p, int n, const std::vector<int>& vars) {
  return Nest<T>::to(p, n, vars, 0);
}

/// Identity test. Expands lhs - rhs when the operands have at most
/// `threshold` terms; otherwise compares values at `trials` seeded random
/// points (Schwartz-Zippel: a nonzero difference of total degree d survives a
/// point drawn from a box of side S with probability >= 1 - d/S). For a
/// certificate use vanishes_on_grid with per-variable degree bounds.
inline bool identity_check(const MPoly& lhs, const MPoly& rhs, int trials, unsigned long long seed = 1,
                           size_t threshold = 10000) {
  if (lhs.size() + rhs.size() <= threshold) return (lhs - rhs).zero();
  SeededRng rng(seed);
  int n = std::max(lhs.nvars, rhs.nvars);
  for (int k = 0; k < trials; ++k) {
    std::vector<Rat> pt;
    for (int i = 0; i < n; ++i) pt.push_back(rng.rational());
    if (lhs.eval(pt) != rhs.eval(pt)) return false;
  }
  return true;
}

/// Proof by specialization: a nonzero polynomial of degree <= d_i in each
/// variable cannot vanish on a full grid S_1 x ... x S_n with |S_i| > d_i.
/// Evaluates a black-box function on such a grid.
template <class F>
bool vanishes_on_grid(F&& f, const std::vector<int>& degree_bounds, unsigned long long seed = 7) {
  SeededRng rng(seed);
  std::vector<std::vector<Rat>> sets;
  for (int d : degree_bounds) {
    std::vector<Rat> s;
    while (static_cast<int>(s.size()) <= d) {
      Rat r = rng.rational(1000);
      if (std::find(s.begin(), s.end(), r) == s.end()) s.push_back(r);
    }
    sets.push_back(s);
  }
  std::vector<size_t> idx(sets.size(), 0);
  while (true) {
    std::vector<Rat> pt;
    for (size_t i = 0; i < sets.size(); ++i) pt.push_back(sets[i][idx[i]]);
    if (!f(pt)) return false;
    size_t i = 0;
    while (i < idx.size() && ++idx[i] == sets[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return true;
}

}  // namespace kummer
