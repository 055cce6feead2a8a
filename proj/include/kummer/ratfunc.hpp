#pragma once
// Rational functions in one variable over Q, always reduced.

#include <stdexcept>
#include <string>

#include "kummer/poly.hpp"

namespace kummer {

class RatFunc {
 public:
  RatFunc() : num_(), den_(Rat(1)) {}
  RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}  // NOLINT(implicit)
  RatFunc(long c) : RatFunc(Rat(c)) {}              // NOLINT(implicit)
  RatFunc(const UPoly& p) : num_(p), den_(Rat(1)) {}  // NOLINT(implicit)
  RatFunc(const UPoly& n, const UPoly& d) : num_(n), den_(d) { reduce(); }

  static RatFunc var() { return RatFunc(UPoly::var()); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool zero() const { return num_.zero(); }
  bool is_poly() const { return den_.deg() == 0; }
  bool is_constant() const { return num_.deg() <= 0 && den_.deg() == 0; }
  Rat constant() const {
    if (!is_constant()) throw std::domain_error("not a constant");
    return num_.zero() ? Rat(0) : num_.c[0];
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    // Cross-cancel before multiplying to keep degrees small.
    UPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    RatFunc r;
    r.num_ = exact_div(a.num_, g1.zero() ? UPoly(Rat(1)) : g1) * exact_div(b.num_, g2.zero() ? UPoly(Rat(1)) : g2);
    r.den_ = exact_div(a.den_, g2.zero() ? UPoly(Rat(1)) : g2) * exact_div(b.den_, g1.zero() ? UPoly(Rat(1)) : g1);
    r.normalize_den();
    return r;
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.zero()) throw std::domain_error("rational function division by zero");
    return a * b.inverse();
  }
  RatFunc inverse() const {
    if (zero()) throw std::domain_error("inverse of zero");
    return RatFunc(den_, num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    return RatFunc(kummer::pow(num_, static_cast<unsigned>(e)), kummer::pow(den_, static_cast<unsigned>(e)));
  }

  Rat eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (is_zero(d)) throw std::domain_error("pole at evaluation point");
    return num_.eval(x) / d;
  }

  /// f(g) for a rational function g.
  RatFunc compose(const RatFunc& g) const {
    // Homogenize: f = N/D with degrees n, d; N(g) = Ñ(gn, gd)/gd^n.
    int n = num_.deg(), d = den_.deg();
    int m = std::max(n, d);
    auto hom = [&](const UPoly& p) {
      UPoly acc;
      UPoly pn(Rat(1));
      std::vector<UPoly> dp{UPoly(Rat(1))};
      for (int i = 1; i <= m; ++i) dp.push_back(dp.back() * g.den());
      for (int i = 0; i <= p.deg(); ++i) {
        acc += (pn * dp[static_cast<size_t>(m - i)]).scaled(p.c[static_cast<size_t>(i)]);
        pn *= g.num();
      }
      return acc;
    };
    if (zero()) return *this;
    return RatFunc(hom(num_), hom(den_));
  }

  /// Order of vanishing at the place defined by an irreducible polynomial p.
  int ord(const UPoly& p) const {
    if (zero()) throw std::domain_error("order of zero function");
    return multiplicity_or_zero(p, num_) - multiplicity_or_zero(p, den_);
  }
  /// Order at infinity: deg den - deg num.
  int ord_inf() const {
    if (zero()) throw std::domain_error("order of zero function");
    return den_.deg() - num_.deg();
  }

  std::string to_string(const std::string& var = "t") const {
    if (den_.deg() == 0) return poly_to_string(num_, var);
    return "(" + poly_to_string(num_, var) + ")/(" + poly_to_string(den_, var) + ")";
  }

 private:
  UPoly num_, den_;
  static int multiplicity_or_zero(const UPoly& p, const UPoly& a) {
    if (a.zero()) return 0;
    int m = 0;
    UPoly x = a;
    while (true) {
      auto [q, r] = divmod(x, p);
      if (!r.zero()) break;
      x = q;
      ++m;
    }
    return m;
  }
  void normalize_den() {
    if (num_.zero()) {
      den_ = UPoly(Rat(1));
      return;
    }
    Rat l = den_.lead();
    if (l != 1) {
      den_ = den_.scaled(1 / l);
      num_ = num_.scaled(1 / l);
    }
  }
  void reduce() {
    if (den_.zero()) throw std::domain_error("zero denominator");
    if (num_.zero()) {
      den_ = UPoly(Rat(1));
      return;
    }
    UPoly g = gcd(num_, den_);
    if (g.deg() > 0) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    normalize_den();
  }
};

/// Möbius map t -> (p t + q)/(r t + s) as a rational function.
inline RatFunc mobius(const Rat& p, const Rat& q, const Rat& r, const Rat& s) {
  return RatFunc(UPoly(std::vector<Rat>{q, p}), UPoly(std::vector<Rat>{s, r}));
}

}  // namespace kummer
