#pragma once
// Exact scalars: GMP integers and rationals.

#include <gmpxx.h>
#include <random>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kummer {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long n, long d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline Rat rat(const Int& n, const Int& d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q".
inline Rat parse_rat(std::string_view s) {
  std::string str(s);
  while (!str.empty() && (str.back() == ' ' || str.back() == '\t' || str.back() == '\r')) str.pop_back();
  size_t b = 0;
  while (b < str.size() && (str[b] == ' ' || str[b] == '\t')) ++b;
  str = str.substr(b);
  if (str.empty()) throw std::invalid_argument("empty rational");
  if (str[0] == '+') str = str.substr(1);
  auto valid = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = str.find('/');
  std::string n = str.substr(0, slash);
  std::string d = slash == std::string::npos ? "1" : str.substr(slash + 1);
  if (!valid(n) || !valid(d) || d[0] == '-') throw std::invalid_argument("bad rational '" + std::string(s) + "'");
  Int N(n), D(d);
  if (D == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
  return rat(N, D);
}

inline std::string to_string(const Rat& r) { return r.get_str(); }
inline std::string to_string(const Int& r) { return r.get_str(); }

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/// Exact k-th root of a rational if it exists.
inline bool exact_root(const Rat& r, unsigned k, Rat* out) {
  if (sgn(r) < 0 && k % 2 == 0) return false;
  Int n = abs(r.get_num()), d = r.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k)) return false;
  if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k)) return false;
  if (sgn(r) < 0) rn = -rn;
  if (out) *out = rat(rn, rd);
  return true;
}

inline bool is_square(const Rat& r, Rat* root = nullptr) {
  if (sgn(r) == 0) {
    if (root) *root = 0;
    return true;
  }
  return exact_root(r, 2, root);
}

inline Rat pow(const Rat& r, long e) {
  if (e < 0) {
    if (sgn(r) == 0) throw std::domain_error("0 to a negative power");
    Rat inv = 1 / r;
    return pow(inv, -e);
  }
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(e));
  Rat out;
  out.get_num() = n;
  out.get_den() = d;
  return out;
}

/// Deterministic generator for specialization points. mt19937_64's output is
/// fixed by the standard; the distributions are not, so ranges use a modulus.
class SeededRng {
 public:
  explicit SeededRng(unsigned long long seed) : g_(seed) {}
  unsigned long long next() { return g_(); }
  long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<unsigned long long>(hi - lo + 1)); }
  /// Rational with |numerator|, denominator <= bound.
  Rat rational(long bound = 10000) {
    long n = range(-bound, bound);
    long d = range(1, bound);
    return rat(n, d);
  }

 private:
  std::mt19937_64 g_;
};

}  // namespace kummer
