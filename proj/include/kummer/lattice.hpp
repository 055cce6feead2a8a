#pragma once
// Lattices given by Gram matrices.

#include <algorithm>
#include <cctype>
#include <functional>
#include <string>
#include <vector>

#include "kummer/matrix.hpp"

namespace kummer {

struct GramLattice {
  RatMatrix gram;
  std::string name;
  size_t rank() const { return gram.rows; }
};

/// Invariant factors (> 1) of the discriminant group of an integral lattice.
inline std::vector<Int> disc_group(const RatMatrix& gram) {
  if (det(gram) == 0) throw std::domain_error("singular Gram matrix has no discriminant group");
  auto s = smith_normal_form(to_int(gram));
  std::vector<Int> out;
  for (size_t i = 0; i < s.D.rows; ++i)
    if (s.D(i, i) > 1) out.push_back(s.D(i, i));
  return out;
}

inline RatMatrix dual_gram(const RatMatrix& g) { return inverse(g); }

inline GramLattice dual_and_scale(const GramLattice& L, const Rat& lambda, bool dual) {
  GramLattice r;
  r.gram = (dual ? inverse(L.gram) : L.gram).scaled(lambda);
  r.name = L.name + (dual ? "*" : "") + (lambda == 1 ? "" : "[" + lambda.get_str() + "]");
  return r;
}

inline RatMatrix direct_sum(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix r(a.rows + b.rows, a.cols + b.cols);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < a.cols; ++j) r(i, j) = a(i, j);
  for (size_t i = 0; i < b.rows; ++i)
    for (size_t j = 0; j < b.cols; ++j) r(a.rows + i, a.cols + j) = b(i, j);
  return r;
}

/// Standard Gram matrix of A_n, D_n, E_6..8 or P_n.
inline RatMatrix root_lattice(char kind, int n) {
  auto chain = [](int m) {
    RatMatrix g(static_cast<size_t>(m), static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      g(static_cast<size_t>(i), static_cast<size_t>(i)) = 2;
      if (i + 1 < m) g(static_cast<size_t>(i), static_cast<size_t>(i + 1)) = g(static_cast<size_t>(i + 1), static_cast<size_t>(i)) = -1;
    }
    return g;
  };
  switch (kind) {
    case 'A':
      if (n < 1) break;
      return chain(n);
    case 'D': {
      if (n < 4) break;
      RatMatrix g = chain(n - 1);
      RatMatrix h(static_cast<size_t>(n), static_cast<size_t>(n));
      for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) h(static_cast<size_t>(i), static_cast<size_t>(j)) = g(static_cast<size_t>(i), static_cast<size_t>(j));
      size_t last = static_cast<size_t>(n - 1);
      h(last, last) = 2;
      h(last, static_cast<size_t>(n - 3)) = h(static_cast<size_t>(n - 3), last) = -1;
      return h;
    }
    case 'E': {
      if (n < 6 || n > 8) break;
      // Chain of n-1 nodes with the extra node attached to the third one.
      RatMatrix g = chain(n - 1);
      RatMatrix h(static_cast<size_t>(n), static_cast<size_t>(n));
      for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) h(static_cast<size_t>(i), static_cast<size_t>(j)) = g(static_cast<size_t>(i), static_cast<size_t>(j));
      size_t last = static_cast<size_t>(n - 1);
      h(last, last) = 2;
      h(last, 2) = h(2, last) = -1;
      return h;
    }
    case 'P': {
      if (n < 1) break;
      RatMatrix g(static_cast<size_t>(n), static_cast<size_t>(n));
      for (size_t i = 0; i < g.rows; ++i)
        for (size_t j = 0; j < g.cols; ++j) g(i, j) = (i == j) ? 3 : 1;
      return g;
    }
    default:
      break;
  }
  throw std::invalid_argument(std::string("invalid root lattice ") + kind + std::to_string(n));
}

/// |discriminant| of a root lattice given its type label such as "A3", "D4", "E8".
inline Int root_lattice_disc(char kind, int n) {
  switch (kind) {
    case 'A': return n + 1;
    case 'D': return 4;
    case 'E': return 9 - n;
    default: throw std::invalid_argument("not a root lattice type");
  }
}

inline Rat inner(const RatMatrix& g, const std::vector<Rat>& x, const std::vector<Rat>& y) {
  Rat s = 0;
  for (size_t i = 0; i < g.rows; ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < g.cols; ++j)
      if (y[j] != 0) s += x[i] * g(i, j) * y[j];
  }
  return s;
}

inline bool positive_definite(const RatMatrix& g) {
  for (size_t k = 1; k <= g.rows; ++k) {
    RatMatrix m(k, k);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) m(i, j) = g(i, j);
    if (det(m) <= 0) return false;
  }
  return true;
}

struct ShortVector {
  std::vector<Int> v;
  Rat norm;
};

/// All nonzero vectors with norm <= bound, one per ± pair (first nonzero entry
/// positive), by exact Fincke-Pohst enumeration.
inline std::vector<ShortVector> short_vectors(const RatMatrix& g, const Rat& bound) {
  if (!g.symmetric() || !positive_definite(g)) throw std::domain_error("short_vectors needs a positive definite Gram matrix");
  size_t n = g.rows;
  // Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2
  RatMatrix q = g;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      Rat f = q(i, j) / q(i, i);
      for (size_t k = j; k < n; ++k) q(j, k) -= f * q(i, k);
    }
    for (size_t j = i + 1; j < n; ++j) q(i, j) /= q(i, i);
  }
  std::vector<ShortVector> out;
  std::vector<Int> x(n, Int(0));
  std::function<void(size_t, Rat)> rec = [&](size_t k1, Rat remaining) {
    // k1 = index+1 of the variable to set (descending).
    size_t i = k1 - 1;
    Rat c = 0;
    for (size_t j = i + 1; j < n; ++j) c += q(i, j) * Rat(x[j]);
    // (x_i + c)^2 * q_ii <= remaining
    Rat lim = remaining / q(i, i);
    Int r;
    Rat fl_lim = lim;
    Int lim_floor;
    mpz_fdiv_q(lim_floor.get_mpz_t(), fl_lim.get_num_mpz_t(), fl_lim.get_den_mpz_t());
    mpz_sqrt(r.get_mpz_t(), lim_floor.get_mpz_t());
    r += 1;
    Int center;
    Rat mc = -c;
    mpz_fdiv_q(center.get_mpz_t(), mc.get_num_mpz_t(), mc.get_den_mpz_t());
    for (Int xi = center - r; xi <= center + r + 1; ++xi) {
      Rat d = Rat(xi) + c;
      Rat used = d * d * q(i, i);
      if (used > remaining) continue;
      x[i] = xi;
      if (i == 0) {
        bool nz = false, pos = false;
        for (auto& e : x)
          if (e != 0) {
            nz = true;
            pos = e > 0;
            break;
          }
        if (nz && pos) {
          std::vector<Rat> xr(x.begin(), x.end());
          out.push_back({x, inner(g, xr, xr)});
        }
      } else {
        rec(i, remaining - used);
      }
    }
    x[i] = 0;
  };
  if (n > 0) rec(n, bound);
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.v < b.v;
  });
  return out;
}

/// Searches an integral basis change B (columns in coordinates of L1) with
/// B^T G1 B = G2.
inline bool is_isometric(const RatMatrix& g1, const RatMatrix& g2, RatMatrix* witness = nullptr) {
  size_t n = g1.rows;
  if (n != g2.rows) return false;
  if (n > 8) throw std::invalid_argument("is_isometric supports rank <= 8");
  if (n == 0) return true;
  if (det(g1) != det(g2)) return false;
  Rat maxd = 0;
  for (size_t i = 0; i < n; ++i) maxd = std::max(maxd, g2(i, i));
  auto sv = short_vectors(g1, maxd);
  std::vector<std::vector<Rat>> cand;
  std::vector<Rat> norms;
  for (auto& s : sv) {
    std::vector<Rat> v(s.v.begin(), s.v.end());
    cand.push_back(v);
    norms.push_back(s.norm);
    for (auto& e : v) e = -e;
    cand.push_back(v);
    norms.push_back(s.norm);
  }
  std::vector<size_t> chosen;
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == n) return true;
    for (size_t k = 0; k < cand.size(); ++k) {
      if (norms[k] != g2(i, i)) continue;
      bool ok = true;
      for (size_t j = 0; j < i && ok; ++j) ok = inner(g1, cand[chosen[j]], cand[k]) == g2(j, i);
      if (!ok) continue;
      chosen.push_back(k);
      if (rec(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!rec(0)) return false;
  RatMatrix B(n, n);
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < n; ++i) B(i, j) = cand[chosen[j]][i];
  if (abs(det(B)) != 1) return false;
  if (witness) *witness = B;
  return true;
}

/// Parses lattice names such as "<1>^3", "A3*[2]", "(A2+A1)[2/3]",
/// "A2[2/3]+A2*[2]+<1>", "P6*[4]" or "0".
inline RatMatrix parse_lattice_name(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("lattice name '" + text + "': " + why + " at " + std::to_string(pos));
  };
  auto read_int = [&]() {
    size_t st = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (st == pos) fail("expected integer");
    return std::stoi(s.substr(st, pos - st));
  };
  auto read_rat_until = [&](char close) {
    size_t st = pos;
    while (pos < s.size() && s[pos] != close) ++pos;
    if (pos == s.size()) fail("unterminated bracket");
    Rat r = parse_rat(s.substr(st, pos - st));
    ++pos;
    return r;
  };
  std::function<RatMatrix()> parse_sum;
  auto parse_term = [&]() -> RatMatrix {
    RatMatrix g;
    if (pos < s.size() && s[pos] == '(') {
      ++pos;
      g = parse_sum();
      if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
      ++pos;
    } else if (pos < s.size() && s[pos] == '<') {
      ++pos;
      Rat v = read_rat_until('>');
      g = RatMatrix(1, 1);
      g(0, 0) = v;
    } else if (pos < s.size() && std::string("ADEP").find(s[pos]) != std::string::npos) {
      char k = s[pos++];
      g = root_lattice(k, read_int());
    } else {
      fail("expected lattice term");
    }
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      g = inverse(g);
    }
    if (pos < s.size() && s[pos] == '[') {
      ++pos;
      g = g.scaled(read_rat_until(']'));
    }
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      int k = read_int();
      RatMatrix acc = g;
      for (int i = 1; i < k; ++i) acc = direct_sum(acc, g);
      g = acc;
    }
    return g;
  };
  parse_sum = [&]() -> RatMatrix {
    RatMatrix g = parse_term();
    while (pos < s.size() && s[pos] == '+') {
      ++pos;
      g = direct_sum(g, parse_term());
    }
    return g;
  };
  if (s == "0") return RatMatrix(0, 0);
  RatMatrix g = parse_sum();
  if (pos != s.size()) fail("trailing characters");
  return g;
}

}  // namespace kummer
