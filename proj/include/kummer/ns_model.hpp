#pragma once
// Néron-Severi lattice of the generic Jacobian Kummer surface on the basis
// (N0, N1..N5, N12..N45, H), trope classes, and the finite group generated by
// translations, the switch, and permutations of the Weierstrass points.

#include <algorithm>
#include <array>
#include <fstream>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/kummer_quartic.hpp"
#include "kummer/lattice.hpp"
#include "kummer/matrix.hpp"

namespace kummer {

using DivisorClass = std::vector<Rat>;  // 17 entries, H last
constexpr size_t kNSRank = 17;
constexpr size_t kH = 16;

inline RatMatrix gram_ns() {
  RatMatrix g(kNSRank, kNSRank);
  for (size_t i = 0; i < 16; ++i) g(i, i) = -2;
  g(kH, kH) = 4;
  return g;
}

inline Rat pair(const DivisorClass& a, const DivisorClass& b) {
  Rat s = 4 * a[kH] * b[kH];
  for (size_t i = 0; i < 16; ++i) s -= 2 * a[i] * b[i];
  return s;
}

inline DivisorClass node_class(size_t i) {
  DivisorClass d(kNSRank, Rat(0));
  d[i] = 1;
  return d;
}
inline DivisorClass hyperplane_class() {
  DivisorClass d(kNSRank, Rat(0));
  d[kH] = 1;
  return d;
}

/// Even subsets of {0..5} modulo complement, as bitmasks; node i <-> subset.
inline unsigned label_subset(size_t i) {
  const std::string& l = node_labels()[i];
  if (l == "0") return 0;
  if (l.size() == 1) return 1u | (1u << (l[0] - '0'));
  return (1u << (l[0] - '0')) | (1u << (l[1] - '0'));
}
inline size_t subset_label(unsigned s) {
  s &= 63u;
  if (__builtin_popcount(s) == 4 || __builtin_popcount(s) == 6) s ^= 63u;
  for (size_t i = 0; i < 16; ++i)
    if (label_subset(i) == s) return i;
  throw std::logic_error("odd subset has no node label");
}

/// Node-trope incidence read from the plane equations at a specialization.
inline std::array<std::array<bool, 16>, 16> trope_incidence(const GenusTwoParams& p = {2, 3, 5}) {
  return incidence(nodes_and_tropes(p));
}

inline DivisorClass trope_class(const std::string& label, const std::array<std::array<bool, 16>, 16>& inc = trope_incidence()) {
  size_t t = static_cast<size_t>(label_index(label));
  DivisorClass d(kNSRank, Rat(0));
  d[kH] = rat(1, 2);
  for (size_t n = 0; n < 16; ++n)
    if (inc[t][n]) d[n] = rat(-1, 2);
  return d;
}

/// The 32 classes N_0..N_45, T_0..T_45 in this order.
inline std::vector<DivisorClass> node_trope_classes(const std::array<std::array<bool, 16>, 16>& inc) {
  std::vector<DivisorClass> v;
  for (size_t i = 0; i < 16; ++i) v.push_back(node_class(i));
  for (size_t i = 0; i < 16; ++i) v.push_back(trope_class(node_labels()[i], inc));
  return v;
}

/// True iff every trope's node set is T0's node set translated by its label.
inline bool incidence_matches_translation_model(const std::array<std::array<bool, 16>, 16>& inc) {
  for (size_t t = 0; t < 16; ++t)
    for (size_t n = 0; n < 16; ++n) {
      size_t base = subset_label(label_subset(n) ^ label_subset(t));
      if (inc[t][n] != inc[0][base]) return false;
    }
  return true;
}

class NSLattice {
 public:
  explicit NSLattice(const std::array<std::array<bool, 16>, 16>& inc = trope_incidence()) : inc_(inc) {
    IntMatrix gens(33, kNSRank);
    auto classes = node_trope_classes(inc_);
    for (size_t j = 0; j < kNSRank; ++j) gens(0, j) = j == kH ? 2 : 0;
    for (size_t i = 0; i < 32; ++i)
      for (size_t j = 0; j < kNSRank; ++j) gens(i + 1, j) = Int(classes[i][j] * 2);
    hnf2_ = hermite_normal_form(gens);
    if (hnf2_.rows != kNSRank) throw std::logic_error("node and trope classes do not span rank 17");
  }

  const std::array<std::array<bool, 16>, 16>& incidence_matrix() const { return inc_; }

  /// Z-basis of NS as rows.
  std::vector<DivisorClass> basis() const {
    std::vector<DivisorClass> b;
    for (size_t i = 0; i < hnf2_.rows; ++i) {
      DivisorClass d(kNSRank);
      for (size_t j = 0; j < kNSRank; ++j) d[j] = Rat(hnf2_(i, j)) / 2;
      b.push_back(d);
    }
    return b;
  }

  RatMatrix basis_gram() const {
    auto b = basis();
    RatMatrix g(b.size(), b.size());
    for (size_t i = 0; i < b.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) g(i, j) = pair(b[i], b[j]);
    return g;
  }

  std::optional<std::vector<Int>> coordinates(const DivisorClass& d) const {
    std::vector<Int> v(kNSRank);
    for (size_t j = 0; j < kNSRank; ++j) {
      Rat x = d[j] * 2;
      if (x.get_den() != 1) return std::nullopt;
      v[j] = x.get_num();
    }
    return hnf_coordinates(hnf2_, v);
  }

  bool is_in_ns(const DivisorClass& d) const { return coordinates(d).has_value(); }

  bool is_primitive(const DivisorClass& d) const {
    auto c = coordinates(d);
    if (!c) return false;
    Int g = 0;
    for (auto& x : *c) g = gcd(g, x);
    return g == 1;
  }

  /// Some class pairs to 1 with d. Requires d in NS, d^2 = 0, d primitive.
  bool has_section(const DivisorClass& d) const {
    if (!is_in_ns(d)) throw std::invalid_argument("has_section: class is not in NS");
    if (pair(d, d) != 0) throw std::invalid_argument("has_section: class has nonzero self-intersection");
    if (!is_primitive(d)) throw std::invalid_argument("has_section: class is not primitive");
    Int g = 0;
    for (const auto& b : basis()) {
      Rat p = pair(d, b);
      g = gcd(g, p.get_num());
    }
    return g == 1;
  }

 private:
  std::array<std::array<bool, 16>, 16> inc_;
  IntMatrix hnf2_;  // HNF of twice the generators
};

/// w' = 2H - sum N / 2.
inline DivisorClass weyl_vector_proj() {
  DivisorClass d(kNSRank, rat(-1, 2));
  d[kH] = 2;
  return d;
}

// ---------------------------------------------------------------------------
// The finite group, as permutations of the 32 node and trope classes.

using ClassPerm = std::array<uint8_t, 32>;

struct Isometry {
  ClassPerm perm;
  std::string kind;  // permutation, translation, switch, composite
};

class KummerGroup {
 public:
  explicit KummerGroup(const std::array<std::array<bool, 16>, 16>& inc = trope_incidence())
      : inc_(inc), classes_(node_trope_classes(inc)) {
    for (size_t t = 0; t < 16; ++t) {
      unsigned m = 0;
      for (size_t n = 0; n < 16; ++n)
        if (inc_[t][n]) m |= 1u << n;
      trope_by_nodes_[m] = t;
    }
  }

  const std::vector<DivisorClass>& classes() const { return classes_; }

  /// Extends a node permutation to tropes through incidence.
  ClassPerm extend(const std::array<size_t, 16>& np) const {
    ClassPerm p{};
    for (size_t n = 0; n < 16; ++n) p[n] = static_cast<uint8_t>(np[n]);
    for (size_t t = 0; t < 16; ++t) {
      unsigned m = 0;
      for (size_t n = 0; n < 16; ++n)
        if (inc_[t][n]) m |= 1u << np[n];
      auto it = trope_by_nodes_.find(m);
      if (it == trope_by_nodes_.end()) throw std::logic_error("node permutation does not preserve the tropes");
      p[16 + t] = static_cast<uint8_t>(16 + it->second);
    }
    return p;
  }

  Isometry weierstrass_permutation(const std::array<int, 6>& pi) const {
    std::array<size_t, 16> np{};
    for (size_t n = 0; n < 16; ++n) {
      unsigned s = label_subset(n), img = 0;
      for (int k = 0; k < 6; ++k)
        if (s & (1u << k)) img |= 1u << pi[static_cast<size_t>(k)];
      np[n] = subset_label(img);
    }
    return {extend(np), "permutation"};
  }

  Isometry translation(size_t label) const {
    std::array<size_t, 16> np{};
    for (size_t n = 0; n < 16; ++n) np[n] = subset_label(label_subset(n) ^ label_subset(label));
    return {extend(np), "translation"};
  }

  Isometry switch_map() const {
    ClassPerm p{};
    for (size_t i = 0; i < 16; ++i) {
      p[i] = static_cast<uint8_t>(16 + i);
      p[16 + i] = static_cast<uint8_t>(i);
    }
    return {p, "switch"};
  }

  /// The unique norm-4 class orthogonal to every trope with positive degree.
  DivisorClass switch_image_of_h() const {
    RatMatrix m(16, kNSRank);
    auto g = gram_ns();
    for (size_t t = 0; t < 16; ++t)
      for (size_t j = 0; j < kNSRank; ++j) m(t, j) = classes_[16 + t][j] * g(j, j);
    auto sol = solve_linear(m, std::vector<Rat>(16, Rat(0)));
    if (sol.kernel.size() != 1) throw std::logic_error("trope orthogonal complement is not one-dimensional");
    DivisorClass v = sol.kernel[0];
    Rat n = pair(v, v), s;
    if (n <= 0 || !is_square(Rat(4) / n, &s)) throw std::logic_error("trope complement cannot be scaled to norm 4");
    for (auto& x : v) x *= s;
    if (pair(v, hyperplane_class()) < 0)
      for (auto& x : v) x = -x;
    return v;
  }

  /// Image of H determined by the images of the 32 classes.
  DivisorClass image_of_h(const ClassPerm& p) const {
    // H = (sum T + 3 sum N) / 8
    DivisorClass h(kNSRank, Rat(0));
    for (size_t i = 0; i < 32; ++i) {
      Rat w = i < 16 ? rat(3, 8) : rat(1, 8);
      const auto& c = classes_[p[i]];
      for (size_t j = 0; j < kNSRank; ++j) h[j] += w * c[j];
    }
    return h;
  }

  /// Column j is the image of basis vector j.
  RatMatrix matrix(const ClassPerm& p) const {
    RatMatrix m(kNSRank, kNSRank);
    for (size_t n = 0; n < 16; ++n)
      for (size_t j = 0; j < kNSRank; ++j) m(j, n) = classes_[p[n]][j];
    auto h = image_of_h(p);
    for (size_t j = 0; j < kNSRank; ++j) m(j, kH) = h[j];
    return m;
  }

  DivisorClass apply(const ClassPerm& p, const DivisorClass& d) const {
    DivisorClass r(kNSRank, Rat(0));
    for (size_t n = 0; n < 16; ++n) {
      if (d[n] == 0) continue;
      const auto& c = classes_[p[n]];
      for (size_t j = 0; j < kNSRank; ++j) r[j] += d[n] * c[j];
    }
    if (d[kH] != 0) {
      auto h = image_of_h(p);
      for (size_t j = 0; j < kNSRank; ++j) r[j] += d[kH] * h[j];
    }
    return r;
  }

  std::vector<Isometry> generators() const {
    std::vector<Isometry> g;
    for (int k = 0; k < 5; ++k) {
      std::array<int, 6> pi{0, 1, 2, 3, 4, 5};
      std::swap(pi[static_cast<size_t>(k)], pi[static_cast<size_t>(k + 1)]);
      g.push_back(weierstrass_permutation(pi));
    }
    for (size_t l = 1; l < 16; ++l) g.push_back(translation(l));
    g.push_back(switch_map());
    return g;
  }

  static ClassPerm compose(const ClassPerm& a, const ClassPerm& b) {  // a after b
    ClassPerm r{};
    for (size_t i = 0; i < 32; ++i) r[i] = a[b[i]];
    return r;
  }
  static ClassPerm identity() {
    ClassPerm r{};
    for (size_t i = 0; i < 32; ++i) r[i] = static_cast<uint8_t>(i);
    return r;
  }

  /// All elements of the group generated by gens; throws past the bound.
  static std::vector<ClassPerm> closure(const std::vector<Isometry>& gens, size_t bound = 100000) {
    std::set<ClassPerm> seen{identity()};
    std::vector<ClassPerm> out{identity()};
    for (size_t i = 0; i < out.size(); ++i) {
      for (const auto& g : gens) {
        ClassPerm c = compose(g.perm, out[i]);
        if (seen.insert(c).second) {
          out.push_back(c);
          if (out.size() > bound) throw std::runtime_error("group closure exceeded bound");
        }
      }
    }
    return out;
  }

  struct OrbitResult {
    DivisorClass canonical;
    size_t size = 0;
  };

  /// Lexicographically least image and orbit size, in 1/32 integer units.
  OrbitResult orbit_reduce(const DivisorClass& d, const std::vector<ClassPerm>& group) const {
    using Vec = std::array<long long, kNSRank>;
    std::array<Vec, 32> c2{};
    for (size_t i = 0; i < 32; ++i)
      for (size_t j = 0; j < kNSRank; ++j) c2[i][j] = Rat(classes_[i][j] * 2).get_num().get_si();
    std::array<long long, kNSRank> d2{};
    for (size_t j = 0; j < kNSRank; ++j) {
      Rat x = d[j] * 2;
      if (x.get_den() != 1 || !x.get_num().fits_slong_p()) throw std::invalid_argument("orbit_reduce: class not half-integral");
      d2[j] = x.get_num().get_si();
    }
    std::set<Vec> orbit;
    for (const auto& g : group) {
      Vec r{};
      for (size_t n = 0; n < 16; ++n)
        if (d2[n] != 0)
          for (size_t j = 0; j < kNSRank; ++j) r[j] += 8 * d2[n] * c2[g[n]][j];
      if (d2[kH] != 0)
        for (size_t i = 0; i < 32; ++i) {
          long long w = (i < 16 ? 3 : 1) * d2[kH];
          for (size_t j = 0; j < kNSRank; ++j) r[j] += w * c2[g[i]][j];
        }
      orbit.insert(r);
    }
    DivisorClass out(kNSRank);
    for (size_t j = 0; j < kNSRank; ++j) out[j] = rat((*orbit.begin())[j], 32);
    return {out, orbit.size()};
  }

 private:
  std::array<std::array<bool, 16>, 16> inc_;
  std::vector<DivisorClass> classes_;
  std::map<unsigned, size_t> trope_by_nodes_;
};

inline bool preserves_gram(const RatMatrix& m) { return m.transpose() * gram_ns() * m == gram_ns(); }

// ---------------------------------------------------------------------------
// Divisor table: "(c0,...,c45,d)[/2] Yes|No [label]" per line, '#' comments.

struct DivisorRow {
  DivisorClass d;
  bool section = false;
  std::string label;
  std::string text;
};

inline DivisorClass parse_divisor(const std::string& text) {
  auto open = text.find('('), close = text.find(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw std::invalid_argument("divisor must be written (c0,...,d)");
  std::string inner = text.substr(open + 1, close - open - 1);
  std::string rest = text.substr(close + 1);
  Rat scale = 1;
  if (!rest.empty()) {
    if (rest != "/2") throw std::invalid_argument("unexpected divisor suffix '" + rest + "'");
    scale = rat(1, 2);
  }
  DivisorClass d;
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) d.push_back(parse_rat(item) * scale);
  if (d.size() != kNSRank) throw std::invalid_argument("divisor needs 17 coordinates");
  return d;
}

inline std::vector<DivisorRow> load_divisor_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::vector<DivisorRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    DivisorRow r;
    std::string yes;
    ss >> r.text >> yes >> r.label;
    r.d = parse_divisor(r.text);
    if (yes != "Yes" && yes != "No") throw std::invalid_argument("section column must be Yes or No: " + line);
    r.section = yes == "Yes";
    rows.push_back(r);
  }
  return rows;
}

struct DivisorRowCheck {
  size_t row = 0;
  bool in_ns = false, isotropic = false, primitive = false, section = false, section_matches = false;
  bool ok() const { return in_ns && isotropic && primitive && section_matches; }
};

inline std::vector<DivisorRowCheck> verify_divisor_table(const NSLattice& ns, const std::vector<DivisorRow>& rows) {
  std::vector<DivisorRowCheck> out;
  for (size_t i = 0; i < rows.size(); ++i) {
    DivisorRowCheck c;
    c.row = i + 1;
    c.in_ns = ns.is_in_ns(rows[i].d);
    c.isotropic = pair(rows[i].d, rows[i].d) == 0;
    c.primitive = c.in_ns && ns.is_primitive(rows[i].d);
    if (c.in_ns && c.isotropic && c.primitive) c.section = ns.has_section(rows[i].d);
    c.section_matches = c.section == rows[i].section;
    out.push_back(c);
  }
  return out;
}

}  // namespace kummer
