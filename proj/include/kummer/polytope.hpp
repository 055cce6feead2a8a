#pragma once
// Exact H-polyhedra with a finite affine symmetry group: vertex certification,
// brute-force enumeration for small instances, polarity, and the check that a
// list of vertex-orbit representatives is closed under taking edge neighbors.
// Also the 32 node and trope walls of the Kummer polytope in x_mu = -c_mu/d.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <tuple>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/matrix.hpp"
#include "kummer/ns_model.hpp"
#include "kummer/rational.hpp"

namespace kummer {

using RatVec = std::vector<Rat>;

class PolytopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// c . x + d >= 0 with gcd(c, d) = 1.
struct Wall {
  std::vector<Int> c;
  Int d;
  friend bool operator<(const Wall& a, const Wall& b) { return std::tie(a.c, a.d) < std::tie(b.c, b.d); }
  friend bool operator==(const Wall& a, const Wall& b) { return a.c == b.c && a.d == b.d; }
};

/// Positive rescaling of a rational functional to a primitive integer wall.
inline Wall make_wall(const RatVec& c, const Rat& d) {
  Int l = d.get_den();
  for (const auto& x : c) l = lcm(l, Int(x.get_den()));
  Wall w;
  Int g = 0;
  for (const auto& x : c) {
    w.c.push_back(Int(x * l));
    g = gcd(g, w.c.back());
  }
  w.d = Int(d * l);
  g = gcd(g, w.d);
  if (g == 0) throw PolytopeError("zero wall");
  for (auto& x : w.c) x /= g;
  w.d /= g;
  return w;
}

inline Rat wall_value(const Wall& w, const RatVec& x) {
  Rat s = w.d;
  for (size_t i = 0; i < x.size(); ++i) s += w.c[i] * x[i];
  return s;
}

struct HPolyhedron {
  size_t dim = 0;
  std::vector<Wall> walls;

  HPolyhedron() = default;
  HPolyhedron(size_t n, std::vector<Wall> ws) : dim(n), walls(std::move(ws)) {
    for (auto& w : walls) {
      if (w.c.size() != dim) throw PolytopeError("wall dimension mismatch");
      RatVec c(w.c.begin(), w.c.end());
      w = make_wall(c, Rat(w.d));
    }
  }
  bool contains(const RatVec& x) const {
    for (const auto& w : walls)
      if (wall_value(w, x) < 0) return false;
    return true;
  }
  std::vector<size_t> tight(const RatVec& x) const {
    std::vector<size_t> t;
    for (size_t i = 0; i < walls.size(); ++i)
      if (wall_value(walls[i], x) == 0) t.push_back(i);
    return t;
  }
};

inline RatMatrix wall_rows(const HPolyhedron& H, const std::vector<size_t>& idx) {
  RatMatrix m(idx.size(), H.dim);
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < H.dim; ++j) m(i, j) = H.walls[idx[i]].c[j];
  return m;
}

inline bool is_vertex(const HPolyhedron& H, const RatVec& p) {
  if (p.size() != H.dim) throw PolytopeError("point dimension mismatch");
  if (!H.contains(p)) return false;
  auto t = H.tight(p);
  return t.size() >= H.dim && rank(wall_rows(H, t)) == H.dim;
}

struct BruteForceLimits {
  size_t max_dim = 6;
  size_t max_walls = 32;
};

/// Every dim-subset of walls, solved and filtered; sorted, duplicates removed.
inline std::vector<RatVec> brute_force_vertices(const HPolyhedron& H, BruteForceLimits lim = {}) {
  const size_t n = H.dim, m = H.walls.size();
  if (n == 0 || n > lim.max_dim || m > lim.max_walls)
    throw PolytopeError("brute force limited to dimension <= " + std::to_string(lim.max_dim) + " and <= " +
                        std::to_string(lim.max_walls) + " walls");
  std::set<RatVec> out;
  std::vector<size_t> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  if (m < n) return {};
  for (;;) {
    RatMatrix aug(n, n + 1);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) aug(i, j) = H.walls[pick[i]].c[j];
      aug(i, n) = -Rat(H.walls[pick[i]].d);
    }
    auto piv = rref(aug);
    if (piv.size() == n && piv.back() == n - 1) {
      RatVec x(n);
      for (size_t i = 0; i < n; ++i) x[i] = aug(i, n);
      if (H.contains(x)) out.insert(x);
    }
    size_t k = n;
    while (k > 0 && pick[k - 1] == m - n + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (size_t i = k; i < n; ++i) pick[i] = pick[i - 1] + 1;
  }
  return {out.begin(), out.end()};
}

namespace detail {

inline RatVec primitive_direction(RatVec v) {
  Int l = 1, g = 0;
  for (const auto& x : v) l = lcm(l, Int(x.get_den()));
  for (auto& x : v) {
    x *= l;
    g = gcd(g, x.get_num());
  }
  if (g != 0)
    for (auto& x : v) x /= g;
  return v;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

/// Extreme rays of the pointed cone {d : A d >= 0}, by double description with
/// the algebraic adjacency test. Rays are primitive integer vectors. A cone
/// that is not pointed throws; the zero cone returns no rays.
inline std::vector<RatVec> extreme_rays(const RatMatrix& A) {
  const size_t n = A.cols;
  std::vector<RatVec> rows;
  for (size_t i = 0; i < A.rows; ++i) rows.push_back(A.row(i));
  // greedy basis of rows
  std::vector<size_t> basis, rest;
  {
    RatMatrix acc(0, n);
    for (size_t i = 0; i < rows.size(); ++i) {
      RatMatrix t(acc.rows + 1, n);
      for (size_t r = 0; r < acc.rows; ++r)
        for (size_t j = 0; j < n; ++j) t(r, j) = acc(r, j);
      for (size_t j = 0; j < n; ++j) t(acc.rows, j) = rows[i][j];
      if (basis.size() < n && rank(t) == acc.rows + 1) {
        basis.push_back(i);
        acc = t;
      } else {
        rest.push_back(i);
      }
    }
  }
  if (basis.size() < n) throw PolytopeError("cone is not pointed");
  RatMatrix B(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) B(i, j) = rows[basis[i]][j];
  RatMatrix Binv = inverse(B);
  std::vector<RatVec> rays;
  for (size_t j = 0; j < n; ++j) {
    RatVec r(n);
    for (size_t i = 0; i < n; ++i) r[i] = Binv(i, j);
    rays.push_back(detail::primitive_direction(r));
  }
  std::vector<size_t> done = basis;
  auto adjacent = [&](const RatVec& p, const RatVec& q) {
    std::vector<RatVec> common;
    for (size_t k : done)
      if (detail::dot(rows[k], p) == 0 && detail::dot(rows[k], q) == 0) common.push_back(rows[k]);
    if (common.size() + 2 < n) return false;
    return rank(RatMatrix::from_rows(common)) == n - 2;
  };
  for (size_t k : rest) {
    std::vector<RatVec> pos, neg, next;
    for (auto& r : rays) {
      Rat s = detail::dot(rows[k], r);
      if (s > 0) pos.push_back(r);
      else if (s < 0) neg.push_back(r);
      else next.push_back(r);
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        if (!adjacent(p, q)) continue;
        Rat sp = detail::dot(rows[k], p), sq = detail::dot(rows[k], q);
        RatVec r(n);
        for (size_t j = 0; j < n; ++j) r[j] = sp * q[j] - sq * p[j];
        next.push_back(detail::primitive_direction(r));
      }
    next.insert(next.end(), pos.begin(), pos.end());
    rays = std::move(next);
    done.push_back(k);
  }
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  return rays;
}

/// Polar {y : v . y <= 1 for all v}; requires 0 in the interior of conv(V).
inline HPolyhedron dualize(const std::vector<RatVec>& V) {
  if (V.empty()) throw PolytopeError("no points to dualize");
  const size_t n = V[0].size();
  RatMatrix A(V.size(), n);
  for (size_t i = 0; i < V.size(); ++i) {
    if (V[i].size() != n) throw PolytopeError("point dimension mismatch");
    for (size_t j = 0; j < n; ++j) A(i, j) = -V[i][j];
  }
  // 0 is interior iff no nonzero y has v . y <= 0 for every v
  bool interior = rank(A) == n && extreme_rays(A).empty();
  if (!interior) throw PolytopeError("origin is not interior; translate the points first");
  std::set<Wall> ws;
  for (const auto& v : V) {
    RatVec c(n);
    for (size_t j = 0; j < n; ++j) c[j] = -v[j];
    ws.insert(make_wall(c, 1));
  }
  return HPolyhedron(n, {ws.begin(), ws.end()});
}

/// Polar points -c/d of walls with d > 0: the vertices of the polar when the
/// walls are irredundant.
inline std::vector<RatVec> polar_points(const HPolyhedron& H) {
  std::set<RatVec> out;
  for (const auto& w : H.walls) {
    if (w.d <= 0) throw PolytopeError("origin is not interior");
    RatVec p(H.dim);
    for (size_t j = 0; j < H.dim; ++j) p[j] = -Rat(w.c[j]) / Rat(w.d);
    out.insert(p);
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Symmetry.

/// x -> M x + b.
struct AffineMap {
  RatMatrix M;
  RatVec b;
  RatVec operator()(const RatVec& x) const {
    RatVec y = M.apply(x);
    for (size_t i = 0; i < y.size(); ++i) y[i] += b[i];
    return y;
  }
};

/// Image of a wall under g: c M^-1 y + d - c M^-1 b >= 0.
inline Wall image_wall(const Wall& w, const AffineMap& g) {
  RatMatrix Minv = inverse(g.M);
  const size_t n = w.c.size();
  RatVec c(n, Rat(0));
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < n; ++i) c[j] += w.c[i] * Minv(i, j);
  Rat d = w.d;
  for (size_t j = 0; j < n; ++j) d -= c[j] * g.b[j];
  return make_wall(c, d);
}

/// Generators; the group is what they generate, so closure holds by construction.
struct GroupAction {
  size_t dim = 0;
  std::vector<AffineMap> gens;

  /// Every generator is invertible and maps the wall list bijectively onto itself.
  bool permutes_walls(const HPolyhedron& H, std::string* why = nullptr) const {
    std::set<Wall> all(H.walls.begin(), H.walls.end());
    for (size_t k = 0; k < gens.size(); ++k) {
      std::set<Wall> img;
      try {
        for (const auto& w : H.walls) img.insert(image_wall(w, gens[k]));
      } catch (const std::domain_error&) {
        if (why) *why = "generator " + std::to_string(k) + " is singular";
        return false;
      }
      if (img != all) {
        if (why) *why = "generator " + std::to_string(k) + " does not permute the walls";
        return false;
      }
    }
    return true;
  }

  std::vector<RatVec> orbit(const RatVec& p, size_t bound = 2000000) const {
    std::set<RatVec> seen{p};
    std::vector<RatVec> queue{p};
    for (size_t i = 0; i < queue.size(); ++i)
      for (const auto& g : gens) {
        auto q = g(queue[i]);
        if (seen.insert(q).second) {
          if (seen.size() > bound) throw PolytopeError("orbit exceeds bound");
          queue.push_back(q);
        }
      }
    return {seen.begin(), seen.end()};
  }

  /// All group elements as (M, b); only for small groups.
  std::vector<AffineMap> elements(size_t bound = 100000) const {
    auto key = [](const AffineMap& g) {
      RatVec k = g.M.a;
      k.insert(k.end(), g.b.begin(), g.b.end());
      return k;
    };
    AffineMap id{RatMatrix::identity(dim), RatVec(dim, Rat(0))};
    std::set<RatVec> seen{key(id)};
    std::vector<AffineMap> out{id};
    for (size_t i = 0; i < out.size(); ++i)
      for (const auto& g : gens) {
        AffineMap h{g.M * out[i].M, g(out[i].b)};
        if (seen.insert(key(h)).second) {
          if (out.size() >= bound) throw PolytopeError("group exceeds bound");
          out.push_back(h);
        }
      }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Adjacency completeness.

struct OrbitMiss {
  size_t representative = 0;
  RatVec point;
};

struct AdjacencyReport {
  bool complete = false;
  bool bounded = true;
  std::vector<size_t> neighbor_counts;  // per representative
  size_t total_neighbors = 0;
  size_t orbit_points = 0;              // size of the union of orbits
  std::vector<OrbitMiss> misses;
};

/// Edge neighbors of a vertex: step along each extreme ray of its tangent cone
/// until a wall stops it. Unbounded directions are skipped and flagged.
inline std::vector<RatVec> edge_neighbors(const HPolyhedron& H, const RatVec& p, bool* bounded = nullptr) {
  auto rays = extreme_rays(wall_rows(H, H.tight(p)));
  std::vector<RatVec> out;
  for (const auto& d : rays) {
    std::optional<Rat> step;
    for (const auto& w : H.walls) {
      Rat cd = 0;
      for (size_t j = 0; j < H.dim; ++j) cd += w.c[j] * d[j];
      if (cd >= 0) continue;
      Rat s = wall_value(w, p) / -cd;
      if (!step || s < *step) step = s;
    }
    if (!step) {
      if (bounded) *bounded = false;
      continue;
    }
    RatVec q(H.dim);
    for (size_t j = 0; j < H.dim; ++j) q[j] = p[j] + *step * d[j];
    out.push_back(q);
  }
  return out;
}

inline AdjacencyReport adjacency_complete_check(const HPolyhedron& H, const std::vector<RatVec>& reps,
                                                const GroupAction& G) {
  for (size_t i = 0; i < reps.size(); ++i)
    if (!is_vertex(H, reps[i])) throw PolytopeError("representative " + std::to_string(i) + " is not a vertex");
  std::string why;
  if (!G.permutes_walls(H, &why)) throw PolytopeError(why);
  std::set<RatVec> known;
  for (const auto& r : reps) {
    auto o = G.orbit(r);
    known.insert(o.begin(), o.end());
  }
  AdjacencyReport rep;
  rep.orbit_points = known.size();
  std::set<RatVec> missed;
  for (size_t i = 0; i < reps.size(); ++i) {
    auto nb = edge_neighbors(H, reps[i], &rep.bounded);
    rep.neighbor_counts.push_back(nb.size());
    rep.total_neighbors += nb.size();
    for (auto& q : nb)
      if (!known.count(q) && missed.insert(q).second) rep.misses.push_back({i, q});
  }
  rep.complete = rep.bounded && rep.misses.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Files: walls "c0 .. c_{n-1} d", points "p/q ...", group blocks of n rows with
// n (linear) or n+1 (last column = translation) entries, blank-line separated.

namespace detail {

inline std::vector<std::vector<std::string>> token_lines(const std::string& path, bool keep_blank) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    std::stringstream ss(line);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    if (!toks.empty() || keep_blank) out.push_back(toks);
  }
  return out;
}

}  // namespace detail

inline HPolyhedron read_walls(const std::string& path) {
  std::vector<Wall> ws;
  size_t n = 0;
  for (const auto& toks : detail::token_lines(path, false)) {
    if (toks.size() < 2) throw PolytopeError(path + ": wall needs coefficients and an offset");
    if (n == 0) n = toks.size() - 1;
    if (toks.size() != n + 1) throw PolytopeError(path + ": inconsistent wall length");
    Wall w;
    for (size_t i = 0; i < n; ++i) w.c.push_back(Int(toks[i]));
    w.d = Int(toks[n]);
    ws.push_back(w);
  }
  if (ws.empty()) throw PolytopeError(path + ": no walls");
  return HPolyhedron(n, ws);
}

inline std::vector<RatVec> read_points(const std::string& path, size_t dim) {
  std::vector<RatVec> out;
  for (const auto& toks : detail::token_lines(path, false)) {
    if (toks.size() != dim) throw PolytopeError(path + ": point has wrong dimension");
    RatVec p;
    for (const auto& t : toks) p.push_back(parse_rat(t));
    out.push_back(p);
  }
  return out;
}

inline GroupAction read_group(const std::string& path, size_t dim) {
  GroupAction G;
  G.dim = dim;
  std::vector<std::vector<std::string>> block;
  auto flush = [&] {
    if (block.empty()) return;
    if (block.size() != dim) throw PolytopeError(path + ": group block needs " + std::to_string(dim) + " rows");
    AffineMap g{RatMatrix(dim, dim), RatVec(dim, Rat(0))};
    for (size_t i = 0; i < dim; ++i) {
      if (block[i].size() != dim && block[i].size() != dim + 1) throw PolytopeError(path + ": bad group row");
      for (size_t j = 0; j < dim; ++j) g.M(i, j) = parse_rat(block[i][j]);
      if (block[i].size() == dim + 1) g.b[i] = parse_rat(block[i][dim]);
    }
    G.gens.push_back(g);
    block.clear();
  };
  for (const auto& toks : detail::token_lines(path, true)) {
    if (toks.empty()) flush();
    else block.push_back(toks);
  }
  flush();
  return G;
}

// ---------------------------------------------------------------------------
// Synthetic families.

inline HPolyhedron unit_cube(size_t n) {  // [0,1]^n
  std::vector<Wall> ws;
  for (size_t i = 0; i < n; ++i) {
    Wall lo{std::vector<Int>(n, 0), 0}, hi{std::vector<Int>(n, 0), 1};
    lo.c[i] = 1;
    hi.c[i] = -1;
    ws.push_back(lo);
    ws.push_back(hi);
  }
  return HPolyhedron(n, ws);
}

inline HPolyhedron standard_simplex(size_t n) {  // x >= 0, sum x <= 1
  std::vector<Wall> ws;
  for (size_t i = 0; i < n; ++i) {
    Wall w{std::vector<Int>(n, 0), 0};
    w.c[i] = 1;
    ws.push_back(w);
  }
  ws.push_back({std::vector<Int>(n, -1), 1});
  return HPolyhedron(n, ws);
}

inline HPolyhedron cross_polytope(size_t n) {  // sum |x_i| <= 1
  std::vector<Wall> ws;
  for (size_t s = 0; s < (size_t(1) << n); ++s) {
    Wall w{std::vector<Int>(n, 0), 1};
    for (size_t i = 0; i < n; ++i) w.c[i] = (s >> i & 1) ? 1 : -1;
    ws.push_back(w);
  }
  return HPolyhedron(n, ws);
}

/// Coordinate permutations (transposition and n-cycle) and, if flip is set,
/// x_0 -> center - x_0.
inline GroupAction hyperoctahedral(size_t n, std::optional<Rat> flip_center = std::nullopt, bool permute = true) {
  GroupAction G;
  G.dim = n;
  auto perm = [&](const std::vector<size_t>& p) {
    AffineMap g{RatMatrix(n, n), RatVec(n, Rat(0))};
    for (size_t i = 0; i < n; ++i) g.M(p[i], i) = 1;
    return g;
  };
  if (permute && n > 1) {
    std::vector<size_t> t(n), cyc(n);
    std::iota(t.begin(), t.end(), 0);
    std::swap(t[0], t[1]);
    for (size_t i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    G.gens.push_back(perm(t));
    if (n > 2) G.gens.push_back(perm(cyc));
  }
  if (flip_center) {
    AffineMap f{RatMatrix::identity(n), RatVec(n, Rat(0))};
    f.M(0, 0) = -1;
    f.b[0] = *flip_center;
    G.gens.push_back(f);
  }
  return G;
}

/// Coordinate permutations of the simplex vertices, plus the affine map that
/// cycles e_0 -> e_1 -> ... -> e_{n-1} -> 0 -> e_0.
inline GroupAction simplex_symmetry(size_t n) {
  GroupAction G = hyperoctahedral(n, std::nullopt, true);
  AffineMap g{RatMatrix(n, n), RatVec(n, Rat(0))};
  // x -> (1 - sum x, x_0, ..., x_{n-2})
  for (size_t j = 0; j < n; ++j) g.M(0, j) = -1;
  g.b[0] = 1;
  for (size_t i = 1; i < n; ++i) g.M(i, i - 1) = 1;
  G.gens.push_back(g);
  return G;
}

// ---------------------------------------------------------------------------
// The Kummer wall subset in x_mu = -c_mu / d for D = sum c_mu N_mu + d H.

inline HPolyhedron kummer_wall_subset(const std::array<std::array<bool, 16>, 16>& inc = trope_incidence()) {
  std::vector<Wall> ws;
  for (size_t i = 0; i < 16; ++i) {  // D . N_i >= 0
    Wall w{std::vector<Int>(16, 0), 0};
    w.c[i] = 1;
    ws.push_back(w);
  }
  for (size_t t = 0; t < 16; ++t) {  // D . T_t >= 0
    Wall w{std::vector<Int>(16, 0), 2};
    for (size_t n = 0; n < 16; ++n)
      if (inc[t][n]) w.c[n] = -1;
    ws.push_back(w);
  }
  return HPolyhedron(16, ws);
}

inline RatVec normalized_point(const DivisorClass& D) {
  if (D.size() != kNSRank || D[kH] == 0) throw PolytopeError("class needs a nonzero H coefficient");
  RatVec x(16);
  for (size_t i = 0; i < 16; ++i) x[i] = -D[i] / D[kH];
  return x;
}

inline bool check_point(const HPolyhedron& H, const RatVec& x) {
  if (x.size() != H.dim) throw PolytopeError("point dimension mismatch");
  return H.contains(x);
}

inline Rat norm2(const RatVec& x) { return detail::dot(x, x); }

inline std::vector<RatVec> norm2_filter(const std::vector<RatVec>& pts) {
  std::vector<RatVec> out;
  for (const auto& p : pts)
    if (norm2(p) == 2) out.push_back(p);
  return out;
}

/// The node-permuting generators of the finite group, as permutation matrices
/// on x (the switch is projective in these coordinates and is left out).
inline GroupAction kummer_node_action(const KummerGroup& K = KummerGroup()) {
  GroupAction G;
  G.dim = 16;
  for (const auto& iso : K.generators()) {
    if (iso.kind == "switch") continue;
    AffineMap g{RatMatrix(16, 16), RatVec(16, Rat(0))};
    for (size_t n = 0; n < 16; ++n) g.M(iso.perm[n], n) = 1;
    G.gens.push_back(g);
  }
  return G;
}

}  // namespace kummer
