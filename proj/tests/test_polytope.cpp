#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "kummer/polytope.hpp"

using namespace kummer;

namespace {

RatVec V(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.push_back(Rat(x));
  return v;
}

std::vector<RatVec> orbit_union(const GroupAction& G, const std::vector<RatVec>& reps) {
  std::set<RatVec> s;
  for (const auto& r : reps) {
    auto o = G.orbit(r);
    s.insert(o.begin(), o.end());
  }
  return {s.begin(), s.end()};
}

// checker verdict must equal "orbit union == brute-force vertex set"
void expect_agrees(const HPolyhedron& H, const GroupAction& G, const std::vector<RatVec>& reps,
                   const std::vector<RatVec>& all) {
  auto r = adjacency_complete_check(H, reps, G);
  bool full = orbit_union(G, reps) == all;
  EXPECT_EQ(r.complete, full);
  EXPECT_EQ(r.orbit_points <= all.size(), true);
  for (const auto& m : r.misses) {
    EXPECT_TRUE(is_vertex(H, m.point));
    EXPECT_TRUE(std::binary_search(all.begin(), all.end(), m.point));
  }
}

}  // namespace

TEST(IsVertex, UnitSquare) {
  auto sq = unit_cube(2);
  EXPECT_TRUE(is_vertex(sq, V({0, 0})));
  EXPECT_FALSE(is_vertex(sq, {rat(1, 2), 0}));
  EXPECT_FALSE(is_vertex(sq, V({2, 0})));
}

TEST(Walls, PrimitiveAndImage) {
  auto w = make_wall({rat(2, 3), rat(-4, 3)}, rat(2, 1));
  EXPECT_EQ(w.c, (std::vector<Int>{1, -2}));
  EXPECT_EQ(w.d, 3);
  AffineMap flip{RatMatrix{{-1, 0}, {0, 1}}, {Rat(1), Rat(0)}};
  Wall lo{{1, 0}, 0};
  EXPECT_EQ(image_wall(lo, flip), (Wall{{-1, 0}, 1}));
}

TEST(BruteForce, SmallFamilies) {
  EXPECT_EQ(brute_force_vertices(unit_cube(3)).size(), 8u);
  EXPECT_EQ(brute_force_vertices(standard_simplex(3)).size(), 4u);
  EXPECT_EQ(brute_force_vertices(cross_polytope(3)).size(), 6u);
  for (size_t n = 1; n <= 6; ++n) {
    EXPECT_EQ(brute_force_vertices(unit_cube(n)).size(), size_t(1) << n);
    EXPECT_EQ(brute_force_vertices(standard_simplex(n)).size(), n + 1);
  }
  EXPECT_EQ(brute_force_vertices(cross_polytope(5)).size(), 10u);
  EXPECT_THROW(brute_force_vertices(cross_polytope(6)), PolytopeError);  // 64 walls
  EXPECT_THROW(brute_force_vertices(unit_cube(7)), PolytopeError);
}

TEST(Dualize, CubeRoundTrip) {
  for (size_t n = 2; n <= 4; ++n) {
    // [-1,1]^n
    std::vector<RatVec> cube;
    for (size_t s = 0; s < (size_t(1) << n); ++s) {
      RatVec v(n);
      for (size_t i = 0; i < n; ++i) v[i] = (s >> i & 1) ? 1 : -1;
      cube.push_back(v);
    }
    auto cross = dualize(cube);
    EXPECT_EQ(cross.walls.size(), size_t(1) << n);
    auto W = brute_force_vertices(cross);
    EXPECT_EQ(W.size(), 2 * n);
    std::sort(cube.begin(), cube.end());
    EXPECT_EQ(polar_points(cross), cube);
    auto back = dualize(W);
    std::set<Wall> a(back.walls.begin(), back.walls.end());
    std::vector<Wall> box;
    for (size_t i = 0; i < n; ++i) {
      Wall p{std::vector<Int>(n, 0), 1}, m{std::vector<Int>(n, 0), 1};
      p.c[i] = 1;
      m.c[i] = -1;
      box.push_back(p);
      box.push_back(m);
    }
    EXPECT_EQ(a, std::set<Wall>(box.begin(), box.end()));
  }
}

TEST(Dualize, SimplexAtBarycenter) {
  // vertices of the standard 3-simplex shifted by -(1/4,1/4,1/4), scaled by 4
  std::vector<RatVec> s{V({-1, -1, -1}), V({3, -1, -1}), V({-1, 3, -1}), V({-1, -1, 3})};
  auto d = dualize(s);
  EXPECT_EQ(d.walls.size(), 4u);
  EXPECT_EQ(brute_force_vertices(d).size(), 4u);
}

TEST(Dualize, OriginNotInterior) {
  EXPECT_THROW(dualize({V({0, 0}), V({1, 0}), V({0, 1})}), PolytopeError);
  EXPECT_THROW(dualize({V({1, 0}), V({2, 0}), V({1, 1})}), PolytopeError);
  EXPECT_THROW(dualize({V({-1, 0}), V({1, 0})}), PolytopeError);  // flat in R^2
}

TEST(ExtremeRays, DegenerateApex) {
  // square pyramid apex: four walls through one point in R^3
  RatMatrix A{{1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}};
  auto r = extreme_rays(A);
  EXPECT_EQ(r.size(), 4u);
  for (const auto& d : r) EXPECT_EQ(d[2], 1);
}

TEST(Adjacency, UnitSquare) {
  auto sq = unit_cube(2);
  auto full = adjacency_complete_check(sq, {V({0, 0})}, hyperoctahedral(2, Rat(1)));
  EXPECT_TRUE(full.complete);
  EXPECT_EQ(full.neighbor_counts, std::vector<size_t>{2});
  GroupAction trivial;
  trivial.dim = 2;
  auto part = adjacency_complete_check(sq, {V({0, 0})}, trivial);
  EXPECT_FALSE(part.complete);
  ASSERT_EQ(part.misses.size(), 2u);
  EXPECT_TRUE(part.misses[0].point == V({1, 0}) || part.misses[1].point == V({1, 0}));
}

TEST(Adjacency, DihedralOrderEight) {
  EXPECT_EQ(hyperoctahedral(2, Rat(1)).elements().size(), 8u);
  EXPECT_EQ(hyperoctahedral(3, Rat(1)).elements().size(), 48u);
  EXPECT_EQ(simplex_symmetry(3).elements().size(), 24u);
}

TEST(Adjacency, CubeFamily) {
  for (size_t n = 2; n <= 6; ++n) {
    SCOPED_TRACE(n);
    auto H = unit_cube(n);
    auto all = brute_force_vertices(H);
    auto G = hyperoctahedral(n, Rat(1));
    auto r = adjacency_complete_check(H, {RatVec(n, Rat(0))}, G);
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(r.neighbor_counts[0], n);
    expect_agrees(H, G, {RatVec(n, Rat(0))}, all);
    // permutations only: one orbit per Hamming weight; drop the top weight
    auto P = hyperoctahedral(n);
    std::vector<RatVec> reps;
    for (size_t k = 0; k < n; ++k) {
      RatVec v(n, Rat(0));
      for (size_t i = 0; i < k; ++i) v[i] = 1;
      reps.push_back(v);
    }
    auto bad = adjacency_complete_check(H, reps, P);
    EXPECT_FALSE(bad.complete);
    ASSERT_EQ(bad.misses.size(), 1u);
    EXPECT_EQ(bad.misses[0].point, RatVec(n, Rat(1)));
    expect_agrees(H, P, reps, all);
    reps.push_back(RatVec(n, Rat(1)));
    expect_agrees(H, P, reps, all);
    EXPECT_TRUE(adjacency_complete_check(H, reps, P).complete);
  }
}

TEST(Adjacency, SimplexFamily) {
  for (size_t n = 2; n <= 6; ++n) {
    SCOPED_TRACE(n);
    auto H = standard_simplex(n);
    auto all = brute_force_vertices(H);
    auto G = simplex_symmetry(n);
    std::vector<RatVec> reps{RatVec(n, Rat(0))};
    auto r = adjacency_complete_check(H, reps, G);
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(r.neighbor_counts[0], n);
    expect_agrees(H, G, reps, all);
    // without the cycling map the origin is alone in its orbit
    auto P = hyperoctahedral(n);
    expect_agrees(H, P, reps, all);
    EXPECT_FALSE(adjacency_complete_check(H, reps, P).complete);
  }
}

TEST(Adjacency, CrossPolytopeFamily) {
  for (size_t n = 2; n <= 6; ++n) {
    SCOPED_TRACE(n);
    auto H = cross_polytope(n);
    // oracle: polar of the irredundant cube walls; brute force where in bounds
    std::vector<RatVec> cube_pts;
    for (size_t s = 0; s < (size_t(1) << n); ++s) {
      RatVec v(n);
      for (size_t i = 0; i < n; ++i) v[i] = (s >> i & 1) ? 1 : -1;
      cube_pts.push_back(v);
    }
    auto polar = dualize(cube_pts);
    EXPECT_EQ(std::set<Wall>(H.walls.begin(), H.walls.end()), std::set<Wall>(polar.walls.begin(), polar.walls.end()));
    HPolyhedron box(n, {});
    for (size_t i = 0; i < n; ++i) {
      Wall p{std::vector<Int>(n, 0), 1}, m{std::vector<Int>(n, 0), 1};
      p.c[i] = 1;
      m.c[i] = -1;
      box.walls.push_back(p);
      box.walls.push_back(m);
    }
    auto all = polar_points(box);
    if (H.walls.size() <= 32) EXPECT_EQ(brute_force_vertices(H), all);
    auto G = hyperoctahedral(n, Rat(0));
    RatVec e0(n, Rat(0));
    e0[0] = 1;
    auto r = adjacency_complete_check(H, {e0}, G);
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(r.neighbor_counts[0], 2 * (n - 1));  // every vertex but +-e0
    expect_agrees(H, G, {e0}, all);
    auto noflip = hyperoctahedral(n);
    expect_agrees(H, noflip, {e0}, all);
    EXPECT_FALSE(adjacency_complete_check(H, {e0}, noflip).complete);
  }
}

TEST(Adjacency, RejectsBadInput) {
  auto sq = unit_cube(2);
  EXPECT_THROW(adjacency_complete_check(sq, {{rat(1, 2), 0}}, hyperoctahedral(2)), PolytopeError);
  GroupAction shear;
  shear.dim = 2;
  shear.gens.push_back({RatMatrix{{1, 1}, {0, 1}}, {Rat(0), Rat(0)}});
  EXPECT_FALSE(shear.permutes_walls(sq));
  EXPECT_THROW(adjacency_complete_check(sq, {V({0, 0})}, shear), PolytopeError);
}

TEST(Adjacency, UnboundedIsNotComplete) {
  HPolyhedron quadrant(2, {Wall{{1, 0}, 0}, Wall{{0, 1}, 0}});
  auto r = adjacency_complete_check(quadrant, {V({0, 0})}, hyperoctahedral(2));
  EXPECT_FALSE(r.bounded);
  EXPECT_FALSE(r.complete);
}

TEST(Files, ReadBack) {
  auto dir = std::filesystem::temp_directory_path() / "kummer_poly_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "sq.walls") << "# unit square\n1 0 0\n-1 0 1\n0 1 0\n0 -1 1\n";
  std::ofstream(dir / "sq.v") << "0 0\n";
  std::ofstream(dir / "sq.g") << "0 1\n1 0\n\n-1 0 1\n0 1 0\n";
  auto H = read_walls((dir / "sq.walls").string());
  EXPECT_EQ(H.dim, 2u);
  auto pts = read_points((dir / "sq.v").string(), 2);
  auto G = read_group((dir / "sq.g").string(), 2);
  EXPECT_EQ(G.gens.size(), 2u);
  EXPECT_EQ(G.elements().size(), 8u);
  EXPECT_TRUE(adjacency_complete_check(H, pts, G).complete);
  std::ofstream(dir / "bad.g") << "1 0\n";
  EXPECT_THROW(read_group((dir / "bad.g").string(), 2), PolytopeError);
  EXPECT_THROW(read_walls((dir / "missing").string()), std::ios_base::failure);
  std::filesystem::remove_all(dir);
}

TEST(KummerWalls, Subset) {
  auto H = kummer_wall_subset();
  EXPECT_EQ(H.walls.size(), 32u);
  for (size_t t = 16; t < 32; ++t) {
    int k = 0;
    for (const auto& c : H.walls[t].c) k += c != 0;
    EXPECT_EQ(k, 6);
  }
  // H - N0 - N1
  DivisorClass d(kNSRank, Rat(0));
  d[0] = d[1] = -1;
  d[kH] = 1;
  auto x = normalized_point(d);
  EXPECT_TRUE(check_point(H, x));
  EXPECT_EQ(norm2(x), 2);
  // direct evaluation: 14 node walls and the two tropes through N0 and N1 are tight
  EXPECT_EQ(H.tight(x).size(), 16u);
  EXPECT_EQ(is_vertex(H, x), rank(wall_rows(H, H.tight(x))) == 16);
  RatVec bad(16, Rat(0));
  bad[0] = 2;
  EXPECT_EQ(norm2(bad), 4);
  EXPECT_TRUE(norm2_filter({bad, x}).size() == 1);
}

TEST(KummerWalls, TropeWallTightAtDoubledNode) {
  auto H = kummer_wall_subset();
  RatVec p(16, Rat(0));
  p[0] = 2;
  EXPECT_TRUE(check_point(H, p));
  bool tight_trope = false;
  for (size_t i : H.tight(p)) tight_trope |= i >= 16;
  EXPECT_TRUE(tight_trope);
  p[0] = rat(201, 100);
  EXPECT_FALSE(check_point(H, p));
}

TEST(KummerWalls, YesRowsSatisfyTheSubset) {
  auto rows = load_divisor_table(KUMMER_DATA_DIR "/divisor_table.txt");
  auto H = kummer_wall_subset();
  size_t yes = 0;
  std::vector<RatVec> pts;
  for (const auto& r : rows) {
    if (!r.section) continue;
    ++yes;
    SCOPED_TRACE(r.text);
    auto x = normalized_point(r.d);
    EXPECT_TRUE(check_point(H, x));
    EXPECT_EQ(norm2(x), 2);
    pts.push_back(x);
  }
  EXPECT_GT(yes, 0u);
  EXPECT_EQ(norm2_filter(pts).size(), pts.size());
}

TEST(KummerWalls, NodeGroupPermutesWalls) {
  auto H = kummer_wall_subset();
  auto G = kummer_node_action();
  std::string why;
  EXPECT_TRUE(G.permutes_walls(H, &why)) << why;
  // H - N0 - N1 has 120 images: one per pair of nodes
  DivisorClass d(kNSRank, Rat(0));
  d[0] = d[1] = -1;
  d[kH] = 1;
  EXPECT_EQ(G.orbit(normalized_point(d)).size(), 120u);
}

TEST(KummerWalls, SwitchPermutesWallFunctionals) {
  // in NS coordinates every group generator, the switch included, maps the 32
  // wall classes onto themselves
  KummerGroup K;
  const auto& cls = K.classes();
  std::set<DivisorClass> all(cls.begin(), cls.end());
  for (const auto& g : K.generators()) {
    std::set<DivisorClass> img;
    for (const auto& c : cls) img.insert(K.apply(g.perm, c));
    EXPECT_EQ(img, all) << g.kind;
  }
}
