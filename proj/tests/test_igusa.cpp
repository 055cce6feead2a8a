#include <gtest/gtest.h>

#include "kummer/igusa.hpp"

using namespace kummer;

namespace {
UPoly quintic(const GenusTwoParams& p) {
  UPoly f(Rat(1));
  for (Rat r : std::vector<Rat>{0, 1, p.a, p.b, p.c}) f = f * linear(r);
  return f;
}
}  // namespace

TEST(IgusaClebsch, SigmaValueAt235) {
  auto ic = ic_from_sigma({2, 3, 5});
  EXPECT_EQ(ic.I2, 550);
  EXPECT_EQ(*ic.I5 * *ic.I5, ic.I10);
  // 2*3*5*1*2*4*(-1)*(-2)*3
  EXPECT_EQ(*ic.I5, 1440);
}

TEST(IgusaClebsch, RootSumsMatchSigmaForms) {
  SeededRng rng(7);
  std::vector<GenusTwoParams> ps{{2, 3, 5}, {-1, 4, rat(7, 2)}};
  while (ps.size() < 6) {
    GenusTwoParams p{rng.rational(9), rng.rational(9), rng.rational(9)};
    try {
      validate_params(p);
    } catch (const std::exception&) {
      continue;
    }
    ps.push_back(p);
  }
  for (const auto& p : ps) {
    auto s = ic_from_sigma(p);
    auto r = ic_from_roots(canonical_roots(p));
    EXPECT_EQ(s, r);
    EXPECT_EQ(*s.I5, *r.I5);
  }
}

TEST(IgusaClebsch, SwapFlipsI5) {
  GenusTwoParams p{2, 3, 5};
  auto roots = canonical_roots(p);
  auto base = ic_from_roots(roots);
  std::swap(roots[2], roots[3]);
  auto sw = ic_from_roots(roots);
  EXPECT_EQ(base, sw);
  EXPECT_EQ(*base.I5, -*sw.I5);
  std::swap(roots[0], roots[5]);
  EXPECT_EQ(base, ic_from_roots(roots));
}

TEST(IgusaClebsch, RepeatedRootRejected) {
  std::vector<ProjRoot> r{{Rat(0)}, {Rat(1)}, {Rat(1)}, {Rat(3)}, {Rat(5)}, ProjRoot::inf()};
  EXPECT_THROW(ic_from_roots(r), std::domain_error);
}

TEST(Covariance, Examples) {
  UPoly f = quintic({2, 3, 5});
  EXPECT_TRUE(covariance_check(f, {1, 0, 0, 1}));
  EXPECT_TRUE(covariance_check(f, {2, 0, 0, 1}));
  EXPECT_TRUE(covariance_check(f, {1, 1, 0, 1}));
  EXPECT_TRUE(covariance_check(f, {0, 1, 1, 0}));
}

TEST(Covariance, RandomMobius) {
  SeededRng rng(11);
  UPoly f = quintic({-1, 4, rat(7, 2)});
  int done = 0;
  while (done < 10) {
    std::array<Rat, 4> g{Rat(rng.range(-5, 5)), Rat(rng.range(-5, 5)), Rat(rng.range(-5, 5)), Rat(rng.range(-5, 5))};
    if (g[0] * g[3] - g[1] * g[2] == 0) continue;
    EXPECT_TRUE(covariance_check(f, g));
    ++done;
  }
}

TEST(Normalization, Definitions) {
  auto ic = ic_from_sigma({2, 3, 5});
  auto n = normalize(ic);
  EXPECT_EQ(n.gamma, pow(ic.I2, 5) / ic.I10);
  EXPECT_EQ(n.mu, *ic.I5 / (ic.I2 * ic.I2));
  EXPECT_EQ(n.alpha * ic.I10, pow(ic.I2, 3) * ic.I4);
}
