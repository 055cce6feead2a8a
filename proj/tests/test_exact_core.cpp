#include <gtest/gtest.h>

#include "kummer/matrix.hpp"
#include "kummer/mpoly.hpp"
#include "kummer/ratfunc.hpp"

using namespace kummer;

namespace {
UPoly P(std::vector<long> c) {
  std::vector<Rat> r;
  for (long x : c) r.push_back(Rat(x));
  return UPoly(r);
}
}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rat("7/2"), rat(7, 2));
  EXPECT_EQ(parse_rat("-4/6"), rat(-2, 3));
  EXPECT_EQ(to_string(rat(6, 4)), "3/2");
  EXPECT_THROW(parse_rat("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rat("x"), std::invalid_argument);
}

TEST(PolyGcd, SharedRoot) {
  // t^2 - 1 and t^2 - 2t + 1 share t - 1.
  EXPECT_EQ(gcd(P({-1, 0, 1}), P({1, -2, 1})), P({-1, 1}));
}

TEST(PolyGcd, WithZero) {
  EXPECT_EQ(gcd(P({4, 2}), UPoly()), P({2, 1}));
  EXPECT_TRUE(gcd(UPoly(), UPoly()).zero());
}

TEST(PolyGcd, DividesBoth) {
  UPoly a = P({1, 2, 3, 4}) * P({-5, 1}) * P({2, 0, 1});
  UPoly b = P({-5, 1}) * P({7, 7, 1}) * P({2, 0, 1});
  UPoly g = gcd(a, b);
  EXPECT_TRUE(divmod(a, g).second.zero());
  EXPECT_TRUE(divmod(b, g).second.zero());
  EXPECT_EQ(g, P({-5, 1}) * P({2, 0, 1}));
}

TEST(PolyGcd, RationalCoefficientsLargeDegree) {
  UPoly common = P({3, -1, 0, 2}).scaled(rat(5, 7));
  UPoly a = common, b = common;
  for (int i = 1; i <= 12; ++i) {
    a = a * P({i, 1});
    b = b * P({-i, 2 * i + 1}).scaled(rat(1, i + 1));
  }
  EXPECT_EQ(gcd(a, b), normalize_unit(common));
}

TEST(PolySqrt, SquaresAndNonSquares) {
  UPoly r = P({-3, 0, 1}).scaled(rat(2, 3)) * P({1, 1});
  auto s = poly_sqrt(r * r);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(*s * *s, r * r);
  EXPECT_GT(s->c.back(), 0);
  EXPECT_FALSE(poly_sqrt(P({1, 0, 2})).has_value());
  EXPECT_FALSE(poly_sqrt(P({1, 1, 1})).has_value());
  EXPECT_FALSE(poly_sqrt(P({0, 1})).has_value());
}

TEST(SquarefreePart, Constructed) {
  // 12 (t-1)^2 (t+2)
  UPoly p = (P({-1, 1}) * P({-1, 1}) * P({2, 1})).scaled(Rat(12));
  auto s = squarefree_part(p);
  EXPECT_EQ(s.s, P({2, 1}));
  EXPECT_EQ(s.r, P({-1, 1}));
  EXPECT_EQ(s.c, Rat(12));
  EXPECT_EQ((s.s * s.r * s.r).scaled(s.c), p);
}

TEST(SquarefreePart, SquarefreeInput) {
  UPoly p = P({3, 0, 6});
  auto s = squarefree_part(p);
  EXPECT_EQ(s.s, normalize_unit(p));
  EXPECT_EQ(s.r, P({1}));
  EXPECT_THROW(squarefree_part(UPoly()), std::invalid_argument);
}

TEST(SquarefreePart, CoprimeToDerivative) {
  UPoly p = pow(P({1, 1}), 3) * pow(P({-2, 0, 1}), 2) * P({5, 1});
  auto s = squarefree_part(p);
  EXPECT_EQ(gcd(s.s, s.s.derivative()).deg(), 0);
  EXPECT_EQ((s.s * s.r * s.r).scaled(s.c), p);
}

TEST(RationalRoots, Mixed) {
  // 6 (t - 1/2)(t + 2/3)(t - 5)(t^2 + 1)
  UPoly p = (P({-1, 2}) * P({2, 3}) * P({-5, 1}) * P({1, 0, 1}));
  auto r = rational_roots(p);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0], rat(-2, 3));
  EXPECT_EQ(r[1], rat(1, 2));
  EXPECT_EQ(r[2], Rat(5));
  EXPECT_TRUE(rational_roots(P({-2, 0, 1})).empty());
  auto z = rational_roots(P({0, 0, 1}));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0], Rat(0));
}

TEST(RationalRoots, CloseRoots) {
  UPoly p = linear(rat(1000, 1001)) * linear(rat(999, 1000)) * linear(rat(-7, 3));
  auto r = rational_roots(p);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[1], rat(999, 1000));
  EXPECT_EQ(r[2], rat(1000, 1001));
}

TEST(RationalRoots, HugeCoefficientsAndRepeats) {
  Rat big = Rat(Int("1267650600228229401496703205376")) / 7;  // 2^100 / 7
  UPoly p = pow(linear(big), 2) * linear(rat(-123456789, 1000003)) * P({3, 0, 0, 0, 1});
  for (int i = 0; i < 12; ++i) p *= P({i * i + 2, 0, 1});
  auto r = rational_roots(p.scaled(rat(5, 11)));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], rat(-123456789, 1000003));
  EXPECT_EQ(r[1], big);
}

TEST(BivariateGcd, OverQu) {
  // (t - u)(t + 1) and (t - u)(t - 2) in Q[u][t]
  UPoly u = UPoly::var();
  BPoly tmu(std::vector<UPoly>{-u, UPoly(Rat(1))});
  BPoly tp1(std::vector<UPoly>{UPoly(Rat(1)), UPoly(Rat(1))});
  BPoly tm2(std::vector<UPoly>{UPoly(Rat(-2)), UPoly(Rat(1))});
  BPoly g = gcd(tmu * tp1, tmu * tm2);
  EXPECT_EQ(g, tmu);
  // Square factors: (t^2 - u)^2 (t - u)
  BPoly q(std::vector<UPoly>{-u, UPoly(Rat(0)), UPoly(Rat(1))});
  auto f = squarefree_factors(q * q * tmu);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0], tmu);
  EXPECT_EQ(f[1], q);
}

TEST(RatFunc, ReduceAndCompose) {
  RatFunc f(P({-1, 0, 1}), P({-1, 1}));
  EXPECT_EQ(f, RatFunc(P({1, 1})));
  RatFunc g = mobius(Rat(1), Rat(0), Rat(1), Rat(1));  // t/(t+1)
  RatFunc h = RatFunc(P({0, 0, 1})).compose(g);
  EXPECT_EQ(h.eval(Rat(2)), rat(4, 9));
  EXPECT_EQ(RatFunc(P({0, 0, 1}), P({1, 1})).ord(P({0, 1})), 2);
  EXPECT_EQ(RatFunc(P({0, 0, 1}), P({1, 1})).ord_inf(), -1);
}

TEST(Smith, Identity) {
  auto s = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(s.D, IntMatrix::identity(3));
}

TEST(Smith, Diagonal) {
  IntMatrix m{{2, 0}, {0, 4}};
  auto s = smith_normal_form(m);
  EXPECT_EQ(s.D(0, 0), 2);
  EXPECT_EQ(s.D(1, 1), 4);
}

TEST(Smith, TransformsUnimodular) {
  IntMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  auto s = smith_normal_form(m);
  EXPECT_EQ(s.U * m * s.V, s.D);
  EXPECT_EQ(abs(det_int(s.U)), 1);
  EXPECT_EQ(abs(det_int(s.V)), 1);
  // Known invariant factors 2, 6, 12.
  EXPECT_EQ(s.D(0, 0), 2);
  EXPECT_EQ(s.D(1, 1), 6);
  EXPECT_EQ(s.D(2, 2), 12);
}

TEST(SolveLinear, Identity) {
  auto s = solve_linear(RatMatrix::identity(2), {rat(1, 2), Rat(3)});
  ASSERT_TRUE(s.consistent);
  EXPECT_EQ(s.particular, (std::vector<Rat>{rat(1, 2), Rat(3)}));
  EXPECT_TRUE(s.kernel.empty());
}

TEST(SolveLinear, Underdetermined) {
  RatMatrix m{{Rat(1), Rat(1)}};
  auto s = solve_linear(m, {Rat(2)});
  ASSERT_TRUE(s.consistent);
  EXPECT_EQ(s.particular, (std::vector<Rat>{Rat(2), Rat(0)}));
  ASSERT_EQ(s.kernel.size(), 1u);
  EXPECT_EQ(s.kernel[0], (std::vector<Rat>{Rat(-1), Rat(1)}));
}

TEST(SolveLinear, Inconsistent) {
  RatMatrix m{{Rat(1), Rat(1)}, {Rat(2), Rat(2)}};
  auto s = solve_linear(m, {Rat(1), Rat(3)});
  EXPECT_FALSE(s.consistent);
}

TEST(Hermite, Membership) {
  IntMatrix m{{2, 0}, {1, 1}};
  auto h = hermite_normal_form(m);
  EXPECT_TRUE(hnf_coordinates(h, {Int(3), Int(1)}).has_value());
  EXPECT_FALSE(hnf_coordinates(h, {Int(1), Int(0)}).has_value());
}

TEST(IdentityCheck, Expansion) {
  MPoly a = MPoly::var(2, 0), b = MPoly::var(2, 1);
  EXPECT_TRUE(identity_check((a + b).pow(2), a * a + (a * b).scaled(Rat(2)) + b * b, 5));
  EXPECT_FALSE(identity_check(a * b, a * b + MPoly(2, Rat(1)), 5));
}

TEST(IdentityCheck, SpecializationAgreesWithExpansion) {
  MPoly a = MPoly::var(3, 0), b = MPoly::var(3, 1), c = MPoly::var(3, 2);
  MPoly lhs = (a + b + c).pow(6), rhs = lhs;
  rhs.add_term({1, 2, 3}, Rat(1));
  // Force the specialization path with threshold 0.
  EXPECT_TRUE(identity_check(lhs, lhs, 4, 3, 0));
  EXPECT_FALSE(identity_check(lhs, rhs, 4, 3, 0));
  EXPECT_FALSE(identity_check(lhs, rhs, 4, 3));
}

TEST(IdentityCheck, GridCertificate) {
  MPoly a = MPoly::var(2, 0), b = MPoly::var(2, 1);
  MPoly d = (a + b).pow(3) - (a.pow(3) + (a * a * b).scaled(Rat(3)) + (a * b * b).scaled(Rat(3)) + b.pow(3));
  EXPECT_TRUE(vanishes_on_grid([&](const std::vector<Rat>& pt) { return is_zero(d.eval(pt)); }, {3, 3}));
  MPoly e = d + a * b;
  EXPECT_FALSE(vanishes_on_grid([&](const std::vector<Rat>& pt) { return is_zero(e.eval(pt)); }, {3, 3}));
}

TEST(MPoly, NestRoundTrip) {
  MPoly a = MPoly::var(2, 0), b = MPoly::var(2, 1);
  MPoly p = a * a * b + b.scaled(rat(1, 2)) - MPoly(2, Rat(3));
  auto n = nest<BPoly>(p, {0, 1});
  EXPECT_EQ(n.deg(), 2);
  EXPECT_EQ(unnest(n, 2, {0, 1}), p);
}
