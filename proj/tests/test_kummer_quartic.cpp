#include <gtest/gtest.h>

#include "kummer/kummer_quartic.hpp"

using namespace kummer;

namespace {
const GenusTwoParams kP{2, 3, 5};
const GenusTwoParams kQ{-1, 4, rat(7, 2)};
}  // namespace

TEST(Quartic, ParameterFreeK2) {
  auto q = build_quartic(kP);
  MPoly z1 = MPoly::var(3, 0), z2 = MPoly::var(3, 1), z3 = MPoly::var(3, 2);
  EXPECT_EQ(q.K2, z2 * z2 - (z1 * z3).scaled(Rat(4)));
}

TEST(Quartic, Z1QuarticCoefficient) {
  auto q = build_quartic(kP);
  auto it = q.K0.terms.find({4, 0, 0});
  ASSERT_NE(it, q.K0.terms.end());
  EXPECT_EQ(it->second, Rat(900));
}

TEST(Quartic, Degrees) {
  auto q = build_quartic(kQ);
  EXPECT_EQ(q.K2.total_degree(), 2);
  EXPECT_EQ(q.K1.total_degree(), 3);
  EXPECT_EQ(q.K0.total_degree(), 4);
}

TEST(Quartic, RejectsDegenerateParams) {
  EXPECT_THROW(build_quartic({2, 2, 5}), std::invalid_argument);
  EXPECT_THROW(build_quartic({1, 3, 5}), std::invalid_argument);
  EXPECT_THROW(build_quartic({0, 3, 5}), std::invalid_argument);
  EXPECT_THROW(parse_params("2,3"), std::invalid_argument);
  EXPECT_EQ(parse_params("-1,4,7/2").c, rat(7, 2));
}

TEST(Quartic, NodeAndTropeCoordinates) {
  auto nt = nodes_and_tropes(kP);
  EXPECT_EQ(nt.nodes[2], (Point4{1 - 1, 1, 1, 1}));
  // n45 = [1 : b+c : bc : bc(a+1)]
  EXPECT_EQ(nt.nodes[15], (Point4{1, 8, 15, 45}));
  // T12 = [-abc : 0 : -1 : 1]
  EXPECT_EQ(nt.tropes[6], (Point4{-30, 0, -1, 1}));
}

TEST(Quartic, OriginNodeIsSingular) {
  MPoly f = build_quartic(kP).full();
  std::vector<Rat> n0{0, 0, 0, 1};
  EXPECT_EQ(f.eval(n0), 0);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(f.derivative(i).eval(n0), 0);
}

TEST(Quartic, TropeOneNodes) {
  auto inc = incidence(nodes_and_tropes(kP));
  std::vector<std::string> on;
  for (size_t n = 0; n < 16; ++n)
    if (inc[1][n]) on.push_back(node_labels()[n]);
  EXPECT_EQ(on, (std::vector<std::string>{"0", "1", "12", "13", "14", "15"}));
}

TEST(Quartic, ConfigurationBothSpecializations) {
  for (const auto& p : {kP, kQ}) {
    auto rep = verify_configuration(build_quartic(p), nodes_and_tropes(p));
    EXPECT_TRUE(rep.ok) << (rep.failures.empty() ? "" : rep.failures[0]);
    for (int s : rep.trope_sizes) EXPECT_EQ(s, 6);
    for (int s : rep.node_degrees) EXPECT_EQ(s, 6);
  }
}

TEST(Quartic, SquareDetection) {
  MPoly x = MPoly::var(3, 0), y = MPoly::var(3, 1), z = MPoly::var(3, 2);
  MPoly q = x * x + (y * z).scaled(Rat(3)) - z * z;
  EXPECT_TRUE(is_constant_times_square((q * q).scaled(Rat(-5))));
  EXPECT_FALSE(is_constant_times_square(q * q + x * y * z * z));
  EXPECT_FALSE(is_constant_times_square(x * y * y * y));
  EXPECT_TRUE(is_constant_times_square(x * x * z * z));
}

TEST(Quartic, FibrationOneDerivation) {
  for (const auto& p : {kP, kQ}) {
    auto d = derive_fibration_one(build_quartic(p), p);
    EXPECT_TRUE(d.intermediate_matches);
    EXPECT_TRUE(d.cubic_matches);
  }
}

TEST(Quartic, IntermediateLeadingFactor) {
  auto d = derive_fibration_one(build_quartic(kP), kP);
  // Setting t = 0 kills the intermediate model.
  EXPECT_TRUE(d.eta_squared.substitute(0, Rat(0)).zero());
}
