#include <gtest/gtest.h>

#include "kummer/lattice.hpp"

using namespace kummer;

TEST(DiscGroup, A1) {
  auto d = disc_group(root_lattice('A', 1));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0], 2);
}

TEST(DiscGroup, D4) {
  // Oracle: SNF of the D4 Gram matrix is diag(1,1,2,2).
  auto d = disc_group(root_lattice('D', 4));
  EXPECT_EQ(d, (std::vector<Int>{2, 2}));
}

TEST(DiscGroup, ProductEqualsDeterminant) {
  for (char k : {'A', 'D', 'E', 'P'})
    for (int n = 1; n <= 8; ++n) {
      RatMatrix g;
      try {
        g = root_lattice(k, n);
      } catch (const std::invalid_argument&) {
        continue;
      }
      Int prod = 1;
      for (auto& f : disc_group(g)) prod *= f;
      EXPECT_EQ(Rat(prod), abs(det(g))) << k << n;
    }
}

TEST(RootLattice, Determinants) {
  EXPECT_EQ(det(root_lattice('P', 2)), 8);
  EXPECT_EQ(det(root_lattice('P', 6)), 256);
  EXPECT_EQ(root_lattice('A', 1), (RatMatrix{{Rat(2)}}));
  EXPECT_EQ(det(root_lattice('E', 6)), 3);
  EXPECT_EQ(det(root_lattice('E', 7)), 2);
  EXPECT_EQ(det(root_lattice('E', 8)), 1);
  EXPECT_EQ(det(root_lattice('D', 9)), 4);
  EXPECT_EQ(det(root_lattice('A', 9)), 10);
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(det(root_lattice('P', n)), Rat(Int(1) << (n - 1)) * (n + 2));
  EXPECT_THROW(root_lattice('E', 5), std::invalid_argument);
  EXPECT_THROW(root_lattice('D', 3), std::invalid_argument);
}

TEST(Dual, PnClosedForm) {
  for (int n = 2; n <= 6; ++n) {
    RatMatrix expect(static_cast<size_t>(n), static_cast<size_t>(n));
    for (size_t i = 0; i < expect.rows; ++i)
      for (size_t j = 0; j < expect.cols; ++j) expect(i, j) = Rat(i == j ? n + 1 : -1) / (2 * n + 4);
    EXPECT_EQ(dual_gram(root_lattice('P', n)), expect) << n;
  }
}

TEST(Dual, ScaleAndDeterminant) {
  GramLattice a3{root_lattice('A', 3), "A3"};
  EXPECT_EQ(dual_and_scale(a3, Rat(1), false).gram, a3.gram);
  auto d = dual_and_scale(a3, Rat(2), true);
  EXPECT_EQ(det(d.gram), 2);
  EXPECT_EQ(d.name, "A3*[2]");
  for (char k : {'A', 'D', 'E'})
    for (int n : {6, 7}) {
      RatMatrix g = root_lattice(k, n);
      EXPECT_EQ(det(dual_gram(g)), 1 / det(g));
    }
}

TEST(ShortVectors, A1) {
  auto sv = short_vectors(root_lattice('A', 1), Rat(2));
  ASSERT_EQ(sv.size(), 1u);
  EXPECT_EQ(sv[0].v, std::vector<Int>{1});
  EXPECT_EQ(sv[0].norm, 2);
}

TEST(ShortVectors, P2) {
  auto sv = short_vectors(root_lattice('P', 2), Rat(3));
  EXPECT_EQ(sv.size(), 2u);
  for (auto& s : sv) EXPECT_EQ(s.norm, 3);
}

TEST(ShortVectors, P6DualScaled) {
  RatMatrix g = dual_gram(root_lattice('P', 6)).scaled(Rat(4));
  auto sv = short_vectors(g, Rat(7, 4));
  ASSERT_EQ(sv.size(), 6u);
  for (auto& s : sv) EXPECT_EQ(s.norm, Rat(7, 4));
  EXPECT_TRUE(short_vectors(g, Rat(3, 2)).empty());
}

TEST(ShortVectors, RejectsIndefinite) {
  RatMatrix g{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  EXPECT_THROW(short_vectors(g, Rat(2)), std::domain_error);
}

TEST(Isometry, Reflexive) {
  RatMatrix g = root_lattice('E', 6);
  EXPECT_TRUE(is_isometric(g, g));
}

TEST(Isometry, Fibration6AgainstA3DualScaled) {
  RatMatrix mw = RatMatrix{{Rat(4), Rat(2), Rat(2)}, {Rat(2), Rat(3), Rat(1)}, {Rat(2), Rat(1), Rat(3)}}.scaled(Rat(1, 2));
  EXPECT_TRUE(is_isometric(mw, parse_lattice_name("A3*[2]")));
}

TEST(Isometry, EqualDeterminantNonIsometric) {
  RatMatrix a{{Rat(2), Rat(0)}, {Rat(0), Rat(6)}};
  RatMatrix b{{Rat(4), Rat(2)}, {Rat(2), Rat(4)}};
  EXPECT_FALSE(is_isometric(a, b));
}

TEST(Isometry, InvariantUnderBasisChange) {
  RatMatrix g = root_lattice('D', 5);
  RatMatrix U = RatMatrix::identity(5);
  U(0, 1) = 1;
  U(2, 4) = -2;
  U(3, 0) = 1;
  RatMatrix h = U.transpose() * g * U;
  EXPECT_TRUE(is_isometric(g, h));
  EXPECT_TRUE(is_isometric(h, g));
}

TEST(LatticeNames, Parse) {
  EXPECT_EQ(parse_lattice_name("<1>^3"), RatMatrix::identity(3));
  EXPECT_EQ(det(parse_lattice_name("P6*[4]")), 16);
  EXPECT_EQ(parse_lattice_name("0").rows, 0u);
  EXPECT_EQ(parse_lattice_name("A2[2/3]+A2*[2]+<1>").rows, 5u);
  EXPECT_EQ(parse_lattice_name("(A4*+A1*)[2]").rows, 5u);
  EXPECT_THROW(parse_lattice_name("Q3"), std::invalid_argument);
}
