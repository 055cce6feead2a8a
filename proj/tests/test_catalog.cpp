#include <gtest/gtest.h>

#include <sstream>

#include "kummer/fibration_check.hpp"

using namespace kummer;

namespace {
const std::string kDir = KUMMER_DATA_DIR "/fibrations";

const std::vector<FibrationRecord>& catalog() {
  static const auto cat = load_catalog(kDir);
  return cat;
}

void expect_clean(const GenusTwoParams& p) {
  ParamEnv env = param_env(p);
  for (const auto& rec : catalog()) {
    if (rec.is_variant()) continue;
    SCOPED_TRACE("fibration " + rec.id);
    FibrationAnalysis an;
    try {
      an = analyze_fibration(rec, env);
    } catch (const std::exception& e) {
      ADD_FAILURE() << e.what();
      continue;
    }
    for (const auto& c : an.checks)
      EXPECT_TRUE(c.pass) << c.id << ": expected " << c.expected << ", computed " << c.computed;
  }
}
}  // namespace

TEST(Catalog, LoadsAndOrders) {
  const auto& cat = catalog();
  ASSERT_FALSE(cat.empty());
  for (size_t i = 1; i < cat.size(); ++i) EXPECT_LT(fibration_order(cat[i - 1].id), fibration_order(cat[i].id));
}

TEST(Catalog, ParseErrors) {
  std::istringstream no_id("equation: y^2 = x^3 + t\n");
  EXPECT_THROW(parse_fibration(no_id), CatalogError);
  std::istringstream bad_key("id: 1\nbogus: 3\nequation: y^2 = x^3 + t\n");
  EXPECT_THROW(parse_fibration(bad_key), CatalogError);
  std::istringstream variant("id: 9A\nprincipal: 9\n");
  EXPECT_TRUE(parse_fibration(variant).is_variant());
  EXPECT_THROW(load_catalog("/nonexistent"), CatalogError);
}

TEST(Catalog, EquationShape) {
  auto w = weierstrass_from_equation("y^2 + t*x*y = x^3 - t^2*x + 1", {});
  EXPECT_EQ(w.a[0], UPoly::var());
  EXPECT_EQ(w.a[3], UPoly::monomial(Rat(-1), 2));
  EXPECT_THROW(weierstrass_from_equation("y^2 = x^4 + t", {}), CatalogError);
  EXPECT_THROW(weierstrass_from_equation("y^2 = x^3 + 1/t", {}), CatalogError);
}

TEST(Catalog, PositionsDistinct) {
  for (const auto& p : std::vector<GenusTwoParams>{{2, 3, 5}, {-1, 4, rat(7, 2)}}) {
    auto bad = position_collisions(catalog(), param_env(p));
    EXPECT_TRUE(bad.empty()) << bad.front();
  }
}

TEST(CatalogFibrations, FirstSpecialization) { expect_clean({2, 3, 5}); }
TEST(CatalogFibrations, SecondSpecialization) { expect_clean({-1, 4, rat(7, 2)}); }

TEST(InvariantForm, Fibration24AfterMuScaling) {
  const auto& rec = find_fibration(catalog(), "24");
  for (GenusTwoParams p : {GenusTwoParams{2, 3, 5}, GenusTwoParams{-1, 4, rat(7, 2)}, GenusTwoParams{rat(1, 3), 7, -2},
                           GenusTwoParams{5, rat(-3, 4), 11}, GenusTwoParams{-6, rat(5, 2), rat(2, 9)}}) {
    ParamEnv env = param_env(p);
    EXPECT_TRUE(invariant_form_matches(rec, env));
    // the unscaled equation is not the invariant one
    EXPECT_NE(model_of(rec, env).a, weierstrass_from_equation(rec.invariant_equation, env).a);
  }
}

TEST(InvariantForm, EitherSquareRootOfI10) {
  const auto& rec = find_fibration(catalog(), "24");
  ParamEnv env = param_env({2, 3, 5});
  env["I5"] = -env["I5"];  // the other labeling; alpha, beta, gamma unchanged
  env["mu"] = -env["mu"];
  EXPECT_TRUE(invariant_form_matches(rec, env));
  ParamEnv bad = param_env({2, 3, 5});
  bad["alpha"] += 1;
  EXPECT_FALSE(invariant_form_matches(rec, bad));
  EXPECT_THROW(invariant_form_matches(find_fibration(catalog(), "1"), bad), CatalogError);
}
