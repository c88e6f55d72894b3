#include <gtest/gtest.h>

#include <cmath>

#include "errors.hpp"
#include "stability.hpp"
#include "tableaux.hpp"

using namespace relaxssp;

TEST(Catalog, ContainsTwelveSchemes) {
  EXPECT_EQ(ssp_catalog().size(), 12u);
  for (auto [s, p] : ssp_catalog()) {
    const auto scheme = ssp_tableau(s, p);
    EXPECT_EQ(scheme.stages(), s);
    EXPECT_EQ(scheme.order(), p);
    ASSERT_TRUE(scheme.shu_osher.has_value());
  }
}

TEST(Catalog, EveryEntryMeetsItsDeclaredOrder) {
  for (auto [s, p] : ssp_catalog()) {
    const auto check = validate_order(ssp_tableau(s, p).butcher, p);
    EXPECT_TRUE(check.passed) << "ssp(" << s << "," << p << ")";
    for (const auto& r : check.residuals) EXPECT_LE(std::abs(r.residual), 1e-12) << r.condition;
  }
}

TEST(Catalog, SecondOrderSchemesAreNotThirdOrder) {
  for (int s = 2; s <= 5; ++s) {
    const auto check = validate_order(ssp_tableau(s, 2).butcher, 3);
    EXPECT_FALSE(check.passed) << s;
  }
}

TEST(Catalog, Ssp33ButcherForm) {
  const auto t = ssp_tableau(3, 3).butcher;
  ASSERT_EQ(t.a.size(), 3u);
  EXPECT_DOUBLE_EQ(t.a[1][0], 1.0);
  EXPECT_DOUBLE_EQ(t.a[2][0], 0.25);
  EXPECT_DOUBLE_EQ(t.a[2][1], 0.25);
  EXPECT_NEAR(t.b[0], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(t.b[1], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(t.b[2], 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(t.c[2], 0.5);
}

TEST(Catalog, FirstOrderFamilyIsRepeatedEuler) {
  // R(z) = (1 + z/s)^s
  for (int s = 1; s <= 5; ++s) {
    const auto r = stability_polynomial(ssp_tableau(s, 1).butcher);
    for (double z : {-3.0, -0.7, 0.4}) {
      EXPECT_NEAR(r(z), std::pow(1.0 + z / s, s), 1e-13) << s;
    }
  }
}

TEST(Catalog, UnknownPairListsCatalog) {
  try {
    ssp_tableau(6, 3);
    FAIL() << "expected CatalogError";
  } catch (const CatalogError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("ssp(6,3)"), std::string::npos);
    EXPECT_NE(msg.find("ssp(5,3)"), std::string::npos);
  }
  EXPECT_THROW(ssp_tableau(2, 3), CatalogError);
  EXPECT_THROW(ssp_tableau(1, 2), CatalogError);
}

TEST(SchemeName, ParsesCaseInsensitively) {
  EXPECT_EQ(scheme_by_name("SSP( 3 , 3 )").stages(), 3);
  EXPECT_EQ(scheme_by_name("ssp(5,2)").order(), 2);
  EXPECT_THROW(scheme_by_name("rk4"), CatalogError);
  EXPECT_THROW(scheme_by_name("ssp(9,1)"), CatalogError);
}

TEST(LambdaSsp, MatchesKnownCoefficients) {
  for (int s = 1; s <= 5; ++s) EXPECT_DOUBLE_EQ(lambda_ssp(*ssp_tableau(s, 1).shu_osher), s);
  for (int s = 2; s <= 5; ++s) EXPECT_NEAR(lambda_ssp(*ssp_tableau(s, 2).shu_osher), s - 1, 1e-14);
  EXPECT_NEAR(lambda_ssp(*ssp_tableau(3, 3).shu_osher), 1.0, 1e-14);
  EXPECT_NEAR(lambda_ssp(*ssp_tableau(4, 3).shu_osher), 2.0, 1e-14);
  EXPECT_NEAR(lambda_ssp(*ssp_tableau(5, 3).shu_osher), 2.65, 0.01);
}

TEST(LambdaSsp, DegenerateSchemeThrows) {
  ShuOsherForm f;
  f.stages = 1;
  f.alpha = {{1.0}};
  f.beta = {{0.0}};
  EXPECT_THROW(lambda_ssp(f), AnalysisError);
}

TEST(ShuOsher, RejectsNegativeAlphaAndBadRowSums) {
  ShuOsherForm f;
  f.stages = 2;
  f.alpha = {{1.0}, {1.5, -0.5}};
  f.beta = {{1.0}, {0.0, 0.5}};
  EXPECT_THROW(check_shu_osher(f), ConfigError);
  f.alpha = {{1.0}, {0.5, 0.4}};
  EXPECT_THROW(check_shu_osher(f), ConfigError);
  f.alpha = {{1.0}, {0.5, 0.5}};
  EXPECT_NO_THROW(check_shu_osher(f));
}

TEST(Tableau, RejectsInconsistentAbscissae) {
  ButcherTableau t = ssp_tableau(2, 2).butcher;
  t.c[1] = 0.9;
  EXPECT_THROW(check_tableau(t), ConfigError);
}

TEST(Tableau, QuadratureResidual) {
  const auto t = ssp_tableau(3, 3).butcher;
  EXPECT_NEAR(quadrature_condition_residual(t, 1), 0.0, 1e-15);
  EXPECT_NEAR(quadrature_condition_residual(t, 3), 0.0, 1e-15);
  // b . c^3 = 1/6 + 2/3 * 1/8 = 1/4
  EXPECT_NEAR(quadrature_condition_residual(t, 4), 0.0, 1e-15);
  EXPECT_NEAR(quadrature_condition_residual(ssp_tableau(2, 2).butcher, 3), 0.5 - 1.0 / 3.0, 1e-15);
}

TEST(Tableau, ValidateOrderRange) {
  const auto t = ssp_tableau(3, 3).butcher;
  EXPECT_THROW(validate_order(t, 0), ConfigError);
  EXPECT_THROW(validate_order(t, 4), ConfigError);
  EXPECT_EQ(validate_order(t, 3).residuals.size(), 4u);
  EXPECT_EQ(validate_order(t, 1).residuals.size(), 1u);
}

TEST(Json, ButcherRoundTrip) {
  for (auto [s, p] : ssp_catalog()) {
    const auto t = ssp_tableau(s, p).butcher;
    const auto back = butcher_from_json(nlohmann::json::parse(to_json(t).dump()));
    EXPECT_EQ(back.stages, t.stages);
    EXPECT_EQ(back.order, t.order);
    EXPECT_EQ(back.a, t.a);
    EXPECT_EQ(back.b, t.b);
    EXPECT_EQ(back.c, t.c);
  }
}

TEST(Json, ShuOsherRoundTripRebuildsButcher) {
  const auto scheme = ssp_tableau(5, 3);
  const auto j = to_json(*scheme.shu_osher, 3);
  const auto back = scheme_from_json(j, "copy");
  EXPECT_EQ(back.name, "copy");
  ASSERT_TRUE(back.shu_osher);
  EXPECT_EQ(back.shu_osher->alpha, scheme.shu_osher->alpha);
  EXPECT_EQ(back.butcher.b, scheme.butcher.b);
}

TEST(Json, ButcherWithoutAbscissae) {
  const auto j = nlohmann::json::parse(R"({"s":2,"p":2,"a":[[0,0],[1,0]],"b":[0.5,0.5]})");
  const auto scheme = scheme_from_json(j);
  EXPECT_FALSE(scheme.shu_osher);
  EXPECT_DOUBLE_EQ(scheme.butcher.c[1], 1.0);
  EXPECT_TRUE(validate_order(scheme.butcher, 2).passed);
}

TEST(Json, MalformedInputsRaiseParseError) {
  using nlohmann::json;
  EXPECT_THROW(scheme_from_json(json::array()), ParseError);
  EXPECT_THROW(scheme_from_json(json::parse(R"({"p":1,"a":[[0]],"b":[1]})")), ParseError);
  EXPECT_THROW(scheme_from_json(json::parse(R"({"s":1,"p":1,"a":[[0.5]],"b":[1]})")), ParseError);
  EXPECT_THROW(scheme_from_json(json::parse(R"({"s":1,"p":1,"a":[[0]],"b":[0.9]})")), ParseError);
  EXPECT_THROW(scheme_from_json(json::parse(R"({"s":2,"p":1,"a":[[0,0]],"b":[1,0]})")), ParseError);
  EXPECT_THROW(scheme_from_json(json::parse(R"({"s":1,"p":1,"a":[["x"]],"b":[1]})")), ParseError);
  EXPECT_THROW(
      scheme_from_json(json::parse(R"({"s":1,"p":1,"alpha":[[0.5]],"beta":[[1]]})")),
      ParseError);
}
