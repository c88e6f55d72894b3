// Exercises the shared library strictly through its public C header.

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "relaxssp/relaxssp.h"

namespace {

struct SchemeHandle {
  rssp_scheme h = nullptr;
  ~SchemeHandle() { rssp_scheme_destroy(h); }
};

struct ProblemHandle {
  rssp_problem h = nullptr;
  ~ProblemHandle() { rssp_problem_destroy(h); }
};

}  // namespace

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(rssp_version(), "0.1.0");
  EXPECT_STREQ(rssp_status_string(RSSP_OK), "ok");
  EXPECT_STREQ(rssp_status_string(RSSP_ERR_CATALOG), "catalog error");
}

TEST(CApi, CatalogEnumeration) {
  ASSERT_EQ(rssp_catalog_size(), 12u);
  int s = 0, p = 0;
  ASSERT_EQ(rssp_catalog_entry(11, &s, &p), RSSP_OK);
  EXPECT_EQ(s, 5);
  EXPECT_EQ(p, 3);
  EXPECT_EQ(rssp_catalog_entry(12, &s, &p), RSSP_ERR_INVALID_ARGUMENT);
}

TEST(CApi, UnknownSchemeReportsCatalog) {
  rssp_scheme h = nullptr;
  EXPECT_EQ(rssp_scheme_catalog(6, 3, &h), RSSP_ERR_CATALOG);
  EXPECT_EQ(h, nullptr);
  EXPECT_NE(std::string(rssp_last_error()).find("ssp(5,3)"), std::string::npos);
  EXPECT_EQ(rssp_scheme_by_name("heun", &h), RSSP_ERR_CATALOG);
  EXPECT_EQ(rssp_scheme_by_name(nullptr, &h), RSSP_ERR_INVALID_ARGUMENT);
}

TEST(CApi, StabilityQuantities) {
  SchemeHandle s;
  ASSERT_EQ(rssp_scheme_by_name("SSP(5,3)", &s.h), RSSP_OK);
  EXPECT_EQ(rssp_scheme_stages(s.h), 5);
  EXPECT_EQ(rssp_scheme_order(s.h), 3);
  EXPECT_STREQ(rssp_scheme_name(s.h), "ssp(5,3)");

  double v = 0.0;
  ASSERT_EQ(rssp_scheme_lambda_ssp(s.h, &v), RSSP_OK);
  EXPECT_NEAR(v, 2.65, 0.01);
  ASSERT_EQ(rssp_scheme_lambda_opt(s.h, &v), RSSP_OK);
  EXPECT_NEAR(v, 3.106, 0.002);
  double eta = 0.0;
  ASSERT_EQ(rssp_scheme_eta(s.h, 0.0, &eta), RSSP_OK);
  EXPECT_NEAR(eta, 2.0 * v, 1e-12);

  size_t count = 0;
  EXPECT_EQ(rssp_scheme_stability_polynomial(s.h, nullptr, 0, &count), RSSP_ERR_BUFFER_TOO_SMALL);
  ASSERT_EQ(count, 6u);
  std::vector<double> coeffs(count);
  ASSERT_EQ(rssp_scheme_stability_polynomial(s.h, coeffs.data(), coeffs.size(), &count), RSSP_OK);
  EXPECT_NEAR(coeffs[3], 1.0 / 6.0, 1e-12);
}

TEST(CApi, BoundaryLocusTwoCall) {
  SchemeHandle s;
  ASSERT_EQ(rssp_scheme_catalog(1, 1, &s.h), RSSP_OK);
  size_t count = 0;
  EXPECT_EQ(rssp_scheme_boundary_locus(s.h, 32, nullptr, 0, &count), RSSP_ERR_BUFFER_TOO_SMALL);
  ASSERT_EQ(count, 32u);
  std::vector<rssp_locus_point> pts(count);
  ASSERT_EQ(rssp_scheme_boundary_locus(s.h, 32, pts.data(), pts.size(), &count), RSSP_OK);
  for (const auto& pt : pts) EXPECT_NEAR(std::hypot(pt.re + 1.0, pt.im), 1.0, 1e-12);
  EXPECT_EQ(rssp_scheme_boundary_locus(s.h, 4, pts.data(), pts.size(), &count), RSSP_ERR_ANALYSIS);
}

TEST(CApi, JsonExportAndImport) {
  SchemeHandle s;
  ASSERT_EQ(rssp_scheme_catalog(3, 3, &s.h), RSSP_OK);
  size_t count = 0;
  ASSERT_EQ(rssp_scheme_shu_osher_json(s.h, nullptr, 0, &count), RSSP_ERR_BUFFER_TOO_SMALL);
  std::string buf(count, '\0');
  ASSERT_EQ(rssp_scheme_shu_osher_json(s.h, buf.data(), buf.size(), &count), RSSP_OK);
  EXPECT_EQ(std::strlen(buf.c_str()) + 1, count);

  SchemeHandle copy;
  ASSERT_EQ(rssp_scheme_from_json(buf.c_str(), "mine", &copy.h), RSSP_OK);
  EXPECT_STREQ(rssp_scheme_name(copy.h), "mine");
  double l = 0.0;
  ASSERT_EQ(rssp_scheme_lambda_ssp(copy.h, &l), RSSP_OK);
  EXPECT_NEAR(l, 1.0, 1e-14);

  ASSERT_EQ(rssp_scheme_butcher_json(s.h, nullptr, 0, &count), RSSP_ERR_BUFFER_TOO_SMALL);
  buf.assign(count, '\0');
  ASSERT_EQ(rssp_scheme_butcher_json(s.h, buf.data(), buf.size(), &count), RSSP_OK);
  SchemeHandle butcher;
  ASSERT_EQ(rssp_scheme_from_json(buf.c_str(), nullptr, &butcher.h), RSSP_OK);
  EXPECT_EQ(rssp_scheme_lambda_ssp(butcher.h, &l), RSSP_ERR_UNAVAILABLE);
  EXPECT_EQ(rssp_scheme_shu_osher_json(butcher.h, nullptr, 0, &count), RSSP_ERR_UNAVAILABLE);

  rssp_scheme bad = nullptr;
  EXPECT_EQ(rssp_scheme_from_json("{not json", nullptr, &bad), RSSP_ERR_PARSE);
  EXPECT_EQ(rssp_scheme_from_json(R"({"s":1,"p":1,"a":[[0]],"b":[0.5]})", nullptr, &bad),
            RSSP_ERR_PARSE);
  EXPECT_EQ(bad, nullptr);
}

TEST(CApi, OrderValidation) {
  SchemeHandle s;
  ASSERT_EQ(rssp_scheme_catalog(2, 2, &s.h), RSSP_OK);
  int passed = -1;
  size_t count = 0;
  rssp_order_residual res[4];
  ASSERT_EQ(rssp_scheme_validate_order(s.h, 3, &passed, res, 4, &count), RSSP_OK);
  EXPECT_EQ(passed, 0);
  ASSERT_EQ(count, 4u);
  EXPECT_STREQ(res[0].condition, "sum b = 1");
  EXPECT_NEAR(res[2].residual, 0.5 - 1.0 / 3.0, 1e-15);
  EXPECT_EQ(rssp_scheme_validate_order(s.h, 5, &passed, res, 4, &count), RSSP_ERR_CONFIG);
}

TEST(CApi, SymbolsAndCflConstants) {
  double re = 0.0, im = 1.0;
  ASSERT_EQ(rssp_space_symbol(RSSP_RECON_PWC, M_PI / 2, 0.0, &re, &im), RSSP_OK);
  EXPECT_NEAR(re, -1.0, 1e-13);
  EXPECT_NEAR(im, 0.0, 1e-13);
  EXPECT_EQ(rssp_space_symbol(RSSP_RECON_PWC, 0.0, 0.0, &re, &im), RSSP_ERR_ANALYSIS);
  EXPECT_EQ(rssp_space_symbol(static_cast<rssp_recon>(9), 1.0, 0.0, &re, &im), RSSP_ERR_CONFIG);

  SchemeHandle s;
  ASSERT_EQ(rssp_scheme_catalog(3, 3, &s.h), RSSP_OK);
  double c1 = 0.0;
  ASSERT_EQ(rssp_von_neumann_c1(RSSP_RECON_WENO5, s.h, &c1), RSSP_OK);
  EXPECT_NEAR(c1, 1.0, 0.02);
  double c2 = 0.0;
  ASSERT_EQ(rssp_estimate_c2(RSSP_RECON_PWC, s.h, &c2), RSSP_OK);
  EXPECT_GT(c2, 0.0);
}

TEST(CApi, HeatRunAndErrors) {
  ProblemHandle p;
  ASSERT_EQ(rssp_problem_heat(1, 1.0, &p.h), RSSP_OK);
  EXPECT_STREQ(rssp_problem_name(p.h), "heat");
  EXPECT_DOUBLE_EQ(rssp_problem_mu(p.h), 1.0);
  double r = 0.0;
  EXPECT_EQ(rssp_problem_support_radius(p.h, 0.0, &r), RSSP_ERR_UNAVAILABLE);

  SchemeHandle s;
  ASSERT_EQ(rssp_scheme_catalog(2, 2, &s.h), RSSP_OK);
  rssp_grid grid;
  ASSERT_EQ(rssp_problem_default_grid(p.h, 80, 0.05, &grid), RSSP_OK);
  EXPECT_EQ(grid.periodic, 1);
  rssp_config cfg;
  rssp_config_default(&cfg);
  EXPECT_EQ(cfg.recon, RSSP_RECON_WENO5);

  double dt = 0.0;
  ASSERT_EQ(rssp_timestep(p.h, &cfg, &grid, s.h, &dt), RSSP_OK);
  EXPECT_NEAR(dt, 1.21875e-4, 1e-15);

  rssp_run run = nullptr;
  ASSERT_EQ(rssp_evolve(p.h, &cfg, &grid, s.h, 405 * dt, &run), RSSP_OK) << rssp_last_error();
  rssp_run_stats stats;
  ASSERT_EQ(rssp_run_get_stats(run, &stats), RSSP_OK);
  EXPECT_EQ(stats.n_f, 810);
  EXPECT_EQ(stats.steps, 405);

  size_t count = 0;
  EXPECT_EQ(rssp_run_field(run, nullptr, nullptr, 0, &count), RSSP_ERR_BUFFER_TOO_SMALL);
  std::vector<double> x(count), u(count);
  ASSERT_EQ(rssp_run_field(run, x.data(), u.data(), count, &count), RSSP_OK);
  EXPECT_NEAR(x[0], 1.0 / 160.0, 1e-15);

  double l1 = 0.0, linf = 0.0;
  ASSERT_EQ(rssp_run_errors(run, &l1, &linf), RSSP_OK);
  EXPECT_GT(l1, 0.0);
  EXPECT_LT(linf, 1e-5);
  double m0 = 0.0, m1 = 0.0;
  ASSERT_EQ(rssp_run_mass(run, &m0, &m1), RSSP_OK);
  EXPECT_NEAR(m0, m1, 1e-12);
  rssp_run_destroy(run);
}

TEST(CApi, ConfigErrorsSurface) {
  ProblemHandle p;
  ASSERT_EQ(rssp_problem_heat(1, 1.0, &p.h), RSSP_OK);
  SchemeHandle s;
  ASSERT_EQ(rssp_scheme_catalog(1, 1, &s.h), RSSP_OK);
  rssp_grid grid{4, 0.0, 1.0, 1, 0.0};
  rssp_config cfg;
  rssp_config_default(&cfg);
  rssp_run run = nullptr;
  EXPECT_EQ(rssp_evolve(p.h, &cfg, &grid, s.h, 0.01, &run), RSSP_ERR_GRID);
  grid.n = 16;
  cfg.delta = 1.0;
  EXPECT_EQ(rssp_evolve(p.h, &cfg, &grid, s.h, 0.01, &run), RSSP_ERR_CONFIG);
  rssp_config_default(&cfg);
  cfg.phi = 0.5;
  EXPECT_EQ(rssp_evolve(p.h, &cfg, &grid, s.h, 0.01, &run), RSSP_ERR_CONFIG);
  EXPECT_NE(std::string(rssp_last_error()).find("subcharacteristic"), std::string::npos);
  rssp_config_default(&cfg);
  cfg.fixed_dt = 10.0;
  EXPECT_EQ(rssp_evolve(p.h, &cfg, &grid, s.h, 1e4, &run), RSSP_ERR_DIVERGENCE);
  EXPECT_EQ(run, nullptr);
  EXPECT_EQ(rssp_evolve(nullptr, &cfg, &grid, s.h, 1.0, &run), RSSP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(rssp_problem_barenblatt(1.0, 1.0, 1.0, 1.0, &p.h), RSSP_ERR_CONFIG);
}

TEST(CApi, BarenblattProblem) {
  ProblemHandle p;
  ASSERT_EQ(rssp_problem_barenblatt(2.0, 1.0, 1.0, 1.0, &p.h), RSSP_OK);
  double r0 = 0.0, r7 = 0.0;
  ASSERT_EQ(rssp_problem_support_radius(p.h, 0.0, &r0), RSSP_OK);
  ASSERT_EQ(rssp_problem_support_radius(p.h, 7.0, &r7), RSSP_OK);
  EXPECT_NEAR(r7 / r0, 2.0, 1e-12);
  double u = -1.0;
  ASSERT_EQ(rssp_problem_exact(p.h, 1.01 * r0, 0.0, &u), RSSP_OK);
  EXPECT_EQ(u, 0.0);
  rssp_grid grid;
  ASSERT_EQ(rssp_problem_default_grid(p.h, 64, 1.0, &grid), RSSP_OK);
  EXPECT_EQ(grid.periodic, 0);
}

TEST(CApi, ConvergenceStudy) {
  ProblemHandle p;
  ASSERT_EQ(rssp_problem_heat(1, 1.0, &p.h), RSSP_OK);
  SchemeHandle s;
  ASSERT_EQ(rssp_scheme_catalog(3, 2, &s.h), RSSP_OK);
  rssp_config cfg;
  rssp_config_default(&cfg);
  cfg.phi = 1.0;
  const int grids[] = {20, 40, 80};
  rssp_convergence rep = nullptr;
  ASSERT_EQ(rssp_convergence_study(p.h, &cfg, s.h, grids, 3, 0.05, &rep), RSSP_OK);
  ASSERT_EQ(rssp_convergence_size(rep), 3u);
  rssp_convergence_row row;
  ASSERT_EQ(rssp_convergence_get_row(rep, 2, &row), RSSP_OK);
  EXPECT_EQ(row.n, 80);
  EXPECT_EQ(row.n_f, 3 * row.steps);
  double o1 = 0.0, oinf = 0.0, fit = 0.0, lambda = 0.0;
  ASSERT_EQ(rssp_convergence_get_order(rep, 1, &o1, &oinf), RSSP_OK);
  EXPECT_NEAR(o1, 4.0, 0.4);
  EXPECT_EQ(rssp_convergence_get_order(rep, 2, &o1, &oinf), RSSP_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(rssp_convergence_fitted_order(rep, &fit), RSSP_OK);
  EXPECT_NEAR(fit, 4.0, 0.4);
  ASSERT_EQ(rssp_convergence_lambda(rep, &lambda), RSSP_OK);
  EXPECT_NEAR(lambda, 2.259, 0.002);
  rssp_convergence_destroy(rep);

  rep = nullptr;
  EXPECT_EQ(rssp_convergence_study(p.h, &cfg, s.h, grids, 2, 0.05, &rep), RSSP_ERR_CONFIG);
  EXPECT_NE(std::string(rssp_last_error()).find(">=3 grids required"), std::string::npos);
}

TEST(CApi, DestroyAcceptsNull) {
  rssp_scheme_destroy(nullptr);
  rssp_problem_destroy(nullptr);
  rssp_run_destroy(nullptr);
  rssp_convergence_destroy(nullptr);
  SUCCEED();
}
