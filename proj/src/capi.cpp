#include "relaxssp/relaxssp.h"

#include <algorithm>
#include <cstring>
#include <tuple>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "errors.hpp"
#include "integrator.hpp"
#include "problems.hpp"
#include "stability.hpp"
#include "tableaux.hpp"

struct rssp_scheme_s {
  relaxssp::RkScheme scheme;
};

struct rssp_problem_s {
  relaxssp::DiffusionProblem problem;
};

struct rssp_run_s {
  relaxssp::DiffusionProblem problem;
  relaxssp::Grid1D grid;
  std::vector<double> u;
  relaxssp::RunStats stats;
  double initial_mass = 0.0;
};

struct rssp_convergence_s {
  relaxssp::ConvergenceReport report;
};

namespace {

using namespace relaxssp;

thread_local std::string g_last_error;

rssp_status fail(rssp_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
rssp_status guarded(F&& body) {
  try {
    return body();
  } catch (const CatalogError& e) {
    return fail(RSSP_ERR_CATALOG, e.what());
  } catch (const ParseError& e) {
    return fail(RSSP_ERR_PARSE, e.what());
  } catch (const GridError& e) {
    return fail(RSSP_ERR_GRID, e.what());
  } catch (const DivergenceError& e) {
    return fail(RSSP_ERR_DIVERGENCE, e.what());
  } catch (const AnalysisError& e) {
    return fail(RSSP_ERR_ANALYSIS, e.what());
  } catch (const ConfigError& e) {
    return fail(RSSP_ERR_CONFIG, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(RSSP_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RSSP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RSSP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RSSP_ERR_INTERNAL, "unknown error");
  }
}

rssp_status null_arg(const char* what) {
  return fail(RSSP_ERR_INVALID_ARGUMENT, std::string("null argument: ") + what);
}

template <class T>
rssp_status copy_out(const std::vector<T>& src, T* dst, size_t capacity, size_t* count) {
  if (!count) return null_arg("count");
  *count = src.size();
  if (capacity < src.size() || (!dst && !src.empty())) {
    return fail(RSSP_ERR_BUFFER_TOO_SMALL,
                "buffer holds " + std::to_string(capacity) + ", need " + std::to_string(src.size()));
  }
  std::copy(src.begin(), src.end(), dst);
  return RSSP_OK;
}

rssp_status copy_string(const std::string& s, char* buf, size_t capacity, size_t* count) {
  std::vector<char> chars(s.begin(), s.end());
  chars.push_back('\0');
  return copy_out(chars, buf, capacity, count);
}

Reconstruction to_core(rssp_recon r) {
  switch (r) {
    case RSSP_RECON_PWC: return Reconstruction::pwc;
    case RSSP_RECON_PWL: return Reconstruction::pwl_minmod;
    case RSSP_RECON_WENO5: return Reconstruction::weno5;
  }
  throw ConfigError("unknown reconstruction code " + std::to_string(static_cast<int>(r)));
}

Grid1D to_core(const rssp_grid& g) {
  return Grid1D(g.n, g.x_lo, g.x_hi,
                g.periodic ? Boundary::periodic() : Boundary::dirichlet(g.boundary_value));
}

SchemeConfig to_core_config(const rssp_config& c) {
  SchemeConfig cfg;
  cfg.recon = to_core(c.recon);
  cfg.phi = c.phi;
  cfg.cfl.c1 = c.c1;
  cfg.cfl.delta = c.delta;
  return cfg;
}

StepControl to_core_control(const rssp_config& c) {
  StepControl control;
  switch (c.lambda_mode) {
    case RSSP_LAMBDA_SSP: control.mode = LambdaMode::ssp; break;
    case RSSP_LAMBDA_OPT: control.mode = LambdaMode::opt; break;
    case RSSP_LAMBDA_CUSTOM: control.mode = LambdaMode::custom; break;
    default: throw ConfigError("unknown lambda mode code");
  }
  control.custom_lambda = c.lambda;
  if (c.fixed_dt > 0.0) control.fixed_dt = c.fixed_dt;
  return control;
}

rssp_status make_scheme(RkScheme scheme, rssp_scheme* out) {
  *out = new rssp_scheme_s{std::move(scheme)};
  return RSSP_OK;
}

}  // namespace

extern "C" {

const char* rssp_last_error(void) { return g_last_error.c_str(); }

const char* rssp_status_string(rssp_status status) {
  switch (status) {
    case RSSP_OK: return "ok";
    case RSSP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RSSP_ERR_CATALOG: return "catalog error";
    case RSSP_ERR_CONFIG: return "configuration error";
    case RSSP_ERR_GRID: return "grid error";
    case RSSP_ERR_DIVERGENCE: return "divergence";
    case RSSP_ERR_ANALYSIS: return "analysis error";
    case RSSP_ERR_PARSE: return "parse error";
    case RSSP_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case RSSP_ERR_UNAVAILABLE: return "unavailable";
    case RSSP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* rssp_version(void) { return "0.1.0"; }

rssp_status rssp_scheme_catalog(int stages, int order, rssp_scheme* out) {
  if (!out) return null_arg("out");
  return guarded([&] { return make_scheme(ssp_tableau(stages, order), out); });
}

rssp_status rssp_scheme_by_name(const char* name, rssp_scheme* out) {
  if (!name) return null_arg("name");
  if (!out) return null_arg("out");
  return guarded([&] { return make_scheme(scheme_by_name(name), out); });
}

rssp_status rssp_scheme_from_json(const char* json, const char* name, rssp_scheme* out) {
  if (!json) return null_arg("json");
  if (!out) return null_arg("out");
  return guarded([&] {
    return make_scheme(scheme_from_json(nlohmann::json::parse(json), name ? name : "user"), out);
  });
}

size_t rssp_catalog_size(void) { return ssp_catalog().size(); }

rssp_status rssp_catalog_entry(size_t index, int* stages, int* order) {
  if (!stages || !order) return null_arg("stages/order");
  if (index >= ssp_catalog().size())
    return fail(RSSP_ERR_INVALID_ARGUMENT, "catalog index out of range");
  std::tie(*stages, *order) = ssp_catalog()[index];
  return RSSP_OK;
}

void rssp_scheme_destroy(rssp_scheme scheme) { delete scheme; }

int rssp_scheme_stages(rssp_scheme scheme) { return scheme ? scheme->scheme.stages() : 0; }
int rssp_scheme_order(rssp_scheme scheme) { return scheme ? scheme->scheme.order() : 0; }
const char* rssp_scheme_name(rssp_scheme scheme) {
  return scheme ? scheme->scheme.name.c_str() : "";
}

rssp_status rssp_scheme_butcher_json(rssp_scheme scheme, char* buf, size_t capacity,
                                     size_t* count) {
  if (!scheme) return null_arg("scheme");
  return guarded([&] { return copy_string(to_json(scheme->scheme.butcher).dump(), buf, capacity, count); });
}

rssp_status rssp_scheme_shu_osher_json(rssp_scheme scheme, char* buf, size_t capacity,
                                       size_t* count) {
  if (!scheme) return null_arg("scheme");
  if (!scheme->scheme.shu_osher)
    return fail(RSSP_ERR_UNAVAILABLE, scheme->scheme.name + " has no Shu-Osher form");
  return guarded([&] {
    return copy_string(to_json(*scheme->scheme.shu_osher, scheme->scheme.order()).dump(), buf,
                       capacity, count);
  });
}

rssp_status rssp_scheme_validate_order(rssp_scheme scheme, int order, int* passed,
                                       rssp_order_residual* residuals, size_t capacity,
                                       size_t* count) {
  if (!scheme) return null_arg("scheme");
  if (!passed) return null_arg("passed");
  return guarded([&] {
    const auto check = validate_order(scheme->scheme.butcher, order);
    *passed = check.passed ? 1 : 0;
    std::vector<rssp_order_residual> out;
    for (const auto& r : check.residuals) {
      rssp_order_residual item{};
      item.residual = r.residual;
      std::strncpy(item.condition, r.condition.c_str(), sizeof(item.condition) - 1);
      out.push_back(item);
    }
    return copy_out(out, residuals, capacity, count);
  });
}

rssp_status rssp_scheme_lambda_ssp(rssp_scheme scheme, double* out) {
  if (!scheme) return null_arg("scheme");
  if (!out) return null_arg("out");
  if (!scheme->scheme.shu_osher)
    return fail(RSSP_ERR_UNAVAILABLE, scheme->scheme.name + " has no Shu-Osher form");
  return guarded([&] {
    *out = lambda_ssp(*scheme->scheme.shu_osher);
    return RSSP_OK;
  });
}

rssp_status rssp_scheme_stability_polynomial(rssp_scheme scheme, double* coeffs,
                                             size_t capacity, size_t* count) {
  if (!scheme) return null_arg("scheme");
  return guarded([&] {
    return copy_out(stability_polynomial(scheme->scheme.butcher).coeffs, coeffs, capacity, count);
  });
}

rssp_status rssp_scheme_eta(rssp_scheme scheme, double tol, double* out) {
  if (!scheme) return null_arg("scheme");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = real_stability_interval(stability_polynomial(scheme->scheme.butcher),
                                   tol > 0.0 ? tol : kDefaultIntervalTolerance);
    return RSSP_OK;
  });
}

rssp_status rssp_scheme_lambda_opt(rssp_scheme scheme, double* out) {
  if (!scheme) return null_arg("scheme");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = lambda_opt(stability_polynomial(scheme->scheme.butcher));
    return RSSP_OK;
  });
}

rssp_status rssp_scheme_boundary_locus(rssp_scheme scheme, int samples,
                                       rssp_locus_point* points, size_t capacity,
                                       size_t* count) {
  if (!scheme) return null_arg("scheme");
  return guarded([&] {
    const auto locus = boundary_locus(stability_polynomial(scheme->scheme.butcher), samples);
    std::vector<rssp_locus_point> out;
    out.reserve(locus.size());
    for (const auto& p : locus) out.push_back({p.theta, p.z.real(), p.z.imag(), p.branch});
    return copy_out(out, points, capacity, count);
  });
}

rssp_status rssp_space_symbol(rssp_recon recon, double xi, double h_phi, double* re,
                              double* im) {
  if (!re || !im) return null_arg("re/im");
  return guarded([&] {
    const auto s = space_symbol(to_core(recon), xi, h_phi);
    *re = s.real();
    *im = s.imag();
    return RSSP_OK;
  });
}

rssp_status rssp_von_neumann_c1(rssp_recon recon, rssp_scheme scheme, double* out) {
  if (!scheme) return null_arg("scheme");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = von_neumann_c1(to_core(recon), stability_polynomial(scheme->scheme.butcher));
    return RSSP_OK;
  });
}

rssp_status rssp_estimate_c2(rssp_recon recon, rssp_scheme scheme, double* out) {
  if (!scheme) return null_arg("scheme");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = estimate_c2(to_core(recon), stability_polynomial(scheme->scheme.butcher));
    return RSSP_OK;
  });
}

rssp_status rssp_problem_heat(int mode, double d, rssp_problem* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new rssp_problem_s{heat_problem(mode, d)};
    return RSSP_OK;
  });
}

rssp_status rssp_problem_barenblatt(double m, double t0, double mass, double d,
                                    rssp_problem* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new rssp_problem_s{barenblatt_problem(m, t0, mass, d)};
    return RSSP_OK;
  });
}

void rssp_problem_destroy(rssp_problem problem) { delete problem; }

const char* rssp_problem_name(rssp_problem problem) {
  return problem ? problem->problem.name.c_str() : "";
}

double rssp_problem_mu(rssp_problem problem) { return problem ? problem->problem.mu : 0.0; }

rssp_status rssp_problem_exact(rssp_problem problem, double x, double t, double* out) {
  if (!problem) return null_arg("problem");
  if (!out) return null_arg("out");
  if (!problem->problem.has_exact())
    return fail(RSSP_ERR_UNAVAILABLE, "problem has no exact solution");
  *out = problem->problem.exact(x, t);
  return RSSP_OK;
}

rssp_status rssp_problem_support_radius(rssp_problem problem, double t, double* out) {
  if (!problem) return null_arg("problem");
  if (!out) return null_arg("out");
  if (!problem->problem.support_radius)
    return fail(RSSP_ERR_UNAVAILABLE, "problem has no compact support");
  *out = problem->problem.support_radius(t);
  return RSSP_OK;
}

rssp_status rssp_problem_default_grid(rssp_problem problem, int n, double t_end,
                                      rssp_grid* out) {
  if (!problem) return null_arg("problem");
  if (!out) return null_arg("out");
  return guarded([&] {
    const Grid1D g = default_grid(problem->problem, n, t_end);
    *out = {g.n(), g.x_lo(), g.x_hi(), g.boundary().is_periodic() ? 1 : 0, g.boundary().value};
    return RSSP_OK;
  });
}

void rssp_config_default(rssp_config* cfg) {
  if (!cfg) return;
  *cfg = {RSSP_RECON_WENO5, 0.0, 0.79, 0.01, RSSP_LAMBDA_OPT, 1.0, 0.0};
}

rssp_status rssp_timestep(rssp_problem problem, const rssp_config* cfg, const rssp_grid* grid,
                          rssp_scheme scheme, double* out) {
  if (!problem || !cfg || !grid || !scheme || !out) return null_arg("problem/cfg/grid/scheme/out");
  return guarded([&] {
    const auto control = to_core_control(*cfg);
    if (control.fixed_dt) {
      *out = *control.fixed_dt;
    } else {
      *out = timestep(to_core(*grid), problem->problem, to_core_config(*cfg),
                      select_lambda(scheme->scheme, control));
    }
    return RSSP_OK;
  });
}

rssp_status rssp_evolve(rssp_problem problem, const rssp_config* cfg, const rssp_grid* grid,
                        rssp_scheme scheme, double t_end, rssp_run* out) {
  if (!problem || !cfg || !grid || !scheme || !out) return null_arg("problem/cfg/grid/scheme/out");
  return guarded([&] {
    const Grid1D g = to_core(*grid);
    auto result = evolve(problem->problem, to_core_config(*cfg), g, scheme->scheme, t_end,
                         to_core_control(*cfg));
    std::vector<double> u0(static_cast<std::size_t>(g.n()));
    for (int j = 0; j < g.n(); ++j) u0[j] = problem->problem.u0(g.center(j));
    *out = new rssp_run_s{problem->problem, g, std::move(result.u), result.stats,
                          discrete_mass(u0, g)};
    return RSSP_OK;
  });
}

void rssp_run_destroy(rssp_run run) { delete run; }

rssp_status rssp_run_get_stats(rssp_run run, rssp_run_stats* out) {
  if (!run || !out) return null_arg("run/out");
  *out = {run->stats.n_f, run->stats.steps, run->stats.t_final, run->stats.dt, run->stats.lambda};
  return RSSP_OK;
}

rssp_status rssp_run_field(rssp_run run, double* x, double* u, size_t capacity, size_t* count) {
  if (!run) return null_arg("run");
  if (!count) return null_arg("count");
  const auto n = run->u.size();
  *count = n;
  if (capacity < n) return fail(RSSP_ERR_BUFFER_TOO_SMALL, "field buffer too small");
  for (std::size_t j = 0; j < n; ++j) {
    if (x) x[j] = run->grid.center(static_cast<int>(j));
    if (u) u[j] = run->u[j];
  }
  return RSSP_OK;
}

rssp_status rssp_run_errors(rssp_run run, double* l1, double* linf) {
  if (!run || !l1 || !linf) return null_arg("run/l1/linf");
  if (!run->problem.has_exact()) return fail(RSSP_ERR_UNAVAILABLE, "problem has no exact solution");
  return guarded([&] {
    const auto e = error_norms(run->u, run->problem.exact, run->grid, run->stats.t_final);
    *l1 = e.l1;
    *linf = e.linf;
    return RSSP_OK;
  });
}

rssp_status rssp_run_mass(rssp_run run, double* initial, double* final_mass) {
  if (!run || !initial || !final_mass) return null_arg("run/initial/final_mass");
  *initial = run->initial_mass;
  *final_mass = discrete_mass(run->u, run->grid);
  return RSSP_OK;
}

rssp_status rssp_convergence_study(rssp_problem problem, const rssp_config* cfg,
                                   rssp_scheme scheme, const int* grids, size_t grid_count,
                                   double t_end, rssp_convergence* out) {
  if (!problem || !cfg || !scheme || !out) return null_arg("problem/cfg/scheme/out");
  if (!grids && grid_count > 0) return null_arg("grids");
  return guarded([&] {
    std::vector<int> sizes(grids, grids + grid_count);
    auto rep = convergence_study(problem->problem, to_core_config(*cfg), scheme->scheme, sizes,
                                 t_end, to_core_control(*cfg));
    *out = new rssp_convergence_s{std::move(rep)};
    return RSSP_OK;
  });
}

void rssp_convergence_destroy(rssp_convergence report) { delete report; }

size_t rssp_convergence_size(rssp_convergence report) {
  return report ? report->report.rows.size() : 0;
}

rssp_status rssp_convergence_get_row(rssp_convergence report, size_t index,
                                     rssp_convergence_row* out) {
  if (!report || !out) return null_arg("report/out");
  if (index >= report->report.rows.size())
    return fail(RSSP_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = report->report.rows[index];
  *out = {r.n, r.h, r.dt, r.l1, r.linf, r.n_f, r.steps};
  return RSSP_OK;
}

rssp_status rssp_convergence_get_order(rssp_convergence report, size_t index, double* l1_order,
                                       double* linf_order) {
  if (!report || !l1_order || !linf_order) return null_arg("report/l1_order/linf_order");
  if (index >= report->report.orders_l1.size())
    return fail(RSSP_ERR_INVALID_ARGUMENT, "order index out of range");
  *l1_order = report->report.orders_l1[index];
  *linf_order = report->report.orders_linf[index];
  return RSSP_OK;
}

rssp_status rssp_convergence_fitted_order(rssp_convergence report, double* out) {
  if (!report || !out) return null_arg("report/out");
  *out = report->report.fitted_order_l1;
  return RSSP_OK;
}

rssp_status rssp_convergence_lambda(rssp_convergence report, double* out) {
  if (!report || !out) return null_arg("report/out");
  *out = report->report.lambda;
  return RSSP_OK;
}

}  // extern "C"
