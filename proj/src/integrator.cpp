#include "integrator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "stability.hpp"

namespace relaxssp {

std::string_view to_string(LambdaMode m) {
  switch (m) {
    case LambdaMode::ssp: return "ssp";
    case LambdaMode::opt: return "opt";
    case LambdaMode::custom: return "custom";
  }
  return "?";
}

LambdaMode lambda_mode_from_string(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "ssp") return LambdaMode::ssp;
  if (s == "opt") return LambdaMode::opt;
  if (s == "custom") return LambdaMode::custom;
  throw ConfigError("unknown lambda mode '" + std::string(name) + "'; expected ssp, opt or custom");
}

double select_lambda(const RkScheme& scheme, const StepControl& control) {
  switch (control.mode) {
    case LambdaMode::ssp:
      if (!scheme.shu_osher)
        throw ConfigError("lambda mode 'ssp' needs a Shu-Osher form for " + scheme.name);
      return lambda_ssp(*scheme.shu_osher);
    case LambdaMode::opt:
      return lambda_opt(stability_polynomial(scheme.butcher));
    case LambdaMode::custom:
      if (!(control.custom_lambda > 0.0)) throw ConfigError("custom lambda must be positive");
      return control.custom_lambda;
  }
  return 1.0;
}

double timestep(const Grid1D& grid, const DiffusionProblem& prob, const SchemeConfig& cfg,
                double lambda) {
  check_cfl_model(cfg.cfl);
  if (!(lambda > 0.0)) throw ConfigError("timestep: lambda must be positive");
  if (!(prob.mu > 0.0) || !(prob.d > 0.0)) throw ConfigError("timestep: D and mu must be positive");
  if (!(cfg.phi >= 0.0)) throw ConfigError("timestep: phi must be non-negative");
  const double h = grid.h();
  return (cfg.cfl.c1 - cfg.cfl.delta) * lambda * h * h / (prob.d * prob.mu) /
         (1.0 + 2.0 * h * cfg.phi);
}

std::vector<double> rk_step(RelaxationOperator& op, std::span<const double> u, double dt,
                            const ButcherTableau& t, long step) {
  if (!(dt > 0.0)) throw ConfigError("rk_step: dt must be positive");
  const std::size_t n = u.size();
  std::vector<std::vector<double>> k(static_cast<std::size_t>(t.stages), std::vector<double>(n));
  std::vector<double> stage(n);
  for (int i = 0; i < t.stages; ++i) {
    std::copy(u.begin(), u.end(), stage.begin());
    for (int m = 0; m < i; ++m) {
      const double a = t.a[i][m];
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) stage[j] += dt * a * k[m][j];
    }
    try {
      op.apply(stage, k[i]);
    } catch (const DivergenceError& e) {
      auto where = e.where();
      where.stage = i;
      where.step = step;
      throw DivergenceError("stage " + std::to_string(i) + " of step " + std::to_string(step) +
                                ": " + e.what(),
                            where);
    }
  }
  std::vector<double> out(u.begin(), u.end());
  for (int i = 0; i < t.stages; ++i) {
    const double b = t.b[i];
    if (b == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) out[j] += dt * b * k[i][j];
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(out[j])) {
      throw DivergenceError("non-finite update at cell " + std::to_string(j) + " of step " +
                                std::to_string(step),
                            {.index = static_cast<std::ptrdiff_t>(j), .step = step});
    }
  }
  return out;
}

RunResult evolve_from(std::vector<double> u, const DiffusionProblem& prob,
                      const SchemeConfig& cfg, const Grid1D& grid, const RkScheme& scheme,
                      double t_end, const StepControl& control, const StepObserver& observer) {
  if (!(t_end > 0.0)) throw ConfigError("evolve: t_end must be positive");
  if (static_cast<int>(u.size()) != grid.n())
    throw GridError("evolve: initial state does not match the grid");
  check_tableau(scheme.butcher);

  RunResult result;
  double dt = 0.0;
  if (control.fixed_dt) {
    dt = *control.fixed_dt;
    if (!(dt > 0.0)) throw ConfigError("evolve: fixed dt must be positive");
    result.stats.lambda = std::nan("");
  } else {
    result.stats.lambda = select_lambda(scheme, control);
    dt = timestep(grid, prob, cfg, result.stats.lambda);
  }
  result.stats.dt = dt;

  RelaxationOperator op(prob, cfg, grid);
  // Relative slack so that t_end = k * dt computed in floating point still
  // takes exactly k steps.
  const long total = std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-9)));
  double t = 0.0;
  for (long step = 0; step < total; ++step) {
    const bool last = step + 1 == total;
    const double h = last ? t_end - step * dt : dt;
    try {
      u = rk_step(op, u, h, scheme.butcher, step);
    } catch (const DivergenceError& e) {
      auto where = e.where();
      where.time = t;
      where.grid_n = grid.n();
      throw DivergenceError(std::string(e.what()) + " (t = " + std::to_string(t) + ")", where);
    }
    t = last ? t_end : (step + 1) * dt;
    result.stats.steps = step + 1;
    if (observer && !observer(t, step + 1, u)) break;
  }
  result.stats.t_final = t;
  result.stats.n_f = op.flux_evaluations();
  result.u = std::move(u);
  return result;
}

RunResult evolve(const DiffusionProblem& prob, const SchemeConfig& cfg, const Grid1D& grid,
                 const RkScheme& scheme, double t_end, const StepControl& control,
                 const StepObserver& observer) {
  check_problem(prob, grid);
  std::vector<double> u(static_cast<std::size_t>(grid.n()));
  for (int j = 0; j < grid.n(); ++j) u[j] = prob.u0(grid.center(j));
  return evolve_from(std::move(u), prob, cfg, grid, scheme, t_end, control, observer);
}

}  // namespace relaxssp
