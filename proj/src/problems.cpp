#include "problems.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace relaxssp {

DiffusionProblem heat_problem(int mode, double d) {
  if (mode < 1) throw ConfigError("heat problem: mode must be >= 1");
  if (!(d > 0.0)) throw ConfigError("heat problem: D must be positive");
  const double k = 2.0 * std::numbers::pi * mode;
  DiffusionProblem prob;
  prob.name = "heat";
  prob.d = d;
  prob.mu = 1.0;
  prob.p = [](double u) { return u; };
  prob.u0 = [k](double x) { return std::sin(k * x); };
  prob.exact = [k, d](double x, double t) { return std::exp(-d * k * k * t) * std::sin(k * x); };
  return prob;
}

double Barenblatt::height_constant() const {
  const double q = 1.0 / (m - 1.0);
  // mass = C^{q+1/2} spread^{-1/2} B(1/2, q+1)
  return std::pow(mass * std::sqrt(spread()) / std::beta(0.5, q + 1.0), 1.0 / (q + 0.5));
}

double Barenblatt::operator()(double x, double t) const {
  const double s = t0 + d * t;
  const double k = exponent();
  const double core = height_constant() - spread() * x * x / std::pow(s, 2.0 * k);
  if (core <= 0.0) return 0.0;
  return std::pow(s, -k) * std::pow(core, 1.0 / (m - 1.0));
}

double Barenblatt::support_radius(double t) const {
  return std::sqrt(height_constant() / spread()) * std::pow(t0 + d * t, exponent());
}

Barenblatt barenblatt_parameters(double m, double t0, double mass, double d) {
  if (!(m > 1.0)) throw ConfigError("barenblatt: exponent m must exceed 1");
  if (!(t0 > 0.0)) throw ConfigError("barenblatt: offset time t0 must be positive");
  if (!(mass > 0.0)) throw ConfigError("barenblatt: mass must be positive");
  if (!(d > 0.0)) throw ConfigError("barenblatt: D must be positive");
  return {m, t0, mass, d};
}

DiffusionProblem barenblatt_problem(double m, double t0, double mass, double d) {
  const Barenblatt b = barenblatt_parameters(m, t0, mass, d);
  DiffusionProblem prob;
  prob.name = "barenblatt";
  prob.d = d;
  // Odd extension keeps p nondecreasing if undershoots go negative.
  prob.p = [m](double u) { return std::copysign(std::pow(std::abs(u), m), u); };
  const double peak = b(0.0, 0.0);
  prob.mu = m * std::pow(peak, m - 1.0);
  prob.u0 = [b](double x) { return b(x, 0.0); };
  prob.exact = [b](double x, double t) { return b(x, t); };
  prob.support_radius = [b](double t) { return b.support_radius(t); };
  return prob;
}

Grid1D default_grid(const DiffusionProblem& prob, int n, double t_end) {
  if (prob.support_radius) {
    const double r = 1.5 * prob.support_radius(t_end);
    return Grid1D(n, -r, r, Boundary::dirichlet(0.0));
  }
  return Grid1D(n, 0.0, 1.0, Boundary::periodic());
}

ErrorNorms error_norms(std::span<const double> numeric,
                       const std::function<double(double, double)>& exact, const Grid1D& grid,
                       double t) {
  if (!exact) throw ConfigError("error_norms: problem has no exact solution");
  if (static_cast<int>(numeric.size()) != grid.n())
    throw GridError("error_norms: field length does not match the grid");
  ErrorNorms e;
  for (int j = 0; j < grid.n(); ++j) {
    const double diff = std::abs(numeric[j] - exact(grid.center(j), t));
    e.l1 += diff * grid.h();
    e.linf = std::max(e.linf, diff);
  }
  return e;
}

double discrete_mass(std::span<const double> u, const Grid1D& grid) {
  double m = 0.0;
  for (double v : u) m += v;
  return m * grid.h();
}

double observed_order(double coarse_error, double fine_error) {
  return std::log2(coarse_error / fine_error);
}

ConvergenceReport convergence_study(const DiffusionProblem& prob, const SchemeConfig& cfg,
                                    const RkScheme& scheme, const std::vector<int>& grids,
                                    double t_end, const StepControl& control) {
  if (grids.size() < 3) throw ConfigError("convergence study: >=3 grids required");
  for (std::size_t i = 1; i < grids.size(); ++i) {
    if (grids[i] != 2 * grids[i - 1])
      throw ConfigError("convergence study: each grid must double the previous one");
  }
  if (!prob.has_exact()) throw ConfigError("convergence study: problem has no exact solution");

  ConvergenceReport rep;
  rep.problem = prob.name;
  rep.scheme = scheme.name;
  rep.stages = scheme.stages();
  rep.order = scheme.order();
  rep.recon = cfg.recon;
  rep.mode = control.mode;
  rep.t_end = t_end;
  rep.lambda = control.fixed_dt ? std::nan("") : select_lambda(scheme, control);
  rep.cfl = (cfg.cfl.c1 - cfg.cfl.delta) * rep.lambda;

  for (int n : grids) {
    const Grid1D grid = default_grid(prob, n, t_end);
    RunResult run;
    try {
      run = evolve(prob, cfg, grid, scheme, t_end, control);
    } catch (const DivergenceError& e) {
      auto where = e.where();
      where.grid_n = n;
      throw DivergenceError("grid n = " + std::to_string(n) + ": " + e.what(), where);
    }
    const auto err = error_norms(run.u, prob.exact, grid, t_end);
    rep.rows.push_back({n, grid.h(), run.stats.dt, err.l1, err.linf, run.stats.n_f,
                        run.stats.steps});
  }
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    rep.orders_l1.push_back(observed_order(rep.rows[i - 1].l1, rep.rows[i].l1));
    rep.orders_linf.push_back(observed_order(rep.rows[i - 1].linf, rep.rows[i].linf));
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double count = static_cast<double>(rep.rows.size());
  for (const auto& row : rep.rows) {
    const double x = std::log(row.h), y = std::log(row.l1);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.fitted_order_l1 = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return rep;
}

}  // namespace relaxssp
