#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "relaxation.hpp"
#include "tableaux.hpp"

namespace relaxssp {

// Which stability multiplier scales the forward-Euler CFL.
enum class LambdaMode { ssp, opt, custom };

std::string_view to_string(LambdaMode m);
LambdaMode lambda_mode_from_string(std::string_view name);

struct StepControl {
  LambdaMode mode = LambdaMode::opt;
  double custom_lambda = 1.0;
  // Bypasses the CFL model entirely when set.
  std::optional<double> fixed_dt;
};

// Resolves the multiplier for `scheme`. LambdaMode::ssp needs a Shu-Osher form.
double select_lambda(const RkScheme& scheme, const StepControl& control);

/// dt = (c1 - delta) * lambda * h^2 / (D mu) / (1 + 2 h phi).
double timestep(const Grid1D& grid, const DiffusionProblem& prob, const SchemeConfig& cfg,
                double lambda);

struct RunStats {
  long n_f = 0;
  long steps = 0;
  double t_final = 0.0;
  double dt = 0.0;  // nominal step; the last one may be shorter
  double lambda = 0.0;
};

/// One explicit RK step in Butcher form:
///   u^(i) = u^n + dt sum_{k<i} a_ik L(u^(k)),  u^{n+1} = u^n + dt sum_i b_i L(u^(i)).
/// Calls op.apply exactly s times. `step` is only used to label errors.
std::vector<double> rk_step(RelaxationOperator& op, std::span<const double> u, double dt,
                            const ButcherTableau& t, long step = 0);

// Called after every step with (time, step count, state); return false to stop.
using StepObserver = std::function<bool(double, long, std::span<const double>)>;

struct RunResult {
  std::vector<double> u;
  RunStats stats;
};

/// Advances u0 (sampled at cell centres) to t_end with fixed steps; the last
/// step is truncated to land on t_end. If the observer stops the run early,
/// stats.t_final records the time reached.
RunResult evolve(const DiffusionProblem& prob, const SchemeConfig& cfg, const Grid1D& grid,
                 const RkScheme& scheme, double t_end, const StepControl& control = {},
                 const StepObserver& observer = {});

// Same, starting from an explicit state instead of prob.u0.
RunResult evolve_from(std::vector<double> u, const DiffusionProblem& prob,
                      const SchemeConfig& cfg, const Grid1D& grid, const RkScheme& scheme,
                      double t_end, const StepControl& control = {},
                      const StepObserver& observer = {});

}  // namespace relaxssp
