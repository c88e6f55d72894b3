#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "integrator.hpp"
#include "relaxation.hpp"
#include "tableaux.hpp"

namespace relaxssp {

// Linear heat equation on [0,1) periodic, u0 = sin(2 pi mode x).
DiffusionProblem heat_problem(int mode = 1, double d = 1.0);

// Porous medium equation u_t = D (|u|^{m-1} u)_xx with the Barenblatt
// profile at s = t0 + D t as initial data and exact solution.
struct Barenblatt {
  double m = 2.0;
  double t0 = 1.0;
  double mass = 1.0;
  double d = 1.0;

  double exponent() const { return 1.0 / (m + 1.0); }
  double spread() const { return (m - 1.0) / (2.0 * m) * exponent(); }
  // Constant fixed by the total mass.
  double height_constant() const;
  double operator()(double x, double t) const;
  double support_radius(double t) const;
};

DiffusionProblem barenblatt_problem(double m, double t0, double mass, double d = 1.0);
Barenblatt barenblatt_parameters(double m, double t0, double mass, double d = 1.0);

// Heat: [0,1) periodic. Barenblatt: [-1.5 R, 1.5 R] Dirichlet 0 with R the
// support radius at t_end.
Grid1D default_grid(const DiffusionProblem& prob, int n, double t_end);

struct ErrorNorms {
  double l1 = 0.0;
  double linf = 0.0;
};

ErrorNorms error_norms(std::span<const double> numeric,
                       const std::function<double(double, double)>& exact, const Grid1D& grid,
                       double t);

double discrete_mass(std::span<const double> u, const Grid1D& grid);

// log2(coarse / fine).
double observed_order(double coarse_error, double fine_error);

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  double dt = 0.0;
  double l1 = 0.0;
  double linf = 0.0;
  long n_f = 0;
  long steps = 0;
};

struct ConvergenceReport {
  std::string problem;
  std::string scheme;
  int stages = 0;
  int order = 0;
  Reconstruction recon = Reconstruction::weno5;
  LambdaMode mode = LambdaMode::opt;
  double lambda = 0.0;
  double cfl = 0.0;  // (c1 - delta) * lambda
  double t_end = 0.0;
  std::vector<ConvergenceRow> rows;
  std::vector<double> orders_l1;    // between successive grids
  std::vector<double> orders_linf;
  double fitted_order_l1 = 0.0;     // least-squares slope of log e vs log h
};

/// Runs `evolve` on each grid (each twice the previous, at least three) with
/// dt recomputed from h, and measures errors against the exact solution.
ConvergenceReport convergence_study(const DiffusionProblem& prob, const SchemeConfig& cfg,
                                    const RkScheme& scheme, const std::vector<int>& grids,
                                    double t_end, const StepControl& control = {});

}  // namespace relaxssp
