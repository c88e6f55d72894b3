#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfl_model.hpp"

namespace relaxssp {

enum class Reconstruction { pwc, pwl_minmod, weno5 };

std::string_view to_string(Reconstruction r);
// Accepts "pwc", "pwl" and "weno5" (case-insensitive).
Reconstruction reconstruction_from_string(std::string_view name);
// Smallest periodic grid on which the full operator stencil is well defined.
int min_cells(Reconstruction r);

struct Boundary {
  enum class Kind { periodic, dirichlet };
  Kind kind = Kind::periodic;
  double value = 0.0;

  static Boundary periodic() { return {}; }
  static Boundary dirichlet(double v) { return {Kind::dirichlet, v}; }
  bool is_periodic() const { return kind == Kind::periodic; }
};

// Uniform cell-centred grid on [x_lo, x_hi].
class Grid1D {
 public:
  Grid1D(int n, double x_lo, double x_hi, Boundary boundary = Boundary::periodic());

  int n() const { return n_; }
  double x_lo() const { return x_lo_; }
  double x_hi() const { return x_hi_; }
  double h() const { return h_; }
  double length() const { return x_hi_ - x_lo_; }
  const Boundary& boundary() const { return boundary_; }
  double center(int j) const { return x_lo_ + (j + 0.5) * h_; }
  std::vector<double> centers() const;

 private:
  int n_;
  double x_lo_;
  double x_hi_;
  double h_;
  Boundary boundary_;
};

// u_t = D p(u)_xx with p nondecreasing and Lipschitz (constant mu).
struct DiffusionProblem {
  std::string name;
  double d = 1.0;
  std::function<double(double)> p;
  double mu = 1.0;
  std::function<double(double)> u0;
  std::function<double(double, double)> exact;  // may be empty
  // Radius of the compact support at time t, for problems that have one.
  std::function<double(double)> support_radius;
  bool has_exact() const { return static_cast<bool>(exact); }
};

// Checks mu > 0, d > 0 and spot-checks that p is nondecreasing over the
// range of u0 sampled on the grid. Throws ConfigError.
void check_problem(const DiffusionProblem& prob, const Grid1D& grid);

struct SchemeConfig {
  Reconstruction recon = Reconstruction::weno5;
  double phi = 0.0;  // relaxation speed
  CflModel cfl{};
  // Freeze limiters/weights to their smooth-data linear values (minmod ->
  // central slope, WENO5 -> ideal weights). Used by the linear analysis.
  bool linearized = false;
};

// Throws ConfigError unless phi >= 0 and (phi == 0 or phi^2 >= D mu).
void check_scheme_config(const SchemeConfig& cfg, const DiffusionProblem& prob);

// Interface values at the n+1 faces x_lo + k h, k = 0..n. `left` is the
// value extrapolated from the cell on the left of the face, `right` from the
// cell on its right. Ghost cells follow the grid boundary.
struct FaceValues {
  std::vector<double> left;
  std::vector<double> right;
};

FaceValues reconstruct(Reconstruction recon, std::span<const double> cells,
                       const Grid1D& grid, bool linearized = false);

/// Semidiscrete operator L(u) of the relaxed scheme.
///
/// Per evaluation: w = p(u); v = -D dw/dx at cell centres; v and w are
/// reconstructed to faces and combined in the upwind flux
///   F = (v^- + v^+)/2 - (phi/2)(w^+ - w^-),
/// and L_j = -(F_{j+1/2} - F_{j-1/2}) / h. The cell derivative of w is the
/// 2nd-order central difference for PWC, the 4th-order central difference
/// for PWL, and the difference of averaged WENO5 face values for WENO5.
///
/// Not thread-safe: scratch buffers and the flux-evaluation counter live in
/// the instance. Use one operator per solver.
class RelaxationOperator {
 public:
  RelaxationOperator(DiffusionProblem prob, SchemeConfig cfg, Grid1D grid);

  // dudt = L(u). Counts one flux evaluation. Throws DivergenceError if u or
  // the result contains a non-finite value.
  void apply(std::span<const double> u, std::span<double> dudt);
  std::vector<double> apply(std::span<const double> u);

  long flux_evaluations() const { return flux_evaluations_; }
  void reset_counter() { flux_evaluations_ = 0; }

  const DiffusionProblem& problem() const { return prob_; }
  const SchemeConfig& config() const { return cfg_; }
  const Grid1D& grid() const { return grid_; }

  static constexpr int kGhost = 6;

 private:
  DiffusionProblem prob_;
  SchemeConfig cfg_;
  Grid1D grid_;
  long flux_evaluations_ = 0;

  std::vector<double> ue_, w_, wl_, wr_, v_, vl_, vr_;
};

/// Fourier symbol of the linearized operator, scaled by h^2, for the mode
/// exp(i xi j): L e = sigma(xi)/h^2 e. Evaluated with p(u) = u, D = mu = 1
/// and relaxation speed such that h*phi == h_phi. Throws AnalysisError if the
/// pointwise ratio is not constant across the grid.
std::complex<double> space_symbol(Reconstruction recon, double xi, double h_phi = 0.0);

}  // namespace relaxssp
