#include "relaxation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace relaxssp {

namespace {

constexpr double kWenoEps = 1e-6;

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

double slope(const double* q, int i, bool linearized) {
  if (linearized) return 0.5 * (q[i + 1] - q[i - 1]);
  return minmod(q[i] - q[i - 1], q[i + 1] - q[i]);
}

// Fifth-order WENO value at the right edge of the middle cell of
// (a, b, c, d, e). Mirror the arguments for the left edge.
double weno5_edge(double a, double b, double c, double d, double e, bool linearized) {
  const double q0 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0;
  const double q1 = (-b + 5.0 * c + 2.0 * d) / 6.0;
  const double q2 = (2.0 * c + 5.0 * d - e) / 6.0;
  if (linearized) return 0.1 * q0 + 0.6 * q1 + 0.3 * q2;

  const double b0 = 13.0 / 12.0 * std::pow(a - 2.0 * b + c, 2) +
                    0.25 * std::pow(a - 4.0 * b + 3.0 * c, 2);
  const double b1 = 13.0 / 12.0 * std::pow(b - 2.0 * c + d, 2) + 0.25 * std::pow(b - d, 2);
  const double b2 = 13.0 / 12.0 * std::pow(c - 2.0 * d + e, 2) +
                    0.25 * std::pow(3.0 * c - 4.0 * d + e, 2);
  const double a0 = 0.1 / ((kWenoEps + b0) * (kWenoEps + b0));
  const double a1 = 0.6 / ((kWenoEps + b1) * (kWenoEps + b1));
  const double a2 = 0.3 / ((kWenoEps + b2) * (kWenoEps + b2));
  return (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2);
}

// Fills left/right values at faces f in [f_begin, f_end), where face f sits
// between q[f] and q[f+1]. Caller guarantees the stencil is in range:
// f-2 .. f+3 for WENO5, f-1 .. f+2 for PWL, f .. f+1 for PWC.
void reconstruct_faces(Reconstruction recon, bool linearized, const double* q,
                       int f_begin, int f_end, double* left, double* right) {
  switch (recon) {
    case Reconstruction::pwc:
      for (int f = f_begin; f < f_end; ++f) {
        left[f] = q[f];
        right[f] = q[f + 1];
      }
      break;
    case Reconstruction::pwl_minmod:
      for (int f = f_begin; f < f_end; ++f) {
        left[f] = q[f] + 0.5 * slope(q, f, linearized);
        right[f] = q[f + 1] - 0.5 * slope(q, f + 1, linearized);
      }
      break;
    case Reconstruction::weno5:
      for (int f = f_begin; f < f_end; ++f) {
        left[f] = weno5_edge(q[f - 2], q[f - 1], q[f], q[f + 1], q[f + 2], linearized);
        right[f] = weno5_edge(q[f + 3], q[f + 2], q[f + 1], q[f], q[f - 1], linearized);
      }
      break;
  }
}

// Copies `cells` into `ext` (size n + 2g) and fills ghosts per boundary.
void extend(std::span<const double> cells, const Grid1D& grid, int g, std::vector<double>& ext) {
  const int n = grid.n();
  ext.resize(static_cast<std::size_t>(n + 2 * g));
  for (int e = 0; e < n + 2 * g; ++e) {
    const int j = e - g;
    if (j >= 0 && j < n) {
      ext[e] = cells[j];
    } else if (grid.boundary().is_periodic()) {
      ext[e] = cells[((j % n) + n) % n];
    } else {
      ext[e] = grid.boundary().value;
    }
  }
}

void require_cells(Reconstruction recon, const Grid1D& grid) {
  if (grid.n() < min_cells(recon)) {
    throw GridError("grid has " + std::to_string(grid.n()) + " cells; " +
                    std::string(to_string(recon)) + " needs at least " +
                    std::to_string(min_cells(recon)));
  }
}

}  // namespace

std::string_view to_string(Reconstruction r) {
  switch (r) {
    case Reconstruction::pwc: return "pwc";
    case Reconstruction::pwl_minmod: return "pwl";
    case Reconstruction::weno5: return "weno5";
  }
  return "?";
}

Reconstruction reconstruction_from_string(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "pwc") return Reconstruction::pwc;
  if (s == "pwl") return Reconstruction::pwl_minmod;
  if (s == "weno5") return Reconstruction::weno5;
  throw ConfigError("unknown reconstruction '" + std::string(name) + "'; expected pwc, pwl or weno5");
}

int min_cells(Reconstruction r) {
  switch (r) {
    case Reconstruction::pwc: return 2;
    case Reconstruction::pwl_minmod: return 3;
    case Reconstruction::weno5: return 6;
  }
  return 6;
}

Grid1D::Grid1D(int n, double x_lo, double x_hi, Boundary boundary)
    : n_(n), x_lo_(x_lo), x_hi_(x_hi), h_(0.0), boundary_(boundary) {
  if (n < 1) throw GridError("grid needs at least one cell");
  if (!(x_hi > x_lo)) throw GridError("grid needs x_hi > x_lo");
  h_ = (x_hi - x_lo) / n;
}

std::vector<double> Grid1D::centers() const {
  std::vector<double> x(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) x[j] = center(j);
  return x;
}

void check_problem(const DiffusionProblem& prob, const Grid1D& grid) {
  if (!prob.p || !prob.u0) throw ConfigError("problem: p and u0 must be set");
  if (!(prob.mu > 0.0)) throw ConfigError("problem: Lipschitz constant mu must be positive");
  if (!(prob.d > 0.0)) throw ConfigError("problem: diffusion coefficient D must be positive");
  std::vector<double> samples;
  for (double x : grid.centers()) samples.push_back(prob.u0(x));
  std::sort(samples.begin(), samples.end());
  double prev = prob.p(samples.front());
  for (double u : samples) {
    const double pu = prob.p(u);
    if (pu < prev - 1e-14 * (1.0 + std::abs(prev)))
      throw ConfigError("problem: p is decreasing on the range of the initial data");
    prev = pu;
  }
}

void check_scheme_config(const SchemeConfig& cfg, const DiffusionProblem& prob) {
  if (!(cfg.phi >= 0.0)) throw ConfigError("relaxation speed phi must be non-negative");
  if (cfg.phi > 0.0 && cfg.phi * cfg.phi < prob.d * prob.mu) {
    throw ConfigError("subcharacteristic condition violated: phi^2 = " +
                      std::to_string(cfg.phi * cfg.phi) + " < D*mu = " +
                      std::to_string(prob.d * prob.mu));
  }
}

FaceValues reconstruct(Reconstruction recon, std::span<const double> cells,
                       const Grid1D& grid, bool linearized) {
  require_cells(recon, grid);
  if (static_cast<int>(cells.size()) != grid.n())
    throw GridError("reconstruct: field length does not match the grid");
  constexpr int g = 3;
  std::vector<double> ext;
  extend(cells, grid, g, ext);
  const int n = grid.n();
  std::vector<double> left(ext.size()), right(ext.size());
  // Face k (k = 0..n) lies between ext cells k-1+g and k+g.
  reconstruct_faces(recon, linearized, ext.data(), g - 1, n + g, left.data(), right.data());
  FaceValues out;
  out.left.assign(left.begin() + (g - 1), left.begin() + (n + g));
  out.right.assign(right.begin() + (g - 1), right.begin() + (n + g));
  return out;
}

RelaxationOperator::RelaxationOperator(DiffusionProblem prob, SchemeConfig cfg, Grid1D grid)
    : prob_(std::move(prob)), cfg_(cfg), grid_(grid) {
  require_cells(cfg_.recon, grid_);
  if (!prob_.p) throw ConfigError("problem: p must be set");
  if (!(prob_.d > 0.0)) throw ConfigError("problem: diffusion coefficient D must be positive");
  check_scheme_config(cfg_, prob_);
  const auto size = static_cast<std::size_t>(grid_.n() + 2 * kGhost);
  for (auto* buf : {&ue_, &w_, &wl_, &wr_, &v_, &vl_, &vr_}) buf->assign(size, 0.0);
}

void RelaxationOperator::apply(std::span<const double> u, std::span<double> dudt) {
  const int n = grid_.n();
  if (static_cast<int>(u.size()) != n || static_cast<int>(dudt.size()) != n)
    throw GridError("apply: field length does not match the grid");
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(u[j]))
      throw DivergenceError("non-finite state value at cell " + std::to_string(j), {.index = j});
  }
  ++flux_evaluations_;

  constexpr int g = kGhost;
  const int size = n + 2 * g;
  const double h = grid_.h();
  const double d = prob_.d;
  const double phi = cfg_.phi;
  const bool lin = cfg_.linearized;

  extend(u, grid_, g, ue_);
  for (int e = 0; e < size; ++e) w_[e] = prob_.p(ue_[e]);

  // w at faces 2 .. size-4, v at cells 3 .. size-4, v at faces 5 .. size-7.
  reconstruct_faces(cfg_.recon, lin, w_.data(), 2, size - 3, wl_.data(), wr_.data());
  switch (cfg_.recon) {
    case Reconstruction::pwc:
      for (int e = 3; e < size - 3; ++e) v_[e] = -d * (w_[e + 1] - w_[e - 1]) / (2.0 * h);
      break;
    case Reconstruction::pwl_minmod:
      for (int e = 3; e < size - 3; ++e) {
        v_[e] = -d * (-w_[e + 2] + 8.0 * w_[e + 1] - 8.0 * w_[e - 1] + w_[e - 2]) / (12.0 * h);
      }
      break;
    case Reconstruction::weno5:
      for (int e = 3; e < size - 3; ++e) {
        const double hi = 0.5 * (wl_[e] + wr_[e]);
        const double lo = 0.5 * (wl_[e - 1] + wr_[e - 1]);
        v_[e] = -d * (hi - lo) / h;
      }
      break;
  }
  reconstruct_faces(cfg_.recon, lin, v_.data(), 5, size - 6, vl_.data(), vr_.data());

  auto flux = [&](int f) {
    return 0.5 * (vl_[f] + vr_[f]) - 0.5 * phi * (wr_[f] - wl_[f]);
  };
  for (int j = 0; j < n; ++j) {
    const int e = j + g;
    dudt[j] = -(flux(e) - flux(e - 1)) / h;
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(dudt[j]))
      throw DivergenceError("non-finite time derivative at cell " + std::to_string(j), {.index = j});
  }
}

std::vector<double> RelaxationOperator::apply(std::span<const double> u) {
  std::vector<double> out(u.size());
  apply(u, out);
  return out;
}

std::complex<double> space_symbol(Reconstruction recon, double xi, double h_phi) {
  if (!(xi > 0.0 && xi <= std::numbers::pi))
    throw AnalysisError("space_symbol: xi must lie in (0, pi]");
  if (!(h_phi >= 0.0)) throw AnalysisError("space_symbol: h*phi must be non-negative");

  // The mode exp(i xi j) is not periodic on the grid, so evaluate on a
  // periodic buffer and only read cells farther than the stencil radius from
  // the wrap-around seam.
  constexpr int kInterior = 64;
  constexpr int kPad = 2 * RelaxationOperator::kGhost;
  constexpr int n = kInterior + 2 * kPad;
  // Only h*phi matters after scaling by h^2; phi = 1 keeps phi^2 >= D mu.
  const double h = h_phi > 0.0 ? h_phi : 1.0;
  const double phi = h_phi > 0.0 ? 1.0 : 0.0;

  DiffusionProblem lin;
  lin.name = "linear";
  lin.d = 1.0;
  lin.mu = 1.0;
  lin.p = [](double u) { return u; };
  lin.u0 = [](double) { return 0.0; };
  SchemeConfig cfg;
  cfg.recon = recon;
  cfg.phi = phi;
  cfg.linearized = true;
  RelaxationOperator op(lin, cfg, Grid1D(n, 0.0, n * h));

  std::vector<double> cs(n), sn(n);
  for (int j = 0; j < n; ++j) {
    cs[j] = std::cos(xi * j);
    sn[j] = std::sin(xi * j);
  }
  const auto lc = op.apply(cs);
  const auto ls = op.apply(sn);

  std::complex<double> ref;
  double spread = 0.0;
  for (int j = kPad; j < kPad + kInterior; ++j) {
    const std::complex<double> l(lc[j], ls[j]);
    const std::complex<double> sigma = l * std::polar(1.0, -xi * j) * (h * h);
    if (j == kPad) ref = sigma;
    spread = std::max(spread, std::abs(sigma - ref));
  }
  if (spread > 1e-12 * std::max(1.0, std::abs(ref))) {
    throw AnalysisError("space_symbol: ratio L_j/u_j not constant across the grid (spread " +
                        std::to_string(spread) + "); linearization is inconsistent");
  }
  return ref;
}

}  // namespace relaxssp
