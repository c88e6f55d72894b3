#include "stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"

namespace relaxssp {

namespace {

using Poly = std::vector<double>;

Poly poly_add_scaled(Poly acc, const Poly& p, double scale, int shift) {
  if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) acc[k + shift] += scale * p[k];
  return acc;
}

StabilityPolynomial trimmed(Poly p) {
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
  return {std::move(p)};
}

void check_consistent(const StabilityPolynomial& r) {
  if (r.coeffs.size() < 2 || std::abs(r.coeffs[0] - 1.0) > 1e-12 ||
      std::abs(r.coeffs[1] - 1.0) > 1e-12) {
    throw AnalysisError("stability polynomial must satisfy r0 = r1 = 1");
  }
}

// All roots of sum_k c[k] z^k via the companion matrix, polished by Newton.
std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  if (d < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -c[i] / c[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) return {};
  std::vector<std::complex<double>> roots(solver.eigenvalues().begin(),
                                          solver.eigenvalues().end());
  for (auto& z : roots) {
    for (int it = 0; it < 4; ++it) {
      std::complex<double> f = c[d], df = 0.0;
      for (int k = d - 1; k >= 0; --k) {
        df = df * z + f;
        f = f * z + c[k];
      }
      if (std::abs(df) == 0.0) break;
      const auto step = f / df;
      z -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
  }
  return roots;
}

// Reorders `next` so that next[b] continues prev[b]. Exhaustive over
// permutations; degrees here are small.
void match_branches(const std::vector<std::complex<double>>& prev,
                    std::vector<std::complex<double>>& next) {
  const std::size_t d = next.size();
  if (d <= 1 || prev.size() != d) return;
  std::vector<std::size_t> perm(d), best;
  std::iota(perm.begin(), perm.end(), 0);
  if (d > 8) {
    // Greedy nearest neighbour for unusually high degree.
    std::vector<std::complex<double>> out;
    std::vector<bool> used(d, false);
    for (const auto& p : prev) {
      std::size_t arg = 0;
      double dist = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < d; ++k) {
        if (!used[k] && std::abs(next[k] - p) < dist) {
          dist = std::abs(next[k] - p);
          arg = k;
        }
      }
      used[arg] = true;
      out.push_back(next[arg]);
    }
    next = std::move(out);
    return;
  }
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t b = 0; b < d; ++b) cost += std::norm(next[perm[b]] - prev[b]);
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<std::complex<double>> out(d);
  for (std::size_t b = 0; b < d; ++b) out[b] = next[best[b]];
  next = std::move(out);
}

}  // namespace

std::complex<double> StabilityPolynomial::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double StabilityPolynomial::operator()(double z) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

StabilityPolynomial stability_polynomial(const ButcherTableau& t) {
  check_tableau(t);
  std::vector<Poly> stage;
  for (int i = 0; i < t.stages; ++i) {
    Poly y{1.0};
    for (int k = 0; k < i; ++k) y = poly_add_scaled(std::move(y), stage[k], t.a[i][k], 1);
    stage.push_back(std::move(y));
  }
  Poly r{1.0};
  for (int i = 0; i < t.stages; ++i) r = poly_add_scaled(std::move(r), stage[i], t.b[i], 1);
  return trimmed(std::move(r));
}

StabilityPolynomial stability_polynomial(const ShuOsherForm& form) {
  check_shu_osher(form);
  std::vector<Poly> stage{Poly{1.0}};
  for (int i = 0; i < form.stages; ++i) {
    Poly y{0.0};
    for (int k = 0; k <= i; ++k) {
      y = poly_add_scaled(std::move(y), stage[k], form.alpha[i][k], 0);
      y = poly_add_scaled(std::move(y), stage[k], form.beta[i][k], 1);
    }
    stage.push_back(std::move(y));
  }
  return trimmed(std::move(stage.back()));
}

double real_stability_interval(const StabilityPolynomial& r, double tol) {
  check_consistent(r);
  if (!(tol > 0.0)) throw AnalysisError("real_stability_interval: tol must be positive");
  constexpr double kStep = 1e-3;
  // Slack absorbs roundoff where R touches +-1 without crossing.
  constexpr double kSlack = 1e-13;
  auto unstable = [&](double x) { return r(x) * r(x) - 1.0 > kSlack; };

  const int d = r.degree();
  const double reach = 2.0 * d * d + 2.0;
  const long count = static_cast<long>(std::ceil(reach / kStep));
  double good = 0.0;
  for (long k = 1; k <= count; ++k) {
    const double x = -k * kStep;
    if (unstable(x)) {
      double lo = x, hi = good;  // unstable at lo, stable at hi
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (unstable(mid) ? lo : hi) = mid;
      }
      return -hi;
    }
    good = x;
  }
  return -good;
}

double lambda_opt(const StabilityPolynomial& r) { return real_stability_interval(r) / 2.0; }

std::vector<LocusPoint> boundary_locus(const StabilityPolynomial& r, int samples) {
  check_consistent(r);
  if (samples < 16) throw AnalysisError("boundary_locus: need at least 16 samples");
  const int d = r.degree();
  std::vector<std::vector<std::complex<double>>> by_theta;
  by_theta.reserve(samples);
  for (int j = 0; j < samples; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / samples;
    std::vector<std::complex<double>> c(r.coeffs.begin(), r.coeffs.end());
    c[0] -= std::polar(1.0, theta);
    auto roots = poly_roots(c);
    if (static_cast<int>(roots.size()) != d) {
      throw AnalysisError("boundary_locus: root finder failed at theta = " + std::to_string(theta));
    }
    for (const auto& z : roots) {
      if (std::abs(std::abs(r(z)) - 1.0) > 1e-8) {
        throw AnalysisError("boundary_locus: root finder did not converge at theta = " +
                            std::to_string(theta));
      }
    }
    if (j == 0) {
      std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
      });
    } else {
      match_branches(by_theta.back(), roots);
    }
    by_theta.push_back(std::move(roots));
  }
  std::vector<LocusPoint> out;
  out.reserve(static_cast<std::size_t>(samples) * d);
  for (int b = 0; b < d; ++b) {
    for (int j = 0; j < samples; ++j) {
      out.push_back({2.0 * std::numbers::pi * j / samples, by_theta[j][b], b});
    }
  }
  return out;
}

StabilityReport analyze_scheme(const RkScheme& scheme, int locus_samples) {
  StabilityReport rep;
  rep.scheme = scheme.name;
  rep.polynomial = stability_polynomial(scheme.butcher);
  rep.eta = real_stability_interval(rep.polynomial);
  rep.lambda_opt = rep.eta / 2.0;
  if (scheme.shu_osher) rep.lambda_ssp = lambda_ssp(*scheme.shu_osher);
  if (locus_samples > 0) rep.locus = boundary_locus(rep.polynomial, locus_samples);
  return rep;
}

double max_symbol_magnitude(Reconstruction recon, double h_phi, int samples) {
  if (samples < 1) throw AnalysisError("symbol sampling needs at least one point");
  double worst = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double xi = std::numbers::pi * k / samples;
    const auto sigma = space_symbol(recon, xi, h_phi);
    if (std::abs(sigma.imag()) > 1e-12) {
      throw AnalysisError("symbol of " + std::string(to_string(recon)) +
                          " has imaginary part " + std::to_string(sigma.imag()) +
                          " at xi = " + std::to_string(xi));
    }
    if (sigma.real() > 1e-12) {
      throw AnalysisError("symbol of " + std::string(to_string(recon)) +
                          " is positive at xi = " + std::to_string(xi));
    }
    worst = std::max(worst, -sigma.real());
  }
  return worst;
}

double von_neumann_c1(Reconstruction recon, const StabilityPolynomial& r, double h_phi,
                      int samples) {
  return real_stability_interval(r) / max_symbol_magnitude(recon, h_phi, samples);
}

double estimate_c2(Reconstruction recon, const StabilityPolynomial& r) {
  constexpr double kHphi = 1e-4;
  const double base = von_neumann_c1(recon, r, 0.0);
  const double shifted = von_neumann_c1(recon, r, kHphi);
  return (1.0 - shifted / base) / kHphi;
}

void check_cfl_model(const CflModel& cfl) {
  if (!(cfl.c1 > 0.0)) throw ConfigError("CFL model: c1 must be positive");
  if (!(cfl.delta >= 0.0 && cfl.delta < cfl.c1))
    throw ConfigError("CFL model: need 0 <= delta < c1");
}

}  // namespace relaxssp
