#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cfl_model.hpp"
#include "relaxation.hpp"
#include "tableaux.hpp"

namespace relaxssp {

// R(z) = sum_k coeffs[k] z^k, the amplification factor for u' = z u.
struct StabilityPolynomial {
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::complex<double> operator()(std::complex<double> z) const;
  double operator()(double z) const;
};

/// Built by running the stage recursion on polynomials in z:
/// Y_i = 1 + z sum_k a_ik Y_k, R = 1 + z sum_i b_i Y_i. Trailing zero
/// coefficients are trimmed.
StabilityPolynomial stability_polynomial(const ButcherTableau& t);
/// Same polynomial expanded directly from the convex-combination form.
StabilityPolynomial stability_polynomial(const ShuOsherForm& form);

inline constexpr double kDefaultIntervalTolerance = 1e-10;

/// Largest eta such that |R(z)| <= 1 on [-eta, 0]. Dense scan with step 1e-3
/// followed by bisection to `tol`, so interior pockets with |R| > 1 are not
/// skipped.
double real_stability_interval(const StabilityPolynomial& r,
                               double tol = kDefaultIntervalTolerance);

// eta / 2: CFL gain over forward Euler for operators with real spectrum.
double lambda_opt(const StabilityPolynomial& r);

struct LocusPoint {
  double theta = 0.0;
  std::complex<double> z;
  int branch = 0;  // points sharing a branch form one continuous curve
};

/// Solutions of R(z) = exp(i theta_j), theta_j = 2 pi j / n, j = 0..n-1.
/// Roots are tracked across theta so that each branch is a continuous curve.
/// Every returned point satisfies ||R(z)| - 1| <= 1e-8.
std::vector<LocusPoint> boundary_locus(const StabilityPolynomial& r, int samples);

struct StabilityReport {
  std::string scheme;
  StabilityPolynomial polynomial;
  double eta = 0.0;
  std::optional<double> lambda_ssp;  // absent without a Shu-Osher form
  double lambda_opt = 0.0;
  std::vector<LocusPoint> locus;
};

// locus_samples == 0 skips the locus.
StabilityReport analyze_scheme(const RkScheme& scheme, int locus_samples = 0);

inline constexpr int kSymbolSamples = 1024;

/// Maximum of -Re sigma(xi) over xi_k = pi k / samples, k = 1..samples.
/// Throws AnalysisError if the symbol has an imaginary part above 1e-12 or a
/// positive real part.
double max_symbol_magnitude(Reconstruction recon, double h_phi = 0.0,
                            int samples = kSymbolSamples);

/// Linear CFL constant C1 = eta(R) / max |sigma(xi)|.
double von_neumann_c1(Reconstruction recon, const StabilityPolynomial& r,
                      double h_phi = 0.0, int samples = kSymbolSamples);

/// Linear Phi-correction slope: C1(h phi) ~ C1(0) (1 - C2 h phi), estimated
/// by a one-sided difference at h_phi = 1e-4. Diagnostic only.
double estimate_c2(Reconstruction recon, const StabilityPolynomial& r);

}  // namespace relaxssp
