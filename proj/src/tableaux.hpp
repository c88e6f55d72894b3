#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace relaxssp {

// Explicit Runge-Kutta scheme in Butcher form. `a` is stored as ragged
// strictly-lower rows: a[i] holds a_{i,0..i-1}, so a[0] is always empty.
struct ButcherTableau {
  int stages = 0;
  int order = 0;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;
};

// Shu-Osher (convex combination) form. Row i builds stage value i+1 out of
// stages 0..i, with stage 0 = u^n; the last row produces u^{n+1}.
struct ShuOsherForm {
  int stages = 0;
  std::vector<std::vector<double>> alpha;
  std::vector<std::vector<double>> beta;
};

// A named scheme. Catalog schemes carry both forms; tableaux imported from
// Butcher-only JSON have no Shu-Osher form and hence no lambda_ssp.
struct RkScheme {
  std::string name;
  ButcherTableau butcher;
  std::optional<ShuOsherForm> shu_osher;

  int stages() const { return butcher.stages; }
  int order() const { return butcher.order; }
};

/// Checks the structural invariants (explicitness, c = row sums of a,
/// sum of b equal to one) and throws ConfigError on violation.
void check_tableau(const ButcherTableau& t);
void check_shu_osher(const ShuOsherForm& form);

/// Converts a Shu-Osher form into the equivalent Butcher tableau.
ButcherTableau to_butcher(const ShuOsherForm& form, int order);

/// Supported (s,p) pairs of the optimal SSP catalog, ordered by p then s.
const std::vector<std::pair<int, int>>& ssp_catalog();

/// Optimal SSP(s,p) scheme, both forms. Throws CatalogError for pairs
/// outside ssp_catalog().
RkScheme ssp_tableau(int stages, int order);

/// Parses "ssp(s,p)" (case-insensitive, whitespace tolerant).
RkScheme scheme_by_name(std::string_view name);

/// min over beta_ik > 0 of alpha_ik / beta_ik.
double lambda_ssp(const ShuOsherForm& form);

// Residual of the bushy-tree condition sum_i b_i c_i^{q-1} = 1/q.
double quadrature_condition_residual(const ButcherTableau& t, int q);

struct OrderConditionResidual {
  std::string condition;
  double residual = 0.0;
};

struct OrderCheck {
  bool passed = true;
  std::vector<OrderConditionResidual> residuals;
};

inline constexpr double kOrderTolerance = 1e-12;

/// Evaluates the classical order conditions up to order p (p <= 3).
OrderCheck validate_order(const ButcherTableau& t, int order);

// JSON layout: {"s","p","a","b","c"} with a as a full s x s matrix on
// output; input also accepts ragged lower-triangular rows.
nlohmann::json to_json(const ButcherTableau& t);
nlohmann::json to_json(const ShuOsherForm& form, int order);
ButcherTableau butcher_from_json(const nlohmann::json& j);
ShuOsherForm shu_osher_from_json(const nlohmann::json& j);

// Accepts either layout; a document with "alpha"/"beta" yields both forms.
RkScheme scheme_from_json(const nlohmann::json& j, std::string name = "user");

}  // namespace relaxssp
