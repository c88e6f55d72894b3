#include "tableaux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <regex>
#include <sstream>

#include "errors.hpp"

namespace relaxssp {

namespace {

constexpr double kRowSumTolerance = 1e-12;

std::string catalog_listing() {
  std::ostringstream os;
  bool first = true;
  for (auto [s, p] : ssp_catalog()) {
    os << (first ? "" : ", ") << "ssp(" << s << "," << p << ")";
    first = false;
  }
  return os.str();
}

ShuOsherForm empty_form(int stages) {
  ShuOsherForm f;
  f.stages = stages;
  for (int i = 0; i < stages; ++i) {
    f.alpha.emplace_back(static_cast<std::size_t>(i + 1), 0.0);
    f.beta.emplace_back(static_cast<std::size_t>(i + 1), 0.0);
  }
  return f;
}

// s forward Euler substeps of size dt/s.
ShuOsherForm first_order_family(int s) {
  ShuOsherForm f = empty_form(s);
  for (int i = 0; i < s; ++i) {
    f.alpha[i][i] = 1.0;
    f.beta[i][i] = 1.0 / s;
  }
  return f;
}

// s-1 Euler substeps of size dt/(s-1), then average with u^n using weight 1/s.
ShuOsherForm second_order_family(int s) {
  ShuOsherForm f = empty_form(s);
  const double sub = 1.0 / (s - 1);
  for (int i = 0; i < s - 1; ++i) {
    f.alpha[i][i] = 1.0;
    f.beta[i][i] = sub;
  }
  f.alpha[s - 1][0] = 1.0 / s;
  f.alpha[s - 1][s - 1] = (s - 1.0) / s;
  f.beta[s - 1][s - 1] = 1.0 / s;
  return f;
}

ShuOsherForm ssp33() {
  ShuOsherForm f = empty_form(3);
  f.alpha = {{1.0}, {3.0 / 4.0, 1.0 / 4.0}, {1.0 / 3.0, 0.0, 2.0 / 3.0}};
  f.beta = {{1.0}, {0.0, 1.0 / 4.0}, {0.0, 0.0, 2.0 / 3.0}};
  return f;
}

// Four-stage third-order scheme with SSP coefficient 2 (Kraaijevanger;
// also listed by Spiteri & Ruuth 2002). Exact rationals.
ShuOsherForm ssp43() {
  ShuOsherForm f = empty_form(4);
  f.alpha = {{1.0}, {0.0, 1.0}, {2.0 / 3.0, 0.0, 1.0 / 3.0}, {0.0, 0.0, 0.0, 1.0}};
  f.beta = {{0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0 / 6.0}, {0.0, 0.0, 0.0, 0.5}};
  return f;
}

// Five-stage third-order scheme of Spiteri & Ruuth (SIAM J. Numer. Anal.
// 40(2), 2002), SSP coefficient ~2.65063. alpha is the 14-digit table of
// Gottlieb, Ketcheson & Shu, J. Sci. Comput. 38 (2009); beta is that table
// after a minimum-norm projection (max change 3.1e-10) onto the third-order
// conditions, which the rounded decimals miss by ~3e-10.
ShuOsherForm ssp53() {
  ShuOsherForm f = empty_form(5);
  f.alpha = {
      {1.0},
      {0.0, 1.0},
      {0.56656131914033, 0.0, 0.43343868085967},
      {0.09299483444413, 0.00002090369620, 0.0, 0.90698426185967},
      {0.00736132260920, 0.20127980325145, 0.00182955389682, 0.0,
       0.78952932024253},
  };
  f.beta = {
      {0.37726891519897839},
      {0.0, 0.37726891516114843},
      {0.0, 0.0, 0.16352294101188273},
      {0.00071997350394152222, 0.0, 0.0, 0.34217696840904293},
      {0.0027771984070493421, 1.5679038088415494e-5, 0.0, 0.0, 0.29786487003033597},
  };
  // The decimal rows sum to one exactly but their binary images do not; fold
  // the remainder into the dominant entry.
  for (auto& row : f.alpha) {
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    auto big = std::max_element(row.begin(), row.end());
    *big += 1.0 - sum;
  }
  return f;
}

std::vector<std::vector<double>> parse_matrix(const nlohmann::json& j,
                                              const char* key, int stages) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw ParseError(std::string("tableau JSON: missing array '") + key + "'");
  const auto& rows = j.at(key);
  if (static_cast<int>(rows.size()) != stages)
    throw ParseError(std::string("tableau JSON: '") + key + "' must have s rows");
  std::vector<std::vector<double>> out;
  for (const auto& row : rows) {
    if (!row.is_array())
      throw ParseError(std::string("tableau JSON: '") + key + "' rows must be arrays");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number())
        throw ParseError(std::string("tableau JSON: non-numeric entry in '") + key + "'");
      r.push_back(v.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

int parse_positive(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw ParseError(std::string("tableau JSON: missing integer '") + key + "'");
  const int v = j.at(key).get<int>();
  if (v < 1) throw ParseError(std::string("tableau JSON: '") + key + "' must be >= 1");
  return v;
}

}  // namespace

void check_tableau(const ButcherTableau& t) {
  const auto s = static_cast<std::size_t>(t.stages);
  if (t.stages < 1 || t.order < 1) throw ConfigError("tableau: s and p must be >= 1");
  if (t.a.size() != s || t.b.size() != s || t.c.size() != s)
    throw ConfigError("tableau: a, b and c must have s rows/entries");
  for (std::size_t i = 0; i < s; ++i) {
    if (t.a[i].size() != i)
      throw ConfigError("tableau: a must be strictly lower triangular (explicit)");
    const double row = std::accumulate(t.a[i].begin(), t.a[i].end(), 0.0);
    if (std::abs(row - t.c[i]) > kRowSumTolerance)
      throw ConfigError("tableau: c_i must equal the row sum of a");
  }
  const double bsum = std::accumulate(t.b.begin(), t.b.end(), 0.0);
  if (std::abs(bsum - 1.0) > kRowSumTolerance)
    throw ConfigError("tableau: weights b must sum to 1");
}

void check_shu_osher(const ShuOsherForm& form) {
  const auto s = static_cast<std::size_t>(form.stages);
  if (form.stages < 1) throw ConfigError("shu-osher: s must be >= 1");
  if (form.alpha.size() != s || form.beta.size() != s)
    throw ConfigError("shu-osher: alpha and beta must have s rows");
  for (std::size_t i = 0; i < s; ++i) {
    if (form.alpha[i].size() != i + 1 || form.beta[i].size() != i + 1)
      throw ConfigError("shu-osher: row i must have i+1 entries");
    double sum = 0.0;
    for (double a : form.alpha[i]) {
      if (a < 0.0) throw ConfigError("shu-osher: alpha entries must be non-negative");
      sum += a;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance)
      throw ConfigError("shu-osher: alpha rows must sum to 1");
  }
}

ButcherTableau to_butcher(const ShuOsherForm& form, int order) {
  check_shu_osher(form);
  const int s = form.stages;
  // coeff[k] expresses stage value k as u^n + dt * sum_m coeff[k][m] L(Y_m).
  std::vector<std::vector<double>> coeff(s + 1, std::vector<double>(s, 0.0));
  for (int i = 0; i < s; ++i) {
    auto& row = coeff[i + 1];
    for (int k = 0; k <= i; ++k) {
      const double a = form.alpha[i][k];
      const double b = form.beta[i][k];
      for (int m = 0; m < s; ++m) row[m] += a * coeff[k][m];
      row[k] += b;
    }
  }
  ButcherTableau t;
  t.stages = s;
  t.order = order;
  for (int i = 0; i < s; ++i) {
    t.a.emplace_back(coeff[i].begin(), coeff[i].begin() + i);
    t.c.push_back(std::accumulate(t.a.back().begin(), t.a.back().end(), 0.0));
  }
  t.b = coeff[s];
  return t;
}

const std::vector<std::pair<int, int>>& ssp_catalog() {
  static const std::vector<std::pair<int, int>> pairs = {
      {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {2, 2}, {3, 2},
      {4, 2}, {5, 2}, {3, 3}, {4, 3}, {5, 3}};
  return pairs;
}

RkScheme ssp_tableau(int stages, int order) {
  const auto& cat = ssp_catalog();
  if (std::find(cat.begin(), cat.end(), std::make_pair(stages, order)) == cat.end()) {
    throw CatalogError("unknown scheme ssp(" + std::to_string(stages) + "," +
                       std::to_string(order) + "); supported: " + catalog_listing());
  }
  ShuOsherForm form;
  if (order == 1) {
    form = first_order_family(stages);
  } else if (order == 2) {
    form = second_order_family(stages);
  } else if (stages == 3) {
    form = ssp33();
  } else if (stages == 4) {
    form = ssp43();
  } else {
    form = ssp53();
  }
  RkScheme scheme;
  scheme.name = "ssp(" + std::to_string(stages) + "," + std::to_string(order) + ")";
  scheme.butcher = to_butcher(form, order);
  scheme.shu_osher = std::move(form);
  return scheme;
}

RkScheme scheme_by_name(std::string_view name) {
  static const std::regex re(R"(^\s*ssp\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$)",
                             std::regex::icase);
  std::cmatch m;
  if (!std::regex_match(name.begin(), name.end(), m, re)) {
    throw CatalogError("cannot parse scheme name '" + std::string(name) +
                       "'; expected ssp(s,p), one of: " + catalog_listing());
  }
  return ssp_tableau(std::stoi(m[1].str()), std::stoi(m[2].str()));
}

double lambda_ssp(const ShuOsherForm& form) {
  check_shu_osher(form);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < form.stages; ++i) {
    for (int k = 0; k <= i; ++k) {
      if (form.beta[i][k] > 0.0) best = std::min(best, form.alpha[i][k] / form.beta[i][k]);
    }
  }
  if (!std::isfinite(best))
    throw AnalysisError("lambda_ssp: all beta coefficients vanish (degenerate scheme)");
  return best;
}

double quadrature_condition_residual(const ButcherTableau& t, int q) {
  double sum = 0.0;
  for (int i = 0; i < t.stages; ++i) sum += t.b[i] * std::pow(t.c[i], q - 1);
  return sum - 1.0 / q;
}

OrderCheck validate_order(const ButcherTableau& t, int order) {
  if (order < 1 || order > 3)
    throw ConfigError("validate_order: only orders 1..3 are supported");
  check_tableau(t);
  OrderCheck check;
  auto add = [&](std::string name, double r) {
    check.residuals.push_back({std::move(name), r});
    if (std::abs(r) > kOrderTolerance) check.passed = false;
  };
  add("sum b = 1", quadrature_condition_residual(t, 1));
  if (order >= 2) add("sum b c = 1/2", quadrature_condition_residual(t, 2));
  if (order >= 3) {
    add("sum b c^2 = 1/3", quadrature_condition_residual(t, 3));
    double tree = 0.0;
    for (int i = 0; i < t.stages; ++i) {
      double inner = 0.0;
      for (int k = 0; k < i; ++k) inner += t.a[i][k] * t.c[k];
      tree += t.b[i] * inner;
    }
    add("sum b a c = 1/6", tree - 1.0 / 6.0);
  }
  return check;
}

nlohmann::json to_json(const ButcherTableau& t) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < t.stages; ++i) {
    std::vector<double> row(static_cast<std::size_t>(t.stages), 0.0);
    std::copy(t.a[i].begin(), t.a[i].end(), row.begin());
    a.push_back(row);
  }
  return {{"s", t.stages}, {"p", t.order}, {"a", a}, {"b", t.b}, {"c", t.c}};
}

nlohmann::json to_json(const ShuOsherForm& form, int order) {
  return {{"s", form.stages}, {"p", order}, {"alpha", form.alpha}, {"beta", form.beta}};
}

ButcherTableau butcher_from_json(const nlohmann::json& j) {
  ButcherTableau t;
  t.stages = parse_positive(j, "s");
  t.order = parse_positive(j, "p");
  const auto full = parse_matrix(j, "a", t.stages);
  for (int i = 0; i < t.stages; ++i) {
    const auto& row = full[i];
    if (row.size() < static_cast<std::size_t>(i))
      throw ParseError("tableau JSON: row " + std::to_string(i) + " of 'a' is too short");
    for (std::size_t k = i; k < row.size(); ++k) {
      if (row[k] != 0.0)
        throw ParseError("tableau JSON: 'a' has entries on or above the diagonal (implicit scheme)");
    }
    t.a.emplace_back(row.begin(), row.begin() + i);
  }
  if (!j.contains("b") || !j.at("b").is_array()) throw ParseError("tableau JSON: missing 'b'");
  t.b = j.at("b").get<std::vector<double>>();
  if (j.contains("c")) {
    t.c = j.at("c").get<std::vector<double>>();
  } else {
    for (const auto& row : t.a) t.c.push_back(std::accumulate(row.begin(), row.end(), 0.0));
  }
  try {
    check_tableau(t);
  } catch (const ConfigError& e) {
    throw ParseError(std::string("tableau JSON: ") + e.what());
  }
  return t;
}

ShuOsherForm shu_osher_from_json(const nlohmann::json& j) {
  ShuOsherForm f;
  f.stages = parse_positive(j, "s");
  f.alpha = parse_matrix(j, "alpha", f.stages);
  f.beta = parse_matrix(j, "beta", f.stages);
  // Accept full s x (s) matrices by trimming trailing columns.
  for (int i = 0; i < f.stages; ++i) {
    for (auto* rows : {&f.alpha, &f.beta}) {
      auto& row = (*rows)[i];
      if (row.size() < static_cast<std::size_t>(i + 1))
        throw ParseError("shu-osher JSON: row " + std::to_string(i) + " is too short");
      for (std::size_t k = i + 1; k < row.size(); ++k) {
        if (row[k] != 0.0) throw ParseError("shu-osher JSON: non-zero entry beyond row length");
      }
      row.resize(static_cast<std::size_t>(i + 1));
    }
  }
  try {
    check_shu_osher(f);
  } catch (const ConfigError& e) {
    throw ParseError(std::string("shu-osher JSON: ") + e.what());
  }
  return f;
}

RkScheme scheme_from_json(const nlohmann::json& j, std::string name) {
  if (!j.is_object()) throw ParseError("tableau JSON: expected an object");
  RkScheme scheme;
  scheme.name = std::move(name);
  if (j.contains("alpha")) {
    auto form = shu_osher_from_json(j);
    scheme.butcher = to_butcher(form, parse_positive(j, "p"));
    scheme.shu_osher = std::move(form);
  } else {
    scheme.butcher = butcher_from_json(j);
  }
  return scheme;
}

}  // namespace relaxssp
