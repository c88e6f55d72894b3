// Parameter set shared by every CLI command, with a lossless JSON form.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace relaxssp::cli {

// Thrown for invalid flag combinations; the CLI maps it to a usage error.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string command;  // stability | cfl-table | run | convergence | barenblatt

  // scheme selection
  std::vector<std::string> schemes;
  std::vector<std::string> tableaux;  // JSON files
  std::vector<std::string> recons;    // cfl-table rows
  int locus_samples = 720;

  // discretization
  std::string problem = "heat";
  std::string recon = "weno5";
  std::string lambda = "opt";  // ssp | opt | positive number
  std::optional<double> phi;   // unset: problem-dependent default
  std::optional<double> c1;    // unset: tabulated Forward Euler constant
  double delta = 0.01;
  std::optional<double> dt;  // fixed step, bypasses the CFL model
  int n = 80;
  std::optional<double> t_end;
  std::vector<int> grids;
  int nf_grid = 80;

  // heat
  int mode = 1;
  double diffusion = 1.0;

  // barenblatt
  double m = 2.0;
  double t0 = 1.0;
  double mass = 1.0;

  // output
  std::string out = ".";
  std::optional<std::string> svg;
  std::vector<std::string> formats;  // empty: every format the command produces
  bool no_meta = false;
  std::uint64_t seed = 0;

  bool operator==(const ExperimentConfig&) const = default;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"stability", "cfl-table", "run", "convergence",
                                              "barenblatt"};
  return names;
}

inline std::vector<std::string> command_formats(const std::string& command) {
  if (command == "stability") return {"csv", "json", "txt", "svg"};
  if (command == "cfl-table" || command == "convergence") return {"json", "txt"};
  if (command == "run") return {"csv", "json", "txt"};
  return {"csv", "json", "txt"};  // barenblatt
}

// Splits "ssp(3,2),ssp(4,2)" at top-level commas only.
inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

inline bool wants_format(const ExperimentConfig& cfg, const std::string& fmt) {
  if (cfg.formats.empty()) {
    // svg is opt-in unless a path was given
    return fmt != "svg" || cfg.svg.has_value();
  }
  for (const auto& f : cfg.formats)
    if (f == fmt) return true;
  return fmt == "svg" && cfg.svg.has_value();
}

inline void validate(const ExperimentConfig& cfg) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), cfg.command) == names.end())
    throw UsageError("unknown command '" + cfg.command + "'");
  const auto allowed = command_formats(cfg.command);
  for (const auto& f : cfg.formats)
    if (std::find(allowed.begin(), allowed.end(), f) == allowed.end())
      throw UsageError("format '" + f + "' is not produced by " + cfg.command);
  if (cfg.problem != "heat" && cfg.problem != "barenblatt")
    throw UsageError("problem must be heat or barenblatt");
  if (cfg.lambda != "ssp" && cfg.lambda != "opt") {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cfg.lambda, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != cfg.lambda.size() || !(v > 0.0))
      throw UsageError("--lambda takes ssp, opt or a positive number");
  }
  auto positive = [](const char* flag, double v) {
    if (!(v > 0.0)) throw UsageError(std::string(flag) + " must be positive");
  };
  if (cfg.phi && !(*cfg.phi >= 0.0)) throw UsageError("--phi must be non-negative");
  if (cfg.c1) positive("--c1", *cfg.c1);
  if (!(cfg.delta >= 0.0)) throw UsageError("--delta must be non-negative");
  if (cfg.dt) positive("--dt", *cfg.dt);
  if (cfg.t_end) positive("--t-end", *cfg.t_end);
  positive("--d", cfg.diffusion);
  positive("--t0", cfg.t0);
  positive("--mass", cfg.mass);
  if (!(cfg.m > 1.0)) throw UsageError("--m must exceed 1");
  if (cfg.n < 1) throw UsageError("--n must be positive");
  if (cfg.mode < 1) throw UsageError("--mode must be positive");
  if (cfg.locus_samples < 16) throw UsageError("--locus-samples must be at least 16");
  for (int g : cfg.grids)
    if (g < 1) throw UsageError("--grids entries must be positive");
  if (cfg.command == "convergence" && cfg.grids.size() < 3)
    throw UsageError(">=3 grids required");
}

inline void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  auto opt = [](const auto& v) -> nlohmann::json {
    if (v) return *v;
    return nullptr;
  };
  j = nlohmann::json{{"command", c.command},
                     {"schemes", c.schemes},
                     {"tableaux", c.tableaux},
                     {"recons", c.recons},
                     {"locus_samples", c.locus_samples},
                     {"problem", c.problem},
                     {"recon", c.recon},
                     {"lambda", c.lambda},
                     {"phi", opt(c.phi)},
                     {"c1", opt(c.c1)},
                     {"delta", c.delta},
                     {"dt", opt(c.dt)},
                     {"n", c.n},
                     {"t_end", opt(c.t_end)},
                     {"grids", c.grids},
                     {"nf_grid", c.nf_grid},
                     {"mode", c.mode},
                     {"d", c.diffusion},
                     {"m", c.m},
                     {"t0", c.t0},
                     {"mass", c.mass},
                     {"out", c.out},
                     {"svg", opt(c.svg)},
                     {"formats", c.formats},
                     {"no_meta", c.no_meta},
                     {"seed", c.seed}};
}

inline void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  auto get_opt = [&](const char* key, auto& field) {
    using T = typename std::remove_reference_t<decltype(field)>::value_type;
    if (j.contains(key) && !j.at(key).is_null())
      field = j.at(key).get<T>();
    else
      field.reset();
  };
  ExperimentConfig d;
  c.command = j.at("command").get<std::string>();
  c.schemes = j.value("schemes", d.schemes);
  c.tableaux = j.value("tableaux", d.tableaux);
  c.recons = j.value("recons", d.recons);
  c.locus_samples = j.value("locus_samples", d.locus_samples);
  c.problem = j.value("problem", d.problem);
  c.recon = j.value("recon", d.recon);
  c.lambda = j.value("lambda", d.lambda);
  get_opt("phi", c.phi);
  get_opt("c1", c.c1);
  c.delta = j.value("delta", d.delta);
  get_opt("dt", c.dt);
  c.n = j.value("n", d.n);
  get_opt("t_end", c.t_end);
  c.grids = j.value("grids", d.grids);
  c.nf_grid = j.value("nf_grid", d.nf_grid);
  c.mode = j.value("mode", d.mode);
  c.diffusion = j.value("d", d.diffusion);
  c.m = j.value("m", d.m);
  c.t0 = j.value("t0", d.t0);
  c.mass = j.value("mass", d.mass);
  c.out = j.value("out", d.out);
  get_opt("svg", c.svg);
  c.formats = j.value("formats", d.formats);
  c.no_meta = j.value("no_meta", d.no_meta);
  c.seed = j.value("seed", d.seed);
}

}  // namespace relaxssp::cli
