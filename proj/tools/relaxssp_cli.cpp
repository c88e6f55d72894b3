// relaxssp command-line front end.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "experiment_config.hpp"
#include "relaxssp/relaxssp.h"

using relaxssp::cli::CommandError;
using relaxssp::cli::ExperimentConfig;
using relaxssp::cli::UsageError;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int report_error(const std::string& kind, int status, const std::string& message, int code) {
  nlohmann::json err{{"error", {{"kind", kind}, {"status", status}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
  return code;
}

std::vector<std::string> flatten(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw)
    for (auto& part : relaxssp::cli::split_list(r)) out.push_back(part);
  return out;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  const auto j = nlohmann::json::parse(in);
  // a report carries its config under "config"
  return (j.contains("config") ? j.at("config") : j).get<ExperimentConfig>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relaxation schemes for degenerate diffusion with optimal SSP Runge-Kutta"};
  app.set_version_flag("--version", std::string(rssp_version()));
  app.fallthrough();

  ExperimentConfig cfg;
  std::vector<std::string> schemes_raw, recons_raw, formats_raw;
  std::string grids_raw, config_path;

  app.add_option("--out", cfg.out, "output directory, or a file whose stem names every output");
  app.add_option("--format", formats_raw, "formats to write: csv, json, txt, svg")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json", "txt", "svg"}));
  app.add_flag("--no-meta", cfg.no_meta, "omit the timestamped meta block from JSON");
  app.add_option("--seed", cfg.seed, "reserved; kernels are deterministic");
  app.add_option("--config", config_path, "replay a saved config or report JSON");

  auto scheme_opts = [&](CLI::App* sub) {
    sub->add_option("--scheme,--schemes", schemes_raw, "ssp(s,p) names, comma separated");
    sub->add_option("--tableau", cfg.tableaux, "user tableau JSON file")->check(CLI::ExistingFile);
  };
  auto run_opts = [&](CLI::App* sub) {
    scheme_opts(sub);
    sub->add_option("--recon", cfg.recon, "pwc, pwl or weno5");
    sub->add_option("--lambda", cfg.lambda, "ssp, opt or a positive number");
    sub->add_option_function<double>("--phi", [&](double v) { cfg.phi = v; }, "relaxation speed");
    sub->add_option_function<double>("--c1", [&](double v) { cfg.c1 = v; }, "linear CFL constant");
    sub->add_option("--delta", cfg.delta, "CFL safety reduction");
    sub->add_option_function<double>("--dt", [&](double v) { cfg.dt = v; }, "fixed time step");
    sub->add_option_function<double>("--t-end", [&](double v) { cfg.t_end = v; }, "final time");
    sub->add_option("--d", cfg.diffusion, "diffusion coefficient");
  };

  auto* stability = app.add_subcommand("stability", "stability regions and CFL coefficients");
  scheme_opts(stability);
  stability->add_option("--locus-samples", cfg.locus_samples, "boundary samples per branch");
  stability->add_option_function<std::string>(
      "--svg", [&](const std::string& p) { cfg.svg = p; }, "SVG path for the overlay plot");

  auto* cfl = app.add_subcommand("cfl-table", "von Neumann CFL constants");
  scheme_opts(cfl);
  cfl->add_option("--recons", recons_raw, "reconstructions (rows)")->delimiter(',');

  auto* run = app.add_subcommand("run", "single evolution");
  run_opts(run);
  run->add_option("--problem", cfg.problem, "heat or barenblatt")
      ->check(CLI::IsMember({"heat", "barenblatt"}));
  run->add_option("--n", cfg.n, "cells");
  run->add_option("--mode", cfg.mode, "heat: sine mode");

  auto* conv = app.add_subcommand("convergence", "grid refinement study");
  run_opts(conv);
  conv->add_option("--problem", cfg.problem, "heat or barenblatt")
      ->check(CLI::IsMember({"heat", "barenblatt"}));
  conv->add_option("--grids", grids_raw, "cell counts, comma separated")->required();
  conv->add_option("--nf-grid", cfg.nf_grid, "grid whose N_f goes in the table");
  conv->add_option("--mode", cfg.mode, "heat: sine mode");

  auto* bar = app.add_subcommand("barenblatt", "porous medium run against the exact solution");
  run_opts(bar);
  bar->add_option("--n", cfg.n, "cells");
  bar->add_option("--m", cfg.m, "exponent");
  bar->add_option("--t0", cfg.t0, "initial time shift");
  bar->add_option("--mass", cfg.mass, "total mass");
  bar->add_option("--grids", grids_raw, "optional refinement grids");

  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty())
        throw UsageError("--config replays a saved run; drop the subcommand");
      const auto flags = cfg;
      cfg = load_config(config_path);
      // explicit global flags still win over the replayed values
      if (app.get_option("--out")->count() > 0) cfg.out = flags.out;
      if (app.get_option("--no-meta")->count() > 0) cfg.no_meta = true;
      if (app.get_option("--format")->count() > 0) cfg.formats = formats_raw;
    } else {
      if (app.get_subcommands().empty()) throw UsageError("a command is required; see --help");
      cfg.command = app.get_subcommands().front()->get_name();
      if (cfg.command == "barenblatt") cfg.problem = "barenblatt";
      cfg.schemes = flatten(schemes_raw);
      cfg.recons = flatten(recons_raw);
      cfg.formats = formats_raw;
      for (const auto& g : relaxssp::cli::split_list(grids_raw)) {
        std::size_t used = 0;
        int v = 0;
        try {
          v = std::stoi(g, &used);
        } catch (const std::logic_error&) {
          used = 0;
        }
        if (used == 0 || used != g.size()) throw UsageError("bad grid size '" + g + "'");
        cfg.grids.push_back(v);
      }
    }
    relaxssp::cli::execute(cfg, std::cout);
    return 0;
  } catch (const UsageError& e) {
    return report_error("usage", RSSP_ERR_INVALID_ARGUMENT, e.what(), kExitUsage);
  } catch (const CommandError& e) {
    return report_error(rssp_status_string(static_cast<rssp_status>(e.status())), e.status(),
                        e.what(), kExitFailure);
  } catch (const nlohmann::json::exception& e) {
    return report_error("parse error", RSSP_ERR_PARSE, e.what(), kExitFailure);
  } catch (const std::exception& e) {
    return report_error("internal error", RSSP_ERR_INTERNAL, e.what(), kExitFailure);
  }
}
