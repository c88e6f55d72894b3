#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <utility>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "relaxssp/relaxssp.h"

namespace relaxssp::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---- handles ---------------------------------------------------------------

struct SchemeDeleter {
  void operator()(rssp_scheme_s* s) const { rssp_scheme_destroy(s); }
};
struct ProblemDeleter {
  void operator()(rssp_problem_s* p) const { rssp_problem_destroy(p); }
};
struct RunDeleter {
  void operator()(rssp_run_s* r) const { rssp_run_destroy(r); }
};
struct ConvergenceDeleter {
  void operator()(rssp_convergence_s* c) const { rssp_convergence_destroy(c); }
};
using Scheme = std::unique_ptr<rssp_scheme_s, SchemeDeleter>;
using Problem = std::unique_ptr<rssp_problem_s, ProblemDeleter>;
using Run = std::unique_ptr<rssp_run_s, RunDeleter>;
using Convergence = std::unique_ptr<rssp_convergence_s, ConvergenceDeleter>;

void check(rssp_status status) {
  if (status != RSSP_OK) throw CommandError(status, rssp_last_error());
}

// ---- formatting --------------------------------------------------------------

std::string num(double v) { return fmt::format("{:.6g}", v); }

std::string slug(const std::string& name) {
  std::string s;
  for (char ch : name) s += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
  while (!s.empty() && s.back() == '_') s.pop_back();
  return s;
}

// Left-aligned first column, right-aligned numbers.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  auto display = [](const std::string& s) {
    // UTF-8 continuation bytes take no column
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  };
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = display(header[c]);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], display(r[c]));
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string pad(width[c] - display(cells[c]), ' ');
      out += c == 0 ? cells[c] + pad : "  " + pad + cells[c];
    }
    return out + "\n";
  };
  std::string out = line(header);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  out += std::string(total - 2, '-') + "\n";
  for (const auto& r : rows) out += line(r);
  return out;
}

// ---- shared parameter resolution -------------------------------------------

rssp_recon parse_recon(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (name == "pwc") return RSSP_RECON_PWC;
  if (name == "pwl" || name == "pwl_minmod") return RSSP_RECON_PWL;
  if (name == "weno5") return RSSP_RECON_WENO5;
  throw UsageError("unknown reconstruction '" + name + "'; expected pwc, pwl or weno5");
}

const char* recon_name(rssp_recon r) {
  switch (r) {
    case RSSP_RECON_PWC: return "pwc";
    case RSSP_RECON_PWL: return "pwl";
    case RSSP_RECON_WENO5: return "weno5";
  }
  return "?";
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError(RSSP_ERR_PARSE, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Scheme> load_schemes(const ExperimentConfig& cfg,
                                 const std::vector<std::string>& fallback) {
  std::vector<Scheme> out;
  const auto& names = cfg.schemes.empty() && cfg.tableaux.empty() ? fallback : cfg.schemes;
  for (const auto& name : names) {
    rssp_scheme s = nullptr;
    const auto status = rssp_scheme_by_name(name.c_str(), &s);
    if (status == RSSP_ERR_CATALOG) throw UsageError(rssp_last_error());
    check(status);
    out.emplace_back(s);
  }
  for (const auto& file : cfg.tableaux) {
    const auto text = read_file(file);
    rssp_scheme s = nullptr;
    check(rssp_scheme_from_json(text.c_str(), fs::path(file).stem().string().c_str(), &s));
    out.emplace_back(s);
  }
  if (out.empty()) throw UsageError(cfg.command + ": no scheme given (--scheme or --tableau)");
  return out;
}

Scheme single_scheme(const ExperimentConfig& cfg) {
  auto all = load_schemes(cfg, {"ssp(3,3)"});
  if (all.size() != 1) throw UsageError(cfg.command + " takes exactly one scheme");
  return std::move(all.front());
}

// Forward Euler constant of the reconstruction, truncated to the two decimals
// it is usually quoted with.
double tabulated_c1(rssp_recon recon) {
  rssp_scheme fe = nullptr;
  check(rssp_scheme_catalog(1, 1, &fe));
  Scheme guard(fe);
  double c1 = 0.0;
  check(rssp_von_neumann_c1(recon, fe, &c1));
  return std::floor(100.0 * c1 + 1e-6) / 100.0;
}

Problem make_problem(const ExperimentConfig& cfg, const std::string& kind) {
  rssp_problem p = nullptr;
  if (kind == "heat")
    check(rssp_problem_heat(cfg.mode, cfg.diffusion, &p));
  else
    check(rssp_problem_barenblatt(cfg.m, cfg.t0, cfg.mass, cfg.diffusion, &p));
  return Problem(p);
}

double default_t_end(const std::string& kind) { return kind == "heat" ? 0.05 : 1.0; }

rssp_config run_config(const ExperimentConfig& cfg, const std::string& kind, rssp_problem prob) {
  rssp_config c;
  rssp_config_default(&c);
  c.recon = parse_recon(cfg.recon);
  // a linear flux needs no relaxation; otherwise the smallest admissible speed
  c.phi = cfg.phi ? *cfg.phi
                  : (kind == "heat" ? 0.0 : std::sqrt(cfg.diffusion * rssp_problem_mu(prob)));
  c.c1 = cfg.c1 ? *cfg.c1 : tabulated_c1(c.recon);
  c.delta = cfg.delta;
  if (cfg.lambda == "ssp") {
    c.lambda_mode = RSSP_LAMBDA_SSP;
  } else if (cfg.lambda == "opt") {
    c.lambda_mode = RSSP_LAMBDA_OPT;
  } else {
    c.lambda_mode = RSSP_LAMBDA_CUSTOM;
    c.lambda = std::stod(cfg.lambda);
  }
  c.fixed_dt = cfg.dt.value_or(0.0);
  return c;
}

json config_json(const rssp_config& c) {
  static const char* modes[] = {"ssp", "opt", "custom"};
  return {{"recon", recon_name(c.recon)}, {"phi", c.phi},
          {"c1", c.c1},                   {"delta", c.delta},
          {"lambda_mode", modes[c.lambda_mode]}};
}

json lambda_ssp_json(rssp_scheme scheme) {
  double v = 0.0;
  const auto status = rssp_scheme_lambda_ssp(scheme, &v);
  if (status == RSSP_ERR_UNAVAILABLE) return nullptr;
  check(status);
  return v;
}

// ---- output assembly ---------------------------------------------------------

class Outputs {
 public:
  explicit Outputs(const ExperimentConfig& cfg) : cfg_(cfg), target_(resolve_output(cfg)) {}

  const OutputTarget& target() const { return target_; }

  void add(const fs::path& path, std::string content) {
    pending_.emplace_back(path, std::move(content));
  }
  void add_ext(const std::string& ext, std::string content) {
    add(target_.file(ext), std::move(content));
  }

  // Every JSON report carries its config, plus run metadata unless suppressed.
  json stamp(json report) const {
    report["config"] = cfg_;
    if (!cfg_.no_meta) {
      const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      report["meta"] = {{"tool", "relaxssp"},
                        {"version", rssp_version()},
                        {"seed", cfg_.seed},
                        {"generated_at", fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now))}};
    }
    return report;
  }

  std::vector<fs::path> flush() {
    std::vector<fs::path> written;
    if (pending_.empty()) return written;
    fs::create_directories(target_.dir);
    for (const auto& [path, content] : pending_) {
      if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
      std::ofstream out(path, std::ios::binary);
      out << content;
      if (!out) throw CommandError(RSSP_ERR_INTERNAL, "cannot write " + path.string());
      written.push_back(path);
    }
    return written;
  }

 private:
  const ExperimentConfig& cfg_;
  OutputTarget target_;
  std::vector<std::pair<fs::path, std::string>> pending_;
};

// ---- stability ---------------------------------------------------------------

struct Locus {
  std::string name;
  std::vector<rssp_locus_point> points;
};

std::string render_svg(const std::vector<Locus>& loci) {
  double re_lo = -2.0, re_hi = 0.0, im_lo = -1.0, im_hi = 1.0;  // Forward Euler disc
  for (const auto& l : loci)
    for (const auto& p : l.points) {
      re_lo = std::min(re_lo, p.re);
      re_hi = std::max(re_hi, p.re);
      im_lo = std::min(im_lo, p.im);
      im_hi = std::max(im_hi, p.im);
    }
  const double pad = 0.05 * std::max(re_hi - re_lo, im_hi - im_lo);
  re_lo -= pad, re_hi += pad, im_lo -= pad, im_hi += pad;
  const double scale = 600.0 / std::max(re_hi - re_lo, im_hi - im_lo);
  const double w = (re_hi - re_lo) * scale, h = (im_hi - im_lo) * scale;
  auto sx = [&](double re) { return (re - re_lo) * scale; };
  auto sy = [&](double im) { return (im_hi - im) * scale; };

  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c"};
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      num(w), num(h));
  svg += fmt::format("<line x1=\"0\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"#999\"/>\n",
                     num(sy(0.0)), num(w));
  svg += fmt::format("<line x1=\"{0}\" y1=\"0\" x2=\"{0}\" y2=\"{1}\" stroke=\"#999\"/>\n",
                     num(sx(0.0)), num(h));
  svg += fmt::format(
      "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"black\" "
      "stroke-dasharray=\"6 4\"/>\n",
      num(sx(-1.0)), num(sy(0.0)), num(scale));
  for (std::size_t k = 0; k < loci.size(); ++k) {
    const auto& pts = loci[k].points;
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const bool start = i == 0 || pts[i].branch != pts[i - 1].branch;
      d += fmt::format("{}{} {} ", start ? "M" : "L", num(sx(pts[i].re)), num(sy(pts[i].im)));
    }
    svg += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", d,
                       colours[k]);
    svg += fmt::format(
        "<text x=\"10\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" fill=\"{}\">{}</text>\n",
        20 + 18 * k, colours[k], loci[k].name);
  }
  svg += fmt::format(
      "<text x=\"10\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\">"
      "Forward Euler (dashed)</text>\n</svg>\n",
      20 + 18 * loci.size());
  return svg;
}

CommandResult cmd_stability(const ExperimentConfig& cfg, std::ostream& console) {
  const auto schemes = load_schemes(cfg, {});
  if (wants_format(cfg, "svg") && schemes.size() > 3)
    throw UsageError("svg overlays at most 3 schemes");
  Outputs out(cfg);
  json entries = json::array();
  std::vector<Locus> loci;
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : schemes) {
    double eta = 0.0, opt = 0.0;
    check(rssp_scheme_eta(s.get(), 0.0, &eta));
    check(rssp_scheme_lambda_opt(s.get(), &opt));
    const json lambda_ssp = lambda_ssp_json(s.get());
    const std::string name = rssp_scheme_name(s.get());
    entries.push_back({{"scheme", name},
                       {"stages", rssp_scheme_stages(s.get())},
                       {"order", rssp_scheme_order(s.get())},
                       {"eta", eta},
                       {"lambda_ssp", lambda_ssp},
                       {"lambda_opt", opt}});
    rows.push_back({name, std::to_string(rssp_scheme_stages(s.get())),
                    std::to_string(rssp_scheme_order(s.get())), num(eta),
                    lambda_ssp.is_null() ? "-" : num(lambda_ssp.get<double>()), num(opt)});

    Locus l{name, {}};
    std::size_t count = 0;
    rssp_scheme_boundary_locus(s.get(), cfg.locus_samples, nullptr, 0, &count);
    l.points.resize(count);
    check(rssp_scheme_boundary_locus(s.get(), cfg.locus_samples, l.points.data(), count, &count));
    loci.push_back(std::move(l));
  }

  const std::string table =
      render_table({"scheme", "s", "p", "eta", "lambda_ssp", "lambda_opt"}, rows);
  console << table;
  if (wants_format(cfg, "txt")) out.add_ext("txt", table);
  if (wants_format(cfg, "csv")) {
    for (const auto& l : loci) {
      std::string csv = "theta,re,im\n";
      for (const auto& p : l.points) csv += fmt::format("{},{},{}\n", num(p.theta), num(p.re), num(p.im));
      const auto& t = out.target();
      out.add(loci.size() == 1 ? t.file("csv") : t.dir / (t.stem + "_" + slug(l.name) + ".csv"), csv);
    }
  }
  if (wants_format(cfg, "svg")) out.add(cfg.svg ? fs::path(*cfg.svg) : out.target().file("svg"), render_svg(loci));
  CommandResult result{out.stamp({{"schemes", entries}}), {}};
  if (wants_format(cfg, "json")) out.add_ext("json", result.report.dump(2) + "\n");
  result.files = out.flush();
  return result;
}

// ---- cfl-table ---------------------------------------------------------------

CommandResult cmd_cfl_table(const ExperimentConfig& cfg, std::ostream& console) {
  const auto schemes = load_schemes(cfg, {"ssp(1,1)", "ssp(2,2)", "ssp(3,3)"});
  std::vector<rssp_recon> recons;
  for (const auto& r : cfg.recons.empty() ? std::vector<std::string>{"pwc", "pwl", "weno5"}
                                          : cfg.recons)
    recons.push_back(parse_recon(r));

  Outputs out(cfg);
  json names = json::array(), matrix = json::array(), lambdas = json::array();
  std::vector<std::string> header{"reconstruction"};
  for (const auto& s : schemes) {
    header.push_back(rssp_scheme_name(s.get()));
    names.push_back(rssp_scheme_name(s.get()));
    double opt = 0.0;
    const json l_ssp = lambda_ssp_json(s.get());
    check(rssp_scheme_lambda_opt(s.get(), &opt));
    lambdas.push_back({{"scheme", rssp_scheme_name(s.get())}, {"lambda_ssp", l_ssp}, {"lambda_opt", opt}});
  }
  std::vector<std::vector<std::string>> rows;
  json recon_names = json::array();
  for (auto r : recons) {
    recon_names.push_back(recon_name(r));
    std::vector<std::string> row{recon_name(r)};
    json values = json::array();
    for (const auto& s : schemes) {
      double c1 = 0.0;
      check(rssp_von_neumann_c1(r, s.get(), &c1));
      values.push_back(c1);
      row.push_back(num(c1));
    }
    matrix.push_back(values);
    rows.push_back(row);
  }
  std::vector<std::vector<std::string>> lrows;
  for (const auto& l : lambdas)
    lrows.push_back({l["scheme"].get<std::string>(),
                     l["lambda_ssp"].is_null() ? "-" : num(l["lambda_ssp"].get<double>()),
                     num(l["lambda_opt"].get<double>())});

  const std::string table = "C1 (linear analysis)\n" + render_table(header, rows) + "\n" +
                            render_table({"scheme", "lambda_ssp", "lambda_opt"}, lrows);
  console << table;
  if (wants_format(cfg, "txt")) out.add_ext("txt", table);
  CommandResult result{out.stamp({{"reconstructions", recon_names},
                                  {"schemes", names},
                                  {"c1", matrix},
                                  {"lambda", lambdas}}),
                       {}};
  if (wants_format(cfg, "json")) out.add_ext("json", result.report.dump(2) + "\n");
  result.files = out.flush();
  return result;
}

// ---- run / barenblatt --------------------------------------------------------

json single_run(const ExperimentConfig& cfg, const std::string& kind, std::string& csv,
                std::vector<std::vector<std::string>>& summary) {
  const auto prob = make_problem(cfg, kind);
  const auto scheme = single_scheme(cfg);
  const double t_end = cfg.t_end.value_or(default_t_end(kind));
  const rssp_config c = run_config(cfg, kind, prob.get());
  rssp_grid grid;
  check(rssp_problem_default_grid(prob.get(), cfg.n, t_end, &grid));

  rssp_run raw = nullptr;
  check(rssp_evolve(prob.get(), &c, &grid, scheme.get(), t_end, &raw));
  Run run(raw);
  rssp_run_stats st;
  check(rssp_run_get_stats(run.get(), &st));
  double l1 = 0.0, linf = 0.0, m0 = 0.0, m1 = 0.0;
  check(rssp_run_errors(run.get(), &l1, &linf));
  check(rssp_run_mass(run.get(), &m0, &m1));
  std::size_t n = 0;
  rssp_run_field(run.get(), nullptr, nullptr, 0, &n);
  std::vector<double> x(n), u(n);
  check(rssp_run_field(run.get(), x.data(), u.data(), n, &n));

  csv = "x,u\n";
  for (std::size_t j = 0; j < n; ++j) csv += fmt::format("{},{}\n", num(x[j]), num(u[j]));

  const double h = (grid.x_hi - grid.x_lo) / grid.n;
  json report{{"problem", rssp_problem_name(prob.get())},
              {"scheme", rssp_scheme_name(scheme.get())},
              {"stages", rssp_scheme_stages(scheme.get())},
              {"order", rssp_scheme_order(scheme.get())},
              {"scheme_config", config_json(c)},
              {"n", grid.n},
              {"h", h},
              {"domain", {grid.x_lo, grid.x_hi}},
              {"periodic", grid.periodic != 0},
              {"t_end", t_end},
              {"stats",
               {{"n_f", st.n_f},
                {"steps", st.steps},
                {"t_final", st.t_final},
                {"dt", st.dt},
                {"lambda", st.lambda},
                {"cfl", st.lambda * (c.c1 - c.delta)}}},
              {"errors", {{"l1", l1}, {"linf", linf}}},
              {"mass", {{"initial", m0}, {"final", m1}, {"drift", m1 - m0}}}};
  summary = {{"problem", report["problem"]},
             {"scheme", report["scheme"]},
             {"recon", recon_name(c.recon)},
             {"n", std::to_string(grid.n)},
             {"lambda", num(st.lambda)},
             {"dt", num(st.dt)},
             {"steps", std::to_string(st.steps)},
             {"N_f", std::to_string(st.n_f)},
             {"L1 error", num(l1)},
             {"Linf error", num(linf)},
             {"mass drift", num(m1 - m0)}};

  double radius = 0.0;
  if (rssp_problem_support_radius(prob.get(), t_end, &radius) == RSSP_OK) {
    // outermost cell above a small fraction of the peak
    const double peak = *std::max_element(u.begin(), u.end());
    double edge = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (u[j] > 1e-3 * peak) edge = std::max(edge, std::abs(x[j]));
    report["support"] = {{"exact_radius", radius},
                         {"numerical_edge", edge},
                         {"offset_cells", std::abs(edge - radius) / h},
                         {"min_value", *std::min_element(u.begin(), u.end())}};
    summary.push_back({"support radius", num(radius)});
    summary.push_back({"numerical edge", num(edge)});
  }
  return report;
}

std::string summary_text(const std::vector<std::vector<std::string>>& summary) {
  std::size_t w = 0;
  for (const auto& r : summary) w = std::max(w, r[0].size());
  std::string s;
  for (const auto& r : summary) s += fmt::format("{:<{}}  {}\n", r[0], w, r[1]);
  return s;
}

// ---- convergence -------------------------------------------------------------

struct StudyRow {
  std::string scheme;
  int stages;
  int order;
  json report;
};

StudyRow study(const ExperimentConfig& cfg, const std::string& kind, rssp_scheme scheme,
               const std::vector<int>& grids) {
  const auto prob = make_problem(cfg, kind);
  const rssp_config c = run_config(cfg, kind, prob.get());
  const double t_end = cfg.t_end.value_or(default_t_end(kind));
  rssp_convergence raw = nullptr;
  check(rssp_convergence_study(prob.get(), &c, scheme, grids.data(), grids.size(), t_end, &raw));
  Convergence rep(raw);

  double lambda = 0.0, fitted = 0.0;
  check(rssp_convergence_lambda(rep.get(), &lambda));
  check(rssp_convergence_fitted_order(rep.get(), &fitted));
  json rows = json::array();
  const std::size_t size = rssp_convergence_size(rep.get());
  long long nf = -1;
  for (std::size_t i = 0; i < size; ++i) {
    rssp_convergence_row r;
    check(rssp_convergence_get_row(rep.get(), i, &r));
    json row{{"n", r.n},   {"h", r.h},       {"dt", r.dt},      {"l1", r.l1},
             {"linf", r.linf}, {"n_f", r.n_f}, {"steps", r.steps}};
    if (i + 1 < size) {
      double o1 = 0.0, oinf = 0.0;
      check(rssp_convergence_get_order(rep.get(), i, &o1, &oinf));
      row["order_l1"] = o1;
      row["order_linf"] = oinf;
    }
    if (r.n == cfg.nf_grid || (nf < 0 && i + 1 == size)) nf = r.n_f;
    rows.push_back(row);
  }
  StudyRow out{rssp_scheme_name(scheme), rssp_scheme_stages(scheme), rssp_scheme_order(scheme), {}};
  out.report = {{"scheme", out.scheme},
                {"stages", out.stages},
                {"order", out.order},
                {"problem", rssp_problem_name(prob.get())},
                {"scheme_config", config_json(c)},
                {"t_end", t_end},
                {"lambda", lambda},
                {"cfl", lambda * (c.c1 - c.delta)},
                {"cfl_base", c.c1 - c.delta},
                {"fitted_order_l1", fitted},
                {"n_f", nf},
                {"rows", rows}};
  return out;
}

std::string convergence_tables(const std::vector<StudyRow>& studies, const ExperimentConfig& cfg) {
  std::vector<int> orders;
  for (const auto& s : studies)
    if (std::find(orders.begin(), orders.end(), s.order) == orders.end()) orders.push_back(s.order);
  std::string text;
  for (int p : orders) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : studies) {
      if (s.order != p) continue;
      rows.push_back({std::to_string(s.stages),
                      num(s.report["lambda"].get<double>()) + "×" +
                          num(s.report["cfl_base"].get<double>()),
                      num(s.report["fitted_order_l1"].get<double>()),
                      std::to_string(s.report["n_f"].get<long long>())});
    }
    if (!text.empty()) text += "\n";
    text += fmt::format("order {} schemes, lambda = {}, N_f at n = {}\n", p, cfg.lambda, cfg.nf_grid);
    text += render_table({"stages", "CFL", "order", "N_f"}, rows);
  }
  return text;
}

CommandResult cmd_convergence(const ExperimentConfig& cfg, std::ostream& console) {
  const auto schemes = load_schemes(cfg, {});
  std::vector<StudyRow> studies;
  for (const auto& s : schemes) studies.push_back(study(cfg, cfg.problem, s.get(), cfg.grids));
  Outputs out(cfg);
  json reports = json::array();
  for (const auto& s : studies) reports.push_back(s.report);
  const std::string text = convergence_tables(studies, cfg);
  console << text;
  if (wants_format(cfg, "txt")) out.add_ext("txt", text);
  CommandResult result{out.stamp({{"reports", reports}}), {}};
  if (wants_format(cfg, "json")) out.add_ext("json", result.report.dump(2) + "\n");
  result.files = out.flush();
  return result;
}

CommandResult cmd_run(const ExperimentConfig& cfg, std::ostream& console, const std::string& kind) {
  std::string csv;
  std::vector<std::vector<std::string>> summary;
  json report = single_run(cfg, kind, csv, summary);
  std::string text = summary_text(summary);

  if (kind == "barenblatt" && !cfg.grids.empty()) {
    if (cfg.grids.size() < 3) throw UsageError(">=3 grids required");
    const auto scheme = single_scheme(cfg);
    auto s = study(cfg, kind, scheme.get(), cfg.grids);
    report["convergence"] = s.report;
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : s.report["rows"])
      rows.push_back({std::to_string(r["n"].get<int>()), num(r["l1"].get<double>()),
                      num(r["linf"].get<double>()),
                      r.contains("order_l1") ? num(r["order_l1"].get<double>()) : "-"});
    text += "\n" + render_table({"n", "L1", "Linf", "order"}, rows) +
            fmt::format("fitted L1 order {}\n", num(s.report["fitted_order_l1"].get<double>()));
  }

  console << text;
  Outputs out(cfg);
  if (wants_format(cfg, "txt")) out.add_ext("txt", text);
  if (wants_format(cfg, "csv")) out.add_ext("csv", csv);
  CommandResult result{out.stamp(std::move(report)), {}};
  if (wants_format(cfg, "json")) out.add_ext("json", result.report.dump(2) + "\n");
  result.files = out.flush();
  return result;
}

}  // namespace

OutputTarget resolve_output(const ExperimentConfig& cfg) {
  const fs::path p(cfg.out.empty() ? "." : cfg.out);
  const auto ext = p.extension().string();
  if (ext == ".csv" || ext == ".json" || ext == ".txt" || ext == ".svg") {
    const auto parent = p.parent_path();
    return {parent.empty() ? fs::path(".") : parent, p.stem().string()};
  }
  std::string stem = cfg.command;
  std::replace(stem.begin(), stem.end(), '-', '_');
  return {p, stem};
}

CommandResult execute(const ExperimentConfig& cfg, std::ostream& console) {
  validate(cfg);
  if (cfg.command == "stability") return cmd_stability(cfg, console);
  if (cfg.command == "cfl-table") return cmd_cfl_table(cfg, console);
  if (cfg.command == "convergence") return cmd_convergence(cfg, console);
  if (cfg.command == "barenblatt") return cmd_run(cfg, console, "barenblatt");
  return cmd_run(cfg, console, cfg.problem);
}

}  // namespace relaxssp::cli
