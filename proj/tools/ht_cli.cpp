// Command-line front end: single-point evaluation, JSON-driven sweeps, figure
// presets and filter-strength optimization.
//
// Exit codes: 0 success, 2 configuration error, 3 physics-domain error,
// 4 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ht/config.hpp"
#include "ht/errors.hpp"
#include "ht/plot.hpp"
#include "ht/report.hpp"
#include "ht/sweep.hpp"
#include "ht/teleport.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

struct GlobalOptions {
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  bool numeric_fallback = false;
};

struct PointOptions {
  std::vector<double> state{0.0, 0.5, 0.5, 0.0, 0.0, 0.5};
  double mass = 1.0;
  double alpha = 0.0;
  double omega = 1.0;
  double q_r = 1.0;
  double p = 0.0;
  std::optional<double> ft;
};

void add_point_options(CLI::App* cmd, PointOptions& pt) {
  cmd->add_option("--state", pt.state, "r11,r22,r33,r44,r14,r23")
      ->delimiter(',')
      ->expected(6)
      ->capture_default_str();
  cmd->add_option("--mass", pt.mass, "black-hole mass M")->capture_default_str();
  cmd->add_option("--alpha", pt.alpha, "dilaton parameter")->capture_default_str();
  cmd->add_option("--omega", pt.omega, "mode frequency")->capture_default_str();
  cmd->add_option("--q-r", pt.q_r, "Unruh weight q_R")->capture_default_str();
  cmd->add_option("--p", pt.p, "amplitude-damping strength")->capture_default_str();
  cmd->add_option("--ft", pt.ft, "local filter strength (omit for no filter)");
}

ht::XState point_state(const PointOptions& pt) {
  return ht::make_x_state(pt.state[0], pt.state[1], pt.state[2], pt.state[3],
                          pt.state[4], pt.state[5]);
}

// Writes to --out when given, otherwise stdout.
void emit(const GlobalOptions& g, const std::string& payload) {
  if (g.out.empty()) {
    std::cout << payload;
    std::cout.flush();
    if (!std::cout) throw ht::IoError("failed writing to stdout");
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw ht::IoError("cannot open '" + g.out + "' for writing");
  file << payload;
  if (!file) throw ht::IoError("failed writing '" + g.out + "'");
}

std::string render_rows(const std::vector<ht::ResultRow>& rows,
                        const std::string& format, const std::string& title) {
  std::ostringstream out;
  if (format == "csv") {
    ht::write_csv(rows, out);
  } else if (format == "json") {
    ht::write_json(rows, out);
  } else if (format == "svg") {
    ht::PlotOptions plot;
    plot.title = title;
    out << ht::emit_plot(rows, plot);
  } else {
    throw ht::ConfigError("unknown format '" + format + "'");
  }
  return out.str();
}

std::string default_format(const ht::SweepSpec& spec) {
  if (spec.outputs.json && !spec.outputs.csv && !spec.outputs.svg) return "json";
  if (spec.outputs.svg && !spec.outputs.csv && !spec.outputs.json) return "svg";
  return "csv";
}

void require_some_rows(const std::vector<ht::ResultRow>& rows) {
  for (const auto& r : rows) {
    if (r.ok()) return;
  }
  throw ht::DomainError("no grid point could be evaluated");
}

void run_sweep_command(const GlobalOptions& g, ht::SweepSpec spec,
                       const std::string& title) {
  if (g.seed) spec.seed = *g.seed;
  if (g.numeric_fallback) spec.numeric_fallback = true;
  const auto rows = ht::run_sweep(spec);
  require_some_rows(rows);
  emit(g, render_rows(rows, g.format.empty() ? default_format(spec) : g.format,
                      title));
}

void run_point_command(const GlobalOptions& g, const PointOptions& pt) {
  if (g.format == "svg") throw ht::ConfigError("fef does not produce plots");
  ht::SweepSpec spec;
  spec.x_state = point_state(pt);
  spec.mass = pt.mass;
  spec.frequency = pt.omega;
  spec.alpha_grid = ht::AlphaGrid{pt.alpha, pt.alpha, 1};
  spec.q_r_list = {pt.q_r};
  spec.p_list = {pt.p};
  spec.ft_list = {pt.ft};
  spec.numeric_fallback = g.numeric_fallback;
  if (g.seed) spec.seed = *g.seed;
  const auto rows = ht::run_sweep(spec, 1);
  const ht::ResultRow& row = rows.front();
  if (row.status == ht::RowStatus::condition_failed) {
    throw ht::DomainError(
        "closed-form fully entangled fraction does not apply at this point; "
        "rerun with --numeric-fallback");
  }
  if (row.status == ht::RowStatus::zero_probability) {
    throw ht::ZeroProbabilityError("local filter annihilates the state");
  }
  emit(g, render_rows(rows, g.format.empty() ? "csv" : g.format, ""));
}

void run_optimize_command(const GlobalOptions& g, const PointOptions& pt,
                          int grid, double refine_tol) {
  ht::FallbackPolicy policy;
  policy.numeric_fallback = g.numeric_fallback;
  if (g.seed) policy.search.seed = *g.seed;
  const auto dp = ht::DilatonParams::make(pt.mass, pt.alpha, pt.omega);
  const auto best = ht::optimize_filter(point_state(pt), dp, ht::UnruhMode(pt.q_r),
                                        pt.p, grid, refine_tol, policy);
  std::ostringstream out;
  const std::string format = g.format.empty() ? "csv" : g.format;
  if (format == "csv") {
    out << "ft_star,f_star,z1_star\n"
        << ht::format_double(best.ft_star) << ',' << ht::format_double(best.f_star)
        << ',' << ht::format_double(best.z1_star) << '\n';
  } else if (format == "json") {
    nlohmann::json doc{{"ft_star", best.ft_star},
                       {"f_star", best.f_star},
                       {"z1_star", best.z1_star}};
    out << doc.dump(2) << '\n';
  } else {
    throw ht::ConfigError("optimize-filter supports csv or json output");
  }
  emit(g, out.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation fidelity near a GHS dilaton black hole", "ht"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--out", g.out, "output file (default: stdout)");
  app.add_option("--format", g.format, "csv, json or svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--seed", g.seed, "seed for the numeric FEF search");
  app.add_flag("--numeric-fallback", g.numeric_fallback,
               "maximize the FEF numerically where the closed form does not apply");

  PointOptions fef_point;
  auto* fef = app.add_subcommand("fef", "evaluate a single parameter point");
  add_point_options(fef, fef_point);

  std::string sweep_path = "-";
  auto* sweep = app.add_subcommand("sweep", "run a sweep described by a JSON file");
  sweep->add_option("config", sweep_path, "JSON config path, '-' for stdin")
      ->capture_default_str();

  int figure_number = 0;
  auto* figure = app.add_subcommand("figure", "run a figure preset (1-6)");
  figure->add_option("n", figure_number, "preset number")->required();

  PointOptions opt_point;
  int grid = 64;
  double refine_tol = 1e-8;
  auto* optimize =
      app.add_subcommand("optimize-filter", "find the filter strength maximizing f");
  add_point_options(optimize, opt_point);
  optimize->add_option("--grid", grid, "coarse grid size (>= 16)")->capture_default_str();
  optimize->add_option("--refine-tol", refine_tol, "golden-section tolerance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (fef->parsed()) {
      run_point_command(g, fef_point);
    } else if (sweep->parsed()) {
      ht::SweepSpec spec;
      if (sweep_path == "-") {
        spec = ht::parse_sweep_spec(std::cin);
      } else {
        std::ifstream in(sweep_path);
        if (!in) throw ht::IoError("cannot open '" + sweep_path + "'");
        spec = ht::parse_sweep_spec(in);
      }
      run_sweep_command(g, spec, "");
    } else if (figure->parsed()) {
      run_sweep_command(g, ht::figure_preset(figure_number),
                        "Figure " + std::to_string(figure_number) + " preset");
    } else if (optimize->parsed()) {
      run_optimize_command(g, opt_point, grid, refine_tol);
    }
  } catch (const ht::IoError& e) {
    std::cerr << "ht: " << e.what() << '\n';
    return kExitIo;
  } catch (const ht::ConfigError& e) {
    std::cerr << "ht: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ht::RangeError& e) {
    std::cerr << "ht: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ht::TraceError& e) {
    std::cerr << "ht: invalid state: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ht::PositivityError& e) {
    std::cerr << "ht: invalid state: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ht::Error& e) {
    std::cerr << "ht: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}
