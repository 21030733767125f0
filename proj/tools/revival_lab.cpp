// revival-lab: command line front end for the revival library.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "revival/app.hpp"

int main(int argc, char** argv) {
  using namespace revival;

  CLI::App app{"Spectral solvers, revival operators and representation checks for dispersive problems"};
  app.require_subcommand(1);

  std::string config, out, coeffs, report, in, theorem, poly = "m^2", out_dir = "figures";
  std::int64_t p = 1, q = 1;
  std::vector<std::string> figures;
  JumpSettings jump;
  ScaleRange range;
  int radius = 1024;
  std::size_t grid = default_grid;

  auto* solve = app.add_subcommand("solve", "Solve the configured problem and write x,re,im CSV");
  solve->add_option("--config", config, "JSON configuration")->required();
  solve->add_option("--out", out, "solution CSV")->required();
  solve->add_option("--coeffs", coeffs, "coefficient CSV (m,re,im)");

  auto* verify = app.add_subcommand("verify", "Compare a representation formula against the direct series");
  verify->add_option("--theorem", theorem, "prop31|cor32|qprev|thm11|cor42|prop43|prop51|thm12")->required();
  verify->add_option("--config", config, "JSON configuration")->required();
  verify->add_option("--report", report, "also write the JSON report here");

  auto* figs = app.add_subcommand("figures", "Run the figure experiments and write CSV and SVG");
  figs->add_option("ids", figures, "figure ids (default: all)");
  figs->add_option("--out-dir", out_dir, "output directory");
  figs->add_option("--truncation", radius, "window radius M");
  figs->add_option("--grid", grid, "grid size N");

  auto* dim = app.add_subcommand("dimension", "Box-counting dimension of Re u from a CSV");
  dim->add_option("--in", in, "solution CSV")->required();
  dim->add_option("--out", report, "JSON report");
  dim->add_option("--finest", range.finest, "finest scale (fraction of the domain)");
  dim->add_option("--coarsest", range.coarsest, "coarsest scale (fraction of the domain)");

  auto* jumps = app.add_subcommand("jumps", "Report jump discontinuities in a CSV");
  jumps->add_option("--in", in, "solution CSV")->required();
  jumps->add_option("--window", jump.window, "median window in cells");
  jumps->add_option("--factor", jump.factor, "threshold over the local median increment");

  auto* gauss = app.add_subcommand("gauss", "Gauss-type weights G(k) for P and t = 2 pi p / q");
  gauss->add_option("--poly", poly, "integer polynomial in m, e.g. \"m^2\"");
  gauss->add_option("--p", p, "numerator")->required();
  gauss->add_option("--q", q, "denominator")->required();

  auto* sweep = app.add_subcommand("sweep", "Run a parameter grid and emit JSON lines");
  sweep->add_option("--config", config, "JSON configuration with a sweep block")->required();
  sweep->add_option("--out", out, "JSONL output (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  if (*solve) return run_solve(config, out, coeffs, std::cerr, std::cerr);
  if (*verify) return run_verify(theorem, config, report, std::cout, std::cerr);
  if (*figs) return run_figures(figures.empty() ? figure_ids() : figures, out_dir, radius, grid, std::cout, std::cerr);
  if (*dim) return run_dimension(in, report, range, std::cout, std::cerr);
  if (*jumps) return run_jumps(in, jump, std::cout, std::cerr);
  if (*gauss) return run_gauss(poly, p, q, std::cout, std::cerr);
  if (*sweep) return run_sweep(config, out, std::cout, std::cerr);
  return exit_usage;
}
