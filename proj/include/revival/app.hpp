#pragma once

// Workflows behind the revival-lab subcommands.  Each returns a process exit
// code: 0 success, 1 verification failure, 2 usage or configuration error,
// 3 numerical failure.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "revival/analysis.hpp"
#include "revival/config.hpp"
#include "revival/correspondence.hpp"
#include "revival/detail/parallel.hpp"
#include "revival/io.hpp"
#include "revival/revival.hpp"
#include "revival/spectral.hpp"
#include "revival/verify.hpp"

namespace revival {

enum ExitCode { exit_ok = 0, exit_verification = 1, exit_usage = 2, exit_numerical = 3 };

inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::config:
    case Errc::invalid_argument:
    case Errc::invalid_denominator:
    case Errc::undefined_k0:
    case Errc::complex_spectrum_unsupported:
    case Errc::periodic_degenerate:
    case Errc::degenerate_spectrum:
    case Errc::invalid_theta:
      return exit_usage;
    default:
      return exit_numerical;
  }
}

// Runs `body`, mapping library errors to exit codes and printing them.
template <class Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "error: config: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_numerical;
  }
}

struct Solution {
  GridFunction grid;
  FourierCoeffs coeffs;  // <u(t), e_m>; even extension for Robin data
  json resolved;
};

namespace detail {

inline FourierCoeffs coefficients_of(const GridFunction& g, int radius) {
  if (std::abs(g.length - two_pi) < 1e-9) return analyze(Profile(InitialCondition::sampled(g)), radius);
  // [0, pi) data: coefficients of the even extension to [0, 2 pi)
  std::vector<cplx> ext(2 * g.size());
  for (std::size_t i = 0; i < g.size(); ++i) ext[i] = g.samples[i];
  for (std::size_t i = 1; i < g.size(); ++i) ext[2 * g.size() - i] = g.samples[i];
  ext[g.size()] = g.samples[g.size() - 1];
  return analyze(Profile(InitialCondition::sampled(GridFunction(two_pi, std::move(ext)))), radius);
}

inline json time_json(const TimeSpec& t) {
  json j{{"value", t.value}, {"text", t.text}};
  if (t.rational) {
    j["p"] = t.rational->p;
    j["q"] = t.rational->q;
  }
  return j;
}

}  // namespace detail

// Direct spectral solution of the configured problem at time t.
inline Solution solve(const RunConfig& cfg, const TimeSpec& t) {
  const Profile u0 = cfg.initial;
  const int M = cfg.truncation;
  const std::size_t N = cfg.grid;
  const ValidatedBoundary vb = validate_boundary(cfg.boundary);
  Solution s;
  s.resolved = {{"M", M}, {"N", N}, {"time", detail::time_json(t)}};

  auto periodic = [&](const Polynomial& P) {
    const FourierCoeffs c0 = analyze(u0, M);
    s.coeffs = t.rational ? evolve_periodic(P, c0, *t.rational) : evolve_periodic(P, c0, t.value);
    s.grid = synthesize(s.coeffs, N);
    s.resolved["dispersion"] = P.to_string();
  };

  if (const auto* p = std::get_if<Periodic>(&cfg.boundary)) {
    s.resolved["boundary"] = "periodic";
    periodic(p->dispersion);
    return s;
  }
  if (const auto* pp = std::get_if<PseudoPeriodicLS>(&cfg.boundary)) {
    s.resolved["boundary"] = "pseudo_periodic";
    if (vb.periodic_degenerate) {
      s.resolved["routed_to"] = "periodic";
      periodic(Polynomial::monomial(2));
      return s;
    }
    const auto model = ls_pp_model(pp->beta0, pp->beta1);
    s.resolved["model"] = detail::pseudo_params(model);
    s.grid = evolve_ls_pseudo(u0, model, t.value, M, N);
  } else if (const auto* qa = std::get_if<QuasiPeriodicAiry>(&cfg.boundary)) {
    s.resolved["boundary"] = "quasi_periodic_airy";
    s.resolved["theta"] = qa->theta;
    s.resolved["theta_text"] = cfg.theta_text;
    s.grid = evolve_airy_qp(u0, qa->theta, t.value, M, N);
  } else if (const auto* r = std::get_if<Robin>(&cfg.boundary)) {
    s.resolved["boundary"] = "robin";
    const auto model = robin_model(r->b);
    json m = detail::robin_params(model);
    if (model.kind != RobinModel::Kind::robin) {
      m["m_b"] = nullptr;
      m["lambda_b"] = nullptr;
      m["limit"] = model.kind == RobinModel::Kind::neumann ? "neumann" : "dirichlet";
    }
    s.resolved["model"] = m;
    s.grid = evolve_robin(u0, r->b, t.value, M, N);
  }
  s.coeffs = detail::coefficients_of(s.grid, std::min<int>(M, static_cast<int>((s.grid.size() - 1) / 2)));
  return s;
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::config, "cannot open " + path + " for writing");
  os << j.dump(2) << '\n';
}

inline int run_solve(const std::string& config_path, const std::string& out, const std::string& coeffs_out,
                     std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config_path);
    if (cfg.times.size() != 1) throw Error(Errc::config, "'time': solve takes exactly one time");
    const Solution s = solve(cfg, cfg.times.front());
    write_csv_file(out, s.grid);
    if (!coeffs_out.empty()) write_csv_file(coeffs_out, s.coeffs);
    write_json_file(out + ".json", s.resolved);
    log << "wrote " << out << '\n';
    return int{exit_ok};
  });
}

inline int run_verify(const std::string& theorem, const std::string& config_path, const std::string& report_out,
                      std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (std::find(theorem_ids().begin(), theorem_ids().end(), theorem) == theorem_ids().end())
      throw Error(Errc::config, "unknown theorem id '" + theorem + "'");
    const RunConfig cfg = load_config(config_path);
    const VerifyReport rep = run_verification(theorem, cfg);
    const json j = rep.to_json();
    if (!report_out.empty()) write_json_file(report_out, j);
    out << j.dump(2) << '\n';
    return rep.passed ? int{exit_ok} : int{exit_verification};
  });
}

inline int run_gauss(const std::string& poly, std::int64_t p, std::int64_t q, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (p < 0) throw Error(Errc::invalid_argument, "p must be non-negative");
    const Polynomial P = Polynomial::parse(poly);
    const RationalTime t = reduce_rational(p, q);
    const GaussWeights g = gauss_weights(P, t);
    json w = json::array();
    json wn = json::array();
    for (const auto& v : g.weights) {
      w.push_back({v.real(), v.imag()});
      wn.push_back({v.real() / sqrt_two_pi, v.imag() / sqrt_two_pi});
    }
    out << json{{"poly", P.to_string()}, {"p", t.p}, {"q", t.q}, {"raw", w}, {"normalized", wn}}.dump() << '\n';
    return int{exit_ok};
  });
}

inline json jumps_json(const std::vector<Jump>& jumps) {
  json j = json::array();
  for (const auto& x : jumps) j.push_back({{"location", x.location}, {"magnitude", x.magnitude}});
  return j;
}

inline int run_jumps(const std::string& in, const JumpSettings& settings, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const GridFunction g = read_grid_csv_file(in);
    const auto jumps = detect_jumps(g, settings);
    out << json{{"window", settings.window}, {"factor", settings.factor}, {"count", jumps.size()},
                {"jumps", jumps_json(jumps)}}.dump(2)
        << '\n';
    return int{exit_ok};
  });
}

inline json dimension_json(const DimensionEstimate& d, ScaleRange range) {
  json pts = json::array();
  for (const auto& [x, y] : d.points) pts.push_back({{"log_inv_eps", x}, {"log_count", y}});
  return {{"estimate", d.estimate},
          {"stderr", d.stderr_},
          {"scale_range", {range.finest, range.coarsest}},
          {"points", pts},
          {"note", "box count of a truncated series; finite truncation biases the slope"}};
}

inline int run_dimension(const std::string& in, const std::string& report_out, ScaleRange range, std::ostream& out,
                         std::ostream& err) {
  return guarded(err, [&] {
    const GridFunction g = read_grid_csv_file(in);
    const json j = dimension_json(box_dimension(g, range), range);
    if (!report_out.empty()) write_json_file(report_out, j);
    out << j.dump(2) << '\n';
    return int{exit_ok};
  });
}

// ---------------------------------------------------------------------------
// Figure experiments: step data at four rational or four generic times.

struct FigureSpec {
  std::string title;
  BoundarySpec boundary;
  std::string theta_text;
  std::vector<TimeSpec> times;
};

inline const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"airy_rt_quarter", "airy_vt_quarter", "airy_rt_sqrt2", "airy_vt_sqrt2",
                                            "robin_rt_035",    "robin_vt_035",    "robin_rt_06",   "robin_vt_06"};
  return ids;
}

namespace detail {

inline std::vector<TimeSpec> rational_panels() {
  std::vector<TimeSpec> out;
  for (auto [p, q] : {std::pair{1, 2}, {1, 3}, {1, 5}, {2, 5}}) {
    TimeSpec t;
    t.rational = reduce_rational(p, q);
    t.value = t.rational->value();
    t.text = "2pi*" + std::to_string(p) + "/" + std::to_string(q);
    out.push_back(t);
  }
  return out;
}

inline std::vector<TimeSpec> generic_panels() {
  std::vector<TimeSpec> out;
  for (const char* s : {"0.5", "1", "1.5", "2"}) {
    TimeSpec t;
    t.value = evaluate_expression(s);
    t.text = s;
    out.push_back(t);
  }
  return out;
}

}  // namespace detail

inline FigureSpec figure_spec(const std::string& id) {
  const bool rational = id.find("_rt_") != std::string::npos;
  FigureSpec f;
  f.times = rational ? detail::rational_panels() : detail::generic_panels();
  const std::string when = rational ? "rational times" : "generic times";
  if (id == "airy_rt_quarter" || id == "airy_vt_quarter") {
    f.boundary = QuasiPeriodicAiry{0.25};
    f.theta_text = "1/4";
    f.title = "Airy, quasi-periodic, theta = 1/4, " + when;
  } else if (id == "airy_rt_sqrt2" || id == "airy_vt_sqrt2") {
    f.boundary = QuasiPeriodicAiry{evaluate_expression("sqrt(2)/3")};
    f.theta_text = "sqrt(2)/3";
    f.title = "Airy, quasi-periodic, theta = sqrt(2)/3, " + when;
  } else if (id == "robin_rt_035" || id == "robin_vt_035") {
    f.boundary = Robin{0.35};
    f.title = "Schroedinger, Robin, b = 0.35, " + when;
  } else if (id == "robin_rt_06" || id == "robin_vt_06") {
    f.boundary = Robin{0.6};
    f.title = "Schroedinger, Robin, b = 0.6, " + when;
  } else {
    throw Error(Errc::config, "unknown figure id '" + id + "'");
  }
  return f;
}

inline json run_figure(const std::string& id, const std::string& out_dir, int radius, std::size_t grid) {
  const FigureSpec f = figure_spec(id);
  RunConfig cfg;
  cfg.boundary = f.boundary;
  cfg.theta_text = f.theta_text;
  const double length = domain_length(f.boundary);
  // Step data: 0 on the left half, 1 on the right half.
  cfg.initial = InitialCondition::step(0.5 * length, length);
  cfg.truncation = radius;
  cfg.grid = grid;

  std::filesystem::create_directories(out_dir);
  std::vector<Panel> panels;
  json summary{{"figure", id}, {"title", f.title}, {"M", radius}, {"N", grid}, {"panels", json::array()}};
  for (std::size_t k = 0; k < f.times.size(); ++k) {
    const Solution s = solve(cfg, f.times[k]);
    const std::string csv = (std::filesystem::path(out_dir) / (id + "_" + std::to_string(k) + ".csv")).string();
    write_csv_file(csv, s.grid);
    const auto jumps = detect_jumps(s.grid);
    summary["panels"].push_back({{"time", detail::time_json(f.times[k])}, {"csv", csv}, {"jump_count", jumps.size()},
                                 {"jumps", jumps_json(jumps)}});
    panels.push_back({"t = " + f.times[k].text, s.grid});
  }
  const std::string svg = (std::filesystem::path(out_dir) / (id + ".svg")).string();
  std::ofstream os(svg);
  if (!os) throw Error(Errc::config, "cannot open " + svg + " for writing");
  os << render_svg(panels, f.title);
  summary["svg"] = svg;
  return summary;
}

inline int run_figures(const std::vector<std::string>& ids, const std::string& out_dir, int radius, std::size_t grid,
                       std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    for (const auto& id : ids) figure_spec(id);
    json all = json::array();
    for (const auto& id : ids) all.push_back(run_figure(id, out_dir, radius, grid));
    out << all.dump(2) << '\n';
    return int{exit_ok};
  });
}

// ---------------------------------------------------------------------------
// Parameter sweeps: "sweep": {"boundaries": [...], "times": [...]}.  Every cell
// shares truncation and grid; initial data come from sweep.initial, else the
// top-level initial, else the default step on the cell's domain.

inline std::size_t sweep_workers() {
  if (const char* env = std::getenv("REVIVAL_LAB_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
    throw Error(Errc::config, "REVIVAL_LAB_WORKERS must be a positive integer");
  }
  return detail::hardware_workers();
}

namespace detail {

// Relative L2 error of the matching representation formula against the
// direct series, or null where no formula applies.
inline json cell_oracle_error(const RunConfig& cfg, const TimeSpec& t, const GridFunction& series) {
  const Profile u0 = cfg.initial;
  const int M = cfg.truncation;
  const std::size_t N = cfg.grid;
  const ValidatedBoundary vb = validate_boundary(cfg.boundary);
  if (std::holds_alternative<Periodic>(cfg.boundary) || vb.periodic_degenerate) {
    if (!t.rational) return nullptr;
    const auto* p = std::get_if<Periodic>(&cfg.boundary);
    const Polynomial P = p ? p->dispersion : Polynomial::monomial(2);
    return compare(synthesize(apply_revival_physical(P, *t.rational, analyze(u0, M)), N), series).l2_rel;
  }
  if (const auto* pp = std::get_if<PseudoPeriodicLS>(&cfg.boundary))
    return compare(ls_pp_via_periodic(u0, ls_pp_model(pp->beta0, pp->beta1), t.value, M, N), series).l2_rel;
  if (const auto* qa = std::get_if<QuasiPeriodicAiry>(&cfg.boundary)) {
    if (!t.rational) return nullptr;
    return compare(airy_qp_via_ls(u0, qa->theta, *t.rational, M, N), series).l2_rel;
  }
  const double b = std::get<Robin>(cfg.boundary).b;
  if (!(b > 0.0 && b < 1.0)) return nullptr;
  return compare(robin_via_periodic(u0, b, t.value, M, N), series).l2_rel;
}

}  // namespace detail

inline std::vector<std::string> run_sweep_lines(const RunConfig& base, const std::string& raw_config,
                                                std::size_t workers) {
  const json& sw = base.sweep;
  if (sw.is_null()) throw Error(Errc::config, "'sweep': missing sweep block");
  const json boundaries = sw.value("boundaries", json::array());
  const json times = sw.value("times", json::array());
  const bool want_dimension = sw.value("dimension", true);

  // Resolve every cell up front so configuration errors surface before work starts.
  struct Cell {
    RunConfig cfg;
    TimeSpec time;
    json boundary;
  };
  const json raw = json::parse(raw_config);
  json initial = sw.contains("initial") ? sw.at("initial") : raw.value("initial", json());
  std::vector<Cell> cells;
  for (const auto& b : boundaries) {
    for (const auto& t : times) {
      json doc{{"boundary", b}, {"time", t}, {"truncation", base.truncation}, {"grid", base.grid}};
      if (!initial.is_null()) doc["initial"] = initial;
      Cell c{parse_config(doc.dump()), {}, b};
      c.time = c.cfg.times.front();
      cells.push_back(std::move(c));
    }
  }

  std::vector<std::string> lines(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  detail::parallel_for(cells.size(), workers, [&](std::size_t i) {
    const Cell& c = cells[i];
    try {
      const Solution s = solve(c.cfg, c.time);
      json row{{"cell", i}, {"boundary", c.boundary}, {"time", detail::time_json(c.time)},
               {"M", c.cfg.truncation}, {"N", c.cfg.grid}};
      row["jump_count"] = detect_jumps(s.grid).size();
      if (want_dimension) {
        try {
          const auto d = box_dimension(s.grid);
          row["dimension"] = {{"estimate", d.estimate}, {"stderr", d.stderr_}};
        } catch (const Error& e) {
          row["dimension"] = {{"error", e.what()}};
        }
      }
      row["oracle_rel_l2_err"] = detail::cell_oracle_error(c.cfg, c.time, s.grid);
      lines[i] = row.dump();
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return lines;
}

inline int run_sweep(const std::string& config_path, const std::string& out_path, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    std::ifstream is(config_path);
    if (!is) throw Error(Errc::config, "cannot open config " + config_path);
    std::stringstream ss;
    ss << is.rdbuf();
    const RunConfig cfg = parse_config(ss.str());
    const auto lines = run_sweep_lines(cfg, ss.str(), sweep_workers());
    std::ofstream file;
    std::ostream* sink = &out;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw Error(Errc::config, "cannot open " + out_path + " for writing");
      sink = &file;
    }
    for (const auto& l : lines) *sink << l << '\n';
    return int{exit_ok};
  });
}

}  // namespace revival
