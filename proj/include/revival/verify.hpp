#pragma once

// Engine-versus-oracle checks for each representation formula.

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "revival/analysis.hpp"
#include "revival/config.hpp"
#include "revival/correspondence.hpp"
#include "revival/spectral.hpp"

namespace revival {

inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"prop31", "cor32", "qprev", "thm11", "cor42", "prop43", "prop51", "thm12"};
  return ids;
}

struct VerifyReport {
  std::string theorem;
  double max_abs_err = 0.0;
  double rel_l2_err = 0.0;
  double tolerance = 0.0;
  int M = 0;
  std::size_t N = 0;
  json params = json::object();
  json cases = json::array();
  json extra = json::object();
  bool passed = false;

  json to_json() const {
    json j{{"theorem", theorem}, {"max_abs_err", max_abs_err}, {"rel_l2_err", rel_l2_err},
           {"tolerance", tolerance}, {"M", M}, {"N", N}, {"params", params},
           {"cases", cases}, {"passed", passed}};
    if (!extra.empty()) j["extra"] = extra;
    return j;
  }
};

namespace detail {

inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline const PseudoPeriodicLS& need_pseudo(const RunConfig& cfg) {
  const auto* pp = std::get_if<PseudoPeriodicLS>(&cfg.boundary);
  if (!pp) throw Error(Errc::config, "this check needs a pseudo_periodic boundary");
  return *pp;
}

inline double need_airy_theta(const RunConfig& cfg) {
  const auto* qa = std::get_if<QuasiPeriodicAiry>(&cfg.boundary);
  if (!qa) throw Error(Errc::config, "this check needs a quasi_periodic_airy boundary");
  return qa->theta;
}

inline double need_robin_b(const RunConfig& cfg) {
  const auto* r = std::get_if<Robin>(&cfg.boundary);
  if (!r) throw Error(Errc::config, "this check needs a robin boundary");
  return r->b;
}

inline RationalTheta need_rational_theta(const RunConfig& cfg) {
  if (!cfg.theta_rational) throw Error(Errc::invalid_theta, "this check needs theta given as a reduced fraction c/d");
  return *cfg.theta_rational;
}

inline RationalTime need_rational(const TimeSpec& t) {
  if (!t.rational) throw Error(Errc::config, "this check needs rational times given as {\"p\", \"q\"}");
  return *t.rational;
}

// theta with beta0 = beta1 = e^{2 pi i theta}
inline double quasi_theta(const PseudoPeriodicLS& pp) {
  if (std::abs(pp.beta0 - pp.beta1) > boundary_tolerance || std::abs(std::abs(pp.beta0) - 1.0) > boundary_tolerance)
    throw Error(Errc::config, "qprev needs beta0 = beta1 on the unit circle");
  double theta = std::arg(pp.beta0) / two_pi;
  if (theta < 0.0) theta += 1.0;
  if (theta >= 1.0) theta -= 1.0;
  return theta;
}

inline json pseudo_params(const PseudoPeriodicModel& m) {
  return {{"beta0", complex_json(m.beta0)}, {"beta1", complex_json(m.beta1)}, {"k0", m.k0},
          {"gamma", complex_json(m.gamma)}, {"tau", complex_json(m.tau)}, {"lambda0", complex_json(m.lambda0)},
          {"i0", complex_json(m.i0)}, {"self_adjoint", m.self_adjoint}};
}

inline json robin_params(const RobinModel& m) {
  return {{"b", m.b}, {"m_b", m.mb}, {"lambda_b", m.lambda_b}};
}

}  // namespace detail

// Runs one check over every configured time; errors are maxima over times.
inline VerifyReport run_verification(const std::string& id, const RunConfig& cfg) {
  if (std::find(theorem_ids().begin(), theorem_ids().end(), id) == theorem_ids().end())
    throw Error(Errc::config, "unknown theorem id '" + id + "'");
  if (cfg.times.empty()) throw Error(Errc::config, "'time': at least one time is required");

  VerifyReport rep;
  rep.theorem = id;
  rep.tolerance = cfg.tolerance;
  rep.M = cfg.truncation;
  rep.N = cfg.grid;
  const Profile u0 = cfg.initial;
  const int M = cfg.truncation;
  const std::size_t N = cfg.grid;

  auto record = [&](const TimeSpec& t, const GridFunction& engine, const GridFunction& oracle, json more = {}) {
    const Comparison c = compare(engine, oracle);
    rep.max_abs_err = std::max(rep.max_abs_err, c.sup_err);
    rep.rel_l2_err = std::max(rep.rel_l2_err, c.l2_rel);
    json row{{"time", t.text}, {"t", t.value}, {"max_abs_err", c.sup_err}, {"rel_l2_err", c.l2_rel}};
    if (!more.is_null()) row.update(more);
    rep.cases.push_back(row);
  };

  if (id == "prop31" || id == "cor32") {
    const auto& pp = detail::need_pseudo(cfg);
    const auto model = ls_pp_model(pp.beta0, pp.beta1);
    rep.params = detail::pseudo_params(model);
    for (const auto& t : cfg.times) {
      const GridFunction oracle = evolve_ls_pseudo(u0, model, t.value, M, N);
      if (id == "prop31") {
        record(t, ls_pp_via_periodic(u0, model, t.value, M, N), oracle);
      } else {
        const auto rt = detail::need_rational(t);
        const GridFunction rev = ls_pp_revival(u0, model, rt, M, N);
        const Comparison internal = compare(rev, ls_pp_via_periodic(u0, model, t.value, M, N));
        record(t, rev, oracle, {{"vs_prop31_rel_l2", internal.l2_rel}});
      }
    }
  } else if (id == "qprev") {
    const double theta = detail::quasi_theta(detail::need_pseudo(cfg));
    const auto model = ls_pp_model(std::polar(1.0, two_pi * theta), std::polar(1.0, two_pi * theta));
    rep.params = detail::pseudo_params(model);
    rep.params["theta"] = theta;
    for (const auto& t : cfg.times) {
      const auto rt = detail::need_rational(t);
      record(t, ls_qp_revival(u0, theta, rt, M, N), evolve_ls_pseudo(u0, model, t.value, M, N));
    }
  } else if (id == "thm11" || id == "cor42") {
    const double theta = detail::need_airy_theta(cfg);
    rep.params = {{"theta", theta}, {"theta_text", cfg.theta_text}};
    std::optional<RationalTheta> tr;
    if (id == "cor42") tr = detail::need_rational_theta(cfg);
    for (const auto& t : cfg.times) {
      const auto rt = detail::need_rational(t);
      const GridFunction oracle = evolve_airy_qp(u0, theta, t.value, M, N);
      const GridFunction via = airy_qp_via_ls(u0, theta, rt, M, N);
      if (id == "thm11") {
        record(t, via, oracle);
      } else {
        const GridFunction rev = airy_qp_revival(u0, *tr, rt, M, N);
        record(t, rev, oracle, {{"vs_thm11_rel_l2", compare(rev, via).l2_rel}});
      }
    }
  } else if (id == "prop43") {
    const RationalTheta tr = detail::need_rational_theta(cfg);
    rep.params = {{"theta", tr.value()}, {"c", tr.c}, {"d", tr.d}};
    double printed_worst = 0.0, uniform_worst = 0.0, oracle_worst = 0.0;
    for (const auto& t : cfg.times) {
      const auto rt = detail::need_rational(t);
      const GridFunction rev = airy_qp_revival(u0, tr, rt, M, N);
      const GridFunction printed = airy_qp_alt(u0, tr, rt, M, N, AltReading::as_printed);
      const GridFunction uniform = airy_qp_alt(u0, tr, rt, M, N, AltReading::uniform_step);
      const double e_oracle = compare(rev, evolve_airy_qp(u0, tr.value(), t.value, M, N)).l2_rel;
      const double e_uniform = compare(uniform, rev).l2_rel;
      printed_worst = std::max(printed_worst, compare(printed, rev).l2_rel);
      uniform_worst = std::max(uniform_worst, e_uniform);
      oracle_worst = std::max(oracle_worst, e_oracle);
      record(t, printed, rev, {{"uniform_step_vs_revival_rel_l2", e_uniform}, {"revival_vs_series_rel_l2", e_oracle}});
    }
    const bool printed_ok = printed_worst <= cfg.tolerance;
    const bool uniform_ok = uniform_worst <= cfg.tolerance;
    rep.extra = {{"as_printed_vs_revival_rel_l2", printed_worst},
                 {"uniform_step_vs_revival_rel_l2", uniform_worst},
                 {"revival_vs_series_rel_l2", oracle_worst},
                 {"as_printed_matches", printed_ok},
                 {"uniform_step_matches", uniform_ok},
                 {"validated_reading", printed_ok ? (uniform_ok ? "both" : "as_printed")
                                                  : (uniform_ok ? "uniform_step" : "neither")}};
  } else {
    const double b = detail::need_robin_b(cfg);
    const RobinModel model = robin_model(b);
    rep.params = detail::robin_params(model);
    for (const auto& t : cfg.times) {
      const GridFunction oracle = evolve_robin(u0, b, t.value, M, N);
      if (id == "prop51") {
        record(t, robin_via_periodic(u0, b, t.value, M, N), oracle);
      } else {
        const auto rt = detail::need_rational(t);
        record(t, robin_revival(u0, b, rt, M, N), oracle);
      }
    }
  }
  rep.passed = std::isfinite(rep.rel_l2_err) && rep.rel_l2_err <= cfg.tolerance;
  return rep;
}

}  // namespace revival
