#include <gtest/gtest.h>

#include "revival/app.hpp"
#include "revival/config.hpp"

using namespace revival;

namespace {

std::string config_error(const std::string& raw) {
  try {
    parse_config(raw);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::config) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "accepted: " << raw;
  return {};
}

}  // namespace

TEST(Expression, Arithmetic) {
  EXPECT_DOUBLE_EQ(evaluate_expression("1 + 2 * 3"), 7.0);
  EXPECT_DOUBLE_EQ(evaluate_expression("(1 + 2) * 3"), 9.0);
  EXPECT_DOUBLE_EQ(evaluate_expression("2^3^2"), 512.0);
  EXPECT_DOUBLE_EQ(evaluate_expression("-2^2"), -4.0);
  EXPECT_DOUBLE_EQ(evaluate_expression("8 / 4 / 2"), 1.0);
  EXPECT_DOUBLE_EQ(evaluate_expression("2*pi/3"), 2.0 * pi / 3.0);
  EXPECT_DOUBLE_EQ(evaluate_expression("sqrt(2)/3"), std::sqrt(2.0) / 3.0);
  EXPECT_DOUBLE_EQ(evaluate_expression("exp(1) - e"), 0.0);
  EXPECT_DOUBLE_EQ(evaluate_expression("abs(cos(pi))"), 1.0);
  EXPECT_DOUBLE_EQ(evaluate_expression(" 1e-3 "), 1e-3);
}

TEST(Expression, Errors) {
  for (const char* bad : {"", "1 +", "(1", "foo(2)", "2 3", "sqrt 2", "1/0", "log(-1)"}) {
    try {
      evaluate_expression(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::config) << bad;
    }
  }
}

TEST(Config, Defaults) {
  const auto cfg = parse_config("{}");
  EXPECT_TRUE(std::holds_alternative<Periodic>(cfg.boundary));
  EXPECT_EQ(cfg.truncation, 256);
  EXPECT_EQ(cfg.grid, 4096u);
  EXPECT_TRUE(cfg.times.empty());
  EXPECT_DOUBLE_EQ(cfg.tolerance, 1e-6);
  EXPECT_TRUE(cfg.sweep.is_null());
}

TEST(Config, BoundaryForms) {
  auto pp = parse_config(R"({"boundary": {"type": "pseudo_periodic", "beta0": [1.5, 0], "beta1": {"re": "2/3"}}})");
  const auto& b = std::get<PseudoPeriodicLS>(pp.boundary);
  EXPECT_EQ(b.beta0, cplx(1.5, 0));
  EXPECT_DOUBLE_EQ(b.beta1.real(), 2.0 / 3.0);

  auto qp = parse_config(R"({"boundary": {"type": "pseudo_periodic", "theta": "1/4"}})");
  const auto& q = std::get<PseudoPeriodicLS>(qp.boundary);
  EXPECT_NEAR(std::abs(q.beta0 - cplx(0, 1)), 0.0, 1e-15);
  EXPECT_EQ(q.beta0, q.beta1);

  for (const char* theta : {R"("1/3")", R"({"c": 1, "d": 3})"}) {
    const auto a = parse_config(std::string(R"({"boundary": {"type": "quasi_periodic_airy", "theta": )") + theta + "}}");
    ASSERT_TRUE(a.theta_rational.has_value());
    EXPECT_EQ(a.theta_rational->c, 1);
    EXPECT_EQ(a.theta_rational->d, 3);
    EXPECT_EQ(a.theta_text, "1/3");
  }
  const auto irr = parse_config(R"({"boundary": {"type": "quasi_periodic_airy", "theta": "sqrt(2)/3"}})");
  EXPECT_FALSE(irr.theta_rational.has_value());
  EXPECT_DOUBLE_EQ(std::get<QuasiPeriodicAiry>(irr.boundary).theta, std::sqrt(2.0) / 3.0);

  const auto r = parse_config(R"({"boundary": {"type": "robin", "b": 0.35}, "initial": {"type": "step"}})");
  EXPECT_DOUBLE_EQ(std::get<Robin>(r.boundary).b, 0.35);
  EXPECT_DOUBLE_EQ(r.initial.length(), pi);

  const auto per = parse_config(R"({"boundary": {"type": "periodic", "poly": "m^3 - m"}})");
  EXPECT_EQ(std::get<Periodic>(per.boundary).dispersion.coefficients(), (std::vector<std::int64_t>{0, -1, 0, 1}));
}

TEST(Config, TimesAndInitialData) {
  const auto cfg = parse_config(R"({
    "initial": {"type": "harmonic", "terms": [{"m": -1, "amplitude": [0, 1]}]},
    "time": [{"p": 2, "q": 4}, "2*pi/3", 0.5]
  })");
  ASSERT_EQ(cfg.times.size(), 3u);
  ASSERT_TRUE(cfg.times[0].rational.has_value());
  EXPECT_EQ(cfg.times[0].rational->p, 1);
  EXPECT_EQ(cfg.times[0].rational->q, 2);
  EXPECT_DOUBLE_EQ(cfg.times[0].value, pi);
  EXPECT_FALSE(cfg.times[1].rational.has_value());
  EXPECT_DOUBLE_EQ(cfg.times[1].value, 2 * pi / 3);
  EXPECT_EQ(cfg.times[1].text, "2*pi/3");
  EXPECT_DOUBLE_EQ(cfg.times[2].value, 0.5);
  const Profile u = cfg.initial;
  EXPECT_NEAR(std::abs(u(0.3) - std::polar(1.0, -0.3) * cplx(0, 1)), 0.0, 1e-15);
}

TEST(Config, ErrorsNameTheLine) {
  const std::string raw = "{\n  \"truncation\": 64,\n  \"grid\": 1\n}";
  const std::string msg = config_error(raw);
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'grid'"), std::string::npos) << msg;

  EXPECT_NE(config_error("{\n\"time\": {\"p\": 1, \"q\": 0}\n}").find("line 2"), std::string::npos);
  EXPECT_NE(config_error("{\n\n  \"boundary\": {\"type\": \"pseudo_periodic\", \"beta0\": 1, \"beta1\": -1}}")
                .find("line 3"),
            std::string::npos);
  EXPECT_NE(config_error("{\n  \"truncation\": 3,\n}").find("line 3"), std::string::npos);
}

TEST(Config, Rejections) {
  config_error(R"({"boundary": {"type": "dirichlet"}})");
  config_error(R"({"boundary": {"type": "pseudo_periodic", "beta0": 2}})");
  config_error(R"({"boundary": {"type": "robin", "b": 1.5}})");
  config_error(R"({"boundary": {"type": "quasi_periodic_airy", "theta": "2/4"}})");
  config_error(R"({"boundary": {"type": "quasi_periodic_airy", "theta": 1.0}})");
  config_error(R"({"boundary": {"type": "pseudo_periodic", "beta0": 3, "beta1": 3}})");
  config_error(R"({"initial": {"type": "piecewise", "breakpoints": [0, 9], "values": [0, 1]}})");
  config_error(R"({"initial": {"type": "wave"}})");
  config_error(R"({"initial": {"type": "csv", "path": "/nonexistent/u.csv"}})");
  config_error(R"({"truncation": 0})");
  config_error(R"({"truncation": 1.5})");
  config_error(R"({"time": -1})");
  config_error(R"({"time": {"p": -1, "q": 2}})");
  config_error("[1, 2]");
}

TEST(Config, ShippedExamplesParse) {
  for (const char* name : {"airy_alt", "airy_quarter", "airy_sqrt2", "periodic_half", "pseudo_periodic",
                           "pseudo_periodic_smooth", "quasi_periodic_ls", "robin_035", "sweep_robin", "sweep_theta"}) {
    EXPECT_NO_THROW(load_config(std::string(CONFIG_DIR) + "/" + name + ".json")) << name;
  }
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(Errc::config), 2);
  EXPECT_EQ(exit_code_for(Errc::invalid_theta), 2);
  EXPECT_EQ(exit_code_for(Errc::undefined_k0), 2);
  EXPECT_EQ(exit_code_for(Errc::parameter_overflow), 3);
  EXPECT_EQ(exit_code_for(Errc::aliasing_risk), 3);
}

TEST(Solve, DegeneratePseudoPeriodicUsesPeriodicSolver) {
  const auto cfg = parse_config(R"({"boundary": {"type": "pseudo_periodic", "beta0": 1, "beta1": 1},
                                    "truncation": 64, "grid": 256, "time": {"p": 1, "q": 2}})");
  const auto s = solve(cfg, cfg.times.front());
  const auto ref = synthesize(translate(analyze(cfg.initial, 64), pi), 256);
  for (std::size_t n = 0; n < 256; ++n) EXPECT_NEAR(std::abs(s.grid[n] - ref[n]), 0.0, 1e-12);
}

TEST(Sweep, CellsInOrderAndWorkerIndependent) {
  const std::string raw = R"({"truncation": 128, "grid": 1024,
    "sweep": {"boundaries": [{"type": "quasi_periodic_airy", "theta": "1/4"}, {"type": "robin", "b": 0.35}],
              "times": [{"p": 1, "q": 3}, "1.0"], "dimension": false}})";
  const auto cfg = parse_config(raw);
  const auto one = run_sweep_lines(cfg, raw, 1);
  const auto two = run_sweep_lines(cfg, raw, 2);
  ASSERT_EQ(one.size(), 4u);
  EXPECT_EQ(one, two);
  for (std::size_t i = 0; i < one.size(); ++i) {
    const auto row = json::parse(one[i]);
    EXPECT_EQ(row.at("cell").get<std::size_t>(), i);
    EXPECT_FALSE(row.contains("dimension"));
    EXPECT_TRUE(row.contains("jump_count"));
  }
  EXPECT_THROW(run_sweep_lines(parse_config("{}"), "{}", 1), Error);
}
