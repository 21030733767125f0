#pragma once

// JSON run configuration.  Keys: boundary, initial, truncation, grid, time,
// plus optional tolerance and sweep.  Numbers may be given as JSON numbers or
// as expression strings such as "sqrt(2)/3" or "2*pi/3".

#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "revival/core.hpp"
#include "revival/correspondence.hpp"
#include "revival/io.hpp"

namespace revival {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Arithmetic expressions: + - * / ^, parentheses, unary minus, constants
// pi and e, functions sqrt sin cos tan exp log abs.

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  double parse() {
    const double v = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::config, "expression \"" + std::string(s_) + "\": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double sum() {
    double v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }

  double product() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }

  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  double power() {
    const double base = atom();
    if (eat('^')) return std::pow(base, unary());
    return base;
  }

  double atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      const std::string rest(s_.substr(pos_));
      double v = 0.0;
      try {
        v = std::stod(rest, &used);
      } catch (const std::exception&) {
        fail("malformed number");
      }
      pos_ += used;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (name == "pi") return pi;
      if (name == "e") return std::exp(1.0);
      if (!eat('(')) fail("unknown name '" + name + "'");
      const double arg = sum();
      if (!eat(')')) fail("missing ')'");
      if (name == "sqrt") return std::sqrt(arg);
      if (name == "sin") return std::sin(arg);
      if (name == "cos") return std::cos(arg);
      if (name == "tan") return std::tan(arg);
      if (name == "exp") return std::exp(arg);
      if (name == "log") return std::log(arg);
      if (name == "abs") return std::abs(arg);
      fail("unknown function '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline double evaluate_expression(std::string_view text) {
  const double v = detail::ExprParser(text).parse();
  if (!std::isfinite(v)) throw Error(Errc::config, "expression \"" + std::string(text) + "\" is not finite");
  return v;
}

// ---------------------------------------------------------------------------

struct TimeSpec {
  std::optional<RationalTime> rational;  // t = 2 pi p / q
  double value = 0.0;
  std::string text;
};

struct RunConfig {
  BoundarySpec boundary = Periodic{};
  std::optional<RationalTheta> theta_rational;  // when theta was given as c/d
  InitialCondition initial = InitialCondition::step();
  int truncation = default_window;
  std::size_t grid = default_grid;
  std::vector<TimeSpec> times;
  double tolerance = 1e-6;
  std::string theta_text;
  json sweep;  // raw sweep block, null if absent
};

namespace detail {

// Line of the first occurrence of "key" in the raw document, 0 if not found.
inline std::size_t line_of_key(const std::string& raw, const std::string& key) {
  const auto at = raw.find('"' + key + '"');
  if (at == std::string::npos) return 0;
  return 1 + static_cast<std::size_t>(std::count(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(at), '\n'));
}

class ConfigReader {
 public:
  explicit ConfigReader(std::string raw) : raw_(std::move(raw)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const std::size_t line = line_of_key(raw_, key);
    std::string msg = line ? "line " + std::to_string(line) + ": " : std::string();
    throw Error(Errc::config, msg + "'" + key + "': " + what);
  }

  double real(const json& v, const std::string& key) const {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      try {
        return evaluate_expression(v.get<std::string>());
      } catch (const Error& e) {
        fail(key, e.what());
      }
    }
    fail(key, "expected a number or expression string");
  }

  std::int64_t integer(const json& v, const std::string& key) const {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    fail(key, "expected an integer");
  }

  cplx complex(const json& v, const std::string& key) const {
    if (v.is_array()) {
      if (v.size() != 2) fail(key, "complex arrays are [re, im]");
      return {real(v[0], key), real(v[1], key)};
    }
    if (v.is_object()) return {real(v.value("re", json(0.0)), key), real(v.value("im", json(0.0)), key)};
    return {real(v, key), 0.0};
  }

  const json& require(const json& obj, const std::string& key) const {
    if (!obj.is_object() || !obj.contains(key)) fail(key, "missing required key");
    return obj.at(key);
  }

  // theta as number, expression, "c/d" string or {"c": .., "d": ..}
  double theta(const json& v, std::optional<RationalTheta>& rational, std::string& text) const {
    if (v.is_object()) {
      const auto c = integer(require(v, "c"), "c");
      const auto d = integer(require(v, "d"), "d");
      rational = validate_theta(c, d);
      text = std::to_string(c) + "/" + std::to_string(d);
      return rational->value();
    }
    if (v.is_string()) {
      text = v.get<std::string>();
      std::int64_t c = 0, d = 0;
      char slash = 0;
      std::istringstream is(text);
      if (is >> c >> slash >> d && slash == '/' && (is >> std::ws).eof()) {
        rational = validate_theta(c, d);
        return rational->value();
      }
    }
    const double t = real(v, "theta");
    if (text.empty()) text = format_double(t);
    return t;
  }

  BoundarySpec boundary(const json& b, std::optional<RationalTheta>& rational, std::string& theta_text) const {
    if (!b.is_object()) fail("boundary", "expected an object");
    const std::string type = require(b, "type").get<std::string>();
    if (type == "periodic") {
      Periodic p;
      if (b.contains("poly")) {
        try {
          p.dispersion = Polynomial::parse(b.at("poly").get<std::string>());
        } catch (const Error& e) {
          fail("poly", e.what());
        }
      }
      return p;
    }
    if (type == "pseudo_periodic") {
      if (b.contains("theta")) {
        const double t = theta(b.at("theta"), rational, theta_text);
        return quasi_periodic_ls(t);
      }
      return PseudoPeriodicLS{complex(require(b, "beta0"), "beta0"), complex(require(b, "beta1"), "beta1")};
    }
    if (type == "quasi_periodic_airy") return QuasiPeriodicAiry{theta(require(b, "theta"), rational, theta_text)};
    if (type == "robin") return Robin{real(require(b, "b"), "b")};
    fail("type", "unknown boundary type '" + type + "'");
  }

  InitialCondition initial(const json& v, double length) const {
    if (!v.is_object()) fail("initial", "expected an object");
    const std::string type = require(v, "type").get<std::string>();
    if (type == "step") {
      const double jump = v.contains("jump") ? real(v.at("jump"), "jump") : 0.5 * length;
      return InitialCondition::step(jump, length);
    }
    if (type == "piecewise") {
      const auto& bps = require(v, "breakpoints");
      const auto& vals = require(v, "values");
      if (!bps.is_array() || !vals.is_array()) fail("breakpoints", "breakpoints and values must be arrays");
      std::vector<double> b;
      std::vector<cplx> u;
      for (const auto& x : bps) b.push_back(real(x, "breakpoints"));
      for (const auto& x : vals) u.push_back(complex(x, "values"));
      return InitialCondition::piecewise(std::move(b), std::move(u), length);
    }
    if (type == "harmonic") {
      const auto& terms = require(v, "terms");
      if (!terms.is_array()) fail("terms", "expected an array");
      std::vector<std::pair<int, cplx>> out;
      for (const auto& t : terms)
        out.emplace_back(static_cast<int>(integer(require(t, "m"), "m")), complex(require(t, "amplitude"), "amplitude"));
      return InitialCondition::harmonic(std::move(out), length);
    }
    if (type == "csv") {
      GridFunction g = read_grid_csv_file(require(v, "path").get<std::string>());
      if (std::abs(g.length - length) > 1e-6) fail("path", "sampled data length does not match the problem domain");
      g.length = length;
      return InitialCondition::sampled(std::move(g));
    }
    fail("type", "unknown initial condition type '" + type + "'");
  }

  TimeSpec time(const json& v) const {
    TimeSpec t;
    if (v.is_object()) {
      const auto p = integer(require(v, "p"), "p");
      const auto q = integer(require(v, "q"), "q");
      if (p < 0) fail("p", "time numerator must be non-negative");
      if (q == 0) fail("q", "invalid-denominator: q = 0");
      if (q < 0) fail("q", "denominator must be positive");
      t.rational = reduce_rational(p, q);
      t.value = t.rational->value();
      t.text = "2pi*" + std::to_string(t.rational->p) + "/" + std::to_string(t.rational->q);
      return t;
    }
    t.value = real(v, "time");
    if (t.value < 0.0) fail("time", "time must be non-negative");
    t.text = v.is_string() ? v.get<std::string>() : format_double(t.value);
    return t;
  }

 private:
  std::string raw_;
};

}  // namespace detail

inline double domain_length(const BoundarySpec& b) { return std::holds_alternative<Robin>(b) ? pi : two_pi; }

inline RunConfig parse_config(const std::string& raw) {
  json doc;
  try {
    doc = json::parse(raw);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, raw.size());
    const auto line = 1 + std::count(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw Error(Errc::config, "line " + std::to_string(line) + ": malformed JSON");
  }
  if (!doc.is_object()) throw Error(Errc::config, "line 1: top level must be an object");

  const detail::ConfigReader reader(raw);
  RunConfig cfg;
  try {
    if (doc.contains("boundary")) cfg.boundary = reader.boundary(doc.at("boundary"), cfg.theta_rational, cfg.theta_text);
    validate_boundary(cfg.boundary);
  } catch (const Error& e) {
    if (e.code() == Errc::config) throw;
    reader.fail("boundary", e.what());
  }
  const double length = domain_length(cfg.boundary);
  try {
    cfg.initial = doc.contains("initial") ? reader.initial(doc.at("initial"), length) : InitialCondition::step(0.5 * length, length);
  } catch (const Error& e) {
    if (e.code() == Errc::config) throw;
    reader.fail("initial", e.what());
  }
  if (doc.contains("truncation")) {
    const auto m = reader.integer(doc.at("truncation"), "truncation");
    if (m < 1) reader.fail("truncation", "window radius must be >= 1");
    cfg.truncation = static_cast<int>(m);
  }
  if (doc.contains("grid")) {
    const auto n = reader.integer(doc.at("grid"), "grid");
    if (n < 2) reader.fail("grid", "grid needs at least 2 points");
    cfg.grid = static_cast<std::size_t>(n);
  }
  if (doc.contains("time")) {
    const auto& t = doc.at("time");
    if (t.is_array())
      for (const auto& x : t) cfg.times.push_back(reader.time(x));
    else
      cfg.times.push_back(reader.time(t));
  }
  if (doc.contains("tolerance")) cfg.tolerance = reader.real(doc.at("tolerance"), "tolerance");
  if (doc.contains("sweep")) cfg.sweep = doc.at("sweep");
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(Errc::config, "cannot open config " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

}  // namespace revival
