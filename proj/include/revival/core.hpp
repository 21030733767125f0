#pragma once

// Domain model shared by every other header: rational times, boundary
// families, initial data, grid samples and Fourier coefficient windows.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace revival {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline const double sqrt_two_pi = std::sqrt(two_pi);

// Reality / degeneracy threshold for boundary parameters.
inline constexpr double boundary_tolerance = 1e-12;

enum class Errc {
  invalid_argument,
  invalid_denominator,
  undefined_k0,
  complex_spectrum_unsupported,
  periodic_degenerate,
  degenerate_spectrum,
  degenerate_normalization,
  aliasing_risk,
  grid_mismatch,
  insufficient_scales,
  undefined_decay,
  invalid_theta,
  parameter_overflow,
  config,
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::invalid_denominator: return "invalid-denominator";
    case Errc::undefined_k0: return "undefined-k0";
    case Errc::complex_spectrum_unsupported: return "complex-spectrum-unsupported";
    case Errc::periodic_degenerate: return "periodic-degenerate";
    case Errc::degenerate_spectrum: return "degenerate-spectrum";
    case Errc::degenerate_normalization: return "degenerate-normalization";
    case Errc::aliasing_risk: return "aliasing-risk";
    case Errc::grid_mismatch: return "grid-mismatch";
    case Errc::insufficient_scales: return "insufficient-scales";
    case Errc::undefined_decay: return "undefined-decay";
    case Errc::invalid_theta: return "invalid-theta";
    case Errc::parameter_overflow: return "parameter-overflow";
    case Errc::config: return "config";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// ---------------------------------------------------------------------------
// Rational time t = 2*pi*p/q with gcd(p, q) = 1.  p = 0 encodes t = 0.

struct RationalTime {
  std::int64_t p = 0;
  std::int64_t q = 1;

  double value() const { return two_pi * static_cast<double>(p) / static_cast<double>(q); }
  long double value_ld() const {
    return 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(p) /
           static_cast<long double>(q);
  }
  friend bool operator==(const RationalTime&, const RationalTime&) = default;
};

inline RationalTime reduce_rational(std::int64_t p, std::int64_t q) {
  if (q == 0) throw Error(Errc::invalid_denominator, "denominator must be positive");
  if (q < 0 || p < 0) throw Error(Errc::invalid_argument, "rational time needs p >= 0 and q >= 1");
  const std::int64_t g = std::gcd(p, q);
  return {p / g, q / g};
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t q) {
  const std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>(
      (static_cast<__int128>(mod_floor(a, q)) * static_cast<__int128>(mod_floor(b, q))) % q);
}

// e^{-2 pi i r / q} for an integer residue r.
inline cplx root_of_unity_phase(std::int64_t r, std::int64_t q) {
  const double angle = -two_pi * static_cast<double>(mod_floor(r, q)) / static_cast<double>(q);
  return std::polar(1.0, angle);
}

// e^{-i angle} with the argument reduced in extended precision first.
inline cplx phase_of(long double angle) {
  constexpr long double tau = 2.0L * std::numbers::pi_v<long double>;
  long double r = std::fmod(angle, tau);
  return std::polar(1.0, -static_cast<double>(r));
}

// ---------------------------------------------------------------------------
// Integer-coefficient dispersion polynomial P(m) = sum_k c_k m^k.

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::int64_t> ascending) : coeffs_(std::move(ascending)) {
    trim();
  }

  static Polynomial monomial(int degree) {
    if (degree < 0) throw Error(Errc::invalid_argument, "negative monomial degree");
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
    c.back() = 1;
    return Polynomial(std::move(c));
  }

  // Accepts forms such as "m^2", "m^3 + 2m", "3*m^2 - m + 1".
  static Polynomial parse(std::string_view text);

  int degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

  // P(m) mod q evaluated exactly by Horner's rule.
  std::int64_t eval_mod(std::int64_t m, std::int64_t q) const {
    std::int64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = mod_floor(mul_mod(acc, m, q) + mod_floor(*it, q), q);
    }
    return acc;
  }

  long double eval(long double x) const {
    long double acc = 0.0L;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + static_cast<long double>(*it);
    return acc;
  }

  std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<std::int64_t> coeffs_;
};

inline Polynomial Polynomial::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw Error(Errc::invalid_argument, "empty polynomial");

  std::vector<std::int64_t> coeffs;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(Errc::invalid_argument, "cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  auto read_int = [&](std::int64_t& out) {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) return false;
    out = std::stoll(s.substr(start, i - start));
    return true;
  };

  while (i < s.size()) {
    std::int64_t sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected '+' or '-' at position " + std::to_string(i));
    }
    std::int64_t coef = 1;
    const bool has_coef = read_int(coef);
    if (i < s.size() && s[i] == '*') {
      if (!has_coef) fail("dangling '*'");
      ++i;
    }
    int power = 0;
    if (i < s.size() && (s[i] == 'm' || s[i] == 'k' || s[i] == 'x')) {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::int64_t e = 0;
        if (!read_int(e)) fail("missing exponent");
        power = static_cast<int>(e);
      }
    } else if (!has_coef) {
      fail("expected a term at position " + std::to_string(i));
    }
    if (coeffs.size() <= static_cast<std::size_t>(power)) coeffs.resize(static_cast<std::size_t>(power) + 1, 0);
    coeffs[static_cast<std::size_t>(power)] += sign * coef;
  }
  return Polynomial(std::move(coeffs));
}

inline std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const std::int64_t c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const std::int64_t a = c < 0 ? -c : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (a != 1 || k == 0) out += std::to_string(a);
    if (k >= 1) out += "m";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Boundary families.

struct Periodic {
  Polynomial dispersion = Polynomial::monomial(2);
};

struct PseudoPeriodicLS {
  cplx beta0{1.0, 0.0};
  cplx beta1{1.0, 0.0};
};

struct QuasiPeriodicAiry {
  double theta = 0.0;
};

struct Robin {
  double b = 0.5;
};

using BoundarySpec = std::variant<Periodic, PseudoPeriodicLS, QuasiPeriodicAiry, Robin>;

struct ValidatedBoundary {
  BoundarySpec spec;
  bool self_adjoint = false;
  bool periodic_degenerate = false;
  // (1 + b0 b1) / (b0 + b1); only meaningful for the pseudo-periodic family.
  double ratio = 1.0;
};

inline PseudoPeriodicLS quasi_periodic_ls(double theta) {
  const cplx beta = std::polar(1.0, two_pi * theta);
  return {beta, beta};
}

inline ValidatedBoundary validate_boundary(const BoundarySpec& spec) {
  ValidatedBoundary out{spec};
  if (const auto* pp = std::get_if<PseudoPeriodicLS>(&spec)) {
    const cplx sum = pp->beta0 + pp->beta1;
    if (std::abs(sum) <= boundary_tolerance)
      throw Error(Errc::undefined_k0, "beta0 + beta1 = 0 leaves k0 undefined");
    const cplx ratio = (1.0 + pp->beta0 * pp->beta1) / sum;
    if (std::abs(ratio.imag()) > boundary_tolerance * std::max(1.0, std::abs(ratio)))
      throw Error(Errc::complex_spectrum_unsupported, "(1 + b0 b1)/(b0 + b1) is not real");
    if (std::abs(ratio.real()) > 1.0 + boundary_tolerance)
      throw Error(Errc::complex_spectrum_unsupported, "|(1 + b0 b1)/(b0 + b1)| exceeds 1");
    out.ratio = std::clamp(ratio.real(), -1.0, 1.0);
    out.self_adjoint = std::abs(std::conj(pp->beta0) * pp->beta1 - 1.0) <= boundary_tolerance;
    out.periodic_degenerate = std::abs(ratio.real() - 1.0) <= boundary_tolerance;
  } else if (const auto* qp = std::get_if<QuasiPeriodicAiry>(&spec)) {
    if (!(qp->theta >= 0.0 && qp->theta < 1.0))
      throw Error(Errc::invalid_theta, "theta must lie in [0, 1)");
    out.self_adjoint = true;
  } else if (const auto* r = std::get_if<Robin>(&spec)) {
    if (!(r->b >= 0.0 && r->b <= 1.0)) throw Error(Errc::invalid_argument, "Robin b must lie in [0, 1]");
    out.self_adjoint = true;
  } else {
    out.self_adjoint = true;
    out.periodic_degenerate = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Samples on the uniform grid x_n = n L / N of [0, L).

struct GridFunction {
  double length = two_pi;
  std::vector<cplx> samples;

  GridFunction() = default;
  GridFunction(double domain_length, std::vector<cplx> values)
      : length(domain_length), samples(std::move(values)) {
    if (samples.size() < 2) throw Error(Errc::invalid_argument, "grid needs at least 2 samples");
    if (!(length > 0.0)) throw Error(Errc::invalid_argument, "grid length must be positive");
    for (const auto& v : samples)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(Errc::invalid_argument, "grid samples must be finite");
  }

  std::size_t size() const { return samples.size(); }
  double step() const { return length / static_cast<double>(samples.size()); }
  double x(std::size_t n) const { return static_cast<double>(n) * step(); }
  cplx operator[](std::size_t n) const { return samples[n]; }
  cplx& operator[](std::size_t n) { return samples[n]; }
};

inline GridFunction& operator+=(GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw Error(Errc::grid_mismatch, "grid sizes differ");
  for (std::size_t n = 0; n < a.size(); ++n) a.samples[n] += b.samples[n];
  return a;
}

inline GridFunction& operator*=(GridFunction& a, cplx s) {
  for (auto& v : a.samples) v *= s;
  return a;
}

// ---------------------------------------------------------------------------
// Coefficients c(m), |m| <= M, with respect to e_m(x) = e^{imx}/sqrt(2 pi).

class FourierCoeffs {
 public:
  FourierCoeffs() = default;
  explicit FourierCoeffs(int radius) : radius_(radius), data_(2 * static_cast<std::size_t>(radius) + 1) {
    if (radius < 0) throw Error(Errc::invalid_argument, "negative window radius");
  }

  int radius() const { return radius_; }
  std::size_t size() const { return data_.size(); }

  cplx operator[](int m) const { return data_[index(m)]; }
  cplx& operator[](int m) { return data_[index(m)]; }

  bool contains(int m) const { return m >= -radius_ && m <= radius_; }
  cplx at_or_zero(int m) const { return contains(m) ? (*this)[m] : cplx{}; }

  double norm() const {
    double s = 0.0;
    for (const auto& c : data_) s += std::norm(c);
    return std::sqrt(s);
  }

  const std::vector<cplx>& values() const { return data_; }

 private:
  std::size_t index(int m) const {
    if (!contains(m)) throw Error(Errc::invalid_argument, "coefficient index outside window");
    return static_cast<std::size_t>(m + radius_);
  }

  int radius_ = 0;
  std::vector<cplx> data_;
};

inline FourierCoeffs operator+(const FourierCoeffs& a, const FourierCoeffs& b) {
  const int r = std::min(a.radius(), b.radius());
  FourierCoeffs out(r);
  for (int m = -r; m <= r; ++m) out[m] = a[m] + b[m];
  return out;
}

inline FourierCoeffs operator-(const FourierCoeffs& a, const FourierCoeffs& b) {
  const int r = std::min(a.radius(), b.radius());
  FourierCoeffs out(r);
  for (int m = -r; m <= r; ++m) out[m] = a[m] - b[m];
  return out;
}

inline FourierCoeffs operator*(cplx s, const FourierCoeffs& a) {
  FourierCoeffs out(a.radius());
  for (int m = -a.radius(); m <= a.radius(); ++m) out[m] = s * a[m];
  return out;
}

// ---------------------------------------------------------------------------
// Initial data.  All three constructors live on [0, L) with L = 2 pi for the
// coupled problems and L = pi for the Robin problem.

struct PiecewiseConstant {
  // breakpoints[0] == 0; values[i] holds on [breakpoints[i], breakpoints[i+1]).
  std::vector<double> breakpoints;
  std::vector<cplx> values;
};

// u(x) = sum amplitude * e^{i m x}.
struct HarmonicSum {
  std::vector<std::pair<int, cplx>> terms;
};

struct Sampled {
  GridFunction grid;
};

class InitialCondition {
 public:
  using Variant = std::variant<PiecewiseConstant, HarmonicSum, Sampled>;

  static InitialCondition piecewise(std::vector<double> breakpoints, std::vector<cplx> values,
                                    double length = two_pi) {
    if (breakpoints.empty() || breakpoints.size() != values.size())
      throw Error(Errc::invalid_argument, "piecewise data needs one value per breakpoint");
    if (std::abs(breakpoints.front()) > 0.0)
      throw Error(Errc::invalid_argument, "first breakpoint must be 0");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
      if (!(breakpoints[i] > breakpoints[i - 1]))
        throw Error(Errc::invalid_argument, "breakpoints must be strictly increasing");
    if (!(breakpoints.back() < length))
      throw Error(Errc::invalid_argument, "breakpoints must lie in [0, L)");
    return InitialCondition(PiecewiseConstant{std::move(breakpoints), std::move(values)}, length);
  }

  static InitialCondition harmonic(std::vector<std::pair<int, cplx>> terms, double length = two_pi) {
    return InitialCondition(HarmonicSum{std::move(terms)}, length);
  }

  static InitialCondition sampled(GridFunction grid) {
    const double length = grid.length;
    return InitialCondition(Sampled{std::move(grid)}, length);
  }

  // 0 on [0, jump), 1 on [jump, L).
  static InitialCondition step(double jump = pi, double length = two_pi) {
    return piecewise({0.0, jump}, {0.0, 1.0}, length);
  }

  double length() const { return length_; }
  const Variant& data() const { return data_; }

 private:
  InitialCondition(Variant v, double length) : data_(std::move(v)), length_(length) {
    if (!(length_ > 0.0)) throw Error(Errc::invalid_argument, "domain length must be positive");
  }

  Variant data_;
  double length_;
};

}  // namespace revival
