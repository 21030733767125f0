#pragma once

// Fourier analysis and synthesis on [0, 2pi) plus the geometric primitives
// used by the representation formulas: translation, reflection, even/odd
// extension and periodic convolution.

#include <cmath>
#include <functional>
#include <memory>

#include "revival/core.hpp"
#include "revival/detail/fft.hpp"

namespace revival {

inline constexpr int default_window = 256;
inline constexpr std::size_t default_grid = 4096;

namespace detail {

// (e^w - 1) / w, continuous at w = 0.
inline cplx exprel(cplx w) {
  if (std::abs(w) < 1e-5) return 1.0 + w / 2.0 + w * w / 6.0 + w * w * w / 24.0;
  return (std::exp(w) - 1.0) / w;
}

// int_a^b e^{z (x - s)} dx, anchored at the endpoint where the exponential is
// largest so that neither factor overflows.
inline cplx interval_moment(cplx z, double a, double b, double s) {
  const double w = b - a;
  if (z.real() > 0.0) return std::exp(z * (b - s)) * w * exprel(-z * w);
  return std::exp(z * (a - s)) * w * exprel(z * w);
}

inline double wrap(double x, double length) {
  double r = std::fmod(x, length);
  if (r < 0.0) r += length;
  return r;
}

inline cplx moment_of(const PiecewiseConstant& u, double length, cplx z, double shift) {
  cplx acc{};
  const std::size_t k = u.breakpoints.size();
  for (std::size_t i = 0; i < k; ++i) {
    const double a = u.breakpoints[i];
    const double b = i + 1 < k ? u.breakpoints[i + 1] : length;
    if (u.values[i] == cplx{}) continue;
    acc += u.values[i] * interval_moment(z, a, b, shift);
  }
  return acc;
}

inline cplx moment_of(const HarmonicSum& u, double length, cplx z, double shift) {
  cplx acc{};
  for (const auto& [m, amp] : u.terms) {
    const cplx w = z + cplx(0.0, static_cast<double>(m));
    // e^{-i m s} int_0^L e^{w (x - s)} dx
    acc += amp * std::polar(1.0, static_cast<double>(m) * shift) * interval_moment(w, 0.0, length, shift);
  }
  return acc;
}

// Uniform-grid rectangle rule; equals the trapezoidal rule for periodic data.
inline cplx moment_of(const Sampled& u, double, cplx z, double shift) {
  const auto& g = u.grid;
  const double h = g.step();
  const cplx ratio = std::exp(z * h);
  cplx w = std::exp(-z * shift);
  cplx acc{};
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (n % 64 == 0) w = std::exp(z * (g.x(n) - shift));
    acc += g.samples[n] * w;
    w *= ratio;
  }
  return acc * h;
}

inline cplx value_of(const PiecewiseConstant& u, double length, double x) {
  x = wrap(x, length);
  auto it = std::upper_bound(u.breakpoints.begin(), u.breakpoints.end(), x);
  const auto idx = static_cast<std::size_t>(std::distance(u.breakpoints.begin(), it)) - 1;
  return u.values[idx];
}

inline cplx value_of(const HarmonicSum& u, double, double x) {
  cplx acc{};
  for (const auto& [m, amp] : u.terms) acc += amp * std::polar(1.0, static_cast<double>(m) * x);
  return acc;
}

inline cplx value_of(const Sampled& u, double length, double x) {
  const auto& g = u.grid;
  x = wrap(x, length);
  const double pos = x / g.step();
  const auto n0 = static_cast<std::size_t>(std::floor(pos)) % g.size();
  const std::size_t n1 = (n0 + 1) % g.size();
  const double frac = pos - std::floor(pos);
  return (1.0 - frac) * g.samples[n0] + frac * g.samples[n1];
}

}  // namespace detail

// A function on [0, L) known through exact exponential moments
//   moment(z, s) = int_0^L u(x) e^{z (x - s)} dx
// and pointwise values.  Closed under modulation, reflection and even/odd
// extension, so transformed initial data keep exact Fourier coefficients.
class Profile {
 public:
  using MomentFn = std::function<cplx(cplx, double)>;
  using ValueFn = std::function<cplx(double)>;

  Profile(MomentFn moment, ValueFn value, double length, std::size_t sample_count = 0)
      : moment_(std::move(moment)), value_(std::move(value)), length_(length), samples_(sample_count) {}

  Profile(const InitialCondition& u)  // NOLINT(google-explicit-constructor)
      : length_(u.length()) {
    auto data = std::make_shared<const InitialCondition::Variant>(u.data());
    const double length = length_;
    moment_ = [data, length](cplx z, double s) {
      return std::visit([&](const auto& d) { return detail::moment_of(d, length, z, s); }, *data);
    };
    value_ = [data, length](double x) {
      return std::visit([&](const auto& d) { return detail::value_of(d, length, x); }, *data);
    };
    if (const auto* s = std::get_if<Sampled>(&u.data())) samples_ = s->grid.size();
  }

  double length() const { return length_; }
  // Number of samples behind the data, 0 for analytic data.
  std::size_t sample_count() const { return samples_; }

  cplx moment(cplx z, double shift = 0.0) const { return moment_(z, shift); }
  cplx operator()(double x) const { return value_(x); }

  // x -> e^{i kappa x} u(x)
  Profile modulated(double kappa) const {
    auto m = moment_;
    auto v = value_;
    const double length = length_;
    return Profile(
        [m, kappa](cplx z, double s) { return std::polar(1.0, kappa * s) * m(z + cplx(0.0, kappa), s); },
        [v, kappa, length](double x) { return std::polar(1.0, kappa * detail::wrap(x, length)) * v(x); },
        length_, samples_);
  }

  // x -> u(L - x)
  Profile reflected() const {
    auto m = moment_;
    auto v = value_;
    const double length = length_;
    return Profile([m, length](cplx z, double s) { return m(-z, length - s); },
                   [v, length](double x) { return v(length - detail::wrap(x, length)); }, length_,
                   samples_);
  }

  Profile scaled(cplx factor) const {
    auto m = moment_;
    auto v = value_;
    return Profile([m, factor](cplx z, double s) { return factor * m(z, s); },
                   [v, factor](double x) { return factor * v(x); }, length_, samples_);
  }

  friend Profile operator+(const Profile& a, const Profile& b) {
    if (std::abs(a.length_ - b.length_) > 1e-12) throw Error(Errc::grid_mismatch, "profile domains differ");
    auto ma = a.moment_;
    auto mb = b.moment_;
    auto va = a.value_;
    auto vb = b.value_;
    return Profile([ma, mb](cplx z, double s) { return ma(z, s) + mb(z, s); },
                   [va, vb](double x) { return va(x) + vb(x); }, a.length_,
                   std::max(a.samples_, b.samples_));
  }

 private:
  MomentFn moment_;
  ValueFn value_;
  double length_ = two_pi;
  std::size_t samples_ = 0;
};

// x -> sum_k a_k e^{kappa_k (x - x0)} on [0, L), kappa_k complex.  Covers finite
// eigenfunction combinations for every boundary family; put x0 where the
// steepest term peaks so the amplitudes stay representable.
inline Profile exponential_profile(std::vector<std::pair<cplx, cplx>> terms, double length, double origin = 0.0) {
  auto shared = std::make_shared<const std::vector<std::pair<cplx, cplx>>>(std::move(terms));
  return Profile(
      [shared, length, origin](cplx z, double s) {
        cplx acc{};
        for (const auto& [kappa, amp] : *shared) {
          // e^{kappa (x - x0)} e^{z (x - s)} = e^{(z + kappa)(x - a)} e^{kappa (a - x0) + z (a - s)}
          const cplx w = z + kappa;
          const double a = w.real() > 0.0 ? length : 0.0;
          acc += amp * std::exp(kappa * (a - origin) + z * (a - s)) * length *
                 detail::exprel((w.real() > 0.0 ? -w : w) * length);
        }
        return acc;
      },
      [shared, length, origin](double x) {
        x = detail::wrap(x, length);
        cplx acc{};
        for (const auto& [kappa, amp] : *shared) acc += amp * std::exp(kappa * (x - origin));
        return acc;
      },
      length);
}

// u^{+/-}: u on [0, L), +/- u(2L - x) on [L, 2L).
inline Profile extend_even_odd(const Profile& u, int sign) {
  if (sign != 1 && sign != -1) throw Error(Errc::invalid_argument, "extension sign must be +1 or -1");
  const double length = u.length();
  const double s = static_cast<double>(sign);
  return Profile(
      [u, length, s](cplx z, double shift) { return u.moment(z, shift) + s * u.moment(-z, 2.0 * length - shift); },
      [u, length, s](double x) {
        x = detail::wrap(x, 2.0 * length);
        return x < length ? u(x) : s * u(2.0 * length - x);
      },
      2.0 * length, u.sample_count());
}

// x -> e^{2 pi i theta m} u(x - 2 pi m) on [2 pi m, 2 pi (m + 1)), for any real x.
inline std::function<cplx(double)> quasi_periodic_extension(const Profile& u, double theta) {
  const double length = u.length();
  return [u, theta, length](double x) {
    const double cell = std::floor(x / length);
    return std::polar(1.0, two_pi * theta * cell) * u(x - cell * length);
  };
}

// c(m) = <u, e_m> for |m| <= M.
inline FourierCoeffs analyze(const Profile& u, int radius) {
  if (radius < 1) throw Error(Errc::invalid_argument, "window radius must be >= 1");
  if (std::abs(u.length() - two_pi) > 1e-9)
    throw Error(Errc::invalid_argument, "Fourier analysis needs data on [0, 2pi)");
  if (u.sample_count() != 0 && u.sample_count() < 2 * static_cast<std::size_t>(radius) + 1)
    throw Error(Errc::aliasing_risk, "sampled data with N < 2M + 1");
  FourierCoeffs c(radius);
  for (int m = -radius; m <= radius; ++m) c[m] = u.moment(cplx(0.0, -m)) / sqrt_two_pi;
  return c;
}

// samples_n = sum_{|m| <= M} c(m) e_m(x_n) on N points of [0, 2pi).
inline GridFunction synthesize(const FourierCoeffs& c, std::size_t n) {
  if (n < 2 * static_cast<std::size_t>(c.radius()) + 1)
    throw Error(Errc::aliasing_risk, "synthesis grid needs N >= 2M + 1");
  std::vector<cplx> buf(n);
  const auto nn = static_cast<long long>(n);
  for (int m = -c.radius(); m <= c.radius(); ++m) {
    const long long idx = ((m % nn) + nn) % nn;
    buf[static_cast<std::size_t>(idx)] += c[m] / sqrt_two_pi;
  }
  detail::dft_inplace(buf, +1);
  return GridFunction(two_pi, std::move(buf));
}

// First N samples of the 2N-point synthesis: the restriction to [0, pi).
inline GridFunction synthesize_half(const FourierCoeffs& c, std::size_t n) {
  GridFunction full = synthesize(c, 2 * n);
  full.samples.resize(n);
  full.length = pi;
  return full;
}

inline GridFunction sample(const Profile& u, std::size_t n) {
  std::vector<cplx> v(n);
  const double h = u.length() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = u(static_cast<double>(i) * h);
  return GridFunction(u.length(), std::move(v));
}

// Translation T_s: c(m) -> e^{-i m s} c(m).
inline FourierCoeffs translate(const FourierCoeffs& c, double s) {
  FourierCoeffs out(c.radius());
  for (int m = -c.radius(); m <= c.radius(); ++m)
    out[m] = phase_of(static_cast<long double>(m) * static_cast<long double>(s)) * c[m];
  return out;
}

// f -> f(2 pi - x): c(m) -> c(-m).
inline FourierCoeffs reflect(const FourierCoeffs& c) {
  FourierCoeffs out(c.radius());
  for (int m = -c.radius(); m <= c.radius(); ++m) out[m] = c[-m];
  return out;
}

// 2pi-periodic convolution with the 1/sqrt(2 pi) prefactor: pointwise product
// of coefficients on the common window.
inline FourierCoeffs convolve(const FourierCoeffs& f, const FourierCoeffs& g) {
  const int r = std::min(f.radius(), g.radius());
  FourierCoeffs out(r);
  for (int m = -r; m <= r; ++m) out[m] = f[m] * g[m];
  return out;
}

inline FourierCoeffs truncate(const FourierCoeffs& c, int radius) {
  radius = std::min(radius, c.radius());
  FourierCoeffs out(radius);
  for (int m = -radius; m <= radius; ++m) out[m] = c[m];
  return out;
}

// Pointwise e^{i kappa x_n}.
inline GridFunction modulate(GridFunction g, double kappa) {
  for (std::size_t n = 0; n < g.size(); ++n) g.samples[n] *= std::polar(1.0, kappa * g.x(n));
  return g;
}

// Whole-grid translation by s = k L / N: out(x_n) = g(x_{n-k}).
inline GridFunction shift_grid(const GridFunction& g, long long k) {
  GridFunction out = g;
  const auto n = static_cast<long long>(g.size());
  for (long long i = 0; i < n; ++i) out.samples[static_cast<std::size_t>(i)] = g.samples[static_cast<std::size_t>(((i - k) % n + n) % n)];
  return out;
}

}  // namespace revival
