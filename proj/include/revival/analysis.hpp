#pragma once

// Diagnostics on sampled solutions: jump detection, box-counting dimension,
// grid comparison and coefficient decay.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "revival/core.hpp"
#include "revival/detail/parallel.hpp"

namespace revival {

struct Jump {
  double location = 0.0;  // midpoint of the cells carrying the jump
  double magnitude = 0.0;  // |net change| across those cells
};

struct JumpSettings {
  std::size_t window = 32;
  double factor = 8.0;
  double floor = 1e-8;  // relative to max |u|
};

// Flags one-step increments that exceed `factor` times the median increment
// over the surrounding window; adjacent flagged cells are merged.
inline std::vector<Jump> detect_jumps(const GridFunction& u, const JumpSettings& settings = {}) {
  const std::size_t n = u.size();
  if (n < 64) throw Error(Errc::invalid_argument, "jump detection needs N >= 64");
  if (settings.window < 2) throw Error(Errc::invalid_argument, "jump window must be >= 2");

  std::vector<double> inc(n - 1);
  double peak = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    inc[i] = std::abs(u.samples[i + 1] - u.samples[i]);
    peak = std::max(peak, std::abs(u.samples[i]));
  }
  peak = std::max(peak, std::abs(u.samples[n - 1]));
  const double floor = settings.floor * peak;

  const std::size_t half = settings.window / 2;
  std::vector<char> flagged(inc.size(), 0);
  std::vector<double> buf;
  for (std::size_t i = 0; i < inc.size(); ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(inc.size(), i + half + 1);
    buf.assign(inc.begin() + static_cast<std::ptrdiff_t>(lo), inc.begin() + static_cast<std::ptrdiff_t>(hi));
    auto mid = buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 2);
    std::nth_element(buf.begin(), mid, buf.end());
    const double threshold = std::max(settings.factor * *mid, floor);
    flagged[i] = inc[i] > threshold ? 1 : 0;
  }

  std::vector<Jump> jumps;
  const double h = u.step();
  for (std::size_t i = 0; i < flagged.size();) {
    if (!flagged[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < flagged.size() && flagged[j + 1]) ++j;
    const double a = static_cast<double>(i) * h;
    const double b = static_cast<double>(j + 1) * h;
    jumps.push_back({0.5 * (a + b), std::abs(u.samples[j + 1] - u.samples[i])});
    i = j + 1;
  }
  return jumps;
}

struct DimensionEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::vector<std::pair<double, double>> points;  // (log 1/eps, log count)
};

struct ScaleRange {
  double finest = 1.0 / 1024.0;
  double coarsest = 1.0 / 16.0;
};

// Box counting for the graph of Re u, with x rescaled to [0, 1] and Re u to
// [0, 1].  Dyadic scales eps = 2^{-k} inside the range; a column covers the
// samples in [c eps, (c + 1) eps] including its right neighbour.
inline DimensionEstimate box_dimension(const GridFunction& u, ScaleRange range = {}) {
  const std::size_t n = u.size();
  if (n < 2) throw Error(Errc::invalid_argument, "box counting needs N >= 2");
  if (!(range.finest > 0.0 && range.finest < range.coarsest && range.coarsest <= 1.0))
    throw Error(Errc::invalid_argument, "scale range must satisfy 0 < finest < coarsest <= 1");

  std::vector<double> y(n);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = u.samples[i].real();
    lo = std::min(lo, y[i]);
    hi = std::max(hi, y[i]);
  }
  const double span = hi - lo;
  for (auto& v : y) v = span > 0.0 ? (v - lo) / span : 0.0;

  std::vector<int> exponents;
  for (int k = 0; k <= 62; ++k) {
    const double eps = std::ldexp(1.0, -k);
    if (eps > range.coarsest * (1.0 + 1e-12)) continue;
    if (eps < range.finest * (1.0 - 1e-12)) break;
    const double per_column = eps * static_cast<double>(n);
    if (per_column < 1.0) break;
    exponents.push_back(k);
  }
  if (exponents.size() < 4) throw Error(Errc::insufficient_scales, "fewer than 4 dyadic scales resolved by the grid");

  DimensionEstimate out;
  out.points.resize(exponents.size());
  detail::parallel_for(exponents.size(), detail::hardware_workers(), [&](std::size_t s) {
    const double eps = std::ldexp(1.0, -exponents[s]);
    const auto columns = static_cast<std::size_t>(std::llround(1.0 / eps));
    double count = 0.0;
    for (std::size_t c = 0; c < columns; ++c) {
      const std::size_t a = c * n / columns;
      const std::size_t b = std::min(n - 1, (c + 1) * n / columns);
      double cmin = y[a];
      double cmax = y[a];
      for (std::size_t i = a; i <= b; ++i) {
        cmin = std::min(cmin, y[i]);
        cmax = std::max(cmax, y[i]);
      }
      count += std::floor(cmax / eps) - std::floor(cmin / eps) + 1.0;
    }
    out.points[s] = {std::log(1.0 / eps), std::log(count)};
  });

  // Ordinary least squares slope and its standard error.
  const double k = static_cast<double>(out.points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [px, py] : out.points) {
    mx += px;
    my += py;
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [px, py] : out.points) {
    sxx += (px - mx) * (px - mx);
    sxy += (px - mx) * (py - my);
  }
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (const auto& [px, py] : out.points) {
    const double r = py - (my + slope * (px - mx));
    rss += r * r;
  }
  out.estimate = slope;
  out.stderr_ = std::sqrt(rss / (k - 2.0) / sxx);
  return out;
}

struct Comparison {
  double sup_err = 0.0;
  double l2_abs = 0.0;
  double l2_rel = 0.0;
};

// Rectangle rule on the uniform grid (the trapezoidal rule for periodic data).
inline double l2_norm(const GridFunction& f) {
  double acc = 0.0;
  for (const auto& v : f.samples) acc += std::norm(v);
  return std::sqrt(acc * f.step());
}

inline Comparison compare(const GridFunction& f, const GridFunction& g) {
  if (f.size() != g.size() || std::abs(f.length - g.length) > 1e-12)
    throw Error(Errc::grid_mismatch, "grids differ in size or length");
  Comparison c;
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = std::abs(f.samples[i] - g.samples[i]);
    c.sup_err = std::max(c.sup_err, d);
    acc += d * d;
  }
  if (!std::isfinite(acc)) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf, inf};
  }
  c.l2_abs = std::sqrt(acc * f.step());
  const double scale = std::max(l2_norm(f), l2_norm(g));
  c.l2_rel = scale > 0.0 ? c.l2_abs / scale : 0.0;
  return c;
}

// Slope of log|c(m)| against log|m| over M/4 <= |m| <= M, skipping
// coefficients below 1e-13 of the largest one.
inline double decay_exponent(const FourierCoeffs& c) {
  const int radius = c.radius();
  if (radius < 64) throw Error(Errc::invalid_argument, "decay fit needs M >= 64");
  double peak = 0.0;
  for (const auto& v : c.values()) peak = std::max(peak, std::abs(v));
  std::vector<std::pair<double, double>> pts;
  for (int m = -radius; m <= radius; ++m) {
    const int am = std::abs(m);
    if (4 * am < radius) continue;
    const double a = std::abs(c[m]);
    if (a <= 1e-13 * peak || a == 0.0) continue;
    pts.emplace_back(std::log(static_cast<double>(am)), std::log(a));
  }
  if (pts.size() < 2) throw Error(Errc::undefined_decay, "coefficient tail is numerically zero");
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw Error(Errc::undefined_decay, "coefficient tail has a single frequency");
  return sxy / sxx;
}

}  // namespace revival
