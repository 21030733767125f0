#pragma once

#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "revival/core.hpp"
#include "revival/harmonic.hpp"
#include "revival/spectral.hpp"

namespace testing_support {

using revival::cplx;

// Adaptive Gauss-Kronrod on [a, b] for complex integrands, split into
// `pieces` subintervals so oscillatory integrands stay resolved.
template <class F>
cplx integrate(F f, double a, double b, int pieces = 64) {
  using boost::math::quadrature::gauss_kronrod;
  cplx acc{};
  const double h = (b - a) / pieces;
  for (int k = 0; k < pieces; ++k) {
    const double lo = a + k * h;
    const double hi = lo + h;
    const double re = gauss_kronrod<double, 31>::integrate([&](double x) { return f(x).real(); }, lo, hi, 8, 1e-14);
    const double im = gauss_kronrod<double, 31>::integrate([&](double x) { return f(x).imag(); }, lo, hi, 8, 1e-14);
    acc += cplx(re, im);
  }
  return acc;
}

inline std::vector<std::pair<int, cplx>> random_terms(std::mt19937_64& rng, int max_mode, int count) {
  std::uniform_int_distribution<int> mode(-max_mode, max_mode);
  std::normal_distribution<double> amp;
  std::vector<std::pair<int, cplx>> terms;
  for (int i = 0; i < count; ++i) terms.emplace_back(mode(rng), cplx(amp(rng), amp(rng)));
  return terms;
}

inline revival::FourierCoeffs random_coeffs(std::mt19937_64& rng, int radius) {
  std::normal_distribution<double> amp;
  revival::FourierCoeffs c(radius);
  for (int m = -radius; m <= radius; ++m) c[m] = cplx(amp(rng), amp(rng));
  return c;
}

inline double max_diff(const revival::FourierCoeffs& a, const revival::FourierCoeffs& b) {
  double d = 0.0;
  for (int m = -a.radius(); m <= a.radius(); ++m) d = std::max(d, std::abs(a[m] - b[m]));
  return d;
}

// u0 = sum_j a_j phi_j as an exponential profile; the exact evolution
// multiplies a_j by e^{-i k_j^2 t}.
inline revival::Profile eigen_combination(const revival::PseudoPeriodicModel& m,
                                          const std::vector<std::pair<int, cplx>>& a, double t = 0.0) {
  std::vector<std::pair<cplx, cplx>> terms;
  for (const auto& [j, amp] : a) {
    const double k = m.k(j);
    const cplx w = amp * std::polar(1.0, -k * k * t) / m.normalization();
    terms.emplace_back(cplx(0, k), w);
    terms.emplace_back(cplx(0, -k), w * m.lambda0);
  }
  return revival::exponential_profile(terms, revival::two_pi);
}

// sum_j a_j e^{i (j + theta) x} / sqrt(2 pi) evolved by e^{-i (j + theta)^order t}.
inline revival::Profile modal_data(double theta, const std::vector<std::pair<int, cplx>>& a, int order = 2,
                                   double t = 0.0) {
  std::vector<std::pair<cplx, cplx>> terms;
  for (const auto& [j, amp] : a) {
    const double k = j + theta;
    terms.emplace_back(cplx(0, k), amp * std::polar(1.0, -std::pow(k, order) * t) / revival::sqrt_two_pi);
  }
  return revival::exponential_profile(terms, revival::two_pi);
}

}  // namespace testing_support
