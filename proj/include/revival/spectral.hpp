#pragma once

// Direct eigenfunction-expansion solvers.  Each boundary family is solved from
// its closed-form spectrum with exact inner products against the initial
// data; these series are the reference every representation formula is
// checked against.

#include <cmath>
#include <limits>
#include <vector>

#include "revival/core.hpp"
#include "revival/detail/parallel.hpp"
#include "revival/harmonic.hpp"

namespace revival {

// ---------------------------------------------------------------------------
// Periodic problems u_t + i P(-i d/dx) u = 0.

inline FourierCoeffs evolve_periodic(const Polynomial& dispersion, const FourierCoeffs& c0, double t) {
  FourierCoeffs out(c0.radius());
  const auto tl = static_cast<long double>(t);
  for (int m = -c0.radius(); m <= c0.radius(); ++m)
    out[m] = phase_of(dispersion.eval(static_cast<long double>(m)) * tl) * c0[m];
  return out;
}

// Same evolution at t = 2 pi p / q with the phase taken from P(m) p mod q.
inline FourierCoeffs evolve_periodic(const Polynomial& dispersion, const FourierCoeffs& c0, RationalTime t) {
  FourierCoeffs out(c0.radius());
  for (int m = -c0.radius(); m <= c0.radius(); ++m)
    out[m] = root_of_unity_phase(mul_mod(dispersion.eval_mod(m, t.q), t.p, t.q), t.q) * c0[m];
  return out;
}

// ---------------------------------------------------------------------------
// Pseudo-periodic Schroedinger problem: b0 u(0) = u(2pi), b1 u_x(0) = u_x(2pi).

struct PseudoPeriodicModel {
  cplx beta0;
  cplx beta1;
  double k0 = 0.0;       // k_j = j + k0
  cplx gamma{1.0, 0.0};  // e^{2 pi i k0}
  cplx tau{1.0, 0.0};
  cplx lambda0{};
  cplx i0{};
  bool self_adjoint = false;
  bool quasi_periodic = false;
  bool principal_branch = true;

  double k(int j) const { return static_cast<double>(j) + k0; }

  cplx normalization() const { return std::sqrt(two_pi * tau); }

  cplx phi(int j, double x) const {
    const cplx e = std::polar(1.0, k(j) * x);
    return (e + lambda0 / e) / normalization();
  }
  cplx phi_derivative(int j, double x) const {
    const cplx e = std::polar(1.0, k(j) * x);
    return cplx(0.0, k(j)) * (e - lambda0 / e) / normalization();
  }
  // Adjoint family, scaled so that <phi_j, psi_j> = 1.
  cplx psi(int j, double x) const {
    const cplx e = std::polar(1.0, k(j) * x);
    return (e + i0 / e) / std::conj(normalization());
  }
  cplx psi_derivative(int j, double x) const {
    const cplx e = std::polar(1.0, k(j) * x);
    return cplx(0.0, k(j)) * (e - i0 / e) / std::conj(normalization());
  }
};

inline PseudoPeriodicModel ls_pp_model(cplx beta0, cplx beta1) {
  const ValidatedBoundary vb = validate_boundary(PseudoPeriodicLS{beta0, beta1});
  if (vb.periodic_degenerate)
    throw Error(Errc::periodic_degenerate, "(1 + b0 b1)/(b0 + b1) = 1; use the periodic solver");

  PseudoPeriodicModel model{beta0, beta1};
  model.self_adjoint = vb.self_adjoint;

  const bool quasi = std::abs(beta0 - beta1) <= boundary_tolerance && std::abs(std::abs(beta0) - 1.0) <= boundary_tolerance;
  if (quasi) {
    // b = e^{2 pi i theta}: k0 = theta, gamma = b and both mixing constants vanish.
    double theta = std::arg(beta0) / two_pi;
    if (theta < 0.0) theta += 1.0;
    model.quasi_periodic = true;
    model.k0 = theta;
    model.gamma = beta0;
    model.lambda0 = 0.0;
    model.i0 = 0.0;
    model.tau = 1.0;
    return model;
  }

  const double r = vb.ratio;
  if (std::abs(r + 1.0) <= boundary_tolerance)
    throw Error(Errc::degenerate_spectrum, "(1 + b0 b1)/(b0 + b1) = -1 gives a double spectrum");

  auto assemble = [&](double k0) {
    model.k0 = k0;
    model.gamma = std::polar(1.0, two_pi * k0);
    const cplx g = model.gamma;
    model.lambda0 = (g - beta0) / (beta0 - 1.0 / g);
    const cplx cb1 = std::conj(beta1);
    model.i0 = (cb1 * g - 1.0) / (1.0 - cb1 / g);
    model.tau = ((g * g + 1.0) * (beta0 * beta1 + 1.0) - 2.0 * g * (beta0 + beta1)) /
                ((beta0 * g - 1.0) * (beta1 * g - 1.0));
  };

  // k0 in [0, 1/2] from the principal arccos.  The mirrored branch -k0 spans
  // the same spectrum and inverts lambda0, so it is used when |lambda0| > 1.
  const double k0 = std::acos(r) / two_pi;
  assemble(k0);
  if (!std::isfinite(std::abs(model.lambda0)) || std::abs(model.lambda0) > 1.0 + 1e-12) {
    assemble(-k0);
    model.principal_branch = false;
  }
  if (!std::isfinite(std::abs(model.tau)) || !std::isfinite(std::abs(model.i0)))
    throw Error(Errc::degenerate_normalization, "eigenfunction normalization is singular");
  return model;
}

// Bi-orthogonal series sum_j <u0, psi_j> e^{-i k_j^2 t} phi_j(x), |j| <= M.
inline GridFunction evolve_ls_pseudo(const Profile& u0, const PseudoPeriodicModel& model, double t, int radius,
                                     std::size_t n = default_grid) {
  if (std::abs(model.tau) < 1e-12) throw Error(Errc::degenerate_normalization, "tau = 0");
  if (std::abs(u0.length() - two_pi) > 1e-9) throw Error(Errc::invalid_argument, "initial data must live on [0, 2pi)");

  const cplx norm = model.normalization();
  const cplx conj_i0 = std::conj(model.i0);
  std::vector<cplx> weight(2 * static_cast<std::size_t>(radius) + 1);
  for (int j = -radius; j <= radius; ++j) {
    const double kj = model.k(j);
    const cplx inner = (u0.moment(cplx(0.0, -kj)) + conj_i0 * u0.moment(cplx(0.0, kj))) / norm;
    const long double kl = static_cast<long double>(j) + static_cast<long double>(model.k0);
    weight[static_cast<std::size_t>(j + radius)] = inner * phase_of(kl * kl * static_cast<long double>(t)) / norm;
  }

  GridFunction out(two_pi, std::vector<cplx>(n));
  const double h = two_pi / static_cast<double>(n);
  detail::parallel_for(n, detail::hardware_workers(), [&](std::size_t i) {
    const double x = static_cast<double>(i) * h;
    const cplx step = std::polar(1.0, x);
    cplx e{};
    cplx acc{};
    for (int j = -radius; j <= radius; ++j) {
      if ((j + radius) % 128 == 0) e = std::polar(1.0, model.k(j) * x);
      acc += weight[static_cast<std::size_t>(j + radius)] * (e + model.lambda0 * std::conj(e));
      e *= step;
    }
    out.samples[i] = acc;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Quasi-periodic Airy problem: eigenpairs (m + theta)^3, e^{i theta x} e_m(x).

struct AiryQPModel {
  double theta = 0.0;

  double k(int m) const { return static_cast<double>(m) + theta; }
  long double eigenvalue(int m) const {
    const long double km = static_cast<long double>(m) + static_cast<long double>(theta);
    return km * km * km;
  }
  cplx phi(int m, double x) const { return std::polar(1.0, k(m) * x) / sqrt_two_pi; }
};

inline AiryQPModel airy_qp_model(double theta) {
  validate_boundary(QuasiPeriodicAiry{theta});
  return AiryQPModel{theta};
}

inline GridFunction evolve_airy_qp(const Profile& u0, double theta, double t, int radius,
                                   std::size_t n = default_grid) {
  const AiryQPModel model = airy_qp_model(theta);
  if (std::abs(u0.length() - two_pi) > 1e-9) throw Error(Errc::invalid_argument, "initial data must live on [0, 2pi)");

  std::vector<cplx> weight(2 * static_cast<std::size_t>(radius) + 1);
  for (int m = -radius; m <= radius; ++m) {
    const cplx inner = u0.moment(cplx(0.0, -model.k(m))) / sqrt_two_pi;
    weight[static_cast<std::size_t>(m + radius)] =
        inner * phase_of(model.eigenvalue(m) * static_cast<long double>(t)) / sqrt_two_pi;
  }

  GridFunction out(two_pi, std::vector<cplx>(n));
  const double h = two_pi / static_cast<double>(n);
  detail::parallel_for(n, detail::hardware_workers(), [&](std::size_t i) {
    const double x = static_cast<double>(i) * h;
    const cplx step = std::polar(1.0, x);
    cplx e{};
    cplx acc{};
    for (int m = -radius; m <= radius; ++m) {
      if ((m + radius) % 128 == 0) e = std::polar(1.0, model.k(m) * x);
      acc += weight[static_cast<std::size_t>(m + radius)] * e;
      e *= step;
    }
    out.samples[i] = acc;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Robin problem on (0, pi): b u = (1 - b) u_x at x = 0 and x = pi.

inline constexpr double robin_max_mb = 700.0;

struct RobinModel {
  double b = 0.5;
  double mb = 1.0;        // b / (1 - b)
  double lambda_b = -1.0;  // -mb^2

  enum class Kind { neumann, dirichlet, robin };
  Kind kind = Kind::robin;

  // A_b = sqrt(2 mb / (e^{2 pi mb} - 1)); may underflow for large mb.
  double amplitude() const { return std::sqrt(2.0 * mb) * std::exp(-pi * mb) / std::sqrt(-std::expm1(-two_pi * mb)); }

  // phi_b(x) = A_b e^{mb x}, written as sqrt(2mb / (1 - e^{-2 pi mb})) e^{mb (x - pi)}.
  double phi_b_scale() const { return std::sqrt(2.0 * mb / -std::expm1(-two_pi * mb)); }
  double phi_b(double x) const { return phi_b_scale() * std::exp(mb * (x - pi)); }
  double phi_b_derivative(double x) const { return mb * phi_b(x); }

  cplx Lambda(int j) const {
    const cplx num(b, -(1.0 - b) * j);
    const cplx den(b, (1.0 - b) * j);
    return num / den;
  }

  cplx phi(int j, double x) const {
    return (std::polar(1.0, j * x) - Lambda(j) * std::polar(1.0, -j * x)) / sqrt_two_pi;
  }
  cplx phi_derivative(int j, double x) const {
    return cplx(0.0, j) * (std::polar(1.0, j * x) + Lambda(j) * std::polar(1.0, -j * x)) / sqrt_two_pi;
  }
};

inline RobinModel robin_model(double b) {
  validate_boundary(Robin{b});
  RobinModel model;
  model.b = b;
  if (b == 0.0) {
    model.kind = RobinModel::Kind::neumann;
    model.mb = 0.0;
    model.lambda_b = 0.0;
    return model;
  }
  if (b == 1.0) {
    model.kind = RobinModel::Kind::dirichlet;
    model.mb = std::numeric_limits<double>::infinity();
    model.lambda_b = -std::numeric_limits<double>::infinity();
    return model;
  }
  model.mb = b / (1.0 - b);
  if (model.mb > robin_max_mb) throw Error(Errc::parameter_overflow, "b / (1 - b) exceeds 700");
  model.lambda_b = -model.mb * model.mb;
  return model;
}

inline GridFunction evolve_robin(const Profile& u0, double b, double t, int radius, std::size_t n = default_grid) {
  const RobinModel model = robin_model(b);
  if (std::abs(u0.length() - pi) > 1e-9) throw Error(Errc::invalid_argument, "Robin data must live on [0, pi)");

  const auto tl = static_cast<long double>(t);
  const double h = pi / static_cast<double>(n);
  GridFunction out(pi, std::vector<cplx>(n));

  // coeff_plus / coeff_minus multiply e^{ijx} and e^{-ijx} respectively.
  std::vector<cplx> plus(static_cast<std::size_t>(radius) + 1), minus(static_cast<std::size_t>(radius) + 1);
  cplx constant{};
  for (int j = 1; j <= radius; ++j) {
    const cplx mp = u0.moment(cplx(0.0, -j));  // int u e^{-ijx}
    const cplx mm = u0.moment(cplx(0.0, j));   // int u e^{ijx}
    const cplx phase = phase_of(static_cast<long double>(j) * j * tl);
    const auto idx = static_cast<std::size_t>(j);
    switch (model.kind) {
      case RobinModel::Kind::neumann: {
        // sqrt(2/pi) cos(jx) basis
        const cplx inner = std::sqrt(2.0 / pi) * 0.5 * (mp + mm);
        plus[idx] = minus[idx] = inner * phase * std::sqrt(2.0 / pi) * 0.5;
        break;
      }
      case RobinModel::Kind::dirichlet: {
        const cplx inner = std::sqrt(2.0 / pi) * (mm - mp) / cplx(0.0, 2.0);
        const cplx c = inner * phase * std::sqrt(2.0 / pi) / cplx(0.0, 2.0);
        plus[idx] = c;
        minus[idx] = -c;
        break;
      }
      case RobinModel::Kind::robin: {
        const cplx lam = model.Lambda(j);
        const cplx inner = (mp - std::conj(lam) * mm) / sqrt_two_pi;
        plus[idx] = inner * phase / sqrt_two_pi;
        minus[idx] = -lam * inner * phase / sqrt_two_pi;
        break;
      }
    }
  }
  if (model.kind == RobinModel::Kind::neumann) constant = u0.moment(0.0) / pi;

  cplx rank_one{};
  if (model.kind == RobinModel::Kind::robin) {
    // <u0, phi_b> e^{i mb^2 t}
    const double scale = model.phi_b_scale();
    rank_one = scale * u0.moment(model.mb, pi) * phase_of(-static_cast<long double>(model.mb) * model.mb * tl);
  }

  detail::parallel_for(n, detail::hardware_workers(), [&](std::size_t i) {
    const double x = static_cast<double>(i) * h;
    const cplx step = std::polar(1.0, x);
    cplx e{};
    cplx acc = constant;
    for (int j = 1; j <= radius; ++j) {
      if ((j - 1) % 128 == 0) e = std::polar(1.0, j * x);
      const auto idx = static_cast<std::size_t>(j);
      acc += plus[idx] * e + minus[idx] * std::conj(e);
      e *= step;
    }
    if (model.kind == RobinModel::Kind::robin) acc += rank_one * model.phi_b(x);
    out.samples[i] = acc;
  });
  return out;
}

}  // namespace revival
