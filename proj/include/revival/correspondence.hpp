#pragma once

// Representation formulas: solutions of the pseudo-periodic, quasi-periodic
// Airy and Robin problems written through periodic Schroedinger evolutions
// and revival operators.  Every engine returns samples on the same grid as
// the matching solver in spectral.hpp so the two can be compared directly.
//
// Non-integer modulations e^{+-i k x} are applied to grid samples after
// synthesis; before synthesis they are folded into exact moments of the
// initial data.

#include <cmath>
#include <numeric>

#include "revival/core.hpp"
#include "revival/harmonic.hpp"
#include "revival/revival.hpp"
#include "revival/spectral.hpp"

namespace revival {

namespace detail {

inline const Polynomial& schroedinger() {
  static const Polynomial p = Polynomial::monomial(2);
  return p;
}

inline void accumulate(GridFunction& acc, const FourierCoeffs& c, cplx weight, double kappa) {
  if (std::abs(weight) == 0.0) return;
  GridFunction g = modulate(synthesize(c, acc.size()), kappa);
  g *= weight;
  acc += g;
}

inline void require_profile_length(const Profile& u, double length, const char* what) {
  if (std::abs(u.length() - length) > 1e-9) throw Error(Errc::invalid_argument, what);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pseudo-periodic Schroedinger problem via four periodic evolutions of
// v0 = e^{-i k0 x} u0, w0 = e^{i k0 x} u0 and their reflections.

inline GridFunction ls_pp_via_periodic(const Profile& u0, const PseudoPeriodicModel& model, double t, int radius,
                                       std::size_t n = default_grid) {
  detail::require_profile_length(u0, two_pi, "initial data must live on [0, 2pi)");
  const double k0 = model.k0;
  const FourierCoeffs v0 = analyze(u0.modulated(-k0), radius);
  const FourierCoeffs w0 = analyze(u0.modulated(k0), radius);

  const auto& P = detail::schroedinger();
  const FourierCoeffs v = evolve_periodic(P, v0, t);
  const FourierCoeffs v_refl = evolve_periodic(P, reflect(v0), t);
  const FourierCoeffs w = evolve_periodic(P, w0, t);
  const FourierCoeffs w_refl = evolve_periodic(P, reflect(w0), t);

  const double shift = 2.0 * k0 * t;
  cplx prefactor;
  cplx weights[4];
  if (model.self_adjoint) {
    const cplx lam = model.lambda0;
    prefactor = 1.0 / (1.0 + std::norm(lam));
    weights[0] = 1.0;
    weights[1] = lam;
    weights[2] = std::conj(lam);
    weights[3] = std::norm(lam);
  } else {
    const cplx lam = model.lambda0;
    const cplx ci0 = std::conj(model.i0);
    prefactor = 1.0 / model.tau;
    weights[0] = 1.0;
    weights[1] = lam;
    weights[2] = ci0;
    weights[3] = lam * ci0;
  }
  prefactor *= phase_of(static_cast<long double>(k0) * k0 * static_cast<long double>(t));

  GridFunction out(two_pi, std::vector<cplx>(n));
  detail::accumulate(out, translate(v, shift), weights[0], k0);
  detail::accumulate(out, translate(v_refl, -shift), weights[1], -k0);
  detail::accumulate(out, translate(w_refl, shift), weights[2], k0);
  detail::accumulate(out, translate(w, -shift), weights[3], -k0);
  out *= prefactor;
  return out;
}

// Same problem at t = 2 pi p / q through R_2(p, q) applied to translated,
// modulated copies of u0 and its reflection.
inline GridFunction ls_pp_revival(const Profile& u0, const PseudoPeriodicModel& model, RationalTime t, int radius,
                                  std::size_t n = default_grid) {
  detail::require_profile_length(u0, two_pi, "initial data must live on [0, 2pi)");
  t = reduce_rational(t.p, t.q);
  const double k0 = model.k0;
  const double tr = t.value();
  const double shift = 4.0 * pi * k0 * static_cast<double>(t.p) / static_cast<double>(t.q);
  const Profile u0_refl = u0.reflected();

  auto revived = [&](const Profile& f) { return apply_revival_physical(2, t, analyze(f, radius)); };
  const FourierCoeffs a = revived(u0.modulated(-k0));
  const FourierCoeffs b = revived(u0_refl.modulated(k0));
  const FourierCoeffs c = revived(u0_refl.modulated(-k0));
  const FourierCoeffs d = revived(u0.modulated(k0));

  const cplx lam = model.lambda0;
  const cplx ci0 = std::conj(model.i0);
  const cplx e_minus = std::polar(1.0, -two_pi * k0);
  const cplx e_plus = std::polar(1.0, two_pi * k0);

  GridFunction out(two_pi, std::vector<cplx>(n));
  detail::accumulate(out, translate(a, shift), 1.0, k0);
  detail::accumulate(out, translate(b, -shift), lam * e_minus, -k0);
  detail::accumulate(out, translate(c, shift), ci0 * e_plus, k0);
  detail::accumulate(out, translate(d, -shift), lam * ci0, -k0);
  out *= phase_of(static_cast<long double>(k0) * k0 * static_cast<long double>(tr)) / model.tau;
  return out;
}

// Quasi-periodic Schroedinger problem, b0 = b1 = e^{2 pi i theta}:
//   u = e^{-i theta^2 t} e^{i theta x} T_{4 pi theta p / q} R_2(p, q) [e^{-i theta x} u0].
inline GridFunction ls_qp_revival(const Profile& u0, double theta, RationalTime t, int radius,
                                  std::size_t n = default_grid) {
  detail::require_profile_length(u0, two_pi, "initial data must live on [0, 2pi)");
  if (!(theta >= 0.0 && theta < 1.0)) throw Error(Errc::invalid_theta, "theta must lie in [0, 1)");
  t = reduce_rational(t.p, t.q);
  const FourierCoeffs r = apply_revival_physical(2, t, analyze(u0.modulated(-theta), radius));
  const double shift = 4.0 * pi * theta * static_cast<double>(t.p) / static_cast<double>(t.q);
  GridFunction out(two_pi, std::vector<cplx>(n));
  const long double th = theta;
  detail::accumulate(out, translate(r, shift), phase_of(th * th * t.value_ld()), theta);
  return out;
}

// ---------------------------------------------------------------------------
// Quasi-periodic Airy problem through a periodic Schroedinger problem run to
// time 3 theta t_r from the third-order revival of e^{-i theta x} u0.

inline GridFunction airy_qp_via_ls(const Profile& u0, double theta, RationalTime t, int radius,
                                   std::size_t n = default_grid) {
  detail::require_profile_length(u0, two_pi, "initial data must live on [0, 2pi)");
  validate_boundary(QuasiPeriodicAiry{theta});
  t = reduce_rational(t.p, t.q);
  const long double th = theta;
  const long double tr = t.value_ld();

  const FourierCoeffs v0 = apply_revival_physical(3, t, analyze(u0.modulated(-theta), radius));
  const FourierCoeffs v = evolve_periodic(detail::schroedinger(), v0, static_cast<double>(3.0L * th * tr));
  const FourierCoeffs shifted = translate(v, static_cast<double>(3.0L * th * th * tr));

  GridFunction out(two_pi, std::vector<cplx>(n));
  detail::accumulate(out, shifted, phase_of(th * th * th * tr), theta);
  return out;
}

struct RationalTheta {
  std::int64_t c = 0;
  std::int64_t d = 1;

  double value() const { return static_cast<double>(c) / static_cast<double>(d); }
};

inline RationalTheta validate_theta(std::int64_t c, std::int64_t d) {
  if (d < 1 || c < 0 || c >= d) throw Error(Errc::invalid_theta, "theta = c/d needs 0 <= c < d");
  if (std::gcd(c, d) != 1) throw Error(Errc::invalid_theta, "theta = c/d needs gcd(c, d) = 1");
  return {c, d};
}

// theta = c/d:  u = e^{i theta x} [e^{-i theta^3 t_r} T_{3 theta^2 t_r} R_2(3cp, dq) R_3(p, q)] e^{-i theta x} u0,
// with 3cp/(dq) reduced before R_2 is built.
inline GridFunction airy_qp_revival(const Profile& u0, RationalTheta theta_r, RationalTime t, int radius,
                                    std::size_t n = default_grid) {
  detail::require_profile_length(u0, two_pi, "initial data must live on [0, 2pi)");
  theta_r = validate_theta(theta_r.c, theta_r.d);
  t = reduce_rational(t.p, t.q);
  const double theta = theta_r.value();
  const RationalTime inner = reduce_rational(3 * theta_r.c * t.p, theta_r.d * t.q);

  const FourierCoeffs r3 = apply_revival_physical(3, t, analyze(u0.modulated(-theta), radius));
  const FourierCoeffs r2 = apply_revival_physical(2, inner, r3);

  const long double th = static_cast<long double>(theta_r.c) / static_cast<long double>(theta_r.d);
  const long double tr = t.value_ld();
  GridFunction out(two_pi, std::vector<cplx>(n));
  detail::accumulate(out, translate(r2, static_cast<double>(3.0L * th * th * tr)), phase_of(th * th * th * tr), theta);
  return out;
}

// Double-sum representation over k, m in [0, d^2 q) with translates of the
// quasi-periodic extension of u0.  `as_printed` samples the eigenfunctions
// at pi k/(dq) and translates by pi k/(2dq); `uniform_step` uses 2 pi k/(d^2 q)
// for both.
enum class AltReading { as_printed, uniform_step };

struct AltStep {
  double sample;
  double shift;
};

inline AltStep alt_step(AltReading reading, RationalTheta theta_r, RationalTime t, std::int64_t k) {
  const double dq = static_cast<double>(theta_r.d * t.q);
  const double kk = static_cast<double>(k);
  if (reading == AltReading::as_printed) return {pi * kk / dq, pi * kk / (2.0 * dq)};
  const double s = two_pi * kk / (static_cast<double>(theta_r.d) * dq);
  return {s, s};
}

inline GridFunction airy_qp_alt(const Profile& u0, RationalTheta theta_r, RationalTime t, int radius,
                                std::size_t n = default_grid, AltReading reading = AltReading::as_printed) {
  detail::require_profile_length(u0, two_pi, "initial data must live on [0, 2pi)");
  theta_r = validate_theta(theta_r.c, theta_r.d);
  t = reduce_rational(t.p, t.q);
  const double theta = theta_r.value();
  const std::int64_t d = theta_r.d;
  const std::int64_t cells = d * d * t.q;
  const std::int64_t cube_mod = d * d * d * t.q;

  // e^{-i (m + c/d)^3 t_r} = e^{-2 pi i p (dm + c)^3 / (d^3 q)}, exact residues.
  std::vector<cplx> time_phase(static_cast<std::size_t>(cells));
  for (std::int64_t m = 0; m < cells; ++m) {
    const std::int64_t a = d * m + theta_r.c;
    const std::int64_t cube = mul_mod(mul_mod(a, a, cube_mod), a, cube_mod);
    time_phase[static_cast<std::size_t>(m)] = root_of_unity_phase(mul_mod(cube, t.p, cube_mod), cube_mod);
  }

  const FourierCoeffs w0 = analyze(u0.modulated(-theta), radius);
  FourierCoeffs sum(radius);
  for (std::int64_t k = 0; k < cells; ++k) {
    const AltStep step = alt_step(reading, theta_r, t, k);
    cplx weight{};
    for (std::int64_t m = 0; m < cells; ++m) {
      const double km = static_cast<double>(m) + theta;
      weight += time_phase[static_cast<std::size_t>(m)] * std::polar(1.0, km * step.sample) / sqrt_two_pi;
    }
    weight *= sqrt_two_pi / static_cast<double>(cells);
    // u~0(x - s) = e^{i theta x} e^{-i theta s} (T_s w0)(x)
    weight *= std::polar(1.0, -theta * step.shift);
    const FourierCoeffs moved = translate(w0, step.shift);
    for (int j = -radius; j <= radius; ++j) sum[j] += weight * moved[j];
  }

  GridFunction out(two_pi, std::vector<cplx>(n));
  detail::accumulate(out, sum, 1.0, theta);
  return out;
}

// ---------------------------------------------------------------------------
// Robin problem on (0, pi), 0 < b < 1.

// f1(x) = sqrt(pi/2) mb / (e^{2 pi mb} - 1) e^{mb x} on (0, 2 pi).
inline double f1_value(double mb, double x) {
  return std::sqrt(pi / 2.0) * mb * std::exp(mb * (x - two_pi)) / -std::expm1(-two_pi * mb);
}

// <f1, e_m> = mb / (2 (mb - i m)).
inline FourierCoeffs f1_coefficients(double mb, int radius) {
  FourierCoeffs c(radius);
  for (int m = -radius; m <= radius; ++m) c[m] = 0.5 * mb / cplx(mb, -static_cast<double>(m));
  return c;
}

namespace detail {

inline RobinModel interior_robin(double b) {
  if (!(b > 0.0 && b < 1.0))
    throw Error(Errc::invalid_argument, "representation needs 0 < b < 1; use evolve_robin for the limits");
  return robin_model(b);
}

// <u0, phi_b> e^{i mb^2 t} phi_b(x) on the half grid.
inline GridFunction robin_rank_one(const Profile& u0, const RobinModel& model, long double t, std::size_t n) {
  const double scale = model.phi_b_scale();
  const cplx coeff =
      scale * u0.moment(model.mb, pi) * phase_of(-static_cast<long double>(model.mb) * model.mb * t);
  GridFunction out(pi, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i) out.samples[i] = coeff * model.phi_b(out.x(i));
  return out;
}

}  // namespace detail

// Five periodic problems n, h, v, z, w built from u0^{+-} and convolutions
// with f1 and its reflection, plus the rank-one term of the negative eigenvalue.
inline GridFunction robin_via_periodic(const Profile& u0, double b, double t, int radius,
                                       std::size_t n = default_grid) {
  detail::require_profile_length(u0, pi, "Robin data must live on [0, pi)");
  const RobinModel model = detail::interior_robin(b);

  const FourierCoeffs even = analyze(extend_even_odd(u0, +1), radius);
  const FourierCoeffs odd = analyze(extend_even_odd(u0, -1), radius);
  const FourierCoeffs f1 = f1_coefficients(model.mb, radius);
  const FourierCoeffs f1_refl = reflect(f1);
  const FourierCoeffs sym = f1 + f1_refl;
  const FourierCoeffs anti = f1_refl - f1;

  const auto& P = detail::schroedinger();
  const FourierCoeffs n_t = evolve_periodic(P, even, t);
  const FourierCoeffs h_t = evolve_periodic(P, convolve(sym, even), t);
  const FourierCoeffs v_t = evolve_periodic(P, convolve(anti, even), t);
  const FourierCoeffs z_t = evolve_periodic(P, convolve(-1.0 * anti, odd), t);
  const FourierCoeffs w_t = evolve_periodic(P, convolve(sym, odd), t);

  GridFunction out = synthesize_half(n_t - h_t + v_t + z_t + w_t, n);
  out += detail::robin_rank_one(u0, model, static_cast<long double>(t), n);
  return out;
}

// At t = 2 pi p / q: rank-one term + R_2(p,q)[u0^+] + R_2(p,q)[2 f1 * (u0^- - u0^+)].
inline GridFunction robin_revival(const Profile& u0, double b, RationalTime t, int radius,
                                  std::size_t n = default_grid) {
  detail::require_profile_length(u0, pi, "Robin data must live on [0, pi)");
  const RobinModel model = detail::interior_robin(b);
  t = reduce_rational(t.p, t.q);

  const FourierCoeffs even = analyze(extend_even_odd(u0, +1), radius);
  const FourierCoeffs odd = analyze(extend_even_odd(u0, -1), radius);
  const FourierCoeffs f1 = f1_coefficients(model.mb, radius);

  const FourierCoeffs revived_even = apply_revival_physical(2, t, even);
  const FourierCoeffs revived_smooth = apply_revival_physical(2, t, 2.0 * convolve(f1, odd - even));

  // 2 sqrt(2/pi) <u0, e^{mb .}> e^{i mb^2 t} f1(x), assembled without overflow.
  const double mb = model.mb;
  const cplx coeff = 2.0 * std::sqrt(2.0 / pi) * u0.moment(mb, pi) *
                     phase_of(-static_cast<long double>(mb) * mb * t.value_ld()) * std::sqrt(pi / 2.0) * mb /
                     -std::expm1(-two_pi * mb);
  GridFunction out = synthesize_half(revived_even + revived_smooth, n);
  for (std::size_t i = 0; i < n; ++i) out.samples[i] += coeff * std::exp(mb * (out.x(i) - pi));
  return out;
}

}  // namespace revival
