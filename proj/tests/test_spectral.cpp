#include <gtest/gtest.h>

#include <random>

#include "revival/analysis.hpp"
#include "revival/spectral.hpp"
#include "support.hpp"

using namespace revival;
using testing_support::integrate;
using testing_support::max_diff;
using testing_support::eigen_combination;

namespace {

// Valid pairs: ratio (1 + b0 b1)/(b0 + b1) real and inside (-1, 1).
std::vector<std::pair<cplx, cplx>> sample_pairs() {
  return {{2.0, 0.5},
          {std::polar(1.5, 0.7), std::polar(1.0 / 1.5, 0.7)},
          {std::polar(0.8, -2.0), std::polar(1.25, -2.0)},
          {3.0, 0.2},
          {-2.0, -0.3},
          {0.4, 1.7}};
}

}  // namespace

TEST(PseudoPeriodicModel, QuarterQuasiPeriodic) {
  const cplx beta = std::polar(1.0, pi / 2);
  const auto m = ls_pp_model(beta, beta);
  EXPECT_NEAR(m.k0, 0.25, 1e-15);
  EXPECT_NEAR(std::abs(m.gamma - cplx(0, 1)), 0.0, 1e-15);
  EXPECT_EQ(m.lambda0, cplx(0.0));
  EXPECT_EQ(m.i0, cplx(0.0));
  EXPECT_EQ(m.tau, cplx(1.0));
  EXPECT_TRUE(m.self_adjoint);
}

TEST(PseudoPeriodicModel, RealSelfAdjointPair) {
  const auto m = ls_pp_model(2.0, 0.5);
  EXPECT_NEAR(std::abs(m.k0), std::acos(0.8) / two_pi, 1e-15);
  EXPECT_NEAR(std::abs(m.gamma + 1.0 / m.gamma - 1.6), 0.0, 1e-14);
  EXPECT_TRUE(m.self_adjoint);
  // Self-adjoint: the adjoint family coincides with phi_j.
  EXPECT_NEAR(std::abs(m.i0 - m.lambda0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(m.tau - (1.0 + std::norm(m.lambda0))), 0.0, 1e-14);
}

TEST(PseudoPeriodicModel, Constants) {
  for (const auto& [b0, b1] : sample_pairs()) {
    const auto m = ls_pp_model(b0, b1);
    EXPECT_NEAR(std::abs(m.gamma - std::polar(1.0, two_pi * m.k0)), 0.0, 1e-14);
    const double ratio = ((1.0 + b0 * b1) / (b0 + b1)).real();
    EXPECT_NEAR(std::cos(two_pi * m.k0), ratio, 1e-13);
    EXPECT_LE(std::abs(m.lambda0), 1.0 + 1e-12);
    // tau = 1 + Lambda0 I0-bar
    EXPECT_NEAR(std::abs(m.tau - (1.0 + m.lambda0 * std::conj(m.i0))), 0.0, 1e-12);
  }
}

TEST(PseudoPeriodicModel, DegenerateCases) {
  EXPECT_THROW(ls_pp_model(1.0, 1.0), Error);
  try {
    ls_pp_model(1.0, 1.0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::periodic_degenerate);
  }
  // ratio -1 needs (1 + b0)(1 + b1) = 0; b0 = b1 = -1 is the quasi-periodic theta = 1/2 case
  EXPECT_NEAR(ls_pp_model(-1.0, -1.0).k0, 0.5, 1e-15);
  try {
    ls_pp_model(-1.0, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_spectrum);
  }
  // theta >= 1/2 on the quasi-periodic circle stays finite
  const auto m = ls_pp_model(std::polar(1.0, two_pi * 0.7), std::polar(1.0, two_pi * 0.7));
  EXPECT_NEAR(m.k0, 0.7, 1e-14);
}

TEST(PseudoPeriodicModel, BiOrthogonality) {
  const int idx[] = {-17, -1, 0, 1, 4, 19};
  for (const auto& [b0, b1] : sample_pairs()) {
    const auto m = ls_pp_model(b0, b1);
    for (int j : idx) {
      for (int k : idx) {
        const cplx ip = integrate([&](double x) { return m.phi(j, x) * std::conj(m.psi(k, x)); }, 0.0, two_pi, 8);
        EXPECT_NEAR(std::abs(ip - (j == k ? 1.0 : 0.0)), 0.0, 1e-10) << b0 << " " << b1 << " " << j << " " << k;
      }
    }
  }
}

TEST(PseudoPeriodicModel, BoundaryResiduals) {
  for (const auto& [b0, b1] : sample_pairs()) {
    const auto m = ls_pp_model(b0, b1);
    for (int j = -40; j <= 40; j += 7) {
      EXPECT_NEAR(std::abs(b0 * m.phi(j, 0.0) - m.phi(j, two_pi)), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(b1 * m.phi_derivative(j, 0.0) - m.phi_derivative(j, two_pi)), 0.0, 1e-10 * (1 + std::abs(j)));
      // adjoint conditions: psi(0) = conj(b1) psi(2pi), psi'(0) = conj(b0) psi'(2pi)
      EXPECT_NEAR(std::abs(m.psi(j, 0.0) - std::conj(b1) * m.psi(j, two_pi)), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(m.psi_derivative(j, 0.0) - std::conj(b0) * m.psi_derivative(j, two_pi)), 0.0,
                  1e-10 * (1 + std::abs(j)));
    }
  }
}

TEST(PseudoPeriodicSeries, ReconstructsAndEvolvesEigenCombinations) {
  const std::vector<std::pair<int, cplx>> a{{0, 1.0}, {2, cplx(0.5, 0.3)}, {-3, cplx(0, 0.7)}, {7, 0.2}};
  for (const auto& [b0, b1] : sample_pairs()) {
    const auto m = ls_pp_model(b0, b1);
    const Profile u0 = eigen_combination(m, a);
    const auto at0 = evolve_ls_pseudo(u0, m, 0.0, 32, 512);
    EXPECT_LT(compare(at0, sample(u0, 512)).sup_err, 1e-8);
    for (double t : {0.7, 2.0 * pi / 3.0}) {
      const auto series = evolve_ls_pseudo(u0, m, t, 32, 512);
      EXPECT_LT(compare(series, sample(eigen_combination(m, a, t), 512)).sup_err, 1e-8);
    }
  }
}

TEST(PeriodicEvolution, Examples) {
  std::mt19937_64 rng(41);
  const auto c = testing_support::random_coeffs(rng, 50);
  const auto P = Polynomial::monomial(2);
  EXPECT_LT(max_diff(evolve_periodic(P, c, 0.0), c), 1e-15);
  EXPECT_LT(max_diff(evolve_periodic(P, c, RationalTime{1, 2}), translate(c, pi)), 1e-13);
  EXPECT_LT(max_diff(evolve_periodic(P, c, pi), translate(c, pi)), 1e-11);
  EXPECT_NEAR(evolve_periodic(P, c, 1.234).norm(), c.norm(), 1e-12);
}

TEST(AiryQuasiPeriodic, ThetaZeroIsPeriodicCubic) {
  const Profile u0 = InitialCondition::step();
  const double t = 0.9;
  const auto airy = evolve_airy_qp(u0, 0.0, t, 128, 512);
  const auto periodic = synthesize(evolve_periodic(Polynomial::monomial(3), analyze(u0, 128), t), 512);
  EXPECT_LT(compare(airy, periodic).sup_err, 1e-12);
}

TEST(AiryQuasiPeriodic, ModelAndNorm) {
  const auto m = airy_qp_model(0.25);
  for (int k = -10; k < 10; ++k) EXPECT_LT(m.eigenvalue(k), m.eigenvalue(k + 1));
  // quasi-periodic conditions for every derivative order
  const cplx beta = std::polar(1.0, two_pi * 0.25);
  for (int k = -5; k <= 5; ++k) {
    EXPECT_NEAR(std::abs(beta * m.phi(k, 0.0) - m.phi(k, two_pi)), 0.0, 1e-13);
    const cplx ik(0.0, m.k(k));
    EXPECT_NEAR(std::abs(beta * ik * m.phi(k, 0.0) - ik * m.phi(k, two_pi)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(beta * ik * ik * m.phi(k, 0.0) - ik * ik * m.phi(k, two_pi)), 0.0, 1e-11);
  }
  const Profile u0 = InitialCondition::step();
  const auto u0g = evolve_airy_qp(u0, 0.25, 0.0, 256, 1024);
  const auto ut = evolve_airy_qp(u0, 0.25, 1.3, 256, 1024);
  EXPECT_NEAR(l2_norm(ut), l2_norm(u0g), 1e-10);
}

TEST(RobinModel, HalfParameter) {
  const auto m = robin_model(0.5);
  EXPECT_DOUBLE_EQ(m.mb, 1.0);
  EXPECT_DOUBLE_EQ(m.lambda_b, -1.0);
  EXPECT_NEAR(m.amplitude(), std::sqrt(2.0 / (std::exp(two_pi) - 1.0)), 1e-15);
  EXPECT_NEAR(m.phi_b(0.3), m.amplitude() * std::exp(0.3), 1e-14);
}

TEST(RobinModel, LambdaUnitModulusAndOverflow) {
  for (double b : {0.01, 0.35, 0.6, 0.99}) {
    const auto m = robin_model(b);
    for (int j = 1; j < 200; j += 13) EXPECT_NEAR(std::abs(m.Lambda(j)), 1.0, 1e-14);
    EXPECT_LT(m.lambda_b, 0.0);
  }
  try {
    robin_model(0.9999);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parameter_overflow);
  }
}

TEST(RobinModel, OrthonormalFamilyAndBoundaryConditions) {
  for (double b : {0.35, 0.6}) {
    const auto m = robin_model(b);
    const int idx[] = {1, 2, 5, 17};
    auto f = [&](int j, double x) { return j == 0 ? cplx(m.phi_b(x)) : m.phi(j, x); };
    for (int j : {0, 1, 2, 5, 17}) {
      for (int k : idx) {
        const cplx ip = integrate([&](double x) { return f(j, x) * std::conj(f(k, x)); }, 0.0, pi, 16);
        EXPECT_NEAR(std::abs(ip - (j == k ? 1.0 : 0.0)), 0.0, 1e-10) << b << " " << j << " " << k;
      }
      const cplx self = integrate([&](double x) { return cplx(std::norm(f(j, x))); }, 0.0, pi, 16);
      EXPECT_NEAR(self.real(), 1.0, 1e-10);
    }
    for (double x : {0.0, pi}) {
      EXPECT_NEAR(b * m.phi_b(x) - (1 - b) * m.phi_b_derivative(x), 0.0, 1e-12);
      for (int j = 1; j < 50; j += 7)
        EXPECT_NEAR(std::abs(b * m.phi(j, x) - (1 - b) * m.phi_derivative(j, x)), 0.0, 1e-12 * j);
    }
  }
}

TEST(RobinSeries, DirichletAndNeumannLimits) {
  const Profile u0 = InitialCondition::piecewise({0.0, pi / 2}, {0.0, 1.0}, pi);
  const auto d = evolve_robin(u0, 1.0, 0.8, 256, 1024);
  EXPECT_NEAR(std::abs(d[0]), 0.0, 1e-14);
  // sine series: odd extension vanishes at x = pi as well
  const auto odd = analyze(extend_even_odd(u0, -1), 256);
  const auto d_ext = synthesize_half(evolve_periodic(Polynomial::monomial(2), odd, 0.8), 1024);
  EXPECT_LT(compare(d, d_ext).sup_err, 1e-12);
  const auto n = evolve_robin(u0, 0.0, 0.8, 256, 1024);
  const auto even = analyze(extend_even_odd(u0, +1), 256);
  const auto n_ext = synthesize_half(evolve_periodic(Polynomial::monomial(2), even, 0.8), 1024);
  EXPECT_LT(compare(n, n_ext).sup_err, 1e-12);
}

TEST(RobinSeries, CompatibleDataAndNorm) {
  const auto m = robin_model(0.35);
  std::vector<std::pair<cplx, cplx>> terms{{cplx(m.mb, 0), 0.7 * m.phi_b_scale() * std::exp(-m.mb * pi)}};
  for (int j : {1, 3}) {
    terms.push_back({cplx(0, j), 1.0 / sqrt_two_pi});
    terms.push_back({cplx(0, -j), -m.Lambda(j) / sqrt_two_pi});
  }
  const Profile u0 = exponential_profile(terms, pi);
  EXPECT_LT(compare(evolve_robin(u0, 0.35, 0.0, 64, 1024), sample(u0, 1024)).sup_err, 1e-12);
  // exact evolution: 0.7 e^{i mb^2 t} phi_b + sum e^{-i j^2 t} phi_j, norm^2 = 0.49 + 2
  const double t = 1.7;
  const auto ut = evolve_robin(u0, 0.35, t, 64, 1024);
  for (std::size_t n = 0; n < 1024; n += 97) {
    const double x = ut.x(n);
    const cplx exact = 0.7 * std::polar(1.0, m.mb * m.mb * t) * m.phi_b(x) + std::polar(1.0, -t) * m.phi(1, x) +
                       std::polar(1.0, -9 * t) * m.phi(3, x);
    EXPECT_NEAR(std::abs(ut[n] - exact), 0.0, 1e-12);
  }
}
