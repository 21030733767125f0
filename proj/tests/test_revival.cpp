#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "revival/revival.hpp"
#include "revival/spectral.hpp"
#include "support.hpp"

using namespace revival;
using testing_support::max_diff;

TEST(GaussWeights, SchroedingerHalfPeriod) {
  // 1 + e^{-i pi} e^{i pi k}: [0, 2]
  const auto g = gauss_weights(Polynomial::monomial(2), reduce_rational(1, 2));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_NEAR(std::abs(g[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g[1] - 2.0), 0.0, 1e-15);
}

TEST(GaussWeights, ZeroTime) {
  const auto g = gauss_weights(Polynomial::monomial(3), reduce_rational(0, 1));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_NEAR(std::abs(g[0] - 1.0), 0.0, 1e-15);
}

TEST(GaussWeights, CubicThird) {
  // m^3 = m (mod 3), so G(k) = sum_m e^{2 pi i m (k - 1)/3} = 3 delta_{k,1}
  const auto g = gauss_weights(Polynomial::monomial(3), reduce_rational(1, 3));
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(std::abs(g[k] - (k == 1 ? 3.0 : 0.0)), 0.0, 1e-14);
}

TEST(GaussWeights, ReducesTime) {
  const auto g = gauss_weights(Polynomial::monomial(2), RationalTime{2, 4});
  EXPECT_EQ(g.time.p, 1);
  EXPECT_EQ(g.time.q, 2);
}

TEST(GaussWeights, RawIsSqrtTwoPiTimesNormalized) {
  for (int order : {2, 3}) {
    for (std::int64_t q = 1; q <= 9; ++q) {
      for (std::int64_t p = 0; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        const auto raw = gauss_weights(Polynomial::monomial(order), {p, q});
        const auto norm = normalized_gauss_weights(order, {p, q});
        EXPECT_EQ(norm.kind, GaussWeights::Kind::normalized);
        for (std::size_t k = 0; k < raw.size(); ++k) EXPECT_NEAR(std::abs(raw[k] - sqrt_two_pi * norm[k]), 0.0, 1e-13);
      }
    }
  }
}

TEST(GaussWeights, GeneralPolynomialAgainstFloatingSum) {
  // Direct floating evaluation is fine for small arguments.
  const auto P = Polynomial::parse("2*m^3 + m^2 - 5*m + 3");
  const RationalTime t{3, 7};
  const auto g = gauss_weights(P, t);
  for (int k = 0; k < 7; ++k) {
    cplx acc{};
    for (int m = 0; m < 7; ++m)
      acc += std::polar(1.0, -two_pi * static_cast<double>(P.eval(m)) * 3.0 / 7.0 + two_pi * m * k / 7.0);
    EXPECT_NEAR(std::abs(g[static_cast<std::size_t>(k)] - acc), 0.0, 1e-12);
  }
}

TEST(RootsOfUnity, OrthogonalitySum) {
  for (std::int64_t q = 1; q <= 12; ++q) {
    for (std::int64_t d = -15; d <= 15; ++d) {
      cplx acc{};
      for (std::int64_t k = 0; k < q; ++k) acc += std::polar(1.0, two_pi * static_cast<double>(d * k) / q);
      const double expected = d % q == 0 ? static_cast<double>(q) : 0.0;
      EXPECT_NEAR(std::abs(acc - expected), 0.0, 1e-12) << q << " " << d;
    }
  }
}

TEST(RevivalOperator, HalfPeriodIsTranslation) {
  const auto f = analyze(InitialCondition::step(), 64);
  EXPECT_LT(max_diff(apply_revival_physical(2, {1, 2}, f), translate(f, pi)), 1e-13);
  EXPECT_LT(max_diff(apply_revival_physical(3, {1, 3}, f), translate(f, two_pi / 3)), 1e-13);
  EXPECT_LT(max_diff(apply_revival_physical(2, {0, 1}, f), f), 1e-15);
  EXPECT_LT(max_diff(apply_revival_spectral(3, {0, 1}, f), f), 1e-15);
}

TEST(RevivalOperator, PhysicalEqualsSpectral) {
  std::mt19937_64 rng(29);
  for (int order : {2, 3, 4}) {
    for (std::int64_t q = 1; q <= 12; ++q) {
      for (std::int64_t p = 0; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        const auto f = testing_support::random_coeffs(rng, 24);
        const auto phys = apply_revival_physical(order, {p, q}, f);
        const auto spec = apply_revival_spectral(order, {p, q}, f);
        EXPECT_LT(max_diff(phys, spec), 1e-10) << order << " " << p << "/" << q;
        EXPECT_NEAR(phys.norm() / f.norm(), 1.0, 1e-12);
        EXPECT_EQ(spec[0], f[0]);
      }
    }
  }
}

TEST(RevivalOperator, QuarterPeriodPhases) {
  // j^2 mod 4 in {0, 1}: phases 1 or e^{-i pi/2}
  FourierCoeffs f(9);
  for (int j = -9; j <= 9; ++j) f[j] = 1.0;
  const auto r = apply_revival_spectral(2, {1, 4}, f);
  for (int j = -9; j <= 9; ++j) {
    const cplx expected = (j * j) % 4 == 0 ? cplx(1.0) : cplx(0.0, -1.0);
    EXPECT_NEAR(std::abs(r[j] - expected), 0.0, 1e-15) << j;
  }
}

TEST(RevivalOperator, MatchesPeriodicEvolution) {
  std::mt19937_64 rng(31);
  const auto f = testing_support::random_coeffs(rng, 40);
  for (auto [p, q] : {std::pair<std::int64_t, std::int64_t>{1, 5}, {3, 8}, {5, 12}}) {
    const RationalTime t{p, q};
    EXPECT_LT(max_diff(apply_revival_physical(2, t, f), evolve_periodic(Polynomial::monomial(2), f, t)), 1e-12);
    EXPECT_LT(max_diff(apply_revival_physical(2, t, f), evolve_periodic(Polynomial::monomial(2), f, t.value())), 1e-11);
  }
}

TEST(RevivalOperator, GridPathMatchesCoefficientPath) {
  std::mt19937_64 rng(37);
  const auto f = testing_support::random_coeffs(rng, 20);
  const std::size_t N = 240;
  for (auto [p, q] : {std::pair<std::int64_t, std::int64_t>{1, 3}, {2, 5}, {1, 6}}) {
    const auto grid = apply_revival_grid(2, {p, q}, synthesize(f, N));
    const auto coeff = synthesize(apply_revival_physical(2, {p, q}, f), N);
    for (std::size_t n = 0; n < N; ++n) EXPECT_NEAR(std::abs(grid[n] - coeff[n]), 0.0, 1e-11);
  }
  EXPECT_THROW(apply_revival_grid(2, {1, 7}, synthesize(f, N)), Error);
}
