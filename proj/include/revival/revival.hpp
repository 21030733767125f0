#pragma once

// Gauss-type weights and the periodic revival operators R_l(p, q).
//
// R_l(p, q) f = (sqrt(2 pi) / q) sum_k G^(l)(k) T_{2 pi k / q} f acts on the
// Fourier side as multiplication by e^{-i j^l 2 pi p / q}.  Both routes are
// provided; agreement between them is the modular identity
//   m = j (mod q)  =>  m^l = j^l (mod q).

#include <vector>

#include "revival/core.hpp"
#include "revival/harmonic.hpp"

namespace revival {

struct GaussWeights {
  enum class Kind { raw, normalized };

  RationalTime time;
  Kind kind = Kind::raw;
  std::vector<cplx> weights;  // indexed by k = 0 .. q-1

  std::size_t size() const { return weights.size(); }
  cplx operator[](std::size_t k) const { return weights[k]; }
};

// G(k) = sum_{m=0}^{q-1} e^{-2 pi i P(m) p / q} e^{2 pi i m k / q}.
// Every phase is reduced to an integer residue mod q before exponentiation.
inline GaussWeights gauss_weights(const Polynomial& dispersion, RationalTime t) {
  t = reduce_rational(t.p, t.q);
  const std::int64_t q = t.q;
  GaussWeights g{t, GaussWeights::Kind::raw, std::vector<cplx>(static_cast<std::size_t>(q))};
  for (std::int64_t k = 0; k < q; ++k) {
    cplx acc{};
    for (std::int64_t m = 0; m < q; ++m) {
      const std::int64_t residue = mul_mod(dispersion.eval_mod(m, q), t.p, q) - mul_mod(m, k, q);
      acc += root_of_unity_phase(residue, q);
    }
    g.weights[static_cast<std::size_t>(k)] = acc;
  }
  return g;
}

// G^(l)(k) = sum_m e^{-i m^l 2 pi p / q} e_m(2 pi k / q) = G_raw(k) / sqrt(2 pi).
inline GaussWeights normalized_gauss_weights(int order, RationalTime t) {
  GaussWeights g = gauss_weights(Polynomial::monomial(order), t);
  g.kind = GaussWeights::Kind::normalized;
  for (auto& w : g.weights) w /= sqrt_two_pi;
  return g;
}

// Assembled as a weighted sum of q translated copies of f.
inline FourierCoeffs apply_revival_physical(const Polynomial& dispersion, RationalTime t, const FourierCoeffs& f) {
  const GaussWeights g = gauss_weights(dispersion, t);
  const std::int64_t q = g.time.q;
  FourierCoeffs out(f.radius());
  const double inv_q = 1.0 / static_cast<double>(q);
  for (std::int64_t k = 0; k < q; ++k) {
    const cplx w = g.weights[static_cast<std::size_t>(k)] * inv_q;
    if (std::abs(w) < 1e-300) continue;
    // T_{2 pi k / q}: c(m) -> e^{-2 pi i m k / q} c(m), residues exact.
    for (int m = -f.radius(); m <= f.radius(); ++m) out[m] += w * root_of_unity_phase(mul_mod(m, k, q), q) * f[m];
  }
  return out;
}

inline FourierCoeffs apply_revival_physical(int order, RationalTime t, const FourierCoeffs& f) {
  if (order < 1) throw Error(Errc::invalid_argument, "revival order must be positive");
  return apply_revival_physical(Polynomial::monomial(order), t, f);
}

// c(j) -> e^{-i P(j) 2 pi p / q} c(j).
inline FourierCoeffs apply_revival_spectral(const Polynomial& dispersion, RationalTime t, const FourierCoeffs& f) {
  t = reduce_rational(t.p, t.q);
  FourierCoeffs out(f.radius());
  for (int j = -f.radius(); j <= f.radius(); ++j)
    out[j] = root_of_unity_phase(mul_mod(dispersion.eval_mod(j, t.q), t.p, t.q), t.q) * f[j];
  return out;
}

inline FourierCoeffs apply_revival_spectral(int order, RationalTime t, const FourierCoeffs& f) {
  if (order < 1) throw Error(Errc::invalid_argument, "revival order must be positive");
  return apply_revival_spectral(Polynomial::monomial(order), t, f);
}

// Grid-space revival by whole-grid shifts; needs q | N.
inline GridFunction apply_revival_grid(int order, RationalTime t, const GridFunction& f) {
  const GaussWeights g = gauss_weights(Polynomial::monomial(order), t);
  const auto q = static_cast<std::size_t>(g.time.q);
  if (f.size() % q != 0) throw Error(Errc::invalid_argument, "grid size must be a multiple of q");
  GridFunction out(f.length, std::vector<cplx>(f.size()));
  const std::size_t cells = f.size() / q;
  for (std::size_t k = 0; k < q; ++k) {
    const cplx w = g.weights[k] / static_cast<double>(q);
    if (std::abs(w) < 1e-300) continue;
    GridFunction shifted = shift_grid(f, static_cast<long long>(k * cells));
    shifted *= w;
    out += shifted;
  }
  return out;
}

}  // namespace revival
