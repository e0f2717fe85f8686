#pragma once

#include <memory>
#include <vector>

#include "maass/numeric/special.hpp"
#include "maass/numeric/wide_real.hpp"
#include "maass/types.hpp"

namespace maass {

// value = mant · e^{log_scale}
struct ScaledComplex {
  cplx mant = 0.0;
  double log_scale = 0.0;
  cplx value() const { return mant * std::exp(log_scale); }
  double log_abs() const { return std::log(std::abs(mant)) + log_scale; }
};

// Jacquet's Whittaker function of type ℓ, normalized as the literal
// unipotent integral with long element w = antidiag((−1)^{⌊n/2⌋}, 1, …, 1).
//
// n = 2: W(x + iy) = e^{2πiεx} c(ℓ) √y K_ν(2πy), ν = ℓ_1, with c(ℓ) obtained
//        by Fourier quadrature of the defining integral at y = 1.
// n = 3: W(x·a_y) = e^{2πi(ε x₁₂ − x₂₃)} C₃(ℓ) W_VT(y), where
//        W_VT = y₁^{1+ℓ₃/2} y₂^{1−ℓ₃/2} ∫ K_μ(2πy₁√(1+e^{−t})) K_μ(2πy₂√(1+e^{t})) e^{γt} dt,
//        μ = (ℓ₁−ℓ₂)/2, γ = −3ℓ₃/4, and
//        C₃ = 4π^{2α+2β−1/2} / (Γ(α)Γ(β)Γ(α+β−1/2)), α = (1+ℓ₁−ℓ₂)/2, β = (1+ℓ₂−ℓ₃)/2.
//        The t-integral is a trapezoid sum centred on the Laplace point of
//        the exponential envelope, which is also factored out (log_scale).
//
// The class itself accepts any ℓ for which the formulas make sense (real
// shifts are used for validation against the absolutely convergent integral);
// whittaker_for / whittaker_eval enforce |Re ℓ_j| < 1/2.
class WhittakerFunction {
 public:
  explicit WhittakerFunction(const SpectralParameter& ell);

  int n() const { return ell_.n(); }
  const SpectralParameter& ell() const { return ell_; }
  cplx normalization() const { return norm_; }

  ScaledComplex torus_scaled(const std::vector<double>& y) const;
  cplx torus(const std::vector<double>& y) const { return torus_scaled(y).value(); }
  cplx operator()(const IwasawaPoint& z, int eps) const;

  // E(y) with |W(a_y)| = e^{−2πE(y)}·(slowly varying); n = 3 minimizes
  // y₁√(1+1/u) + y₂√(1+u) over u > 0.
  static double decay_exponent(const std::vector<double>& y);

 private:
  SpectralParameter ell_;
  cplx norm_;
  std::unique_ptr<num::BesselKTable> k_;
  cplx mu_, gamma_;
};

// Shared per-ℓ instance (normalization and Bessel tables built once).
std::shared_ptr<const WhittakerFunction> whittaker_for(const SpectralParameter& ell);

cplx whittaker_eval(const IwasawaPoint& z, const SpectralParameter& ell, int eps);

// ∫_T^∞⋯∫_T^∞ |W(a_y; ℓ, 1)|² ∏ y_k^{−k(n−k)−1} dy_k
num::WideReal whittaker_tail_norm(double T, const SpectralParameter& ell);

}  // namespace maass
