#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "maass/numeric/rng.hpp"
#include "maass/types.hpp"

namespace maass {

// Haar measure dg = d*z·dξ (d*z as in Iwasawa coordinates, SO(n) of mass 1).
// In polar coordinates g = ξ₁ e^{a} ξ₂ this is
//   dg = c_n ∏_{i<j} sinh(a_i − a_j) da dξ₁ dξ₂,   a₁ > … > a_n, Σa = 0,
// with da Lebesgue measure on the trace-zero plane and c_2 = 2√2π,
// c_3 = 16√3π² (fixed by matching small balls in both coordinate systems).
double polar_constant(int n);
double polar_jacobian(const std::vector<double>& a);  // c_n ∏ sinh(a_i − a_j)

// Chamber point at polar height r: n = 2 uses (r/√2, −r/√2); n = 3 uses
// r(cos θ·e₁ + sin θ·e₂) with e₁ = (1,−1,0)/√2, e₂ = (1,1,−2)/√6, θ ∈ (π/6, π/2).
std::vector<double> chamber_point(int n, double r, double theta = 0.0);

// ∫_{B_δ} f(a(g)) dg for f depending only on the polar exponents. Composite
// Gauss–Legendre in r (panels × order) and, for n = 3, Gauss–Legendre in θ.
cplx polar_integrate(int n, double delta, const std::function<cplx(const std::vector<double>&)>& f, int panels = 8,
                     int order = 20, int theta_order = 20);

// e^{−1/(1−(σ/δ)²)} for σ < δ, else 0
double bump_raw(double sigma, double delta);

struct BumpProfile {
  int n = 2;
  double delta = 0.0;
  double c_delta = 0.0;   // (∫_{B_δ} bump_raw dg)^{−1}
  double vol_ball = 0.0;  // Vol(B_δ)
};

BumpProfile make_bump(int n, double delta);
double c_delta(int n, double delta);
double vol_ball(int n, double delta);

double h_delta(const Mat& g, const BumpProfile& b);           // by polar height
double h_delta_sigma(double sigma, const BumpProfile& b);

// β_ℓ(g) = ∫_{SO(n)} φ_ℓ(ξg) dξ. Reduced to the polar exponents a of g and a
// closed form of φ_ℓ(ξ e^{a}) through bottom-row minors; the rotation average
// is a periodic trapezoid (n = 2) or S²×S¹ product rule (n = 3), refined
// until successive levels agree to `tol`.
cplx spherical_function(const SpectralParameter& ell, const Mat& g, double tol = 1e-12);
cplx spherical_function_polar(const SpectralParameter& ell, const std::vector<double>& a, double tol = 1e-12);

// Same average computed with φ_ℓ(ξg) itself over an Euler-angle product rule
// with `nodes` points per angle (cross-check path).
cplx spherical_function_direct(const SpectralParameter& ell, const Mat& g, int nodes = 24);

// Ĥ_δ(ℓ) = ∫ H_δ(g) φ_ℓ(g) dg = ∫ H_δ β_ℓ dg (H is bi-invariant).
cplx spherical_transform_H(const SpectralParameter& ell, const BumpProfile& b);

// Σ_j |ℓ_j + (n−2j+1)/2|
double ell_shift_norm(const SpectralParameter& ell);
// 1 − 4(e^{n(n+6)δ/4} − 1)/(n(n+6)) · Σ_j |ℓ_j + (n−2j+1)/2|
double lb_delta(const SpectralParameter& ell, double delta);
// e^{n(n+6)δ/4}
double ub_delta(int n, double delta);
// ln(n(n+6)/8 · (Σ_j |ℓ_j + (n−2j+1)/2|)^{−1} + 1); `cap` when the sum vanishes
double max_delta(const SpectralParameter& ell, double cap = 10.0);
// the δ at which LB_δ(ℓ) = 1/2 exactly: 4/(n(n+6)) · ln(n(n+6)/(8Σ) + 1)
double lb_half_delta(const SpectralParameter& ell, double cap = 10.0);

// 3(1+e^{2δ})/δ⁴ · C_δ · Vol(B_δ) + |λ|
double laplacian_H_bound(const BumpProfile& b, cplx lambda);

struct QuadratureEstimate {
  double value = 0.0;
  double error = 0.0;  // |fine − coarse|
};

// ∫ |(C_n^(j) − λ) H_δ(g)| dg. C^(j) H is evaluated by finite differences at
// the chamber nodes (bi-invariance makes it a function of a alone).
QuadratureEstimate casimir_H_integral(int j, const BumpProfile& b, cplx lambda, int panels = 24);

// n = 2 only: the same integral for j = 1 from the closed radial Laplacian
// Δ = −(∂_R² + coth R ∂_R), R = √2σ (cross-check of the finite differences).
QuadratureEstimate laplacian_H_integral_radial(const BumpProfile& b, cplx lambda, int panels = 64);

// ---- Monte Carlo -----------------------------------------------------------------

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 0;
  long long hits = 0;
  double imag = 0.0;  // complex integrands only
  double imag_std_error = 0.0;
};

// Haar-distributed element of B_δ: a by rejection against the polar
// Jacobian, then ξ₁ e^{a} ξ₂ with Haar-random rotations.
Mat sample_ball(num::Rng& rng, int n, double delta);

// ∫_{B_δ} f(σ(g)) dg by uniform sampling of the chamber sector (polar
// coordinates with the explicit Jacobian).
MCEstimate polar_mc_integral(int n, double delta, const std::function<double(double)>& f, long long samples,
                             std::uint64_t seed);

// ∫_{B_δ} f(g) dg through the exponential chart X ↦ exp(X)·SO(n), X
// symmetric trace-zero with ‖X‖_F < δ (so σ(exp X) = ‖X‖_F), weighting each
// sample with the finite-difference Jacobian of X ↦ (x_ij, log y_k) and the
// d*z density. Independent of the polar formula; f must be right-SO(n)-invariant.
MCEstimate exp_chart_mc_integral(int n, double delta, const std::function<cplx(const Mat&)>& f, long long samples,
                                 std::uint64_t seed);

}  // namespace maass
