#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "maass/bump_spectral.hpp"
#include "maass/hecke_schur.hpp"
#include "maass/numeric/wide_real.hpp"
#include "maass/quasi_maass.hpp"
#include "maass/regions.hpp"

namespace maass {

using PlaceSet = std::vector<long long>;  // 0 ≡ ∞

// Σ_{j<n} |λ_∞^(j)(ℓ) − λ_∞^(j)(ℓ′)|² + Σ_{q∈S finite} Σ_{j≤⌊n/2⌋} |λ_q^(j) − λ_q^(j)′|²
double distance_dS(const LocalDataSet& a, const LocalDataSet& b, const PlaceSet& S);

// ♯T_q^(j) for every finite q ∈ S and j ≤ ⌊n/2⌋, keyed (q, j)
std::map<std::pair<long long, int>, long long> hecke_counts(int n, const PlaceSet& S);

// 0 for S = {∞}, else e^{n(n+6)δ/4} Σ_q Σ_j (♯T_q^(j))²
double a_s_finite(int n, double delta, const PlaceSet& S);

// ∏_j (1 + |ℓ_j|)
double analytic_conductor(const SpectralParameter& ell);

enum class AInfinityMode {
  Auto,        // closed bound for j = 1, quadrature for j ≥ 2
  ClosedBound, // as Auto (no closed bound exists for j = 2)
  Numerical,   // quadrature for every j
};

struct AInfinity {
  std::vector<double> integrals;  // ∫|(C^(j) − λ^(j))H_δ| per j
  std::vector<double> errors;
  std::vector<std::string> modes;  // "closed" / "numerical"
  double total = 0.0;              // Σ integrals²
  double total_error = 0.0;        // propagated, Σ 2·I_j·err_j
};

AInfinity a_infinity(const BumpProfile& b, const SpectralParameter& ell_inf, AInfinityMode mode = AInfinityMode::Auto,
                     int panels = 24);

struct BoundOptions {
  long long volume_samples = 400000;
  long long sup_samples = 4000;
  int refine_steps = 200;
  double sup_inflation = 0.10;  // sup used in ε = measured sup × (1 + inflation)
  AInfinityMode a_mode = AInfinityMode::Auto;
  int casimir_panels = 24;
  int probes = 48;
  std::uint64_t seed = 1;
  double tail_nudge = 1e-9;  // T = e^{4(2^{n−1} ln p + δ)}·(1 + nudge)
  TruncationPolicy truncation;
};

struct SupReport {
  double measured = 0.0;
  double used = 0.0;
  double uncertainty = 0.0;
  IwasawaPoint argmax;
  long long accepted = 0;
  long long attempted = 0;
  double max_tail = 0.0;
};

struct BoundReport {
  std::string kind;  // "main" or "laplacian"
  // inputs
  LocalDataSet data;
  PlaceSet S;
  long long p = 2;
  double delta = 0.0;
  double delta_max = 0.0;
  BoundOptions options;
  // intermediates
  cplx symbol = 0.0;
  double norm_bound = 0.0;
  BumpProfile bump;
  cplx hat_H = 0.0;
  bool hat_H_above_half = false;
  VolumeEstimate vol_B1;
  SupReport sup;
  AInfinity a_inf;
  double a_s_finite = 0.0;
  std::map<std::pair<long long, int>, long long> counts;
  long long q_max = 0;
  double T = 0.0;
  num::WideReal tail;
  double conductor = 0.0;
  // main bound
  num::WideReal epsilon;
  double epsilon_rel_error = 0.0;
  // Laplacian window
  cplx lambda_n = 0.0;
  double bracket_theorem = 0.0;  // |6(1+e^{2δ})/δ⁴·C_δ·Vol(B_δ) + 2λ_n|²
  double a_closed = 0.0;         // (3(1+e^{2δ})/δ⁴·C_δ·Vol(B_δ) + |λ_n|)², the proof-level A_∞
  num::WideReal window_theorem;
  num::WideReal window_proof;    // 4·sup²·normbound·Vol·a_closed / (|♮̂|²·tail)
  double window_rel_error = 0.0;
  std::vector<std::string> flags;
};

// ε: the certified bound on d_S for data carrying a nonzero symbol.
BoundReport theorem_main_bound(const LocalDataSet& data, const PlaceSet& S, long long p, double delta,
                               const BoundOptions& opt = {});

// Certified window for |λ − λ_n(ℓ_∞)|² (S = {∞}).
BoundReport theorem_laplacian_bound(const LocalDataSet& data, long long p, double delta, const BoundOptions& opt = {});

// The two sides the main bound is assembled from, recomputed from a report:
//   upper: sup²_{B₂} · normbound · Vol(B₁) · (A_∞ + A_{S,finite})
//   lower: (1/4) · |♮̂|² · ∫_T^∞ |W_J|²   (the 1/4 from |Ĥ_δ(ℓ_∞)| > 1/2)
num::WideReal upper_bound_rhs(const BoundReport& r);
num::WideReal lower_bound_rhs(const BoundReport& r);

// |6(1+e^{2δ})/δ⁴·C_δ·Vol(B_δ) + 2λ_n|², the Laplacian-window bracket
double laplacian_bracket(const BumpProfile& b, cplx lambda_n);

// δ = max_delta(ℓ_∞)/2, the "auto" choice
double auto_delta(const SpectralParameter& ell_inf);

}  // namespace maass
