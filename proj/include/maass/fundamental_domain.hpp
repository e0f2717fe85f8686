#pragma once

#include "maass/numeric/rng.hpp"
#include "maass/types.hpp"

namespace maass {

struct ReductionResult {
  IMat gamma;  // γ ∈ SL(n,ℤ) with γ·z = reduced
  IwasawaPoint reduced;
  int iterations = 0;
};

struct ReductionOptions {
  int max_iter = 10000;
  double tol = 1e-12;  // boundary tie tolerance
};

// Reduction into the fixed fundamental domain 𝔉ⁿ, n ∈ {2, 3}.
//
// n = 2: Gauss reduction; ties x = −1/2 → +1/2, arc points with x < 0 → S.
// n = 3: alternate (a) SL(2,ℤ)-reduction of z′ = x₁₂ + i·y₂ through (γ′, 1),
// (b) integer translation of x₁₃, x₂₃ into [−1/2, 1/2), (c) an exact
// Fincke–Pohst search for a lattice vector v with |vZ| < |e₃Z| — the
// bottom-row condition — completed to an SL(3,ℤ) matrix with bottom row v.
// The final point is canonicalized under the sign group
// {diag(±1, ±1, ±1)} ∩ SL(3,ℤ), which preserves conditions (i)–(iii):
// we keep the representative with lexicographically largest (x₁₂, x₁₃, x₂₃).
ReductionResult reduce(const IwasawaPoint& z, const ReductionOptions& opt = {});

// closure = true: closed conditions only. closure = false: also the boundary
// tie-breaks and (n = 3) the sign canonicalization, i.e. the half-open set
// that reduce() maps onto.
bool membership(const IwasawaPoint& z, bool closure, double tol = 1e-12);

// z ∈ 𝔉̃ⁿ iff the reducing γ is parabolic: last row ±(0, …, 0, 1). The sign
// −1 covers −I for even n and, for n = 3, the sign-conjugate copies of 𝔉³
// (diag(1,−1,−1) and friends), on which F is invariant.
bool in_tilde_F(const IwasawaPoint& z, const ReductionOptions& opt = {});
bool is_parabolic(const IMat& gamma);

// Shortest-vector test behind condition (ii): returns true iff no integer v
// outside ℤ·e_n has |vZ| < |e_nZ|·(1 − tol).
bool bottom_row_minimal(const Mat& Z, double tol, Eigen::Matrix<long long, 1, Eigen::Dynamic>* witness = nullptr);

// Integer matrix with bottom row v and determinant 1 (v primitive).
IMat complete_to_sl(const Eigen::Matrix<long long, 1, Eigen::Dynamic>& v);

// Random word of length ≤ len in elementary generators of SL(n,ℤ).
IMat random_sl_z(num::Rng& rng, int n, int len);

Mat to_real(const IMat& m);
long long int_det(const IMat& m);

}  // namespace maass
