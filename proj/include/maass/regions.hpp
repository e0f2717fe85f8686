#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maass/numeric/rng.hpp"
#include "maass/types.hpp"

namespace maass {

// Siegel set Σ_{a,1/2} with |x_ij| ≤ 1/2 and y_k ≥ a. For a = √3/2 it
// contains 𝔉ⁿ (n = 2, 3), so uniform draws from it followed by a membership
// test are uniform draws from 𝔉ⁿ. 𝔉ⁿ is the half-open set reduce() maps onto
// (for n = 3 the closed conditions alone describe four sign-conjugate copies).
double siegel_volume(int n, double a);  // d*z-volume; the x-box has volume 1
IwasawaPoint sample_siegel(num::Rng& rng, int n, double a);
std::optional<IwasawaPoint> sample_fundamental(num::Rng& rng, int n);  // nullopt = rejected

// n = 2, hyperbolic metric (distance R = √2·σ for the polar height σ).
double hyperbolic_distance(const IwasawaPoint& z, const IwasawaPoint& w);
// distance from z ∈ 𝔉² to ℍ − 𝔉̃², the union of the disks |z − m| < 1:
// min_m asinh(||z − m|² − 1| / (2y)); 0 inside a disk
double distance_to_tilde_complement(const IwasawaPoint& z);
// distance from w to the (closed, convex) polygon 𝔉²; 0 for w ∈ 𝔉²
double distance_to_fundamental(const IwasawaPoint& w);

// The sets entering the bound:
//   S = {∞}:  B₁ = (ℍ − 𝔉̃)·B_δ ∩ 𝔉,    B₂ = 𝔉·B_δ − 𝔉
//   S finite: B₁ = T_q^{-1}(ℍ − 𝔉̃) ∩ 𝔉, B₂ = T_q 𝔉 − 𝔉   (q = q_max, j = ⌊n/2⌋ = 1)
//
// n = 2 with S = {∞} uses the exact distances above. n = 3 with S = {∞}
// replaces "some h ∈ B_δ" by a fixed seeded probe set of `probes` Haar draws
// from B_δ, so its B₁ is an inner approximation. The finite case is exact:
// T_q^{-1}V is tested coset by coset.
struct RegionSpec {
  int n = 2;
  bool archimedean = true;  // S = {∞}
  double delta = 0.1;
  long long q = 0;          // q_max when !archimedean
  int probes = 48;
  std::uint64_t probe_seed = 1;
};

class RegionSet {
 public:
  explicit RegionSet(const RegionSpec& spec);

  const RegionSpec& spec() const { return spec_; }
  bool in_B1(const IwasawaPoint& z) const;  // z assumed in 𝔉
  bool in_B2(const IwasawaPoint& w) const;

  // Candidate for B₂: z uniform in 𝔉 (restricted to B₁ when that is cheap
  // and exact), pushed by a random h ∈ B_δ or γ ∈ G_q; nullopt = rejected.
  std::optional<IwasawaPoint> sample_B2(num::Rng& rng) const;
  const std::vector<Mat>& probes() const { return probes_; }

 private:
  RegionSpec spec_;
  std::vector<Mat> probes_;
  std::vector<Mat> cosets_;   // G_q as real matrices
  std::vector<Mat> inverse_;  // adj(γ), projectively γ^{-1}
};

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 0;
  long long hits = 0;
};

// Vol(B₁) = Vol(Σ) · (hits / samples), binomial standard error. Sharded and
// seeded; independent of the worker count.
VolumeEstimate vol_B1(const RegionSet& r, long long samples, std::uint64_t seed);

// Fraction-of-Siegel estimate of Vol(𝔉ⁿ) (a sanity check of the sampler).
VolumeEstimate vol_fundamental(int n, long long samples, std::uint64_t seed);

}  // namespace maass
