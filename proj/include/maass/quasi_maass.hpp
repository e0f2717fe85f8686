#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "maass/hecke_schur.hpp"
#include "maass/numeric/rng.hpp"
#include "maass/whittaker.hpp"

namespace maass {

struct TruncationPolicy {
  int m_max = 0;           // per-coordinate index cap; 0 → 30 (n=2) / 12 (n=3)
  int coset_height = 20;   // |c|, |d| cap for N(1,ℤ)\SL(2,ℤ) bottom rows
  double tol = 1e-10;      // absolute tail target
  double y_floor = 0.05;
  bool throw_on_tail = true;

  int resolved_m_max(int n) const { return m_max > 0 ? m_max : (n == 2 ? 30 : 12); }
};

struct QuasiMaassValue {
  cplx value = 0.0;
  double tail = 0.0;  // estimated truncation error
  int terms = 0;      // nonzero terms summed
};

// F_{Π_M}: Σ_γ Σ_m A(m)/∏|m_k|^{k(n−k)/2} · W(diag(m₁⋯|m_{n−1}|, …, m₁, 1)(γ,1)z; sgn m_{n−1}),
// with A(…, m_{n−1}) := A(…, |m_{n−1}|).
//
// n = 2: the tail beyond m_max is bounded by |c|·Σ_{m>M} m^{1/2+θ} e^{−2πmy}
// (θ = largest |Re ℓ_{p,j}|), using |A(m)| ≤ m^{1+θ} and |K_ν| ≤ K_{1/2}.
// n = 3: terms are pruned once the Whittaker envelope e^{−2πE(Y)} drops far
// below tol; the reported tail is the magnitude of the outermost shell
// (m_k = m_max or |c|, |d| = coset_height), i.e. an empirical estimate.
class QuasiMaassForm {
 public:
  explicit QuasiMaassForm(LocalDataSet data, TruncationPolicy trunc = {});

  QuasiMaassValue eval(const IwasawaPoint& z) const;
  QuasiMaassValue eval_lifted(const IwasawaPoint& z) const;  // F(reduce(z))
  cplx operator()(const IwasawaPoint& z) const { return eval(z).value; }
  cplx lifted(const IwasawaPoint& z) const { return eval_lifted(z).value; }

  const LocalDataSet& data() const { return data_; }
  const TruncationPolicy& policy() const { return trunc_; }
  const CoefficientTable& coefficients() const { return *table_; }

 private:
  QuasiMaassValue eval2(const IwasawaPoint& z) const;
  QuasiMaassValue eval3(const IwasawaPoint& z) const;

  LocalDataSet data_;
  TruncationPolicy trunc_;
  std::unique_ptr<CoefficientTable> table_;
  std::shared_ptr<const WhittakerFunction> W_;
  std::vector<std::pair<long long, cplx>> a1_;                     // n=2: (m, A(m)) with A ≠ 0
  std::vector<std::tuple<long long, long long, cplx>> a2_;         // n=3: (m1, m2, A) with A ≠ 0
  double theta_ = 0.0;
  double log_w_scale_ = 0.0;  // n=3: bound on log |mantissa| of the scaled W
};

QuasiMaassValue eval_F(const LocalDataSet& data, const IwasawaPoint& z, const TruncationPolicy& trunc = {});
QuasiMaassValue eval_F_tilde(const LocalDataSet& data, const IwasawaPoint& z, const TruncationPolicy& trunc = {});

// Draws a candidate point; nullopt = rejected.
using RegionSampler = std::function<std::optional<IwasawaPoint>(num::Rng&)>;

struct SupEstimate {
  double sup = 0.0;          // max |F − F̃| found (after refinement)
  IwasawaPoint argmax;
  double uncertainty = 0.0;  // |sup(first half) − sup(second half)| of the raw stream
  long long accepted = 0;
  long long attempted = 0;
  double max_tail = 0.0;     // worst truncation estimate among evaluated points
};

// Monte Carlo supremum of |F − F̃| over a region given by a sampler. Draws
// `samples` accepted points in fixed shards (seeded from `seed`), then runs a
// short seeded local refinement around the best points, accepting only
// moves the sampler's predicate keeps in the region.
SupEstimate sup_discrepancy(const QuasiMaassForm& F, const RegionSampler& sampler,
                            const std::function<bool(const IwasawaPoint&)>& in_region, std::uint64_t seed,
                            long long samples, int refine_steps = 200);

}  // namespace maass
