#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "maass/types.hpp"

namespace maass::num {

// Complex log-gamma, principal branch continuous off the negative real axis.
cplx lgamma(cplx z);
cplx gamma(cplx z);

// e^x K_ν(x) for complex ν and real x > 0, via the trapezoid rule on
// K_ν(x) = ½∫ exp(−x cosh τ + ντ) dτ along a contour shifted into the
// strip so that the e^{−π|Im ν|/2} cancellation is mostly avoided.
cplx bessel_k_scaled(cplx nu, double x);
inline cplx bessel_k(cplx nu, double x) { return bessel_k_scaled(nu, x) * std::exp(-x); }

// Piecewise Chebyshev table of e^x·√x·K_ν(x) on log x for a fixed order.
// Panels are filled lazily (call_once per panel, so concurrent readers are
// safe); outside [x_lo, x_hi] it falls back to direct evaluation.
class BesselKTable {
 public:
  BesselKTable(cplx nu, double x_lo = 1e-3, double x_hi = 4e7);
  cplx scaled(double x) const;  // e^x K_ν(x)
  cplx operator()(double x) const { return scaled(x) * std::exp(-x); }
  cplx order() const { return nu_; }

 private:
  static constexpr int kDeg = 22;
  static constexpr double kWidth = 0.25;
  void build_panel(int p) const;

  cplx nu_;
  double u_lo_, u_hi_;
  int panels_;
  mutable std::vector<cplx> coef_;  // panels × (kDeg+1)
  std::unique_ptr<std::once_flag[]> ready_;
};

}  // namespace maass::num
