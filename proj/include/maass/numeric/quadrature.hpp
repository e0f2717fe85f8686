#pragma once

#include <functional>
#include <vector>

#include "maass/types.hpp"

namespace maass::num {

struct GaussRule {
  std::vector<double> x, w;  // on [−1, 1]
};

// Gauss–Legendre nodes by Newton iteration on P_n; cached per n.
const GaussRule& gauss_legendre(int n);

// Composite Gauss–Legendre on [a, b] with `panels` equal panels.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels, int order = 20);
cplx integrate_gl_c(const std::function<cplx(double)>& f, double a, double b, int panels, int order = 20);

// ∫_0^∞ f(t) cos(ωt) dt by the Ooura–Mori double-exponential Fourier rule.
double fourier_cos(const std::function<double(double)>& f, double omega);

// Adaptive Gauss–Kronrod on a finite interval, relative tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-12);

}  // namespace maass::num
