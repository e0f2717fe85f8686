#include "maass/numeric/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

namespace maass::num {

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[i] = z;
    r.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels, int order) {
  const GaussRule& g = gauss_legendre(order);
  const double w = (b - a) / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * w;
    for (int i = 0; i < order; ++i) s += g.w[i] * f(mid + 0.5 * w * g.x[i]);
  }
  return 0.5 * w * s;
}

cplx integrate_gl_c(const std::function<cplx(double)>& f, double a, double b, int panels, int order) {
  const GaussRule& g = gauss_legendre(order);
  const double w = (b - a) / panels;
  cplx s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * w;
    for (int i = 0; i < order; ++i) s += g.w[i] * f(mid + 0.5 * w * g.x[i]);
  }
  return 0.5 * w * s;
}

double fourier_cos(const std::function<double(double)>& f, double omega) {
  // node tables are built lazily and reused across calls on this thread
  thread_local boost::math::quadrature::ooura_fourier_cos<double> integrator(1e-14, 12);
  auto [val, err] = integrator.integrate(f, omega);
  if (!std::isfinite(val)) throw NumericalFailure("fourier_cos: non-finite result");
  return val;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  double err = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, rel_tol, &err);
  if (!std::isfinite(v)) throw NumericalFailure("integrate_adaptive: non-finite result");
  return v;
}

}  // namespace maass::num
