#include "maass/whittaker.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "maass/numeric/quadrature.hpp"
#include "maass/numeric/rng.hpp"

namespace maass {

namespace {

// g(t) = √(1 + e^{−t}) and its first two derivatives
struct G {
  double v, d1, d2;
};
G gfun(double t) {
  const double e = std::exp(-t);
  const double g = std::sqrt(1.0 + e);
  return {g, -e / (2.0 * g), e / (2.0 * g) - e * e / (4.0 * g * g * g)};
}

cplx n2_normalization(const SpectralParameter& ell) {
  // W(i) = ∫ (1+v²)^{−s} e^{−2πiv} dv, s = ℓ₁ + 1/2
  const cplx s = ell[0] + 0.5;
  const double w = 2.0 * kPi;
  const double re = num::fourier_cos([&](double v) { return std::real(std::exp(-s * std::log1p(v * v))); }, w);
  const double im = num::fourier_cos([&](double v) { return std::imag(std::exp(-s * std::log1p(v * v))); }, w);
  const cplx K = num::bessel_k(ell[0], w);
  if (std::abs(K) == 0.0) throw NumericalFailure("whittaker: K_ν(2π) vanishes, cannot pin normalization");
  return 2.0 * cplx(re, im) / K;
}

cplx n3_normalization(const SpectralParameter& ell) {
  const cplx a = 0.5 * (1.0 + ell[0] - ell[1]);
  const cplx b = 0.5 * (1.0 + ell[1] - ell[2]);
  return 4.0 * std::exp((2.0 * a + 2.0 * b - 0.5) * std::log(kPi) - num::lgamma(a) - num::lgamma(b) -
                        num::lgamma(a + b - 0.5));
}

}  // namespace

WhittakerFunction::WhittakerFunction(const SpectralParameter& ell) : ell_(ell) {
  require_rank(ell.n(), "WhittakerFunction");
  if (n() == 2) {
    mu_ = ell[0];
    norm_ = n2_normalization(ell);
  } else {
    mu_ = 0.5 * (ell[0] - ell[1]);
    gamma_ = -0.75 * ell[2];
    norm_ = n3_normalization(ell);
  }
  k_ = std::make_unique<num::BesselKTable>(mu_, 1e-3, 4e7);
}

double WhittakerFunction::decay_exponent(const std::vector<double>& y) {
  if (y.size() == 1) return y[0];
  const double u = std::cbrt((y[0] / y[1]) * (y[0] / y[1]));
  return y[0] * std::sqrt(1.0 + 1.0 / u) + y[1] * std::sqrt(1.0 + u);
}

ScaledComplex WhittakerFunction::torus_scaled(const std::vector<double>& y) const {
  if (static_cast<int>(y.size()) != n() - 1) throw InvalidInput("whittaker: torus coordinate count mismatch");
  for (double v : y)
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("whittaker: y must be positive and finite");
  if (n() == 2) {
    const double x = 2.0 * kPi * y[0];
    return {norm_ * std::sqrt(y[0]) * k_->scaled(x), -x};
  }
  const double A = 2.0 * kPi * y[0], B = 2.0 * kPi * y[1];
  const double gr = gamma_.real();
  // envelope f(t) = A g(t) + B g(−t) − Re γ·t is convex; locate its minimum
  auto f = [&](double t) { return A * gfun(t).v + B * gfun(-t).v - gr * t; };
  auto fp = [&](double t) { return A * gfun(t).d1 - B * gfun(-t).d1 - gr; };
  auto fpp = [&](double t) { return A * gfun(t).d2 + B * gfun(-t).d2; };
  double lo = (2.0 / 3.0) * std::log(y[0] / y[1]) - 1.0, hi = lo + 2.0;
  while (fp(lo) > 0.0) lo -= 2.0 * (hi - lo);
  while (fp(hi) < 0.0) hi += 2.0 * (hi - lo);
  double t0 = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(t0)); ++it) {
    const double d = fp(t0);
    if (d > 0.0) hi = t0;
    else lo = t0;
    const double nt = t0 - d / fpp(t0);
    t0 = (nt > lo && nt < hi) ? nt : 0.5 * (lo + hi);
  }
  const double f0 = f(t0);
  const double curv = std::max(fpp(t0), 1e-300);

  const double cut = 46.0;  // e^{−46} ≈ 1e−20 relative
  double h = std::min(0.25, 0.5 / std::sqrt(curv));
  // the e^{iIm γ·t} and K_{iτ} phases need a few points per radian
  h = std::min(h, 0.6 / (1.0 + std::abs(gamma_.imag()) + 0.5 * std::abs(mu_.imag())));
  double tl = t0, tr = t0;
  const double step = std::min(1.0, 2.0 * h);
  while (f(tl) - f0 < cut) tl -= step;
  while (f(tr) - f0 < cut) tr += step;

  auto integrand = [&](double t) {
    const double a = A * gfun(t).v, b = B * gfun(-t).v;
    return k_->scaled(a) * k_->scaled(b) * std::exp(-(a + b - f0) + gamma_ * t);
  };
  // trapezoid on a grid anchored at t0; halve until stable
  auto trap = [&](double hh, int parity, double& l1) {
    cplx s = 0.0;
    l1 = 0.0;
    const long long kl = static_cast<long long>(std::floor((tl - t0) / hh));
    const long long kr = static_cast<long long>(std::ceil((tr - t0) / hh));
    for (long long k = kl; k <= kr; ++k) {
      if (parity >= 0 && ((k % 2 + 2) % 2) != parity) continue;
      const cplx v = integrand(t0 + k * hh);
      s += v;
      l1 += std::abs(v);
    }
    return s;
  };
  double l1 = 0.0, l1n = 0.0;
  cplx sum = trap(h, -1, l1);
  cplx I = h * sum;
  for (int level = 0; level < 12; ++level) {
    h *= 0.5;
    sum += trap(h, 1, l1n);
    l1 += l1n;
    const cplx In = h * sum;
    const double diff = std::abs(In - I);
    I = In;
    // a + b − f0 loses ~f0·ε absolutely, which bounds attainable agreement
    const double rtol = 1e-13 + 8e-16 * f0;
    if (level >= 1 && (diff <= rtol * std::abs(I) || diff <= 1e-15 * h * l1)) {
      const cplx pre = norm_ * std::exp((1.0 + 0.5 * ell_[2]) * std::log(y[0]) + (1.0 - 0.5 * ell_[2]) * std::log(y[1]));
      return {pre * I, -f0};
    }
  }
  throw NumericalFailure("whittaker: n=3 t-integral did not converge at y=(" + std::to_string(y[0]) + ", " +
                         std::to_string(y[1]) + ")");
}

cplx WhittakerFunction::operator()(const IwasawaPoint& z, int eps) const {
  if (z.n != n()) throw InvalidInput("whittaker: point rank does not match ℓ");
  if (eps != 1 && eps != -1) throw InvalidInput("whittaker: ε must be ±1");
  const double ph = (n() == 2) ? eps * z.xij(0, 1) : eps * z.xij(0, 1) - z.xij(1, 2);
  return std::polar(1.0, 2.0 * kPi * ph) * torus(z.y);
}

std::shared_ptr<const WhittakerFunction> whittaker_for(const SpectralParameter& ell) {
  for (const auto& l : ell.ell)
    if (!(std::abs(l.real()) < 0.5)) throw InvalidInput("whittaker: need |Re ℓ_j| < 1/2");
  static std::mutex mu;
  static std::map<std::vector<std::pair<double, double>>, std::shared_ptr<const WhittakerFunction>> cache;
  std::vector<std::pair<double, double>> key;
  for (const auto& l : ell.ell) key.emplace_back(l.real(), l.imag());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto w = std::make_shared<const WhittakerFunction>(ell);
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() > 256) cache.clear();
  return cache.emplace(key, w).first->second;
}

cplx whittaker_eval(const IwasawaPoint& z, const SpectralParameter& ell, int eps) {
  return (*whittaker_for(ell))(z, eps);
}

num::WideReal whittaker_tail_norm(double T, const SpectralParameter& ell) {
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidInput("whittaker_tail_norm: T must be positive and finite");
  const auto W = whittaker_for(ell);
  const int n = ell.n();
  const auto& gl = num::gauss_legendre(16);
  if (n == 2) {
    // |W|² y^{−2}, envelope e^{−4πy}
    const double ref = 2.0 * W->torus_scaled({T}).log_abs() - 2.0 * std::log(T);
    const double S = 60.0 / (4.0 * kPi) + 2.0;
    const int panels = 24;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double a = S * p / panels, b = S * (p + 1) / panels;
      for (int i = 0; i < 16; ++i) {
        const double y = T + 0.5 * (a + b) + 0.5 * (b - a) * gl.x[i];
        s += 0.5 * (b - a) * gl.w[i] * std::exp(2.0 * W->torus_scaled({y}).log_abs() - 2.0 * std::log(y) - ref);
      }
    }
    return num::WideReal::exp(ref) * num::WideReal(s);
  }
  // n = 3: |W|² y₁^{−3} y₂^{−3}; envelope decays like e^{−4π√(1+1/u)·s} from the corner
  const double ref = 2.0 * W->torus_scaled({T, T}).log_abs() - 6.0 * std::log(T);
  const double S = 60.0 / (4.0 * kPi * std::sqrt(2.0)) + 2.0;
  const int panels = 12;
  std::vector<double> node, weight;
  for (int p = 0; p < panels; ++p) {
    const double a = S * p / panels, b = S * (p + 1) / panels;
    for (int i = 0; i < 16; ++i) {
      node.push_back(T + 0.5 * (a + b) + 0.5 * (b - a) * gl.x[i]);
      weight.push_back(0.5 * (b - a) * gl.w[i]);
    }
  }
  const int m = static_cast<int>(node.size());
  std::vector<double> row(m, 0.0);
  num::parallel_for(m, [&](int i) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const double lw = 2.0 * W->torus_scaled({node[i], node[j]}).log_abs() - 3.0 * std::log(node[i]) -
                        3.0 * std::log(node[j]) - ref;
      acc += weight[j] * std::exp(lw);
    }
    row[i] = weight[i] * acc;
  });
  double s = 0.0;
  for (double v : row) s += v;
  return num::WideReal::exp(ref) * num::WideReal(s);
}

}  // namespace maass
