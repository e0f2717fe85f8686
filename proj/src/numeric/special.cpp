#include "maass/numeric/special.hpp"

#include <algorithm>
#include <cmath>

namespace maass::num {

namespace {

// Lanczos, g = 607/128 (Godfrey's coefficients)
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

cplx lgamma_right(cplx z) {
  // valid for Re z ≥ 1/2
  z -= 1.0;
  cplx a = kLanczos[0];
  const cplx t = z + kLanczosG + 0.5;
  for (int i = 1; i < 15; ++i) a += kLanczos[i] / (z + double(i));
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

cplx lgamma(cplx z) {
  if (z.real() < 0.5) {
    if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
      throw InvalidInput("lgamma: pole at non-positive integer");
    return std::log(kPi) - std::log(std::sin(kPi * z)) - lgamma_right(1.0 - z);
  }
  // shift up for better relative accuracy at small |z|
  if (std::abs(z) < 8.0) {
    cplx acc = 0.0;
    cplx w = z;
    while (std::abs(w) < 8.0) {
      acc -= std::log(w);
      w += 1.0;
    }
    return acc + lgamma_right(w);
  }
  return lgamma_right(z);
}

cplx gamma(cplx z) { return std::exp(lgamma(z)); }

cplx bessel_k_scaled(cplx nu, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidInput("bessel_k: x must be positive and finite");
  const double a = std::abs(nu.real());
  const double b = nu.imag();
  // contour height: saddle of x sinh τ = i b on the imaginary axis, clamped
  double theta = std::asin(std::min(1.0, std::abs(b) / x));
  theta = std::min(theta, 1.45);
  if (b < 0) theta = -theta;
  const double ct = std::cos(theta);
  const cplx itheta(0.0, theta);

  // truncation: x cosθ (cosh t − 1) − |a| t ≥ 40
  double tmax = 1.0;
  for (int it = 0; it < 60; ++it) {
    double nt = std::acosh(1.0 + (40.0 + a * tmax) / (x * ct));
    if (std::abs(nt - tmax) < 1e-10) {
      tmax = nt;
      break;
    }
    tmax = nt;
  }
  tmax += 0.5;

  auto f = [&](double t) {
    const cplx tau = cplx(t, 0.0) + itheta;
    const cplx sh = std::sinh(0.5 * tau);
    return std::exp(-2.0 * x * sh * sh + nu * tau);  // cosh τ − 1 = 2 sinh²(τ/2)
  };

  double h = std::min(0.5, tmax / 8.0);
  cplx sum = f(0.0);
  double abs_sum = std::abs(sum);
  for (double t = h; t <= tmax; t += h) {
    cplx u = f(t), v = f(-t);
    sum += u + v;
    abs_sum += std::abs(u) + std::abs(v);
  }
  cplx prev = 0.5 * h * sum;
  for (int level = 0; level < 14; ++level) {
    // add midpoints
    cplx mid = 0.0;
    double half = 0.5 * h;
    for (double t = half; t <= tmax + half; t += h) {
      cplx u = f(t), v = f(-t);
      mid += u + v;
      abs_sum += std::abs(u) + std::abs(v);
    }
    sum += mid;
    h = half;
    cplx cur = 0.5 * h * sum;
    const double diff = std::abs(cur - prev);
    if (level >= 1 && (diff <= 4e-15 * std::abs(cur) || diff <= 1e-15 * h * abs_sum)) return cur;
    prev = cur;
  }
  throw NumericalFailure("bessel_k: trapezoid did not converge");
}

BesselKTable::BesselKTable(cplx nu, double x_lo, double x_hi)
    : nu_(nu), u_lo_(std::log(x_lo)), u_hi_(std::log(x_hi)) {
  panels_ = static_cast<int>(std::ceil((u_hi_ - u_lo_) / kWidth));
  u_hi_ = u_lo_ + panels_ * kWidth;
  coef_.assign(static_cast<size_t>(panels_) * (kDeg + 1), cplx(0.0));
  ready_ = std::make_unique<std::once_flag[]>(panels_);
}

void BesselKTable::build_panel(int p) const {
  const int N = kDeg + 1;
  cplx vals[kDeg + 1];
  const double mid = u_lo_ + (p + 0.5) * kWidth;
  for (int k = 0; k < N; ++k) {
    const double u = mid + 0.5 * kWidth * std::cos(kPi * (k + 0.5) / N);
    const double x = std::exp(u);
    vals[k] = bessel_k_scaled(nu_, x) * std::sqrt(x);
  }
  for (int j = 0; j < N; ++j) {
    cplx c = 0.0;
    for (int k = 0; k < N; ++k) c += vals[k] * std::cos(kPi * j * (k + 0.5) / N);
    coef_[static_cast<size_t>(p) * N + j] = c * (2.0 / N);
  }
}

cplx BesselKTable::scaled(double x) const {
  const double u = std::log(x);
  if (!(u >= u_lo_ && u < u_hi_)) return bessel_k_scaled(nu_, x);
  const int N = kDeg + 1;
  const int p = std::min(panels_ - 1, static_cast<int>((u - u_lo_) / kWidth));
  std::call_once(ready_[p], [&] { build_panel(p); });
  const double mid = u_lo_ + (p + 0.5) * kWidth;
  const double s = (u - mid) / (0.5 * kWidth);
  const cplx* c = &coef_[static_cast<size_t>(p) * N];
  cplx b1 = 0.0, b2 = 0.0;
  for (int j = N - 1; j >= 1; --j) {
    cplx b0 = 2.0 * s * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  cplx v = s * b1 - b2 + 0.5 * c[0];
  return v / std::sqrt(x);
}

}  // namespace maass::num
