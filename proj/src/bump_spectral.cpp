#include "maass/bump_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maass/core_geometry.hpp"
#include "maass/numeric/quadrature.hpp"

namespace maass {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kSqrt3 = 1.73205080756887729353;
constexpr double kSqrt6 = 2.44948974278317809820;

void check_rank(int n, const char* who) {
  if (n != 2 && n != 3) throw Unsupported(std::string(who) + ": n ∈ {2, 3}");
}

void check_delta(double delta, const char* who) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidInput(std::string(who) + ": δ must be positive");
}

Mat diag_exp(const std::vector<double>& a) {
  Mat d = Mat::Zero(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d(i, i) = std::exp(a[i]);
  return d;
}

// Gauss–Legendre nodes/weights mapped to [lo, hi] with `panels` panels
void composite_rule(double lo, double hi, int panels, int order, std::vector<double>& x, std::vector<double>& w) {
  const auto& gl = num::gauss_legendre(order);
  x.clear();
  w.clear();
  for (int p = 0; p < panels; ++p) {
    const double a = lo + (hi - lo) * p / panels, b = lo + (hi - lo) * (p + 1) / panels;
    for (int i = 0; i < order; ++i) {
      x.push_back(0.5 * (a + b) + 0.5 * (b - a) * gl.x[i]);
      w.push_back(0.5 * (b - a) * gl.w[i]);
    }
  }
}

}  // namespace

double polar_constant(int n) {
  check_rank(n, "polar_constant");
  return n == 2 ? 2.0 * kSqrt2 * kPi : 16.0 * kSqrt3 * kPi * kPi;
}

double polar_jacobian(const std::vector<double>& a) {
  const int n = static_cast<int>(a.size());
  double j = polar_constant(n);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) j *= std::sinh(a[i] - a[k]);
  return j;
}

std::vector<double> chamber_point(int n, double r, double theta) {
  check_rank(n, "chamber_point");
  if (n == 2) return {r / kSqrt2, -r / kSqrt2};
  const double c = std::cos(theta), s = std::sin(theta);
  return {r * (c / kSqrt2 + s / kSqrt6), r * (-c / kSqrt2 + s / kSqrt6), r * (-2.0 * s / kSqrt6)};
}

cplx polar_integrate(int n, double delta, const std::function<cplx(const std::vector<double>&)>& f, int panels,
                     int order, int theta_order) {
  check_rank(n, "polar_integrate");
  check_delta(delta, "polar_integrate");
  std::vector<double> rx, rw;
  composite_rule(0.0, delta, panels, order, rx, rw);
  if (n == 2) {
    std::vector<cplx> v(rx.size());
    num::parallel_for(static_cast<int>(rx.size()), [&](int i) {
      const auto a = chamber_point(2, rx[i]);
      v[i] = rw[i] * polar_jacobian(a) * f(a);
    });
    return std::accumulate(v.begin(), v.end(), cplx(0.0));
  }
  std::vector<double> tx, tw;
  composite_rule(kPi / 6.0, kPi / 2.0, 1, theta_order, tx, tw);
  std::vector<cplx> v(rx.size());
  num::parallel_for(static_cast<int>(rx.size()), [&](int i) {
    cplx s = 0.0;
    for (std::size_t t = 0; t < tx.size(); ++t) {
      const auto a = chamber_point(3, rx[i], tx[t]);
      s += tw[t] * polar_jacobian(a) * f(a);
    }
    v[i] = rw[i] * rx[i] * s;
  });
  return std::accumulate(v.begin(), v.end(), cplx(0.0));
}

double bump_raw(double sigma, double delta) {
  const double u = sigma / delta;
  if (!(u < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

namespace {
double norm_of(const std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}
}  // namespace

double c_delta(int n, double delta) {
  check_delta(delta, "c_delta");
  const double I =
      polar_integrate(n, delta, [&](const std::vector<double>& a) { return cplx(bump_raw(norm_of(a), delta)); })
          .real();
  if (!(I > 1e-300) || !std::isfinite(I)) throw NumericalFailure("c_delta: bump integral underflows");
  return 1.0 / I;
}

double vol_ball(int n, double delta) {
  check_delta(delta, "vol_ball");
  if (n == 2) return 2.0 * kPi * (std::cosh(kSqrt2 * delta) - 1.0);
  return polar_integrate(n, delta, [](const std::vector<double>&) { return cplx(1.0); }).real();
}

BumpProfile make_bump(int n, double delta) {
  check_rank(n, "make_bump");
  return {n, delta, c_delta(n, delta), vol_ball(n, delta)};
}

double h_delta_sigma(double sigma, const BumpProfile& b) { return b.c_delta * bump_raw(sigma, b.delta); }
double h_delta(const Mat& g, const BumpProfile& b) { return h_delta_sigma(polar_height(g), b); }

// ---- spherical functions ------------------------------------------------------

namespace {

// φ_ℓ(ξ e^{a}) through bottom-row minors:
//   n = 2: φ = N₂^{−2e₁}, N₂ = ‖row₂(ξ)∘e^{a}‖
//   n = 3: φ = N₃^{e₂−2e₁} N₂₃^{e₁−2e₂}, N₃ = ‖row₃(ξ)∘e^{a}‖, N₂₃ = ‖row₁(ξ)∘e^{−a}‖
// (1/2π)∫₀^{2π} (A + B cos t)^s dt for A > B ≥ 0
cplx cosine_power_mean(double A, double B, cplx s) {
  const double q = B / A;
  const cplx As = std::exp(s * std::log(A));
  if (q < 1e-300) return As;
  if (q <= 0.85 && std::abs(s) * q <= 12.0) {
    // Σ_k C(s,2k) C(2k,k) (q/2)^{2k}
    cplx term = 1.0, sum = 1.0;
    const double q2 = q * q;
    for (int k = 0; k < 400; ++k) {
      term *= (s - 2.0 * k) * (s - 2.0 * k - 1.0) * (q2 / (4.0 * (k + 1.0) * (k + 1.0)));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) break;
    }
    return As * sum;
  }
  // periodic trapezoid; the integrand is analytic in |Im t| < acosh(1/q)
  const double c = 0.5 * std::acosh(1.0 / std::min(q, 1.0 - 1e-15));
  const int M = std::clamp(static_cast<int>((40.0 + kPi * std::abs(s.imag())) / c) + 1, 16, 4096);
  cplx sum = 0.0;
  for (int k = 0; k < M; ++k) sum += std::exp(s * std::log(A + B * std::cos(2.0 * kPi * k / M)));
  return sum / static_cast<double>(M);
}

cplx beta_level(const std::vector<cplx>& e, const std::vector<double>& a, int level) {
  const int n = static_cast<int>(a.size());
  if (n == 2) {
    const int N = 16 << level;
    const double A = std::exp(2.0 * a[0]), B = std::exp(2.0 * a[1]);
    cplx s = 0.0;
    for (int k = 0; k < N; ++k) {
      const double t = 2.0 * kPi * k / N, sn = std::sin(t), cs = std::cos(t);
      s += std::exp(-e[0] * std::log(sn * sn * A + cs * cs * B));
    }
    return s / static_cast<double>(N);
  }
  const int m = 8 << level, N = 12 << level;
  const auto& gl = num::gauss_legendre(m);
  const cplx p3 = e[1] - 2.0 * e[0], p23 = e[0] - 2.0 * e[1];
  const double ea[3] = {std::exp(a[0]), std::exp(a[1]), std::exp(a[2])};
  cplx s = 0.0;
  for (int i = 0; i < m; ++i) {
    const double ct = gl.x[i], st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    cplx si = 0.0;
    for (int j = 0; j < N; ++j) {
      const double ph = 2.0 * kPi * j / N, cp = std::cos(ph), sp = std::sin(ph);
      const double u[3] = {st * cp, st * sp, ct};
      const double E[3] = {ct * cp, ct * sp, -st}, F[3] = {-sp, cp, 0.0};
      double n3 = 0.0, ee = 0.0, ff = 0.0, ef = 0.0;
      for (int c = 0; c < 3; ++c) {
        n3 += u[c] * u[c] * ea[c] * ea[c];
        const double x = E[c] / ea[c], y = F[c] / ea[c];
        ee += x * x;
        ff += y * y;
        ef += x * y;
      }
      // the circle of unit vectors in u^⊥ gives N₂₃² = A + B cos(2ψ − ψ₀)
      const double A = 0.5 * (ee + ff), B = std::hypot(0.5 * (ee - ff), ef);
      si += std::exp(0.5 * p3 * std::log(n3)) * cosine_power_mean(A, B, 0.5 * p23);
    }
    s += 0.5 * gl.w[i] * si;
  }
  return s / static_cast<double>(N);
}

}  // namespace

cplx spherical_function_polar(const SpectralParameter& ell, const std::vector<double>& a, double tol) {
  check_rank(ell.n(), "spherical_function");
  if (static_cast<int>(a.size()) != ell.n()) throw InvalidInput("spherical_function: rank mismatch");
  const auto e = phi_exponents(ell);
  cplx prev = beta_level(e, a, 0);
  for (int level = 1; level <= 5; ++level) {
    const cplx cur = beta_level(e, a, level);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw NumericalFailure("spherical_function: rotation average did not converge");
}

cplx spherical_function(const SpectralParameter& ell, const Mat& g, double tol) {
  return spherical_function_polar(ell, polar_exponents(g), tol);
}

cplx spherical_function_direct(const SpectralParameter& ell, const Mat& g, int nodes) {
  const int n = ell.n();
  check_rank(n, "spherical_function_direct");
  if (g.rows() != n) throw InvalidInput("spherical_function_direct: rank mismatch");
  auto rz = [&](double t) {
    Mat r = Mat::Identity(3, 3);
    r(0, 0) = r(1, 1) = std::cos(t);
    r(0, 1) = -std::sin(t);
    r(1, 0) = std::sin(t);
    return r;
  };
  if (n == 2) {
    cplx s = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const double t = 2.0 * kPi * k / nodes;
      Mat r(2, 2);
      r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
      s += phi_ell(ell, r * g);
    }
    return s / static_cast<double>(nodes);
  }
  const auto& gl = num::gauss_legendre(nodes);
  cplx s = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double b = std::acos(gl.x[i]);
    Mat ry = Mat::Identity(3, 3);
    ry(0, 0) = ry(2, 2) = std::cos(b);
    ry(0, 2) = std::sin(b);
    ry(2, 0) = -std::sin(b);
    for (int j = 0; j < nodes; ++j)
      for (int k = 0; k < nodes; ++k) {
        const Mat R = rz(2.0 * kPi * j / nodes) * ry * rz(2.0 * kPi * k / nodes);
        s += 0.5 * gl.w[i] * phi_ell(ell, R * g);
      }
  }
  return s / static_cast<double>(nodes * nodes);
}

cplx spherical_transform_H(const SpectralParameter& ell, const BumpProfile& b) {
  check_rank(ell.n(), "spherical_transform_H");
  if (ell.n() != b.n) throw InvalidInput("spherical_transform_H: rank mismatch");
  // ratio of two integrals on one rule: ∫bump·β / ∫bump, times C_δ/C_δ
  const int panels = b.n == 2 ? 8 : 4, order = b.n == 2 ? 20 : 10, torder = 10;
  const cplx num = polar_integrate(
      b.n, b.delta,
      [&](const std::vector<double>& a) {
        const double h = bump_raw(norm_of(a), b.delta);
        return h > 0.0 ? h * spherical_function_polar(ell, a, 1e-9) : cplx(0.0);
      },
      panels, order, torder);
  const double den = polar_integrate(
                         b.n, b.delta, [&](const std::vector<double>& a) { return cplx(bump_raw(norm_of(a), b.delta)); },
                         panels, order, torder)
                         .real();
  return num / den;
}

// ---- support bounds ---------------------------------------------------------------

double ell_shift_norm(const SpectralParameter& ell) {
  const int n = ell.n();
  double s = 0.0;
  for (int j = 1; j <= n; ++j) s += std::abs(ell[j - 1] + 0.5 * (n - 2 * j + 1));
  return s;
}

double lb_delta(const SpectralParameter& ell, double delta) {
  const int n = ell.n();
  const double m = n * (n + 6.0);
  return 1.0 - 4.0 * std::expm1(m * delta / 4.0) / m * ell_shift_norm(ell);
}

double ub_delta(int n, double delta) { return std::exp(n * (n + 6.0) * delta / 4.0); }

double max_delta(const SpectralParameter& ell, double cap) {
  const int n = ell.n();
  const double s = ell_shift_norm(ell);
  if (s <= 0.0) return cap;
  return std::min(cap, std::log1p(n * (n + 6.0) / 8.0 / s));
}

double lb_half_delta(const SpectralParameter& ell, double cap) {
  const int n = ell.n();
  const double s = ell_shift_norm(ell);
  if (s <= 0.0) return cap;
  return std::min(cap, 4.0 / (n * (n + 6.0)) * std::log1p(n * (n + 6.0) / 8.0 / s));
}

double laplacian_H_bound(const BumpProfile& b, cplx lambda) {
  const double d = b.delta;
  return 3.0 * (1.0 + std::exp(2.0 * d)) / (d * d * d * d) * b.c_delta * b.vol_ball + std::abs(lambda);
}

QuadratureEstimate casimir_H_integral(int j, const BumpProfile& b, cplx lambda, int panels) {
  check_rank(b.n, "casimir_H_integral");
  if (j < 1 || j > b.n - 1) throw InvalidInput("casimir_H_integral: j out of range");
  const GroupFunction H = [&](const Mat& g) { return cplx(h_delta(g, b)); };
  const double h = b.delta * 0.005;
  auto run = [&](int pan) {
    return polar_integrate(
               b.n, b.delta,
               [&](const std::vector<double>& a) {
                 const Mat g = diag_exp(a);
                 return cplx(std::abs(apply_casimir_fd(j, H, g, h) - lambda * h_delta_sigma(norm_of(a), b)));
               },
               pan, 8, 12)
        .real();
  };
  const double fine = run(panels), coarse = run(std::max(1, panels / 2));
  if (!std::isfinite(fine)) throw NumericalFailure("casimir_H_integral: non-finite quadrature");
  return {fine, std::abs(fine - coarse)};
}

QuadratureEstimate laplacian_H_integral_radial(const BumpProfile& b, cplx lambda, int panels) {
  if (b.n != 2) throw Unsupported("laplacian_H_integral_radial: n = 2 only");
  const double d = b.delta;
  auto integrand = [&](double R) {
    const double u = R / (kSqrt2 * d);
    if (!(u < 1.0)) return 0.0;
    const double q = 1.0 - u * u;
    const double B = std::exp(-1.0 / q);
    const double g1 = -2.0 * u / (q * q), g2 = -2.0 / (q * q) - 8.0 * u * u / (q * q * q);
    const double fR = b.c_delta * B * g1 / (kSqrt2 * d);
    const double fRR = b.c_delta * B * (g1 * g1 + g2) / (2.0 * d * d);
    const double lap = R > 1e-12 ? -(fRR + fR / std::tanh(R)) : -2.0 * fRR;
    return std::abs(cplx(lap) - lambda * (b.c_delta * B)) * 2.0 * kPi * std::sinh(R);
  };
  const double top = kSqrt2 * d;
  const double fine = num::integrate_gl(integrand, 0.0, top, panels, 20);
  const double coarse = num::integrate_gl(integrand, 0.0, top, std::max(1, panels / 2), 20);
  return {fine, std::abs(fine - coarse)};
}

// ---- Monte Carlo ------------------------------------------------------------------

namespace {

constexpr int kShards = 16;

struct Accum {
  double s = 0.0, s2 = 0.0, si = 0.0, si2 = 0.0;
  long long hits = 0;
};

MCEstimate finish(const std::vector<Accum>& acc, long long samples) {
  Accum t;
  for (const auto& a : acc) t.s += a.s, t.s2 += a.s2, t.si += a.si, t.si2 += a.si2, t.hits += a.hits;
  MCEstimate e;
  const double N = static_cast<double>(samples);
  e.samples = samples;
  e.hits = t.hits;
  e.value = t.s / N;
  e.std_error = std::sqrt(std::max(0.0, t.s2 / N - e.value * e.value) / N);
  e.imag = t.si / N;
  e.imag_std_error = std::sqrt(std::max(0.0, t.si2 / N - e.imag * e.imag) / N);
  return e;
}

long long shard_count(long long samples, int s) { return samples / kShards + (s < samples % kShards ? 1 : 0); }

// polar coordinates of a uniform point in the chamber sector of radius δ
std::vector<double> uniform_chamber(num::Rng& rng, int n, double delta, double& area) {
  if (n == 2) {
    area = delta;
    return chamber_point(2, delta * rng.uniform());
  }
  area = kPi / 6.0 * delta * delta;
  const double r = delta * std::sqrt(rng.uniform());
  return chamber_point(3, r, rng.uniform(kPi / 6.0, kPi / 2.0));
}

double jacobian_sup(int n, double delta) {
  if (n == 2) return polar_jacobian(chamber_point(2, delta));
  double m = 0.0;
  for (int k = 0; k <= 200; ++k) m = std::max(m, polar_jacobian(chamber_point(3, delta, kPi / 6.0 + kPi / 3.0 * k / 200)));
  return 1.02 * m;
}

}  // namespace

Mat sample_ball(num::Rng& rng, int n, double delta) {
  check_rank(n, "sample_ball");
  check_delta(delta, "sample_ball");
  const double jmax = jacobian_sup(n, delta);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    double area;
    const auto a = uniform_chamber(rng, n, delta, area);
    if (rng.uniform() * jmax <= polar_jacobian(a))
      return num::random_rotation(rng, n) * diag_exp(a) * num::random_rotation(rng, n);
  }
  throw NumericalFailure("sample_ball: rejection sampler stalled");
}

MCEstimate polar_mc_integral(int n, double delta, const std::function<double(double)>& f, long long samples,
                             std::uint64_t seed) {
  check_rank(n, "polar_mc_integral");
  check_delta(delta, "polar_mc_integral");
  if (samples < 2) throw InvalidInput("polar_mc_integral: need ≥ 2 samples");
  std::vector<Accum> acc(kShards);
  num::parallel_for(kShards, [&](int s) {
    num::Rng rng(num::shard_seed(seed, s));
    Accum a;
    for (long long i = 0, m = shard_count(samples, s); i < m; ++i) {
      double area;
      const auto pt = uniform_chamber(rng, n, delta, area);
      const double v = area * polar_jacobian(pt) * f(norm_of(pt));
      a.s += v;
      a.s2 += v * v;
      a.hits += v != 0.0;
    }
    acc[s] = a;
  });
  return finish(acc, samples);
}

namespace {

// orthonormal basis of symmetric trace-zero matrices (Frobenius)
std::vector<Mat> sym_basis(int n) {
  std::vector<Mat> B;
  if (n == 2) {
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 1.0 / kSqrt2, d(1, 1) = -1.0 / kSqrt2;
    B.push_back(d);
  } else {
    Mat d1 = Mat::Zero(3, 3), d2 = Mat::Zero(3, 3);
    d1(0, 0) = 1.0 / kSqrt2, d1(1, 1) = -1.0 / kSqrt2;
    d2(0, 0) = d2(1, 1) = 1.0 / kSqrt6, d2(2, 2) = -2.0 / kSqrt6;
    B.push_back(d1);
    B.push_back(d2);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat e = Mat::Zero(n, n);
      e(i, j) = e(j, i) = 1.0 / kSqrt2;
      B.push_back(e);
    }
  return B;
}

Mat sym_exp(const Mat& X) {
  Eigen::SelfAdjointEigenSolver<Mat> es(X);
  return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() * es.eigenvectors().transpose();
}

// (x_ij (i<j), log y_k) of exp(X)
Vec chart_coords(const Mat& X) {
  const IwasawaPoint z = iwasawa_point(sym_exp(X));
  const int n = z.n;
  Vec c(n * (n - 1) / 2 + n - 1);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c(k++) = z.x(i, j);
  for (double y : z.y) c(k++) = std::log(y);
  return c;
}

}  // namespace

MCEstimate exp_chart_mc_integral(int n, double delta, const std::function<cplx(const Mat&)>& f, long long samples,
                                 std::uint64_t seed) {
  check_rank(n, "exp_chart_mc_integral");
  check_delta(delta, "exp_chart_mc_integral");
  if (samples < 2) throw InvalidInput("exp_chart_mc_integral: need ≥ 2 samples");
  const auto basis = sym_basis(n);
  const int d = static_cast<int>(basis.size());
  const double ball = std::pow(delta, d) * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
  const double h = 1e-5;
  std::vector<Accum> acc(kShards);
  num::parallel_for(kShards, [&](int s) {
    num::Rng rng(num::shard_seed(seed, s));
    Accum a;
    for (long long i = 0, m = shard_count(samples, s); i < m; ++i) {
      Vec c(d);
      for (int k = 0; k < d; ++k) c(k) = rng.normal();
      c *= delta * std::pow(rng.uniform(), 1.0 / d) / c.norm();
      Mat X = Mat::Zero(n, n);
      for (int k = 0; k < d; ++k) X += c(k) * basis[k];
      Mat J(d, d);
      for (int k = 0; k < d; ++k) J.col(k) = (chart_coords(X + h * basis[k]) - chart_coords(X - h * basis[k])) / (2.0 * h);
      const IwasawaPoint z = iwasawa_point(sym_exp(X));
      double dens = 1.0;
      for (int k = 1; k <= n - 1; ++k) dens *= std::pow(z.y[k - 1], -static_cast<double>(k * (n - k)));
      const cplx v = ball * std::abs(J.determinant()) * dens * f(sym_exp(X));
      a.s += v.real();
      a.s2 += v.real() * v.real();
      a.si += v.imag();
      a.si2 += v.imag() * v.imag();
      a.hits += 1;
    }
    acc[s] = a;
  });
  return finish(acc, samples);
}

}  // namespace maass
