#include "maass/core_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace maass {

SpectralParameter::SpectralParameter(std::vector<cplx> e, double tol) : ell(std::move(e)) {
  if (ell.size() < 2) throw InvalidInput("SpectralParameter: need at least two entries");
  cplx s = 0.0;
  for (const auto& v : ell) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidInput("SpectralParameter: non-finite entry");
    s += v;
  }
  if (std::abs(s) >= tol) throw InvalidInput("SpectralParameter: entries must sum to zero");
}

SpectralParameter SpectralParameter::minus_rho(int n) {
  std::vector<cplx> e(n);
  for (int k = 1; k <= n; ++k) e[k - 1] = -0.5 * (n - 2 * k + 1);
  return SpectralParameter(e);
}

TorusVector::TorusVector(std::vector<double> v, double tol) : a(std::move(v)) {
  const double s = std::accumulate(a.begin(), a.end(), 0.0);
  if (std::abs(s) >= tol) throw InvalidInput("TorusVector: entries must sum to zero");
}

void require_rank(int n, const char* where) {
  if (n != 2 && n != 3) throw Unsupported(std::string(where) + ": only n = 2, 3 are supported");
}

IwasawaPoint::IwasawaPoint(int n_, Mat x_, std::vector<double> y_) : n(n_), x(std::move(x_)), y(std::move(y_)) {
  if (n < 2) throw InvalidInput("IwasawaPoint: n must be ≥ 2");
  if (x.rows() != n || x.cols() != n || static_cast<int>(y.size()) != n - 1)
    throw InvalidInput("IwasawaPoint: shape mismatch");
  for (double v : y)
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("IwasawaPoint: y must be positive and finite");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      if (x(i, j) != (i == j ? 1.0 : 0.0)) throw InvalidInput("IwasawaPoint: x must be upper unitriangular");
}

IwasawaPoint IwasawaPoint::upper_half_plane(double x, double y) {
  Mat m = Mat::Identity(2, 2);
  m(0, 1) = x;
  return IwasawaPoint(2, m, {y});
}

IwasawaPoint IwasawaPoint::gl3(double x12, double x13, double x23, double y1, double y2) {
  Mat m = Mat::Identity(3, 3);
  m(0, 1) = x12;
  m(0, 2) = x13;
  m(1, 2) = x23;
  return IwasawaPoint(3, m, {y1, y2});
}

Mat IwasawaPoint::torus() const {
  // d_n = 1, d_k = d_{k+1}·y_{n−k}; then scale to det 1
  std::vector<double> d(n, 1.0);
  double logsum = 0.0;
  for (int k = n - 2; k >= 0; --k) d[k] = d[k + 1] * y[n - k - 2];
  for (double v : d) logsum += std::log(v);
  const double c = std::exp(-logsum / n);
  Mat a = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) a(k, k) = c * d[k];
  return a;
}

Mat IwasawaPoint::matrix() const { return x * torus(); }

Mat make_group_element(const Mat& g, double tol) {
  if (g.rows() != g.cols()) throw InvalidInput("group element must be square");
  if (!g.allFinite()) throw InvalidInput("group element has non-finite entries");
  if (std::abs(g.determinant() - 1.0) >= tol) throw InvalidInput("group element must have determinant 1");
  return g;
}

namespace {

struct RQ {
  Mat R, Q;
};

RQ row_gram_schmidt(const Mat& g) {
  const int n = static_cast<int>(g.rows());
  Mat R = Mat::Zero(n, n), Q = Mat::Zero(n, n);
  for (int i = n - 1; i >= 0; --i) {
    Vec v = g.row(i).transpose();
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = i + 1; j < n; ++j) {
        const double r = v.dot(Q.row(j).transpose());
        R(i, j) += r;
        v -= r * Q.row(j).transpose();
      }
    }
    const double nv = v.norm();
    if (!(nv > 0.0) || !std::isfinite(nv)) throw NumericalFailure("iwasawa: singular matrix");
    R(i, i) = nv;
    Q.row(i) = (v / nv).transpose();
  }
  return {R, Q};
}

IwasawaPoint point_from_R(const Mat& R) {
  const int n = static_cast<int>(R.rows());
  Mat x = Mat::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) x(i, j) = R(i, j) / R(j, j);
  std::vector<double> y(n - 1);
  for (int i = 0; i + 1 < n; ++i) y[n - i - 2] = R(i, i) / R(i + 1, i + 1);
  return IwasawaPoint(n, x, y);
}

Mat det_normalized(const Mat& g) {
  if (!g.allFinite()) throw InvalidInput("non-finite matrix entries");
  const double d = g.determinant();
  if (!(d > 0.0)) throw InvalidInput("matrix must have positive determinant");
  return g / std::pow(d, 1.0 / static_cast<double>(g.rows()));
}

}  // namespace

IwasawaDecomposition iwasawa_decompose(const Mat& g) {
  make_group_element(g, 1e-8);
  RQ f = row_gram_schmidt(g);
  return {point_from_R(f.R), f.Q};
}

IwasawaPoint iwasawa_point(const Mat& g) { return point_from_R(row_gram_schmidt(det_normalized(g)).R); }

IwasawaPoint act(const Mat& gamma, const IwasawaPoint& z) { return iwasawa_point(gamma * z.matrix()); }

std::vector<double> polar_exponents(const Mat& g) {
  const Mat h = det_normalized(g);
  // singular values of h directly; h·hᵀ would square the condition number
  const Eigen::JacobiSVD<Mat> svd(h);
  const int n = static_cast<int>(g.rows());
  std::vector<double> a(n);
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = svd.singularValues()(i);
    if (!(s > 0.0)) throw NumericalFailure("polar_exponents: singular matrix");
    a[i] = std::log(s);
    mean += a[i];
  }
  mean /= n;
  for (double& v : a) v -= mean;
  std::sort(a.begin(), a.end(), std::greater<>());
  return a;
}

double polar_height(const Mat& g) {
  double s = 0.0;
  for (double v : polar_exponents(g)) s += v * v;
  return std::sqrt(s);
}

TorusVector iw_y(const Mat& g) {
  const Mat a = iwasawa_point(g).torus();
  std::vector<double> v(a.rows());
  for (int i = 0; i < a.rows(); ++i) v[i] = std::log(a(i, i));
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  for (double& t : v) t -= mean;
  return TorusVector(v, 1e-9);
}

std::vector<double> rho(int n) {
  std::vector<double> r(n);
  for (int k = 1; k <= n; ++k) r[k - 1] = 0.5 * (n - 2 * k + 1);
  return r;
}

std::vector<cplx> phi_exponents(const SpectralParameter& ell) {
  const int n = ell.n();
  const auto r = rho(n);
  std::vector<cplx> e(n - 1, 0.0);
  for (int j = 1; j <= n - 1; ++j)
    for (int k = 1; k <= n - j; ++k) e[j - 1] += ell[k - 1] + r[k - 1];
  return e;
}

cplx phi_ell_y(const SpectralParameter& ell, const std::vector<double>& y) {
  const auto e = phi_exponents(ell);
  cplx s = 0.0;
  for (size_t j = 0; j < e.size(); ++j) s += e[j] * std::log(y[j]);
  return std::exp(s);
}

cplx phi_ell(const SpectralParameter& ell, const Mat& g) {
  if (g.rows() != ell.n()) throw InvalidInput("phi_ell: rank mismatch");
  return phi_ell_y(ell, iwasawa_point(g).y);
}

cplx laplace_eigenvalue(const SpectralParameter& ell) {
  const int n = ell.n();
  cplx s = 0.0;
  for (const auto& v : ell.ell) s += v * v;
  return (n + 1) / 12.0 - s / double(n * (n - 1));
}

cplx casimir_eigenvalue(int j, const SpectralParameter& ell) {
  const int n = ell.n();
  require_rank(n, "casimir_eigenvalue");
  if (j < 1 || j > n - 1) throw InvalidInput("casimir_eigenvalue: j out of range");
  if (j == 1) return -laplace_eigenvalue(ell);
  // n = 3, j = 2; derived by tools/derive_casimir.py
  const cplx l1 = ell[0], l2 = ell[1], l3 = ell[2];
  return 0.5 * l1 * l2 * l3 + 0.25 * (l1 * l1 + l2 * l2 + l3 * l3) - 0.5;
}

double haar_density(const std::vector<double>& y) {
  const int n = static_cast<int>(y.size()) + 1;
  double s = 0.0;
  for (int k = 1; k <= n - 1; ++k) s += -(k * (n - k) + 1.0) * std::log(y[k - 1]);
  return std::exp(s);
}

bool in_ball(const Mat& g, double delta) { return polar_height(g) < delta; }

bool siegel_membership(const IwasawaPoint& z, double a, double b) {
  for (int i = 0; i < z.n; ++i)
    for (int j = i + 1; j < z.n; ++j)
      if (std::abs(z.x(i, j)) > b) return false;
  for (double v : z.y)
    if (!(v > a)) return false;
  return true;
}

std::vector<std::vector<int>> weyl_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

SpectralParameter permute(const SpectralParameter& ell, const std::vector<int>& perm) {
  std::vector<cplx> e(ell.n());
  for (int i = 0; i < ell.n(); ++i) e[i] = ell[perm[i]];
  return SpectralParameter(e);
}

namespace {

Mat one_param(int n, int a, int b, double t) {
  Mat m = Mat::Identity(n, n);
  if (a == b)
    m(a, a) = std::exp(t);
  else
    m(a, b) = t;
  return m;
}

cplx mixed_partial(const GroupFunction& f, const Mat& g, const std::vector<std::pair<int, int>>& ops, double h) {
  const int m = static_cast<int>(ops.size());
  const int n = static_cast<int>(g.rows());
  cplx s = 0.0;
  for (int mask = 0; mask < (1 << m); ++mask) {
    Mat p = g;
    int sign = 1;
    for (int k = 0; k < m; ++k) {
      const double t = (mask >> k & 1) ? -h : h;
      if (mask >> k & 1) sign = -sign;
      p = p * one_param(n, ops[k].first, ops[k].second, t);
    }
    s += double(sign) * f(p);
  }
  return s / std::pow(2.0 * h, m);
}

}  // namespace

cplx apply_casimir_fd(int j, const GroupFunction& f, const Mat& g, double h) {
  const int n = static_cast<int>(g.rows());
  if (j < 1 || j > n - 1) throw InvalidInput("apply_casimir_fd: j out of range");
  double fact = 1.0;
  for (int k = 2; k <= n - j - 1; ++k) fact *= k;
  double nfact = 1.0;
  for (int k = 2; k <= n; ++k) nfact *= k;
  const int m = j + 1;
  std::vector<int> idx(m, 0);
  auto run = [&](double step) {
    cplx total = 0.0;
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<std::pair<int, int>> ops(m);
      for (int k = 0; k < m; ++k) ops[k] = {idx[k], idx[(k + 1) % m]};
      total += mixed_partial(f, g, ops, step);
      int k = 0;
      while (k < m && ++idx[k] == n) idx[k++] = 0;
      if (k == m) break;
    }
    return total * (fact / nfact);
  };
  const cplx a = run(h), b = run(0.5 * h);
  return (4.0 * b - a) / 3.0;
}

GroupFunction lift(const std::function<cplx(const IwasawaPoint&)>& f) {
  return [f](const Mat& g) { return f(iwasawa_point(g)); };
}

}  // namespace maass
