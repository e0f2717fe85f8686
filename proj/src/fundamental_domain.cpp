#include "maass/fundamental_domain.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "maass/core_geometry.hpp"

namespace maass {

using RowVec = Eigen::Matrix<long long, 1, Eigen::Dynamic>;

Mat to_real(const IMat& m) { return m.cast<double>(); }

long long int_det(const IMat& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (n == 3)
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  return std::llround(to_real(m).determinant());
}

bool is_parabolic(const IMat& g) {
  const int n = static_cast<int>(g.rows());
  for (int j = 0; j + 1 < n; ++j)
    if (g(n - 1, j) != 0) return false;
  const long long last = g(n - 1, n - 1);
  return last == 1 || last == -1;
}

namespace {

IMat translation(int n, int i, int j, long long k) {
  IMat t = IMat::Identity(n, n);
  t(i, j) = k;
  return t;
}

// SL(2,ℤ) Gauss reduction of x + iy; returns γ with γ·z in the closed domain
// plus boundary tie-breaks.
IMat gauss_reduce(double x, double y, double tol, int max_iter, int* iters) {
  IMat g = IMat::Identity(2, 2);
  IMat S(2, 2);
  S << 0, -1, 1, 0;
  int it = 0;
  for (; it < max_iter; ++it) {
    const long long k = static_cast<long long>(std::floor(x + 0.5));
    if (k != 0) {
      g = translation(2, 0, 1, -k) * g;
      x -= static_cast<double>(k);
    }
    const double r2 = x * x + y * y;
    if (r2 < 1.0 - tol) {
      g = S * g;
      x = -x / r2;
      y = y / r2;
      continue;
    }
    break;
  }
  if (it == max_iter) throw NumericalFailure("reduce: SL(2,Z) reduction did not converge");
  // tie-breaks: x = −1/2 → +1/2; on the unit arc prefer x ≥ 0
  if (std::abs(x + 0.5) <= tol) {
    g = translation(2, 0, 1, 1) * g;
    x += 1.0;
  }
  if (std::abs(x * x + y * y - 1.0) <= tol && x < -tol) {
    g = S * g;
    x = -x;  // on |z| = 1, S z = −x + iy
  }
  if (iters) *iters += it + 1;
  return g;
}

IwasawaPoint apply_int(const IMat& g, const Mat& Z0) { return iwasawa_point(to_real(g) * Z0); }

struct Shortest {
  bool found = false;
  double norm2 = 0.0;
  RowVec v;
};

void fp_enumerate(const Mat& Z, int col, RowVec& v, double partial, double bound2, Shortest& best) {
  const int n = static_cast<int>(Z.rows());
  if (col == n) {
    bool off_axis = false;
    for (int i = 0; i + 1 < n; ++i) off_axis |= v(i) != 0;
    if (off_axis && (!best.found || partial < best.norm2)) {
      best.found = true;
      best.norm2 = partial;
      best.v = v;
    }
    return;
  }
  double c = 0.0;  // (vZ)_col without v_col
  for (int i = 0; i < col; ++i) c += static_cast<double>(v(i)) * Z(i, col);
  const double rem = bound2 - partial;
  if (rem <= 0.0) return;
  const double r = std::sqrt(rem) / Z(col, col);
  const double center = -c / Z(col, col);
  const long long lo = static_cast<long long>(std::ceil(center - r));
  const long long hi = static_cast<long long>(std::floor(center + r));
  for (long long k = lo; k <= hi; ++k) {
    const double t = c + static_cast<double>(k) * Z(col, col);
    const double p = partial + t * t;
    if (p >= bound2) continue;
    v(col) = k;
    fp_enumerate(Z, col + 1, v, p, bound2, best);
  }
  v(col) = 0;
}

// Sign-group canonicalization for n = 3; returns the sign element applied.
IMat sign_canonical(const IwasawaPoint& z, double tol) {
  static const std::array<std::array<int, 3>, 4> signs = {{{1, 1, 1}, {-1, -1, 1}, {1, -1, -1}, {-1, 1, -1}}};
  int best = 0;
  std::array<double, 3> best_key{};
  for (int s = 0; s < 4; ++s) {
    const auto& d = signs[s];
    std::array<double, 3> key = {d[0] * d[1] * z.x(0, 1), d[0] * d[2] * z.x(0, 2), d[1] * d[2] * z.x(1, 2)};
    bool greater = false;
    if (s == 0) greater = true;
    for (int i = 0; i < 3 && s > 0; ++i) {
      if (key[i] > best_key[i] + tol) {
        greater = true;
        break;
      }
      if (key[i] < best_key[i] - tol) break;
    }
    if (greater) {
      best = s;
      best_key = key;
    }
  }
  IMat m = IMat::Zero(3, 3);
  for (int i = 0; i < 3; ++i) m(i, i) = signs[best][i];
  return m;
}

}  // namespace

bool bottom_row_minimal(const Mat& Z, double tol, RowVec* witness) {
  const int n = static_cast<int>(Z.rows());
  const double R = Z(n - 1, n - 1) * (1.0 - tol);
  RowVec v = RowVec::Zero(n);
  Shortest best;
  fp_enumerate(Z, 0, v, 0.0, R * R, best);
  if (best.found && witness) *witness = best.v;
  return !best.found;
}

IMat complete_to_sl(const RowVec& v) {
  const int n = static_cast<int>(v.size());
  RowVec w = v;
  IMat U = IMat::Identity(n, n);
  // column operations until a single nonzero entry remains
  while (true) {
    int piv = -1;
    for (int i = 0; i < n; ++i)
      if (w(i) != 0 && (piv < 0 || std::llabs(w(i)) < std::llabs(w(piv)))) piv = i;
    if (piv < 0) throw InvalidInput("complete_to_sl: zero vector");
    bool done = true;
    for (int j = 0; j < n; ++j) {
      if (j == piv || w(j) == 0) continue;
      const long long q = w(j) / w(piv);
      w(j) -= q * w(piv);
      U.col(j) -= q * U.col(piv);
      if (w(j) != 0) done = false;
    }
    if (done) {
      if (std::llabs(w(piv)) != 1) throw InvalidInput("complete_to_sl: vector is not primitive");
      if (piv != n - 1) {
        U.col(piv).swap(U.col(n - 1));
        std::swap(w(piv), w(n - 1));
      }
      if (w(n - 1) == -1) U.col(n - 1) *= -1;
      break;
    }
  }
  // v·U = e_n, so M = U⁻¹ has bottom row v
  const Mat Ui = to_real(U).inverse();
  IMat M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = std::llround(Ui(i, j));
  if (int_det(M) == -1) M.row(0) *= -1;
  if (int_det(M) != 1) throw NumericalFailure("complete_to_sl: completion failed");
  return M;
}

ReductionResult reduce(const IwasawaPoint& z, const ReductionOptions& opt) {
  require_rank(z.n, "reduce");
  const Mat Z0 = z.matrix();
  ReductionResult out{IMat::Identity(z.n, z.n), z, 0};
  if (z.n == 2) {
    int it = 0;
    out.gamma = gauss_reduce(z.x(0, 1), z.y[0], opt.tol, opt.max_iter, &it);
    out.iterations = it;
    out.reduced = apply_int(out.gamma, Z0);
    return out;
  }

  IMat g = IMat::Identity(3, 3);
  IwasawaPoint cur = z;
  double height = Z0(2, 2);
  std::ostringstream trace;
  for (int it = 0; it < opt.max_iter; ++it) {
    out.iterations = it + 1;
    // (a) reduce z′ = x₁₂ + i·y₂
    int sub = 0;
    IMat g2 = gauss_reduce(cur.x(0, 1), cur.y[1], opt.tol, opt.max_iter, &sub);
    IMat e = IMat::Identity(3, 3);
    e.block(0, 0, 2, 2) = g2;
    g = e * g;
    cur = apply_int(g, Z0);
    // (b) translations of the last column
    const long long k2 = static_cast<long long>(std::floor(cur.x(1, 2) + 0.5));
    const long long k1 = static_cast<long long>(std::floor(cur.x(0, 2) + 0.5));
    if (k1 != 0 || k2 != 0) {
      IMat t = IMat::Identity(3, 3);
      t(0, 2) = -k1;
      t(1, 2) = -k2;
      g = t * g;
      cur = apply_int(g, Z0);
    }
    // (c) bottom-row condition
    const Mat Z = cur.matrix();
    RowVec v;
    if (bottom_row_minimal(Z, 1e-13, &v)) break;
    const IMat m = complete_to_sl(v);
    g = m * g;
    cur = apply_int(g, Z0);
    const double h = cur.matrix()(2, 2);
    trace << " it" << it << ":|e3Z|=" << h;
    if (!(h < height)) throw NumericalFailure("reduce: height not decreasing;" + trace.str());
    height = h;
    if (it + 1 == opt.max_iter) throw NumericalFailure("reduce: iteration cap reached;" + trace.str());
  }
  const IMat s = sign_canonical(cur, opt.tol);
  if (s != IMat::Identity(3, 3)) {
    g = s * g;
    cur = apply_int(g, Z0);
  }
  // boundary tie-breaks for x₁₃, x₂₃
  {
    IMat t = IMat::Identity(3, 3);
    if (std::abs(cur.x(0, 2) + 0.5) <= opt.tol) t(0, 2) = 1;
    if (std::abs(cur.x(1, 2) + 0.5) <= opt.tol) t(1, 2) = 1;
    if (t != IMat::Identity(3, 3)) {
      g = t * g;
      cur = apply_int(g, Z0);
    }
  }
  out.gamma = g;
  out.reduced = cur;
  return out;
}

namespace {

bool in_F2(double x, double y, bool closure, double tol) {
  const double r2 = x * x + y * y;
  if (std::abs(x) > 0.5 + tol || r2 < 1.0 - tol) return false;
  if (closure) return true;
  if (x < -0.5 + tol) return false;
  if (std::abs(r2 - 1.0) <= tol && x < -tol) return false;
  return true;
}

}  // namespace

bool membership(const IwasawaPoint& z, bool closure, double tol) {
  require_rank(z.n, "membership");
  if (z.n == 2) return in_F2(z.x(0, 1), z.y[0], closure, tol);
  if (!in_F2(z.x(0, 1), z.y[1], closure, tol)) return false;
  for (double v : {z.x(0, 2), z.x(1, 2)}) {
    if (std::abs(v) > 0.5 + tol) return false;
    if (!closure && v < -0.5 + tol) return false;
  }
  if (!bottom_row_minimal(z.matrix(), 1e-10)) return false;
  if (closure) return true;
  return sign_canonical(z, tol) == IMat::Identity(3, 3);
}

bool in_tilde_F(const IwasawaPoint& z, const ReductionOptions& opt) { return is_parabolic(reduce(z, opt).gamma); }

IMat random_sl_z(num::Rng& rng, int n, int len) {
  IMat g = IMat::Identity(n, n);
  const int L = static_cast<int>(rng.integer(0, len));
  for (int k = 0; k < L; ++k) {
    const int choice = static_cast<int>(rng.integer(0, 1));
    IMat e = IMat::Identity(n, n);
    if (choice == 0) {
      int i = static_cast<int>(rng.integer(0, n - 1)), j = static_cast<int>(rng.integer(0, n - 2));
      if (j >= i) ++j;
      e(i, j) = rng.integer(0, 1) ? 1 : -1;
    } else {
      // rotation-by-90° in a coordinate plane
      int i = static_cast<int>(rng.integer(0, n - 1)), j = static_cast<int>(rng.integer(0, n - 2));
      if (j >= i) ++j;
      e(i, i) = 0;
      e(j, j) = 0;
      e(i, j) = -1;
      e(j, i) = 1;
    }
    g = e * g;
  }
  return g;
}

}  // namespace maass
