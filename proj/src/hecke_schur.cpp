#include "maass/hecke_schur.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "maass/core_geometry.hpp"
#include "maass/fundamental_domain.hpp"
#include "maass/numeric/rng.hpp"

namespace maass {

void LocalDataSet::validate() const {
  require_rank(n, "LocalDataSet");
  if (infinity.n() != n) throw InvalidInput("LocalDataSet: archimedean parameter has wrong rank");
  for (const auto& l : infinity.ell)
    if (!(std::abs(l.real()) < 0.5)) throw InvalidInput("LocalDataSet: archimedean |Re ℓ_j| must be < 1/2");
  for (const auto& [p, ell] : finite) {
    if (!is_prime(p)) throw InvalidInput("LocalDataSet: place " + std::to_string(p) + " is not prime");
    if (ell.n() != n) throw InvalidInput("LocalDataSet: parameter at " + std::to_string(p) + " has wrong rank");
  }
}

const SpectralParameter& LocalDataSet::at(long long place) const {
  if (place == 0) return infinity;
  auto it = finite.find(place);
  if (it == finite.end()) throw InvalidInput("LocalDataSet: no data at place " + std::to_string(place));
  return it->second;
}

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<std::pair<long long, int>> factorize(long long m) {
  if (m < 1) throw InvalidInput("factorize: m must be positive");
  std::vector<std::pair<long long, int>> out;
  for (long long d = 2; d * d <= m; ++d) {
    int e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

namespace {

// h_0..h_R of x
std::vector<cplx> complete_homogeneous(const std::vector<cplx>& x, int R) {
  std::vector<cplx> h(R + 1, 0.0);
  h[0] = 1.0;
  for (const cplx& xi : x)
    for (int r = 1; r <= R; ++r) h[r] += xi * h[r - 1];
  return h;
}

cplx det(std::vector<std::vector<cplx>> a) {
  const int n = static_cast<int>(a.size());
  cplx d = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      const cplx f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

}  // namespace

cplx schur(const std::vector<int>& k, const std::vector<cplx>& x) {
  const int n = static_cast<int>(x.size());
  if (static_cast<int>(k.size()) != n - 1) throw InvalidInput("schur: need n−1 exponents for n variables");
  std::vector<int> lam(n, 0);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < n - 1 - i; ++t) {
      if (k[t] < 0) throw InvalidInput("schur: exponents must be nonnegative");
      lam[i] += k[t];
    }
  const int R = lam[0] + n;
  const auto h = complete_homogeneous(x, R);
  auto H = [&](int r) { return r < 0 ? cplx(0.0) : h[r]; };
  std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = H(lam[i] - i + j);
  return det(std::move(m));
}

std::vector<cplx> satake_values(long long p, const SpectralParameter& ell_p) {
  std::vector<cplx> x(ell_p.n());
  const double lp = std::log(static_cast<double>(p));
  for (int i = 0; i < ell_p.n(); ++i) x[i] = std::exp(-ell_p[i] * lp);
  return x;
}

cplx satake_hecke_eigenvalue(int j, long long p, const SpectralParameter& ell_p) {
  const int n = ell_p.n();
  if (j < 0 || j > n) throw InvalidInput("satake_hecke_eigenvalue: j out of range");
  const auto x = satake_values(p, ell_p);
  // e_j by the product expansion of ∏(1 + x_i t)
  std::vector<cplx> e(n + 1, 0.0);
  e[0] = 1.0;
  for (const cplx& xi : x)
    for (int r = n; r >= 1; --r) e[r] += xi * e[r - 1];
  return e[j];
}

CoefficientTable::CoefficientTable(const LocalDataSet& data, long long dense_bound)
    : data_(data), n_(data.n), dense_(std::max(0LL, dense_bound)) {
  data_.validate();
  if (dense_ > 0) {
    if (n_ == 2) {
      dense_vals_.resize(dense_ + 1);
      for (long long m = 1; m <= dense_; ++m) dense_vals_[m] = compute({m});
    } else if (n_ == 3) {
      dense_vals_.resize((dense_ + 1) * (dense_ + 1));
      for (long long a = 1; a <= dense_; ++a)
        for (long long b = 1; b <= dense_; ++b) dense_vals_[a * (dense_ + 1) + b] = compute({a, b});
    }
  }
}

cplx CoefficientTable::compute(const HeckeIndex& m) const {
  if (static_cast<int>(m.size()) != n_ - 1) throw InvalidInput("coefficient: index must have n−1 entries");
  std::map<long long, std::vector<int>> exps;
  for (int k = 0; k < n_ - 1; ++k) {
    if (m[k] < 1) throw InvalidInput("coefficient: indices must be positive");
    for (auto [p, e] : factorize(m[k])) {
      auto& v = exps[p];
      v.resize(n_ - 1, 0);
      v[k] = e;
    }
  }
  cplx a = 1.0;
  for (const auto& [p, k] : exps) {
    auto it = data_.finite.find(p);
    if (it == data_.finite.end()) return 0.0;
    a *= schur(k, satake_values(p, it->second));
  }
  return a;
}

cplx CoefficientTable::operator()(const HeckeIndex& m) const {
  if (n_ == 2 && m.size() == 1) return at1(m[0]);
  if (n_ == 3 && m.size() == 2) return at2(m[0], m[1]);
  return compute(m);
}

cplx CoefficientTable::at1(long long m) const {
  if (m >= 1 && m <= dense_ && n_ == 2) return dense_vals_[m];
  return compute({m});
}

cplx CoefficientTable::at2(long long a, long long b) const {
  if (n_ == 3 && a >= 1 && b >= 1 && a <= dense_ && b <= dense_) return dense_vals_[a * (dense_ + 1) + b];
  return compute({a, b});
}

namespace {

void ordered_factorizations(long long N, int parts, std::vector<long long>& cur,
                            std::vector<std::vector<long long>>& out) {
  if (parts == 1) {
    cur.push_back(N);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long long d = 1; d <= N; ++d) {
    if (N % d) continue;
    cur.push_back(d);
    ordered_factorizations(N / d, parts - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<long long>> diagonals(int n, long long N) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> cur;
  ordered_factorizations(N, n, cur, out);
  return out;
}

}  // namespace

std::vector<IMat> hecke_cosets(int n, long long N) {
  if (N < 1) throw InvalidInput("hecke_cosets: N must be ≥ 1");
  require_rank(n, "hecke_cosets");
  std::vector<IMat> out;
  for (const auto& c : diagonals(n, N)) {
    // strictly upper entries, column-major over (i<j); c_{ij} ∈ [0, c_j)
    std::vector<std::pair<int, int>> slots;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < j; ++i) slots.emplace_back(i, j);
    IMat g = IMat::Zero(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = c[i];
    std::function<void(std::size_t)> rec = [&](std::size_t s) {
      if (s == slots.size()) {
        out.push_back(g);
        return;
      }
      const auto [i, j] = slots[s];
      for (long long v = 0; v < c[j]; ++v) {
        g(i, j) = v;
        rec(s + 1);
      }
      g(i, j) = 0;
    };
    rec(0);
  }
  return out;
}

long long hecke_coset_count(int n, long long N) {
  if (N < 1) throw InvalidInput("hecke_coset_count: N must be ≥ 1");
  long long total = 0;
  for (const auto& c : diagonals(n, N)) {
    long long t = 1;
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < j; ++r) t *= c[j];
    total += t;
  }
  return total;
}

cplx apply_T_N(const PointFunction& f, long long N, const IwasawaPoint& z) {
  const auto cos = hecke_cosets(z.n, N);
  std::vector<cplx> vals(cos.size());
  num::parallel_for(static_cast<int>(cos.size()),
                    [&](int i) { vals[i] = f(act(to_real(cos[i]), z)); });
  cplx s = 0.0;
  for (const cplx& v : vals) s += v;
  return s / std::pow(static_cast<double>(N), 0.5 * (z.n - 1));
}

cplx HeckeExpansion::eigenvalue(const std::function<cplx(int)>& eig) const {
  cplx s = 0.0;
  for (const auto& t : terms) {
    cplx v = t.coeff;
    for (int r : t.powers) v *= eig(r);
    s += v;
  }
  return s;
}

std::string HeckeExpansion::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    const double c = t.coeff;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const double a = std::abs(c);
    if (a != 1.0 || t.powers.empty()) os << a;
    for (std::size_t i = 0; i < t.powers.size(); ++i) {
      if (i || a != 1.0) os << "·";
      long long q = 1;
      for (int r = 0; r < t.powers[i]; ++r) q *= p;
      os << "T_" << q;
    }
  }
  return os.str();
}

HeckeExpansion T_p_j_expansion(int n, int j, long long p) {
  require_rank(n, "T_p_j_expansion");
  if (j < 1 || j > n - 1) throw InvalidInput("T_p_j_expansion: j must lie in 1..n−1");
  // memoized recursion on multiset monomials
  std::vector<std::map<std::vector<int>, double>> T(j + 1);
  T[0][{}] = 1.0;
  for (int jj = 1; jj <= j; ++jj)
    for (int k = 0; k < jj; ++k) {
      const double sign = (k % 2) ? -1.0 : 1.0;
      for (const auto& [mono, c] : T[jj - k - 1]) {
        auto m = mono;
        m.push_back(k + 1);
        std::sort(m.begin(), m.end());
        T[jj][m] += sign * c;
      }
    }
  HeckeExpansion ex;
  ex.j = j;
  ex.p = p;
  long long pr = 1;
  std::map<int, long long> counts;
  for (const auto& [mono, c] : T[j]) {
    if (c == 0.0) continue;
    ex.terms.push_back({c, mono});
    long long cnt = 1;
    for (int r : mono) {
      if (!counts.count(r)) {
        pr = 1;
        for (int i = 0; i < r; ++i) pr *= p;
        counts[r] = hecke_coset_count(n, pr);
      }
      cnt *= counts[r];
    }
    ex.sharp += cnt;
  }
  // longest monomial (T_p^j) first
  std::stable_sort(ex.terms.begin(), ex.terms.end(),
                   [](const HeckeMonomial& a, const HeckeMonomial& b) { return a.powers.size() > b.powers.size(); });
  return ex;
}

MultiplicativityReport verify_multiplicativity(const SpectralParameter& ell_p, long long p, int max_exp) {
  const int n = ell_p.n();
  if (max_exp < 0 || max_exp > 4) throw InvalidInput("verify_multiplicativity: max_exp must lie in 0..4");
  const auto x = satake_values(p, ell_p);
  auto A = [&](const std::vector<int>& k) { return schur(k, x); };
  MultiplicativityReport rep;
  std::vector<int> k(n - 1, 0);
  std::function<void(int)> over_k = [&](int pos) {
    if (pos < n - 1) {
      for (int v = 0; v <= max_exp; ++v) {
        k[pos] = v;
        over_k(pos + 1);
      }
      return;
    }
    for (int e = 0; e <= max_exp; ++e) {
      std::vector<int> first(n - 1, 0);
      first[0] = e;
      const cplx lhs = A(first) * A(k);
      cplx rhs = 0.0;
      std::vector<int> a(n, 0);
      std::function<void(int, int)> over_a = [&](int pos2, int left) {
        if (pos2 == n - 1) {
          a[n - 1] = left;
          std::vector<int> kk(n - 1);
          for (int j = 0; j < n - 1; ++j) kk[j] = k[j] + (j == 0 ? a[n - 1] : a[j - 1]) - a[j];
          for (int v : kk)
            if (v < 0) return;
          rhs += A(kk);
          return;
        }
        for (int v = 0; v <= std::min(left, k[pos2]); ++v) {
          a[pos2] = v;
          over_a(pos2 + 1, left - v);
        }
      };
      over_a(0, e);
      rep.max_deviation = std::max(rep.max_deviation, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
      ++rep.checks;
    }
  };
  over_k(0);
  return rep;
}

}  // namespace maass
