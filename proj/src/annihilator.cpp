#include "maass/annihilator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "maass/hecke_schur.hpp"

namespace maass {

namespace {

// k-subsets of {0..n−1} as bitmasks, in increasing order
std::vector<unsigned> subsets(int n, int k) {
  std::vector<unsigned> out;
  for (unsigned m = 0; m < (1u << n); ++m)
    if (__builtin_popcount(m) == k) out.push_back(m);
  return out;
}

cplx subset_sum(const std::vector<cplx>& v, unsigned mask) {
  cplx s = 0.0;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) s += v[i];
  return s;
}

void check_pair(const SpectralParameter& a, const SpectralParameter& b, const char* who) {
  if (a.n() != b.n()) throw InvalidInput(std::string(who) + ": rank mismatch");
}

void check_prime(long long p, const char* who) {
  if (!is_prime(p)) throw InvalidInput(std::string(who) + ": p must be prime");
}

// partitions with `len` parts in [0, cap], non-increasing
void gen_partitions(int len, int cap, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (int r = cap; r >= 0; --r) {
    cur.push_back(r);
    gen_partitions(len, r, cur, out);
    cur.pop_back();
  }
}

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string partition_label(const std::vector<int>& part) {
  std::string s = "(";
  for (std::size_t i = 0; i < part.size(); ++i) s += (i ? "," : "") + std::to_string(part[i]);
  return s + ")";
}

}  // namespace

cplx natural_symbol(long long p, const SpectralParameter& ell1, const SpectralParameter& ell2) {
  check_pair(ell1, ell2, "natural_symbol");
  check_prime(p, "natural_symbol");
  const int n = ell1.n();
  const double lp = std::log(static_cast<double>(p));
  cplx prod = 1.0;
  for (int k = 1; k <= n / 2; ++k) {
    const auto S = subsets(n, k);
    for (unsigned I : S)
      for (unsigned J : S) prod *= 1.0 - std::exp(-(subset_sum(ell1.ell, I) + subset_sum(ell2.ell, J)) * lp);
  }
  return prod;
}

double natural_norm_bound(int n, long long p) {
  if (n < 2) throw InvalidInput("natural_norm_bound: n ≥ 2");
  check_prime(p, "natural_norm_bound");
  const double a = (n * n - 1.0) / (2.0 * (n * n + 1.0));
  const double base = std::pow(static_cast<double>(p), -a) + std::pow(static_cast<double>(p), a);
  return std::pow(base, n * std::ldexp(1.0, n - 1));
}

// ---- Rational / AffineForm --------------------------------------------------

Rational::Rational(long long n, long long d) {
  if (d == 0) throw InvalidInput("Rational: zero denominator");
  if (d < 0) n = -n, d = -d;
  const long long g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
}

Rational Rational::operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }

AffineForm AffineForm::symbol(int s, Rational r) {
  AffineForm f;
  if (!r.is_zero()) f.coef[s] = r;
  return f;
}

cplx AffineForm::eval(const std::vector<cplx>& sym) const {
  cplx v = c.value();
  for (const auto& [s, r] : coef) v += r.value() * sym.at(s);
  return v;
}

AffineForm AffineForm::operator+(const AffineForm& o) const {
  AffineForm f = *this;
  f.c = f.c + o.c;
  for (const auto& [s, r] : o.coef) {
    const Rational v = f.coef.count(s) ? f.coef[s] + r : r;
    if (v.is_zero()) f.coef.erase(s);
    else f.coef[s] = v;
  }
  return f;
}

AffineForm AffineForm::operator-() const { return scaled(Rational(-1)); }

AffineForm AffineForm::scaled(Rational r) const {
  AffineForm f;
  f.c = c * r;
  if (r.is_zero()) return f;
  for (const auto& [s, q] : coef) f.coef[s] = q * r;
  return f;
}

ExactSymbolValue natural_symbol_exact(long long p, const SymbolicParameter& ell1, const SymbolicParameter& ell2,
                                      const std::vector<cplx>& symbols) {
  if (ell1.size() != ell2.size() || ell1.size() < 2) throw InvalidInput("natural_symbol_exact: rank mismatch");
  check_prime(p, "natural_symbol_exact");
  const int n = static_cast<int>(ell1.size());
  const double lp = std::log(static_cast<double>(p));
  auto sum = [](const SymbolicParameter& l, unsigned mask) {
    AffineForm s;
    for (int i = 0; mask; ++i, mask >>= 1)
      if (mask & 1u) s = s + l[i];
    return s;
  };
  ExactSymbolValue out;
  cplx prod = 1.0;
  for (int k = 1; k <= n / 2; ++k) {
    const auto S = subsets(n, k);
    for (unsigned I : S)
      for (unsigned J : S) {
        const AffineForm e = sum(ell1, I) + sum(ell2, J);
        if (e.is_zero()) ++out.forced_zero_factors;
        else prod *= 1.0 - std::exp(-e.eval(symbols) * lp);
      }
  }
  out.value = out.forced_zero_factors ? cplx(0.0) : prod;
  return out;
}

// ---- factorization ------------------------------------------------------------

SymbolFactorization::SymbolFactorization(int n, long long p) : n_(n), p_(p) {
  if (n < 2 || n > 4) throw Unsupported("factorize_symbol: n ∈ {2, 3, 4}");
  check_prime(p, "factorize_symbol");
  for (int k = 1; k <= n / 2; ++k) {
    const int d = static_cast<int>(binom(n, k));
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    gen_partitions(d, d, cur, parts);
    parts_.push_back(std::move(parts));
  }
}

std::size_t SymbolFactorization::size() const {
  std::size_t s = 1;
  for (const auto& p : parts_) s *= p.size();
  return s;
}

std::vector<int> SymbolFactorization::decode(std::size_t j) const {
  if (j >= size()) throw InvalidInput("SymbolFactorization: pair index out of range");
  std::vector<int> idx(parts_.size());
  for (std::size_t k = parts_.size(); k-- > 0;) {
    idx[k] = static_cast<int>(j % parts_[k].size());
    j /= parts_[k].size();
  }
  return idx;
}

std::vector<cplx> SymbolFactorization::B(int k, const SpectralParameter& ell1) const {
  if (ell1.n() != n_) throw InvalidInput("SymbolFactorization: rank mismatch");
  const double lp = std::log(static_cast<double>(p_));
  const auto S = subsets(n_, k);
  std::vector<cplx> e(S.size() + 1, 0.0);
  e[0] = 1.0;
  for (unsigned I : S) {
    const cplx X = std::exp(-subset_sum(ell1.ell, I) * lp);
    for (std::size_t r = S.size(); r >= 1; --r) e[r] += X * e[r - 1];
  }
  return e;
}

namespace {

cplx monomial_symmetric(std::vector<int> lam, const std::vector<cplx>& Y) {
  std::sort(lam.begin(), lam.end());
  cplx s = 0.0;
  do {
    cplx t = 1.0;
    for (std::size_t i = 0; i < lam.size(); ++i)
      for (int r = 0; r < lam[i]; ++r) t *= Y[i];
    s += t;
  } while (std::next_permutation(lam.begin(), lam.end()));
  return s;
}

cplx a_of(const std::vector<int>& lam, const std::vector<cplx>& B) {
  cplx a = 1.0;
  int deg = 0;
  for (int r : lam) a *= B[r], deg += r;
  return (deg % 2) ? -a : a;
}

std::vector<cplx> Y_values(int n, int k, long long p, const SpectralParameter& ell2) {
  const double lp = std::log(static_cast<double>(p));
  std::vector<cplx> Y;
  for (unsigned J : subsets(n, k)) Y.push_back(std::exp(-subset_sum(ell2.ell, J) * lp));
  return Y;
}

}  // namespace

cplx SymbolFactorization::a(std::size_t j, const SpectralParameter& ell1) const {
  const auto idx = decode(j);
  cplx v = 1.0;
  for (int k = 1; k <= kmax(); ++k) v *= a_of(parts_[k - 1][idx[k - 1]], B(k, ell1));
  return v;
}

cplx SymbolFactorization::b(std::size_t j, const SpectralParameter& ell2) const {
  if (ell2.n() != n_) throw InvalidInput("SymbolFactorization: rank mismatch");
  const auto idx = decode(j);
  cplx v = 1.0;
  for (int k = 1; k <= kmax(); ++k) v *= monomial_symmetric(parts_[k - 1][idx[k - 1]], Y_values(n_, k, p_, ell2));
  return v;
}

std::string SymbolFactorization::label(std::size_t j) const {
  const auto idx = decode(j);
  std::string s;
  for (int k = 1; k <= kmax(); ++k) {
    const auto& lam = parts_[k - 1][idx[k - 1]];
    s += (k > 1 ? " " : "") + std::string("k") + std::to_string(k) + ":[";
    for (std::size_t i = 0; i < lam.size(); ++i) s += (i ? "," : "") + std::to_string(lam[i]);
    s += "]";
  }
  return s;
}

cplx SymbolFactorization::evaluate(const SpectralParameter& ell1, const SpectralParameter& ell2) const {
  check_pair(ell1, ell2, "SymbolFactorization::evaluate");
  if (ell1.n() != n_) throw InvalidInput("SymbolFactorization: rank mismatch");
  cplx total = 1.0;
  for (int k = 1; k <= kmax(); ++k) {
    const auto Bk = B(k, ell1);
    const auto Y = Y_values(n_, k, p_, ell2);
    cplx s = 0.0;
    for (const auto& lam : parts_[k - 1]) s += a_of(lam, Bk) * monomial_symmetric(lam, Y);
    total *= s;
  }
  return total;
}

SymbolFactorization factorize_symbol(int n, long long p) { return SymbolFactorization(n, p); }

// ---- explicit expansions ------------------------------------------------------

ExpansionEvaluation evaluate_expansions(long long p, const SpectralParameter& ell1, const SpectralParameter& ell2) {
  check_pair(ell1, ell2, "evaluate_expansions");
  const int n = ell1.n();
  if (n != 2 && n != 3) throw Unsupported("evaluate_expansions: n ∈ {2, 3}");
  ExpansionEvaluation ev;
  ev.symbol = natural_symbol(p, ell1, ell2);
  const auto v = satake_values(p, ell2);
  const double lp = std::log(static_cast<double>(p));
  cplx k1 = 0.0, km1 = 0.0;
  for (const auto& l : ell1.ell) k1 += std::exp(l * lp), km1 += std::exp(-l * lp);
  if (n == 2) {
    const cplx Tp = schur({1}, v), Tp2 = schur({2}, v);
    const cplx kap = k1;
    ev.literal = Tp2 + Tp * Tp - 2.0 * Tp * kap + 1.0;
    ev.corrected = Tp2 + kap * kap - 2.0 * Tp * kap + 1.0;
    ev.identified_term = kap * kap - Tp * Tp;
    return ev;
  }
  const cplx T = satake_hecke_eigenvalue(1, p, ell2), T2 = satake_hecke_eigenvalue(2, p, ell2);
  const cplx k2 = -km1 * km1 + 3.0 * k1, km2 = k1 * k1 - 3.0 * km1;
  const cplx k3 = -k2 * k1, km3 = -km2 * km1;
  ev.literal = T * k3 + T * T * k2 - T * T * T - T * T2 * T2 * k1 + T * T * T2 * km1 + T2 * T2 * km2 + T2 * T2 * T2 +
               T2 * km3;
  ev.identified_term = k1 * k1 * k1 - km1 * km1 * km1;
  ev.corrected = ev.literal + ev.identified_term;
  return ev;
}

std::string expansion_string(int n, bool corrected) {
  if (n == 2)
    return corrected ? "T_{p^2} + L_k^2 - 2 T_p L_k + 1" : "T_{p^2} + T_p^2 - 2 T_p L_k + 1";
  if (n == 3) {
    std::string s =
        "T_p L_k3 + T_p^2 L_k2 - T_p^3 - T_p (T_p^(2))^2 L_k1 + T_p^2 T_p^(2) L_k-1 + (T_p^(2))^2 L_k-2 + "
        "(T_p^(2))^3 + T_p^(2) L_k-3";
    return corrected ? s + " + L_k1^3 - L_k-1^3" : s;
  }
  throw Unsupported("expansion_string: n ∈ {2, 3}");
}

// ---- Eisenstein -----------------------------------------------------------------

void EisensteinProfile::validate() const {
  if (n < 2) throw InvalidInput("EisensteinProfile: n ≥ 2");
  if (constant) return;
  const int r = static_cast<int>(partition.size());
  if (r < 2) throw InvalidInput("EisensteinProfile: need at least two blocks");
  int tot = 0;
  for (int ni : partition) {
    if (ni < 1 || ni >= n) throw InvalidInput("EisensteinProfile: block sizes must lie in [1, n)");
    tot += ni;
  }
  if (tot != n) throw InvalidInput("EisensteinProfile: partition does not sum to n");
  if (static_cast<int>(t.size()) != r || static_cast<int>(phi_infinity.size()) != r ||
      static_cast<int>(phi_finite.size()) != r)
    throw InvalidInput("EisensteinProfile: t / constituent counts must match the partition");
  cplx s = 0.0;
  double scale = 1.0;
  for (int i = 0; i < r; ++i) s += static_cast<double>(partition[i]) * t[i], scale += std::abs(t[i]);
  if (std::abs(s) > 1e-12 * scale) throw InvalidInput("EisensteinProfile: Σ n_i t_i must vanish");
  for (int i = 0; i < r; ++i)
    for (const auto* phi : {&phi_infinity[i], &phi_finite[i]}) {
      if (static_cast<int>(phi->size()) != partition[i])
        throw InvalidInput("EisensteinProfile: constituent parameter has wrong rank");
      cplx z = 0.0;
      for (const auto& l : *phi) z += l;
      if (std::abs(z) > 1e-12 * (1.0 + std::abs(phi->front())))
        throw InvalidInput("EisensteinProfile: constituent parameter must sum to zero");
    }
}

SpectralParameter eisenstein_parameters(const EisensteinProfile& prof, long long place) {
  prof.validate();
  if (place != 0) check_prime(place, "eisenstein_parameters");
  if (prof.constant) return SpectralParameter::minus_rho(prof.n);
  const double sign = place == 0 ? 1.0 : -1.0;
  std::vector<cplx> ell;
  int eta = 0;
  for (std::size_t i = 0; i < prof.partition.size(); ++i) {
    const int ni = prof.partition[i];
    const cplx shift = 0.5 * (ni - prof.n) + prof.t[i] + static_cast<double>(eta);
    const auto& phi = place == 0 ? prof.phi_infinity[i] : prof.phi_finite[i];
    for (int j = 0; j < ni; ++j) ell.push_back(sign * shift + phi[j]);
    eta += ni;
  }
  return SpectralParameter(ell, 1e-9);
}

SymbolicProfile symbolic_eisenstein(const EisensteinProfile& prof) {
  prof.validate();
  SymbolicProfile out;
  const int n = prof.n;
  if (prof.constant) {
    for (int k = 1; k <= n; ++k) {
      const AffineForm c = AffineForm::constant(Rational(-(n - 2 * k + 1), 2));
      out.infinity.push_back(c);
      out.finite.push_back(c);
    }
    return out;
  }
  const int r = static_cast<int>(prof.partition.size());
  std::vector<AffineForm> t(r);
  AffineForm acc;
  for (int i = 0; i + 1 < r; ++i) {
    t[i] = AffineForm::symbol(static_cast<int>(out.symbols.size()));
    out.symbols.push_back(prof.t[i]);
    acc = acc + t[i].scaled(Rational(prof.partition[i]));
  }
  t[r - 1] = acc.scaled(Rational(-1, prof.partition[r - 1]));

  auto constituent = [&](const std::vector<cplx>& phi) {
    std::vector<AffineForm> f;
    AffineForm s;
    for (std::size_t j = 0; j + 1 < phi.size(); ++j) {
      f.push_back(AffineForm::symbol(static_cast<int>(out.symbols.size())));
      out.symbols.push_back(phi[j]);
      s = s + f.back();
    }
    f.push_back(-s);
    return f;
  };
  int eta = 0;
  for (int i = 0; i < r; ++i) {
    const int ni = prof.partition[i];
    const AffineForm shift = AffineForm::constant(Rational(ni - n, 2) + Rational(eta)) + t[i];
    const auto pinf = constituent(prof.phi_infinity[i]);
    const auto pfin = constituent(prof.phi_finite[i]);
    for (int j = 0; j < ni; ++j) {
      out.infinity.push_back(shift + pinf[j]);
      out.finite.push_back(-shift + pfin[j]);
    }
    eta += ni;
  }
  return out;
}

std::vector<std::vector<int>> eisenstein_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      if (cur.size() >= 2) out.push_back(cur);
      return;
    }
    for (int k = 1; k <= left && k < n; ++k) {
      cur.push_back(k);
      rec(left - k);
      cur.pop_back();
    }
  };
  rec(n);
  return out;
}

SpectralParameter random_parameter(num::Rng& rng, int n, double re_max, double im_range) {
  std::vector<double> re(n), im(n);
  for (;;) {
    double mean = 0.0;
    for (auto& x : re) x = rng.uniform(-re_max, re_max), mean += x / n;
    bool ok = true;
    for (auto& x : re) {
      x -= mean;
      ok = ok && std::abs(x) <= re_max;
    }
    if (ok) break;
  }
  double mean = 0.0;
  for (auto& x : im) x = rng.uniform(-im_range, im_range), mean += x / n;
  std::vector<cplx> e(n);
  for (int i = 0; i < n; ++i) e[i] = {re[i], im[i] - mean};
  // force an exact zero sum in floating point
  cplx s = 0.0;
  for (int i = 0; i + 1 < n; ++i) s += e[i];
  e[n - 1] = -s;
  return SpectralParameter(e);
}

namespace {

std::vector<cplx> permuted(std::vector<cplx> v, num::Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.integer(0, static_cast<std::int64_t>(i) - 1)]);
  return v;
}

EisensteinProfile random_profile(int n, const std::vector<int>& part, num::Rng& rng) {
  EisensteinProfile prof;
  prof.n = n;
  prof.partition = part;
  const int r = static_cast<int>(part.size());
  cplx acc = 0.0;
  for (int i = 0; i + 1 < r; ++i) {
    prof.t.emplace_back(rng.uniform(-0.2, 0.2), rng.uniform(-15.0, 15.0));
    acc += static_cast<double>(part[i]) * prof.t.back();
  }
  prof.t.push_back(-acc / static_cast<double>(part[r - 1]));
  for (int ni : part) {
    if (ni == 1 || rng.uniform() < 0.25) {
      prof.phi_infinity.emplace_back(ni, 0.0);
      prof.phi_finite.emplace_back(ni, 0.0);
    } else {
      prof.phi_infinity.push_back(random_parameter(rng, ni, 0.3, 15.0).ell);
      prof.phi_finite.push_back(random_parameter(rng, ni, 0.3, 3.0).ell);
    }
  }
  return prof;
}

}  // namespace

AnnihilationReport verify_annihilation(int n, long long p, int trials, std::uint64_t seed) {
  if (n != 2 && n != 3) throw Unsupported("verify_annihilation: n ∈ {2, 3}");
  check_prime(p, "verify_annihilation");
  if (trials < 1) throw InvalidInput("verify_annihilation: trials ≥ 1");
  AnnihilationReport rep;
  rep.n = n;
  rep.p = p;
  rep.trials = trials;

  const auto parts = eisenstein_partitions(n);
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    std::vector<double> fl(trials), ex(trials);
    num::parallel_for(trials, [&](int i) {
      num::Rng rng(num::shard_seed(seed ^ (0x51ED270B2D5A1A1DULL * (pi + 1)), i));
      const auto prof = random_profile(n, parts[pi], rng);
      fl[i] = std::abs(natural_symbol(p, eisenstein_parameters(prof, 0), eisenstein_parameters(prof, p)));
      const auto sym = symbolic_eisenstein(prof);
      ex[i] = std::abs(natural_symbol_exact(p, sym.infinity, sym.finite, sym.symbols).value);
    });
    const std::string lab = partition_label(parts[pi]);
    rep.max_eisenstein[lab] = *std::max_element(fl.begin(), fl.end());
    rep.max_eisenstein_exact[lab] = *std::max_element(ex.begin(), ex.end());
  }

  EisensteinProfile cst;
  cst.n = n;
  cst.constant = true;
  rep.max_constant = std::abs(natural_symbol(p, eisenstein_parameters(cst, 0), eisenstein_parameters(cst, p)));
  const auto csym = symbolic_eisenstein(cst);
  const double cex = std::abs(natural_symbol_exact(p, csym.infinity, csym.finite, csym.symbols).value);

  // self-dual pairs: ℓ closed under negation as a multiset at both places
  std::vector<double> sd(trials), sdx(trials);
  num::parallel_for(trials, [&](int i) {
    num::Rng rng(num::shard_seed(seed ^ 0x5E1FD0A1ULL, i));
    const cplx a(rng.uniform(-0.3, 0.3), rng.uniform(-15.0, 15.0));
    const cplx b(rng.uniform(-0.3, 0.3), rng.uniform(-3.0, 3.0));
    if (n == 2) {
      sd[i] = std::abs(natural_symbol(p, SpectralParameter(permuted({a, -a}, rng)),
                                      SpectralParameter(permuted({b, -b}, rng))));
      sdx[i] = 0.0;
      return;
    }
    const auto A = permuted({a, 0.0, -a}, rng), Bv = permuted({b, 0.0, -b}, rng);
    sd[i] = std::abs(natural_symbol(p, SpectralParameter(A), SpectralParameter(Bv)));
    // symbols 0 ↔ a, 1 ↔ b; the zero entry stays a literal zero
    auto lift = [](const std::vector<cplx>& v, const cplx& s, int id) {
      SymbolicParameter out;
      for (const auto& x : v)
        out.push_back(x == s ? AffineForm::symbol(id) : x == -s ? AffineForm::symbol(id, -1) : AffineForm{});
      return out;
    };
    sdx[i] = std::abs(natural_symbol_exact(p, lift(A, a, 0), lift(Bv, b, 1), {a, b}).value);
  });
  const double sdmax = *std::max_element(sd.begin(), sd.end());
  rep.self_dual_applicable = (n == 3);
  if (n == 3) {
    rep.max_self_dual = sdmax;
    rep.max_self_dual_exact = *std::max_element(sdx.begin(), sdx.end());
  } else {
    rep.self_dual_counterexample = sdmax;
  }

  rep.max_abs = std::max(rep.max_constant, rep.max_self_dual);
  rep.max_abs_exact = std::max(cex, rep.max_self_dual_exact);
  for (const auto& [k, v] : rep.max_eisenstein) rep.max_abs = std::max(rep.max_abs, v);
  for (const auto& [k, v] : rep.max_eisenstein_exact) rep.max_abs_exact = std::max(rep.max_abs_exact, v);
  rep.passed = rep.max_abs < 1e-9 && rep.max_abs_exact < 1e-14;
  return rep;
}

NormSweepReport norm_bound_sweep(int n, long long p, long long samples, std::uint64_t seed, double im_range) {
  if (samples < 1) throw InvalidInput("norm_bound_sweep: samples ≥ 1");
  NormSweepReport rep;
  rep.bound = natural_norm_bound(n, p);
  rep.samples = samples;
  const double re_max = 0.5 - 1.0 / (n * n + 1.0);
  std::vector<double> v(static_cast<std::size_t>(samples));
  num::parallel_for(static_cast<int>(samples), [&](int i) {
    num::Rng rng(num::shard_seed(seed, i));
    const auto l1 = random_parameter(rng, n, re_max, im_range);
    const auto l2 = random_parameter(rng, n, re_max, im_range);
    v[i] = std::abs(natural_symbol(p, l1, l2));
  });
  for (double x : v) {
    rep.max_abs = std::max(rep.max_abs, x);
    if (x > rep.bound) ++rep.violations;
  }
  return rep;
}

}  // namespace maass
