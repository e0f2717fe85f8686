#include "maass/converse_bound.hpp"

#include <algorithm>
#include <cmath>

#include "maass/annihilator.hpp"
#include "maass/core_geometry.hpp"
#include "maass/whittaker.hpp"

namespace maass {

namespace {

bool contains(const PlaceSet& S, long long v) { return std::find(S.begin(), S.end(), v) != S.end(); }

void check_places(const LocalDataSet& d, const PlaceSet& S, const char* who) {
  if (!contains(S, 0)) throw InvalidInput(std::string(who) + ": S must contain ∞");
  for (long long v : S) {
    if (v < 0 || (v > 0 && !is_prime(v))) throw InvalidInput(std::string(who) + ": places are 0 (∞) or primes");
    if (!d.has_place(v)) throw InvalidInput(std::string(who) + ": place " + std::to_string(v) + " missing from data");
  }
}

long long max_finite(const PlaceSet& S) {
  long long q = 0;
  for (long long v : S) q = std::max(q, v);
  return q;
}

}  // namespace

double distance_dS(const LocalDataSet& a, const LocalDataSet& b, const PlaceSet& S) {
  if (a.n != b.n) throw InvalidInput("distance_dS: rank mismatch");
  check_places(a, S, "distance_dS");
  check_places(b, S, "distance_dS");
  const int n = a.n;
  double d = 0.0;
  for (int j = 1; j < n; ++j) d += std::norm(casimir_eigenvalue(j, a.infinity) - casimir_eigenvalue(j, b.infinity));
  for (long long q : S) {
    if (q == 0) continue;
    for (int j = 1; j <= n / 2; ++j)
      d += std::norm(satake_hecke_eigenvalue(j, q, a.at(q)) - satake_hecke_eigenvalue(j, q, b.at(q)));
  }
  return d;
}

std::map<std::pair<long long, int>, long long> hecke_counts(int n, const PlaceSet& S) {
  std::map<std::pair<long long, int>, long long> out;
  for (long long q : S) {
    if (q == 0) continue;
    for (int j = 1; j <= n / 2; ++j) out[{q, j}] = T_p_j_expansion(n, j, q).sharp;
  }
  return out;
}

double a_s_finite(int n, double delta, const PlaceSet& S) {
  double s = 0.0;
  for (const auto& [key, c] : hecke_counts(n, S)) s += static_cast<double>(c) * static_cast<double>(c);
  return s == 0.0 ? 0.0 : ub_delta(n, delta) * s;
}

double analytic_conductor(const SpectralParameter& ell) {
  double c = 1.0;
  for (int j = 0; j < ell.n(); ++j) c *= 1.0 + std::abs(ell[j]);
  return c;
}

AInfinity a_infinity(const BumpProfile& b, const SpectralParameter& ell, AInfinityMode mode, int panels) {
  if (ell.n() != b.n) throw InvalidInput("a_infinity: rank mismatch");
  AInfinity out;
  for (int j = 1; j < b.n; ++j) {
    const cplx lam = casimir_eigenvalue(j, ell);
    double v, e;
    if (j == 1 && mode != AInfinityMode::Numerical) {
      // Δ = −C^(1), λ_n = −λ^(1)
      v = laplacian_H_bound(b, -lam);
      e = 0.0;
      out.modes.push_back("closed");
    } else {
      const auto q = casimir_H_integral(j, b, lam, panels);
      if (!std::isfinite(q.value) || q.error > 0.05 * std::abs(q.value))
        throw NumericalFailure("a_infinity: Casimir quadrature did not resolve (j = " + std::to_string(j) + ")");
      v = q.value;
      e = q.error;
      out.modes.push_back("numerical");
    }
    out.integrals.push_back(v);
    out.errors.push_back(e);
    out.total += v * v;
    out.total_error += 2.0 * v * e;
  }
  return out;
}

double auto_delta(const SpectralParameter& ell) { return 0.5 * max_delta(ell); }

double laplacian_bracket(const BumpProfile& b, cplx lambda_n) {
  const double cv = (1.0 + std::exp(2.0 * b.delta)) / std::pow(b.delta, 4) * b.c_delta * b.vol_ball;
  return std::norm(6.0 * cv + 2.0 * lambda_n);
}

namespace {

// shared prefix of both theorems: hypotheses, symbol, bump, tail, region sets
void assemble_common(BoundReport& r, const LocalDataSet& data, long long p, double delta, const BoundOptions& opt,
                     bool archimedean, long long q_max) {
  data.validate();
  require_rank(data.n, "bound");
  if (data.finite.empty()) throw InvalidInput("bound: M must contain a finite place");
  if (p <= 0 || !data.has_place(p)) throw InvalidInput("bound: p must be a finite place of M");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidInput("bound: δ must be positive");
  const int n = data.n;
  r.data = data;
  r.p = p;
  r.delta = delta;
  r.options = opt;
  r.delta_max = max_delta(data.infinity);
  if (delta > r.delta_max * (1.0 + 1e-12))
    throw HypothesisViolation("bound: δ = " + std::to_string(delta) + " exceeds the admissible " +
                              std::to_string(r.delta_max));
  r.symbol = natural_symbol(p, data.infinity, data.at(p));
  if (!(std::abs(r.symbol) > 1e-12)) throw HypothesisViolation("bound: the annihilator symbol vanishes at (ℓ_∞, ℓ_p)");
  r.norm_bound = natural_norm_bound(n, p);
  r.conductor = analytic_conductor(data.infinity);
  r.bump = make_bump(n, delta);
  r.hat_H = spherical_transform_H(data.infinity, r.bump);
  r.hat_H_above_half = std::abs(r.hat_H) > 0.5;
  if (!r.hat_H_above_half) r.flags.push_back("hat_H_not_above_half");

  r.T = std::exp(4.0 * (std::ldexp(std::log(static_cast<double>(p)), n - 1) + delta)) * (1.0 + opt.tail_nudge);
  r.tail = whittaker_tail_norm(r.T, data.infinity);
  if (!r.tail.finite_positive()) r.flags.push_back("zero_tail");

  RegionSpec spec;
  spec.n = n;
  spec.archimedean = archimedean;
  spec.delta = delta;
  spec.q = q_max;
  spec.probes = opt.probes;
  spec.probe_seed = num::shard_seed(opt.seed, 3);
  const RegionSet region(spec);
  // B₁ for the volume; for the finite case the finite-place table pairs it with T_q 𝔉 − 𝔉 for the sup
  r.vol_B1 = vol_B1(region, opt.volume_samples, num::shard_seed(opt.seed, 1));
  if (r.vol_B1.hits == 0) r.flags.push_back("zero_volume");

  const QuasiMaassForm F(data, opt.truncation);
  const auto est = sup_discrepancy(
      F, [&](num::Rng& rng) { return region.sample_B2(rng); }, [&](const IwasawaPoint& w) { return region.in_B2(w); },
      num::shard_seed(opt.seed, 2), opt.sup_samples, opt.refine_steps);
  r.sup.measured = est.sup;
  r.sup.used = est.sup * (1.0 + opt.sup_inflation);
  r.sup.uncertainty = est.uncertainty;
  r.sup.argmax = est.argmax;
  r.sup.accepted = est.accepted;
  r.sup.attempted = est.attempted;
  r.sup.max_tail = est.max_tail;
  if (est.sup == 0.0) r.flags.push_back("zero_sup");
}

double rel(double err, double v) { return v != 0.0 ? err / std::abs(v) : 0.0; }

}  // namespace

BoundReport theorem_main_bound(const LocalDataSet& data, const PlaceSet& S, long long p, double delta,
                               const BoundOptions& opt) {
  check_places(data, S, "theorem_main_bound");
  BoundReport r;
  r.kind = "main";
  r.S = S;
  std::sort(r.S.begin(), r.S.end());
  r.S.erase(std::unique(r.S.begin(), r.S.end()), r.S.end());
  r.q_max = max_finite(r.S);
  assemble_common(r, data, p, delta, opt, r.q_max == 0, r.q_max);

  const int n = data.n;
  r.counts = hecke_counts(n, r.S);
  r.a_s_finite = a_s_finite(n, delta, r.S);
  r.a_inf = a_infinity(r.bump, data.infinity, opt.a_mode, opt.casimir_panels);

  const double A = r.a_inf.total + r.a_s_finite;
  const num::WideReal s2 = num::WideReal(r.sup.used) * num::WideReal(r.sup.used);
  r.epsilon = s2 * num::WideReal(4.0 * r.norm_bound) * num::WideReal(r.vol_B1.value) * num::WideReal(A) /
              (num::WideReal(std::norm(r.symbol)) * r.tail);
  const double es = 2.0 * rel(r.sup.uncertainty, r.sup.measured), ev = rel(r.vol_B1.std_error, r.vol_B1.value),
               ea = rel(r.a_inf.total_error, A);
  r.epsilon_rel_error = std::sqrt(es * es + ev * ev + ea * ea);
  return r;
}

BoundReport theorem_laplacian_bound(const LocalDataSet& data, long long p, double delta, const BoundOptions& opt) {
  BoundReport r;
  r.kind = "laplacian";
  r.S = {0};
  assemble_common(r, data, p, delta, opt, true, 0);

  r.lambda_n = laplace_eigenvalue(data.infinity);
  const double cv = (1.0 + std::exp(2.0 * delta)) / std::pow(delta, 4) * r.bump.c_delta * r.bump.vol_ball;
  r.bracket_theorem = laplacian_bracket(r.bump, r.lambda_n);
  r.a_closed = std::pow(3.0 * cv + std::abs(r.lambda_n), 2);

  const num::WideReal base = num::WideReal(r.sup.used) * num::WideReal(r.sup.used) * num::WideReal(r.norm_bound) *
                             num::WideReal(r.vol_B1.value) / (num::WideReal(std::norm(r.symbol)) * r.tail);
  r.window_theorem = base * num::WideReal(r.bracket_theorem);
  r.window_proof = base * num::WideReal(4.0 * r.a_closed);
  const double es = 2.0 * rel(r.sup.uncertainty, r.sup.measured), ev = rel(r.vol_B1.std_error, r.vol_B1.value);
  r.window_rel_error = std::sqrt(es * es + ev * ev);
  return r;
}

num::WideReal upper_bound_rhs(const BoundReport& r) {
  const num::WideReal sup(r.sup.used);
  return sup * sup * num::WideReal(r.norm_bound) * num::WideReal(r.vol_B1.value) *
         num::WideReal(r.a_inf.total + r.a_s_finite);
}

num::WideReal lower_bound_rhs(const BoundReport& r) {
  return num::WideReal(0.25) * num::WideReal(std::abs(r.symbol)) * num::WideReal(std::abs(r.symbol)) * r.tail;
}

}  // namespace maass
