#include "maass/quasi_maass.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maass/core_geometry.hpp"
#include "maass/fundamental_domain.hpp"

namespace maass {

namespace {

// a, b with a·d − b·c = 1 for coprime (c, d)
std::pair<long long, long long> complete_row(long long c, long long d) {
  // extended Euclid: x·c + y·d = 1 → a = y, b = −x
  long long r0 = c, r1 = d, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const long long q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (r0 < 0) {
    s0 = -s0;
    t0 = -t0;
  }
  return {t0, -s0};
}

// Σ_{m>M} m^q r^m ≤ (M+1)^q r^{M+1} (1+r)/(1−r)³ for 0 ≤ q ≤ 2
double power_geometric_tail(long long M, double q, double r) {
  if (r >= 1.0) return INFINITY;
  return std::pow(static_cast<double>(M + 1), q) * std::pow(r, static_cast<double>(M + 1)) * (1.0 + r) /
         std::pow(1.0 - r, 3.0);
}

}  // namespace

QuasiMaassForm::QuasiMaassForm(LocalDataSet data, TruncationPolicy trunc) : data_(std::move(data)), trunc_(trunc) {
  data_.validate();
  const int n = data_.n;
  const long long M = trunc_.resolved_m_max(n);
  if (M < 1) throw InvalidInput("TruncationPolicy: m_max must be ≥ 1");
  if (trunc_.coset_height < 1) throw InvalidInput("TruncationPolicy: coset_height must be ≥ 1");
  table_ = std::make_unique<CoefficientTable>(data_, M);
  W_ = whittaker_for(data_.infinity);
  for (const auto& [p, ell] : data_.finite)
    for (const auto& l : ell.ell) theta_ = std::max(theta_, std::abs(l.real()));
  if (n == 2) {
    for (long long m = 1; m <= M; ++m) {
      const cplx a = table_->at1(m);
      if (a != 0.0) a1_.emplace_back(m, a);
    }
  } else {
    for (long long m1 = 1; m1 <= M; ++m1)
      for (long long m2 = 1; m2 <= M; ++m2) {
        const cplx a = table_->at2(m1, m2);
        if (a != 0.0) a2_.emplace_back(m1, m2, a);
      }
    // empirical ceiling for log|W| − (power prefactor) + envelope, over a
    // spread of torus points; used only to decide which terms to skip
    const auto& l3 = data_.infinity[2];
    double worst = -INFINITY;
    for (double a : {0.05, 0.2, 0.5, 1.0, 3.0, 10.0, 40.0})
      for (double b : {0.05, 0.2, 0.5, 1.0, 3.0, 10.0, 40.0}) {
        const auto s = W_->torus_scaled({a, b});
        const double pw = (1.0 + 0.5 * l3.real()) * std::log(a) + (1.0 - 0.5 * l3.real()) * std::log(b);
        worst = std::max(worst, std::log(std::abs(s.mant)) + s.log_scale - pw +
                                    2.0 * kPi * WhittakerFunction::decay_exponent({a, b}));
      }
    log_w_scale_ = worst + 3.0;
  }
}

QuasiMaassValue QuasiMaassForm::eval(const IwasawaPoint& z) const {
  if (z.n != data_.n) throw InvalidInput("quasi-Maass: point rank does not match data");
  for (double y : z.y)
    if (!(y >= trunc_.y_floor))
      throw InvalidInput("quasi-Maass: y below y_floor; reduce the point first");
  return data_.n == 2 ? eval2(z) : eval3(z);
}

QuasiMaassValue QuasiMaassForm::eval2(const IwasawaPoint& z) const {
  const double x = z.xij(0, 1), y = z.y[0];
  QuasiMaassValue out;
  for (const auto& [m, a] : a1_) {
    const double md = static_cast<double>(m);
    const cplx w = W_->torus({md * y});
    out.value += a / std::sqrt(md) * w * 2.0 * std::cos(2.0 * kPi * md * x);
    ++out.terms;
  }
  const long long M = trunc_.resolved_m_max(2);
  out.tail = std::abs(W_->normalization()) * power_geometric_tail(M, 0.5 + theta_, std::exp(-2.0 * kPi * y));
  if (trunc_.throw_on_tail && out.tail > trunc_.tol)
    throw NumericalFailure("quasi-Maass: truncation tail " + std::to_string(out.tail) + " exceeds tol; raise m_max");
  return out;
}

QuasiMaassValue QuasiMaassForm::eval3(const IwasawaPoint& z) const {
  const long long M = trunc_.resolved_m_max(3);
  const long long H = trunc_.coset_height;
  const double x12 = z.xij(0, 1), y2 = z.y[1], y1 = z.y[0];
  const double ln_cut = std::log(trunc_.tol) - 7.0;  // skip terms below tol·1e−3
  const auto& l3 = data_.infinity[2];
  const double gr = std::abs(0.75 * l3.real());

  // log-bound on |A|/(m₁m₂)·|W(Y)|
  auto log_bound = [&](double la, double Y1, double Y2) {
    const double E = WhittakerFunction::decay_exponent({Y1, Y2});
    const double tshift = std::abs((2.0 / 3.0) * std::log(Y1 / Y2)) + 1.0;
    return la + log_w_scale_ + (1.0 + 0.5 * l3.real()) * std::log(Y1) + (1.0 - 0.5 * l3.real()) * std::log(Y2) -
           2.0 * kPi * E + gr * tshift;
  };

  QuasiMaassValue out;
  double skipped = 0.0;
  for (long long c = -H; c <= H; ++c)
    for (long long d = -H; d <= H; ++d) {
      if (std::gcd(c, d) != 1) continue;
      // |cz′ + d|² with z′ = x₁₂ + i y₂
      const double q2 = (c * x12 + d) * (c * x12 + d) + static_cast<double>(c * c) * y2 * y2;
      const double Y1 = y1 * std::sqrt(q2), Y2 = y2 / q2;
      if (log_bound(0.0, Y1, Y2) < ln_cut) {
        skipped += std::exp(log_bound(0.0, Y1, Y2));
        continue;
      }
      const auto [a, b] = complete_row(c, d);
      IMat g = IMat::Identity(3, 3);
      g(0, 0) = a;
      g(0, 1) = b;
      g(1, 0) = c;
      g(1, 1) = d;
      const IwasawaPoint w = act(to_real(g), z);
      const double wx12 = w.xij(0, 1), wx23 = w.xij(1, 2);
      for (const auto& [m1, m2, A] : a2_) {
        const double m1d = static_cast<double>(m1), m2d = static_cast<double>(m2);
        const double lb = log_bound(std::log(std::abs(A)) - std::log(m1d * m2d), m1d * w.y[0], m2d * w.y[1]);
        if (lb < ln_cut) {
          skipped += std::exp(lb);
          continue;
        }
        const cplx Wv = W_->torus({m1d * w.y[0], m2d * w.y[1]});
        const cplx base = A / (m1d * m2d) * Wv;
        // m₂ and −m₂ carry phases e^{2πi(±m₂x₁₂′ − m₁x₂₃′)}
        out.value += base * std::polar(1.0, -2.0 * kPi * m1d * wx23) * 2.0 * std::cos(2.0 * kPi * m2d * wx12);
        out.terms += 2;
      }
    }
  // outside the enumerated box: the next shell in m and in (c, d)
  double shell = 0.0;
  const double Md = static_cast<double>(M + 1);
  shell += 2.0 * std::exp(log_bound(2.0 * std::log(Md) - std::log(Md), Md * y1, y2));
  shell += 2.0 * std::exp(log_bound(2.0 * std::log(Md) - std::log(Md), y1, Md * y2));
  for (long long k = -(H + 1); k <= H + 1; ++k)
    for (auto [c, d] : {std::pair{H + 1, k}, std::pair{-(H + 1), k}, std::pair{k, H + 1}, std::pair{k, -(H + 1)}}) {
      const double q2 = (c * x12 + d) * (c * x12 + d) + static_cast<double>(c * c) * y2 * y2;
      shell += std::exp(log_bound(0.0, y1 * std::sqrt(q2), y2 / q2));
    }
  out.tail = shell + skipped;
  if (trunc_.throw_on_tail && out.tail > trunc_.tol)
    throw NumericalFailure("quasi-Maass: estimated tail " + std::to_string(out.tail) +
                           " exceeds tol; raise m_max / coset_height");
  return out;
}

QuasiMaassValue QuasiMaassForm::eval_lifted(const IwasawaPoint& z) const {
  const auto r = reduce(z);
  // z already reduced: evaluate at z itself, not at the recomputed representative
  if (r.gamma == IMat::Identity(z.n, z.n)) return eval(z);
  return eval(r.reduced);
}

QuasiMaassValue eval_F(const LocalDataSet& data, const IwasawaPoint& z, const TruncationPolicy& trunc) {
  return QuasiMaassForm(data, trunc).eval(z);
}

QuasiMaassValue eval_F_tilde(const LocalDataSet& data, const IwasawaPoint& z, const TruncationPolicy& trunc) {
  return QuasiMaassForm(data, trunc).eval_lifted(z);
}

namespace {

IwasawaPoint perturb(const IwasawaPoint& z, num::Rng& rng, double scale) {
  IwasawaPoint w = z;
  for (int i = 0; i < z.n; ++i)
    for (int j = i + 1; j < z.n; ++j) w.x(i, j) += scale * rng.normal();
  for (double& y : w.y) y *= std::exp(scale * rng.normal());
  return w;
}

}  // namespace

SupEstimate sup_discrepancy(const QuasiMaassForm& F, const RegionSampler& sampler,
                            const std::function<bool(const IwasawaPoint&)>& in_region, std::uint64_t seed,
                            long long samples, int refine_steps) {
  if (samples < 1) throw InvalidInput("sup_discrepancy: need at least one sample");
  constexpr int kShards = 16;
  struct Shard {
    std::vector<double> vals;
    std::vector<IwasawaPoint> pts;
    long long attempted = 0;
    double max_tail = 0.0;
  };
  std::vector<Shard> shards(kShards);
  num::parallel_for(kShards, [&](int s) {
    const long long want = samples / kShards + (s < samples % kShards ? 1 : 0);
    num::Rng rng(num::shard_seed(seed, static_cast<std::uint64_t>(s)));
    Shard& sh = shards[s];
    const long long cap = 2000 * std::max<long long>(want, 1);
    while (static_cast<long long>(sh.vals.size()) < want && sh.attempted < cap) {
      ++sh.attempted;
      auto p = sampler(rng);
      if (!p) continue;
      const auto a = F.eval(*p), b = F.eval_lifted(*p);
      sh.vals.push_back(std::abs(a.value - b.value));
      sh.pts.push_back(*p);
      sh.max_tail = std::max({sh.max_tail, a.tail, b.tail});
    }
  });
  SupEstimate est;
  std::vector<double> stream;
  std::vector<const IwasawaPoint*> where;
  for (const auto& sh : shards) {
    est.attempted += sh.attempted;
    est.max_tail = std::max(est.max_tail, sh.max_tail);
    for (std::size_t i = 0; i < sh.vals.size(); ++i) {
      stream.push_back(sh.vals[i]);
      where.push_back(&sh.pts[i]);
    }
  }
  est.accepted = static_cast<long long>(stream.size());
  if (est.accepted == 0) throw InvalidInput("sup_discrepancy: no sample landed in the region");
  const std::size_t half = stream.size() / 2;
  const double s1 = half ? *std::max_element(stream.begin(), stream.begin() + half) : 0.0;
  const double s2 = *std::max_element(stream.begin() + half, stream.end());
  est.uncertainty = std::abs(s1 - s2);

  // refine from the best few starting points
  std::vector<std::size_t> order(stream.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t top = std::min<std::size_t>(4, order.size());
  std::partial_sort(order.begin(), order.begin() + top, order.end(),
                    [&](std::size_t a, std::size_t b) { return stream[a] > stream[b]; });
  est.sup = stream[order[0]];
  est.argmax = *where[order[0]];
  std::vector<std::pair<double, IwasawaPoint>> results(top);
  num::parallel_for(static_cast<int>(top), [&](int t) {
    num::Rng rng(num::shard_seed(seed ^ 0xA5A5A5A5ULL, 1000 + t));
    IwasawaPoint best = *where[order[t]];
    double bv = stream[order[t]];
    double scale = 0.05;
    for (int k = 0; k < refine_steps; ++k) {
      const IwasawaPoint c = perturb(best, rng, scale);
      bool ok = false;
      try {
        ok = in_region(c);
      } catch (const Error&) {
        ok = false;
      }
      if (ok) {
        const double v = std::abs(F(c) - F.lifted(c));
        if (v > bv) {
          bv = v;
          best = c;
          continue;
        }
      }
      if (k % 20 == 19) scale *= 0.6;
    }
    results[t] = {bv, best};
  });
  for (const auto& [v, p] : results)
    if (v > est.sup) {
      est.sup = v;
      est.argmax = p;
    }
  return est;
}

}  // namespace maass
