#include "maass/regions.hpp"

#include <algorithm>
#include <cmath>

#include "maass/bump_spectral.hpp"
#include "maass/core_geometry.hpp"
#include "maass/fundamental_domain.hpp"
#include "maass/hecke_schur.hpp"

namespace maass {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
const double kSiegelA = std::sqrt(3.0) / 2.0;
constexpr int kShards = 16;

IwasawaPoint right_act(const IwasawaPoint& z, const Mat& h) { return iwasawa_point(z.matrix() * h); }

double arc_distance(const IwasawaPoint& w) {
  // golden section over θ ∈ [π/3, 2π/3]; distance to a point is convex along a geodesic
  auto d = [&](double t) { return hyperbolic_distance(w, IwasawaPoint::upper_half_plane(std::cos(t), std::sin(t))); };
  double lo = kPi / 3.0, hi = 2.0 * kPi / 3.0;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - g * (hi - lo), e = lo + g * (hi - lo), fc = d(c), fe = d(e);
  for (int it = 0; it < 90; ++it) {
    if (fc < fe) {
      hi = e;
      e = c;
      fe = fc;
      c = hi - g * (hi - lo);
      fc = d(c);
    } else {
      lo = c;
      c = e;
      fc = fe;
      e = lo + g * (hi - lo);
      fe = d(e);
    }
  }
  return std::min({fc, fe, d(kPi / 3.0), d(2.0 * kPi / 3.0)});
}

}  // namespace

double siegel_volume(int n, double a) {
  require_rank(n, "siegel_volume");
  double v = 1.0;
  for (int k = 1; k < n; ++k) {
    const double e = k * (n - k);
    v *= std::pow(a, -e) / e;
  }
  return v;
}

IwasawaPoint sample_siegel(num::Rng& rng, int n, double a) {
  require_rank(n, "sample_siegel");
  // y_k has density ∝ y^{−k(n−k)−1} on [a, ∞): inverse CDF
  std::vector<double> y(n - 1);
  for (int k = 1; k < n; ++k) y[k - 1] = a * std::pow(1.0 - rng.uniform(), -1.0 / (k * (n - k)));
  Mat x = Mat::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) x(i, j) = rng.uniform(-0.5, 0.5);
  return IwasawaPoint(n, x, y);
}

std::optional<IwasawaPoint> sample_fundamental(num::Rng& rng, int n) {
  auto z = sample_siegel(rng, n, kSiegelA);
  if (!membership(z, false)) return std::nullopt;
  return z;
}

double hyperbolic_distance(const IwasawaPoint& z, const IwasawaPoint& w) {
  if (z.n != 2 || w.n != 2) throw Unsupported("hyperbolic_distance: n = 2 only");
  const double dx = z.x(0, 1) - w.x(0, 1), dy = z.y[0] - w.y[0];
  return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * z.y[0] * w.y[0]));
}

double distance_to_tilde_complement(const IwasawaPoint& z) {
  if (z.n != 2) throw Unsupported("distance_to_tilde_complement: n = 2 only");
  const double x = z.x(0, 1), y = z.y[0];
  double best = INFINITY;
  for (long long m = static_cast<long long>(std::floor(x)) - 1; m <= static_cast<long long>(std::floor(x)) + 2; ++m) {
    const double r2 = (x - m) * (x - m) + y * y;
    if (r2 < 1.0) return 0.0;
    best = std::min(best, std::asinh((r2 - 1.0) / (2.0 * y)));
  }
  return best;
}

double distance_to_fundamental(const IwasawaPoint& w) {
  if (w.n != 2) throw Unsupported("distance_to_fundamental: n = 2 only");
  if (membership(w, true)) return 0.0;
  const double x = w.x(0, 1), y = w.y[0];
  double best = arc_distance(w);
  for (double c : {-0.5, 0.5}) {
    // foot of the perpendicular to x = c sits at height |w − c|
    const double foot = std::max(kSiegelA, std::hypot(x - c, y));
    best = std::min(best, hyperbolic_distance(w, IwasawaPoint::upper_half_plane(c, foot)));
  }
  return best;
}

RegionSet::RegionSet(const RegionSpec& spec) : spec_(spec) {
  require_rank(spec.n, "RegionSet");
  if (spec.archimedean) {
    if (!(spec.delta > 0.0)) throw InvalidInput("RegionSet: δ must be positive");
    if (spec.n == 3) {
      if (spec.probes < 1) throw InvalidInput("RegionSet: need at least one probe");
      num::Rng rng(spec.probe_seed);
      for (int i = 0; i < spec.probes; ++i) probes_.push_back(sample_ball(rng, spec.n, spec.delta));
    }
  } else {
    if (!is_prime(spec.q)) throw InvalidInput("RegionSet: q_max must be prime");
    for (const auto& g : hecke_cosets(spec.n, spec.q)) {
      const Mat gr = to_real(g);
      cosets_.push_back(gr);
      // adj(γ) = det(γ)·γ^{-1}, integral
      inverse_.push_back(((gr.inverse() * static_cast<double>(int_det(g))).array().round()).matrix());
    }
  }
}

bool RegionSet::in_B1(const IwasawaPoint& z) const {
  if (!spec_.archimedean) {
    for (const auto& g : cosets_)
      if (!in_tilde_F(act(g, z))) return true;
    return false;
  }
  if (spec_.n == 2) return distance_to_tilde_complement(z) < kSqrt2 * spec_.delta;
  if (!in_tilde_F(z)) return true;
  for (const auto& h : probes_)
    if (!in_tilde_F(right_act(z, h))) return true;
  return false;
}

bool RegionSet::in_B2(const IwasawaPoint& w) const {
  if (membership(w, false)) return false;
  if (!spec_.archimedean) {
    for (const auto& g : inverse_)
      if (membership(act(g, w), false)) return true;
    return false;
  }
  if (spec_.n == 2) return distance_to_fundamental(w) < kSqrt2 * spec_.delta;
  for (const auto& h : probes_)
    if (membership(right_act(w, h), false)) return true;
  return false;
}

std::optional<IwasawaPoint> RegionSet::sample_B2(num::Rng& rng) const {
  auto z = sample_fundamental(rng, spec_.n);
  if (!z) return std::nullopt;
  IwasawaPoint w;
  if (spec_.archimedean) {
    // a point of B₂ where F ≠ F̃ lies outside 𝔉̃, so its preimage z is in B₁
    if (spec_.n == 2 && !in_B1(*z)) return std::nullopt;
    w = right_act(*z, sample_ball(rng, spec_.n, spec_.delta));
  } else {
    const auto k = rng.integer(0, static_cast<std::int64_t>(cosets_.size()) - 1);
    w = act(cosets_[static_cast<std::size_t>(k)], *z);
  }
  if (membership(w, false)) return std::nullopt;
  return w;
}

namespace {

template <class Hit>
VolumeEstimate siegel_fraction(int n, long long samples, std::uint64_t seed, const Hit& hit) {
  if (samples < 1) throw InvalidInput("volume: need at least one sample");
  std::vector<long long> hits(kShards, 0), counts(kShards, 0);
  num::parallel_for(kShards, [&](int s) {
    num::Rng rng(num::shard_seed(seed, static_cast<std::uint64_t>(s)));
    const long long want = samples / kShards + (s < samples % kShards ? 1 : 0);
    for (long long i = 0; i < want; ++i) {
      const auto z = sample_siegel(rng, n, kSiegelA);
      if (membership(z, false) && hit(z)) ++hits[s];
    }
    counts[s] = want;
  });
  VolumeEstimate v;
  for (int s = 0; s < kShards; ++s) {
    v.hits += hits[s];
    v.samples += counts[s];
  }
  const double V = siegel_volume(n, kSiegelA), p = static_cast<double>(v.hits) / v.samples;
  v.value = V * p;
  v.std_error = V * std::sqrt(std::max(p * (1.0 - p), 0.0) / v.samples);
  return v;
}

}  // namespace

VolumeEstimate vol_B1(const RegionSet& r, long long samples, std::uint64_t seed) {
  return siegel_fraction(r.spec().n, samples, seed, [&](const IwasawaPoint& z) { return r.in_B1(z); });
}

VolumeEstimate vol_fundamental(int n, long long samples, std::uint64_t seed) {
  return siegel_fraction(n, samples, seed, [](const IwasawaPoint&) { return true; });
}

}  // namespace maass
