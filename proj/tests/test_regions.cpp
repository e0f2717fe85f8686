#include <cmath>

#include "doctest.h"
#include "maass/core_geometry.hpp"
#include "maass/fundamental_domain.hpp"
#include "maass/regions.hpp"

using namespace maass;

namespace {

// Vol(B₁), n = 2, S = {∞}: ∫ [1/y_lo − 1/y_hi]_+ dx over |x| ≤ 1/2, where
// the δ-neighbourhood of the disk |z − m| < 1 reaches up to y_hi
double b1_exact(double delta) {
  const double s = std::sinh(std::sqrt(2.0) * delta);
  const int N = 20000;
  double acc = 0;
  for (int i = 0; i < N; ++i) {
    const double x = -0.5 + (i + 0.5) / N, ylo = std::sqrt(1 - x * x);
    double yhi = 0;
    for (int m = -1; m <= 1; ++m) {
      const double d = (x - m) * (x - m);
      if (d < 1 + s * s) yhi = std::max(yhi, s + std::sqrt(s * s + 1 - d));
    }
    if (yhi > ylo) acc += (1 / ylo - 1 / yhi) / N;
  }
  return acc;
}

}  // namespace

TEST_SUITE("regions") {
  TEST_CASE("Siegel volumes and samples") {
    CHECK(siegel_volume(2, 0.5) == doctest::Approx(2.0));
    num::Rng rng(61);
    for (int t = 0; t < 100; ++t) CHECK(siegel_membership(sample_siegel(rng, 3, 0.8), 0.8, 0.5));
  }

  TEST_CASE("fundamental domain volume") {
    const auto v = vol_fundamental(2, 400000, 62);
    CHECK(std::abs(v.value - kPi / 3) < 4 * v.std_error);
  }

  TEST_CASE("distances") {
    const auto i = IwasawaPoint::upper_half_plane(0, 1), i2 = IwasawaPoint::upper_half_plane(0, 2);
    CHECK(hyperbolic_distance(i, i2) == doctest::Approx(std::log(2.0)));
    CHECK(distance_to_tilde_complement(i2) == doctest::Approx(std::asinh(0.75)));
    CHECK(distance_to_fundamental(i2) == 0.0);
    const auto below = IwasawaPoint::upper_half_plane(0, 0.5);
    CHECK(distance_to_fundamental(below) == doctest::Approx(std::log(2.0)));
  }

  TEST_CASE("B₁ volume against quadrature") {
    for (double d : {0.1, 0.3}) {
      const RegionSet r({2, true, d, 0});
      const auto v = vol_B1(r, 400000, 63);
      CHECK(std::abs(v.value - b1_exact(d)) < 4 * v.std_error);
    }
  }

  TEST_CASE("B₂ samples satisfy the predicate") {
    for (bool arch : {true, false}) {
      const RegionSet r({2, arch, 0.2, arch ? 0 : 2});
      num::Rng rng(64);
      int accepted = 0;
      for (int t = 0; t < 2000; ++t)
        if (const auto w = r.sample_B2(rng)) {
          ++accepted;
          CHECK(r.in_B2(*w));
          CHECK_FALSE(membership(*w, false));
        }
      CHECK(accepted > 0);
    }
  }
}
