#include <cmath>

#include "doctest.h"
#include "maass/numeric/quadrature.hpp"
#include "maass/numeric/special.hpp"
#include "maass/whittaker.hpp"

using namespace maass;

namespace {

// literal Jacquet integral for n = 3 reduced to two dimensions, real ℓ only
double jacquet_2d(double l1, double l2, double l3, double y1, double y2) {
  const double al = (1 + l1 - l2) / 2, be = (1 + l2 - l3) / 2, c = std::cbrt(1 / (y1 * y1 * y2));
  const double Kc = std::pow(c * c * y1, -2 * al) * std::pow(c, -2 * be);
  const double h = 0.01;
  cplx s = 0;
  for (int i = -600; i <= 600; ++i)
    for (int j = -600; j <= 600; ++j) {
      const double a = i * h, b = j * h, v = std::sinh(a), u = std::sinh(b), jw = std::cosh(a) * std::cosh(b);
      const double Q = y1 * y1 + u * u, B = v * v + y2 * y2 * u * u + y1 * y1 * y2 * y2, m = v * u / Q;
      const double r = y1 * std::sqrt(y2 * y2 * Q + v * v) / Q;
      const double val = std::pow(B, -al) * std::pow(Q, -be) * 2 * std::pow(kPi, be) * std::pow(r, 0.5 - be) *
                         std::cyl_bessel_k(be - 0.5, 2 * kPi * r) / std::tgamma(be);
      s += jw * val * std::polar(1.0, 2 * kPi * (m + u));
    }
  return (Kc * s * h * h).real();
}

}  // namespace

TEST_SUITE("whittaker") {
  TEST_CASE("K-Bessel of complex order against mpmath") {
    struct Ref {
      cplx nu;
      double x;
      cplx v;
    } refs[] = {
        {cplx(0, 9), 2.7, cplx(2.2562991090254554221e-7, 0)},
        {cplx(0, 9), 30, cplx(5.5966477988611683831e-15, 0)},
        {cplx(0.2, 3), 0.05, cplx(-0.0035660426352688143899, -0.015124019875405181714)},
        {cplx(0.4, -2), 7, cplx(0.00032620361093298996014, -0.000035439928132194132407)},
    };
    for (const auto& r : refs) {
      CHECK(std::abs(num::bessel_k(r.nu, r.x) - r.v) < 1e-12 * std::abs(r.v));
      num::BesselKTable T(r.nu);
      CHECK(std::abs(T(r.x) - r.v) < 1e-11 * std::abs(r.v));
    }
    for (double x : {0.1, 1.0, 5.0, 40.0})
      CHECK(std::abs(num::bessel_k(0.3, x).real() - std::cyl_bessel_k(0.3, x)) < 1e-13 * std::cyl_bessel_k(0.3, x));
    const cplx g = num::gamma(cplx(0.3, 9));
    CHECK(std::abs(g - cplx(-5.9434459455025109469e-7, -1.0090469852649179536e-6)) < 1e-13 * std::abs(g));
  }

  TEST_CASE("n = 2 closed form with the quadrature-fixed constant") {
    for (double nu : {0.3, -0.2, 0.45}) {
      const SpectralParameter ell({nu, -nu});
      const WhittakerFunction W(ell);
      const double s = nu + 0.5, c = 2 * std::pow(kPi, s) / std::tgamma(s);
      CHECK(std::abs(W.normalization() - c) < 1e-10 * c);
      for (double y : {0.3, 1.0, 2.5}) {
        const double v = c * std::sqrt(y) * std::cyl_bessel_k(std::abs(nu), 2 * kPi * y);  // K_{−ν} = K_ν
        CHECK(std::abs(W.torus({y}) - v) < 1e-10 * v);
      }
    }
  }

  TEST_CASE("covariance and decay") {
    const SpectralParameter ell({cplx(0, 4), cplx(0, -4)});
    const WhittakerFunction W(ell);
    const auto z = IwasawaPoint::upper_half_plane(0.3, 0.8), z1 = IwasawaPoint::upper_half_plane(1.3, 0.8);
    CHECK(std::abs(W(z, 1) - W(z1, 1)) < 1e-12 * std::abs(W(z, 1)));
    CHECK(std::abs(W(z, 1) - std::polar(1.0, 2 * kPi * 0.3) * W.torus({0.8})) < 1e-12 * std::abs(W(z, 1)));
    const WhittakerFunction W0(SpectralParameter({0.0, 0.0}));
    CHECK(std::abs(W0.torus({4.0}) / W0.torus({8.0})) > std::exp(2 * kPi * 4) / 10);
  }

  TEST_CASE("n = 3 against the literal Jacquet integral at real ℓ") {
    for (auto l : std::vector<std::array<double, 3>>{{5, 0, -5}, {4.5, 0.5, -5}, {5, -1, -4}}) {
      const WhittakerFunction W(SpectralParameter({l[0], l[1], l[2]}));
      const double a = W.torus({0.7, 0.9}).real(), b = jacquet_2d(l[0], l[1], l[2], 0.7, 0.9);
      CHECK(std::abs(a - b) < 1e-6 * std::abs(b));
    }
  }

  TEST_CASE("tail norm") {
    const SpectralParameter l0({0.0, 0.0});
    const double oracle = num::integrate_adaptive(
        [](double y) {
          const double k = std::cyl_bessel_k(0.0, 2 * kPi * y);
          return 4 * y * k * k / (y * y);
        },
        1, 20, 1e-13);
    const auto t = whittaker_tail_norm(1.0, l0);
    CHECK(std::abs(t.to_double() - oracle) < 1e-6 * oracle);
    CHECK(whittaker_tail_norm(2.0, l0) < t);
    const SpectralParameter l3({cplx(0.1, 3), cplx(0, -1), cplx(-0.1, -2)});
    CHECK(whittaker_tail_norm(std::sqrt(3.0) / 2, l3).finite_positive());
    const auto big = whittaker_tail_norm(256 * std::exp(0.2), SpectralParameter({cplx(0, 9), cplx(0, -9)}));
    CHECK(big.finite_positive());
    CHECK(big.to_double() == 0.0);  // far below double range
  }
}
