#include <cmath>

#include "doctest.h"
#include "maass/core_geometry.hpp"
#include "maass/numeric/rng.hpp"

using namespace maass;

namespace {

Mat random_sl(num::Rng& rng, int n) {
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  if (g.determinant() < 0) g.row(0) *= -1.0;
  return g / std::pow(g.determinant(), 1.0 / n);
}

}  // namespace

TEST_SUITE("core_geometry") {
  TEST_CASE("Iwasawa of the identity and of an N·A element") {
    const auto id = iwasawa_decompose(Mat::Identity(3, 3));
    CHECK(id.z.y[0] == doctest::Approx(1.0));
    CHECK(id.z.y[1] == doctest::Approx(1.0));
    CHECK((id.k - Mat::Identity(3, 3)).norm() < 1e-14);

    Mat g(2, 2);
    g << 1, 1, 0, 1;
    Mat a(2, 2);
    a << 2, 0, 0, 0.5;
    const auto z = iwasawa_point(g * a);
    CHECK(z.xij(0, 1) == doctest::Approx(1.0));
    CHECK(z.y[0] == doctest::Approx(4.0));
  }

  TEST_CASE("decomposition reconstructs g with orthogonal k") {
    num::Rng rng(11);
    for (int n = 2; n <= 3; ++n)
      for (int t = 0; t < 200; ++t) {
        const Mat g = random_sl(rng, n);
        const auto d = iwasawa_decompose(g);
        CHECK((d.z.matrix() * d.k - g).norm() < 1e-10);
        CHECK((d.k * d.k.transpose() - Mat::Identity(n, n)).norm() < 1e-12);
      }
  }

  TEST_CASE("polar height") {
    CHECK(polar_height(Mat::Identity(2, 2)) == doctest::Approx(0.0));
    Mat d(2, 2);
    d << std::exp(0.7), 0, 0, std::exp(-0.7);
    CHECK(polar_height(d) == doctest::Approx(std::sqrt(2.0) * 0.7).epsilon(1e-14));
    // oracle: log singular values from an independent SVD
    num::Rng rng(12);
    for (int t = 0; t < 100; ++t) {
      const Mat g = random_sl(rng, 3);
      Eigen::JacobiSVD<Mat> svd(g);
      double s = 0.0;
      for (int i = 0; i < 3; ++i) s += std::pow(std::log(svd.singularValues()(i)), 2);
      CHECK(polar_height(g) == doctest::Approx(std::sqrt(s)).epsilon(1e-10));
      CHECK(polar_height(g.inverse()) == doctest::Approx(polar_height(g)).epsilon(1e-10));
    }
  }

  TEST_CASE("iw_y of the y₁ = 4 point") {
    const auto t = iw_y(IwasawaPoint::upper_half_plane(0.0, 4.0).matrix());
    CHECK(t.a[0] == doctest::Approx(std::log(2.0)));
    CHECK(t.a[1] == doctest::Approx(-std::log(2.0)));
  }

  TEST_CASE("φ_ℓ") {
    num::Rng rng(13);
    const Mat g = random_sl(rng, 3);
    CHECK(std::abs(phi_ell(SpectralParameter::minus_rho(3), g) - 1.0) < 1e-12);
    const SpectralParameter ell({cplx(0.2, 3), cplx(-0.1, -1), cplx(-0.1, -2)});
    CHECK(std::abs(phi_ell(ell, Mat::Identity(3, 3)) - 1.0) < 1e-12);
    // n = 2: y^{ν+1/2}
    const cplx nu(0.3, 2.0);
    const double y = 1.7;
    const cplx v = phi_ell(SpectralParameter({nu, -nu}), IwasawaPoint::upper_half_plane(0.4, y).matrix());
    CHECK(std::abs(v - std::pow(y, nu + 0.5)) < 1e-12);
  }

  TEST_CASE("Laplace and Casimir eigenvalues") {
    CHECK(std::abs(laplace_eigenvalue(SpectralParameter({0.0, 0.0})) - 0.25) < 1e-15);
    CHECK(std::abs(laplace_eigenvalue(SpectralParameter({cplx(0, 3), cplx(0, -3)})) - 9.25) < 1e-12);
    CHECK(std::abs(laplace_eigenvalue(SpectralParameter({0.0, 0.0, 0.0})) - 1.0 / 3.0) < 1e-15);
    const SpectralParameter ell({cplx(0.1, 2), cplx(0.2, -1), cplx(-0.3, -1)});
    CHECK(std::abs(casimir_eigenvalue(1, ell) + laplace_eigenvalue(ell)) < 1e-14);
    CHECK(std::abs(casimir_eigenvalue(2, SpectralParameter::minus_rho(3))) < 1e-14);
    num::Rng rng(14);
    const Mat g = random_sl(rng, 3) * 0.8;
    const Mat h = g / std::cbrt(g.determinant());
    auto f = [&](const Mat& m) { return phi_ell(ell, m); };
    CHECK(std::abs(apply_casimir_fd(2, f, h) - casimir_eigenvalue(2, ell) * f(h)) < 1e-6 * std::abs(f(h)) * 10);
  }

  TEST_CASE("Haar density, ball and Siegel membership") {
    CHECK(haar_density({1.0}) == doctest::Approx(1.0));
    CHECK(haar_density({2.0}) == doctest::Approx(0.25));
    CHECK(haar_density({2.0, 3.0}) == doctest::Approx(1.0 / (8.0 * 27.0)));
    CHECK(in_ball(Mat::Identity(2, 2), 0.1));
    Mat e(2, 2);
    e << std::exp(1.0), 0, 0, std::exp(-1.0);
    CHECK_FALSE(in_ball(e, 1.0));
    e << std::exp(0.1), 0, 0, std::exp(-0.1);
    CHECK(in_ball(e, 0.2));
    CHECK(siegel_membership(IwasawaPoint::gl3(0, 0, 0, 2, 2), 1.0, 0.5));
    CHECK_FALSE(siegel_membership(IwasawaPoint::gl3(0, 0, 0, 0.5, 2), 1.0, 0.5));
    CHECK_FALSE(siegel_membership(IwasawaPoint::upper_half_plane(0.6, 2), 1.0, 0.5));
  }
}
