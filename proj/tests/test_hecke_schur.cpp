#include <cmath>

#include "doctest.h"
#include "maass/core_geometry.hpp"
#include "maass/hecke_schur.hpp"
#include "maass/numeric/rng.hpp"

using namespace maass;

namespace {

// bialternant det[x_i^{λ_j + n − j}] / det[x_i^{n − j}]
cplx bialternant(const std::vector<int>& lambda, const std::vector<cplx>& x) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXcd num(n, n), den(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      num(i, j) = std::pow(x[i], lambda[j] + n - 1 - j);
      den(i, j) = std::pow(x[i], n - 1 - j);
    }
  return num.determinant() / den.determinant();
}

std::vector<cplx> rand_x(num::Rng& rng, int n) {
  std::vector<cplx> x(n);
  for (auto& v : x) v = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return x;
}

}  // namespace

TEST_SUITE("hecke_schur") {
  TEST_CASE("Schur polynomials") {
    num::Rng rng(31);
    const auto x2 = rand_x(rng, 2);
    CHECK(std::abs(schur({0}, x2) - 1.0) < 1e-14);
    CHECK(std::abs(schur({1}, x2) - (x2[0] + x2[1])) < 1e-14);
    for (int t = 0; t < 20; ++t) {
      const auto x = rand_x(rng, 3);
      // k = (k₁, k₂) ↔ partition (k₁ + k₂, k₁, 0)
      for (auto k : std::vector<std::vector<int>>{{1, 1}, {2, 0}, {0, 3}, {2, 1}}) {
        const cplx s = schur(k, x), b = bialternant({k[0] + k[1], k[0], 0}, x);
        CHECK(std::abs(s - b) < 1e-9 * std::max(1.0, std::abs(b)));
      }
    }
  }

  TEST_CASE("λ_p^(j)") {
    const SpectralParameter z3({0.0, 0.0, 0.0});
    CHECK(std::abs(satake_hecke_eigenvalue(1, 5, z3) - 3.0) < 1e-14);
    CHECK(std::abs(satake_hecke_eigenvalue(2, 5, z3) - 3.0) < 1e-14);
    const SpectralParameter ell({cplx(0.1, 0.5), cplx(-0.3, 1.0), cplx(0.2, -1.5)});
    const auto x = satake_values(3, ell);
    CHECK(std::abs(satake_hecke_eigenvalue(1, 3, ell) - (x[0] + x[1] + x[2])) < 1e-14);
    CHECK(std::abs(satake_hecke_eigenvalue(2, 3, ell) - (x[0] * x[1] + x[0] * x[2] + x[1] * x[2])) < 1e-14);
    // A(p at slot j) = e_{n−j}(p^{−ℓ})
    CHECK(std::abs(schur({0, 1}, x) - satake_hecke_eigenvalue(1, 3, ell)) < 1e-13);
  }

  TEST_CASE("coefficient table") {
    LocalDataSet d;
    d.n = 3;
    d.infinity = SpectralParameter({cplx(0, 1), cplx(0, 2), cplx(0, -3)});
    d.finite[2] = SpectralParameter({cplx(0.1, 0.3), cplx(0, -0.2), cplx(-0.1, -0.1)});
    const CoefficientTable A(d);
    CHECK(std::abs(A({1, 1}) - 1.0) < 1e-15);
    CHECK(std::abs(A({3, 1})) == 0.0);
    CHECK(std::abs(A({6, 2})) == 0.0);
    CHECK(std::abs(A({1, 2}) - satake_hecke_eigenvalue(1, 2, d.finite[2])) < 1e-13);
  }

  TEST_CASE("coset sets") {
    CHECK(hecke_cosets(2, 1).size() == 1);
    for (long long p : {2LL, 3LL, 5LL, 7LL}) {
      CHECK(static_cast<long long>(hecke_cosets(2, p).size()) == p + 1);
      CHECK(static_cast<long long>(hecke_cosets(3, p).size()) == p * p + p + 1);
    }
    for (int n = 2; n <= 3; ++n)
      for (long long N : {4LL, 6LL, 9LL, 12LL})
        CHECK(static_cast<long long>(hecke_cosets(n, N).size()) == hecke_coset_count(n, N));
  }

  TEST_CASE("T_N on simple functions") {
    const auto z = IwasawaPoint::upper_half_plane(0.2, 1.3);
    auto one = [](const IwasawaPoint&) { return cplx(1.0); };
    CHECK(std::abs(apply_T_N(one, 1, z) - 1.0) < 1e-15);
    CHECK(std::abs(apply_T_N(one, 3, z) - 4.0 / std::sqrt(3.0)) < 1e-14);
  }

  TEST_CASE("T_p^(j) expansion") {
    const auto e1 = T_p_j_expansion(3, 1, 2);
    CHECK(e1.terms.size() == 1);
    CHECK(e1.sharp == 7);
    CHECK(T_p_j_expansion(2, 1, 2).sharp == 3);
    // T_p^(2) = T_p∘T_p − T_{p²}: its eigenvalue on Satake data is the literal-Schur A(1, p)
    num::Rng rng(32);
    for (int t = 0; t < 10; ++t) {
      std::vector<cplx> e(3);
      e[0] = cplx(rng.uniform(-0.4, 0.4), rng.uniform(-3, 3));
      e[1] = cplx(rng.uniform(-0.4, 0.4), rng.uniform(-3, 3));
      e[2] = -e[0] - e[1];
      const SpectralParameter ell(e);
      const auto x = satake_values(2, ell);
      const auto ex = T_p_j_expansion(3, 2, 2);
      const cplx ev = ex.eigenvalue([&](int r) { return schur({r, 0}, x); });
      CHECK(std::abs(ev - schur({1, 0}, x) * schur({1, 0}, x) + schur({2, 0}, x)) < 1e-12);
      CHECK(std::abs(ev - schur({0, 1}, x)) < 1e-12);
    }
  }

  TEST_CASE("multiplicativity") {
    CHECK(verify_multiplicativity(SpectralParameter({cplx(0.2, 3.1), cplx(-0.2, -3.1)}), 2, 3).max_deviation < 1e-10);
    CHECK(verify_multiplicativity(SpectralParameter({cplx(0.1, 0.7), cplx(-0.3, 0.2), cplx(0.2, -0.9)}), 2, 2)
              .max_deviation < 1e-10);
  }

  TEST_CASE("primes") {
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    const auto f = factorize(360);
    CHECK(f.size() == 3);
    CHECK(f[0] == std::make_pair(2LL, 3));
  }
}
