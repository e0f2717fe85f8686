#include <cmath>

#include "doctest.h"
#include "maass/annihilator.hpp"

using namespace maass;

TEST_SUITE("annihilator") {
  TEST_CASE("forced zeros") {
    const SpectralParameter a({cplx(0.2, 3), cplx(-0.2, -3)}), neg({cplx(-0.2, -3), cplx(0.2, 3)});
    CHECK(std::abs(natural_symbol(2, a, neg)) < 1e-14);
    const SpectralParameter z({0.0, 0.0});
    CHECK(std::abs(natural_symbol(3, z, z)) < 1e-14);
    const SpectralParameter sd({cplx(0, 1.3), 0.0, cplx(0, -1.3)});
    CHECK(std::abs(natural_symbol(2, sd, sd)) < 1e-14);
  }

  TEST_CASE("n = 2 four-factor product") {
    const SpectralParameter l1({cplx(0, 1), cplx(0, -1)}), l2({cplx(0, 2), cplx(0, -2)});
    cplx prod = 1.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) prod *= 1.0 - std::pow(2.0, -(l1[i] + l2[j]));
    CHECK(std::abs(natural_symbol(2, l1, l2) - prod) < 1e-13);
  }

  TEST_CASE("pair factorization reproduces the product") {
    num::Rng rng(41);
    for (int n = 2; n <= 3; ++n) {
      const auto F = factorize_symbol(n, 3);
      for (int t = 0; t < 20; ++t) {
        const auto a = random_parameter(rng, n, 0.4, 6.0), b = random_parameter(rng, n, 0.4, 3.0);
        const cplx s = natural_symbol(3, a, b);
        CHECK(std::abs(F.evaluate(a, b) - s) < 1e-10 * std::max(1.0, std::abs(s)));
      }
    }
    const SpectralParameter a({cplx(0.1, 2), cplx(-0.1, -2)}), neg({cplx(-0.1, -2), cplx(0.1, 2)});
    CHECK(std::abs(factorize_symbol(2, 2).evaluate(a, neg)) < 1e-10);
  }

  TEST_CASE("operator expansions") {
    num::Rng rng(42);
    for (int n = 2; n <= 3; ++n)
      for (int t = 0; t < 50; ++t) {
        const auto a = random_parameter(rng, n, 0.45, 8.0), b = random_parameter(rng, n, 0.45, 8.0);
        const auto e = evaluate_expansions(2, a, b);
        const double sc = std::max(1.0, std::abs(e.symbol));
        CHECK(std::abs(e.corrected - e.symbol) < 1e-10 * sc);
        CHECK(std::abs(e.literal + e.identified_term - e.symbol) < 1e-10 * sc);
      }
    CHECK_FALSE(expansion_string(2, true).empty());
  }

  TEST_CASE("Eisenstein and constant profiles") {
    EisensteinProfile e;
    e.n = 2;
    e.partition = {1, 1};
    e.t = {cplx(0.1, 2.5), cplx(-0.1, -2.5)};
    e.phi_infinity = {{0.0}, {0.0}};
    e.phi_finite = {{0.0}, {0.0}};
    const auto li = eisenstein_parameters(e, 0), lp = eisenstein_parameters(e, 2);
    // (n_i − n)/2 + t_i + η_i with n_i = 1: −1/2 + t₁ and 1/2 + t₂ − … sign-flipped at p
    CHECK(std::abs(li[0] - (-0.5 + e.t[0])) < 1e-14);
    CHECK(std::abs(lp[0] + li[0]) < 1e-14);
    CHECK(std::abs(natural_symbol(2, li, lp)) < 1e-12);

    EisensteinProfile c;
    c.n = 3;
    c.constant = true;
    CHECK(std::abs(natural_symbol(2, eisenstein_parameters(c, 0), eisenstein_parameters(c, 2))) < 1e-12);

    EisensteinProfile m;
    m.n = 3;
    m.partition = {2, 1};
    m.t = {cplx(0.05, 1.0), cplx(-0.1, -2.0)};
    m.phi_infinity = {{cplx(0, 4.2), cplx(0, -4.2)}, {0.0}};
    m.phi_finite = {{cplx(0.1, 0.3), cplx(-0.1, -0.3)}, {0.0}};
    CHECK(std::abs(natural_symbol(3, eisenstein_parameters(m, 0), eisenstein_parameters(m, 3))) < 1e-10);
  }

  TEST_CASE("annihilation sweeps") {
    for (int n = 2; n <= 3; ++n) {
      const auto r = verify_annihilation(n, 2, 100, 43);
      CHECK(r.passed);
      for (const auto& [k, v] : r.max_eisenstein) CHECK(v < 1e-12);
    }
  }

  TEST_CASE("norm bound") {
    CHECK(natural_norm_bound(2, 2) == doctest::Approx(std::pow(std::pow(2.0, -0.3) + std::pow(2.0, 0.3), 4)));
    CHECK(natural_norm_bound(2, 3) > natural_norm_bound(2, 2));
    for (int n = 2; n <= 3; ++n) CHECK(norm_bound_sweep(n, 2, 5000, 44).violations == 0);
  }

  TEST_CASE("exact rationals") {
    const Rational a(1, 2), b(1, 3);
    CHECK((a + b) == Rational(5, 6));
    CHECK((a * b) == Rational(1, 6));
    CHECK((a - a).is_zero());
    CHECK(Rational(2, 4) == Rational(1, 2));
  }
}
