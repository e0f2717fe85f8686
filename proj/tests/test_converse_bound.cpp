#include <cmath>

#include "doctest.h"
#include "maass/converse_bound.hpp"
#include "maass/core_geometry.hpp"

using namespace maass;

namespace {

LocalDataSet gl2(double t, cplx l2) {
  LocalDataSet d;
  d.n = 2;
  d.infinity = SpectralParameter({cplx(0, t), cplx(0, -t)});
  d.finite[2] = SpectralParameter({l2, -l2});
  return d;
}

BoundOptions small_budget() {
  BoundOptions o;
  o.volume_samples = 20000;
  o.sup_samples = 300;
  o.refine_steps = 20;
  o.casimir_panels = 8;
  return o;
}

}  // namespace

TEST_SUITE("converse_bound") {
  TEST_CASE("d_S") {
    const auto a = gl2(9, cplx(0.13, 0.4)), b = gl2(9.5, cplx(0, 0.4));
    CHECK(distance_dS(a, a, {0, 2}) == 0.0);
    CHECK(distance_dS(a, b, {0, 2}) == doctest::Approx(distance_dS(b, a, {0, 2})));
    // λ_∞ = 1/4 + t² for ℓ = (it, −it)
    const auto c = gl2(9, cplx(0, 0.4));
    CHECK(distance_dS(c, b, {0}) == doctest::Approx(std::pow(81.0 - 90.25, 2)));
    CHECK(distance_dS(c, b, {0, 2}) == doctest::Approx(std::pow(81.0 - 90.25, 2)));
    CHECK(distance_dS(a, c, {0, 2}) > 0.0);
  }

  TEST_CASE("finite-place constants") {
    CHECK(a_s_finite(2, 0.3, {0}) == 0.0);
    CHECK(a_s_finite(2, 0.3, {0, 2}) == doctest::Approx(std::exp(4 * 0.3) * 9));
    const auto h3 = hecke_counts(3, {0, 2, 3});
    CHECK(h3.at({2, 1}) == 7);   // projective points of F₂³
    CHECK(h3.at({3, 1}) == 13);
    CHECK(h3.size() == 2);
    CHECK(analytic_conductor(SpectralParameter({0.0, 0.0})) == 1.0);
    CHECK(analytic_conductor(SpectralParameter({cplx(0, 1), cplx(0, -1)})) == doctest::Approx(4.0));
  }

  TEST_CASE("A_∞") {
    const auto ell = SpectralParameter({cplx(0, 9), cplx(0, -9)});
    const auto b = make_bump(2, 0.1);
    const auto closed = a_infinity(b, ell, AInfinityMode::ClosedBound);
    CHECK(closed.total == doctest::Approx(std::pow(laplacian_H_bound(b, laplace_eigenvalue(ell)), 2)));
    const auto numeric = a_infinity(b, ell, AInfinityMode::Numerical);
    CHECK(numeric.total <= closed.total);
    CHECK(numeric.total > 0.0);
  }

  TEST_CASE("Laplacian bracket") {
    const auto b = make_bump(2, 1.0);
    const double want = std::pow(6 * (1 + std::exp(2.0)) * c_delta(2, 1.0) * vol_ball(2, 1.0) + 2 * 81.25, 2);
    CHECK(laplacian_bracket(b, 81.25) == doctest::Approx(want).epsilon(1e-12));
  }

  TEST_CASE("hypotheses") {
    const auto d = gl2(9, cplx(0.13, 0.4));
    CHECK_THROWS_AS(theorem_main_bound(d, {0}, 2, 10 * max_delta(d.infinity), small_budget()), HypothesisViolation);
    auto z = d;
    z.finite[2] = SpectralParameter({cplx(0, -9), cplx(0, 9)});
    CHECK_THROWS_AS(theorem_main_bound(z, {0}, 2, auto_delta(z.infinity), small_budget()), HypothesisViolation);
    CHECK_THROWS_AS(theorem_main_bound(d, {0, 3}, 2, auto_delta(d.infinity), small_budget()), InvalidInput);
  }

  TEST_CASE("end to end with a small budget") {
    const auto d = gl2(9, cplx(0.13, 0.4));
    CHECK(auto_delta(d.infinity) == doctest::Approx(max_delta(d.infinity) / 2));
    const auto r = theorem_main_bound(d, {0}, 2, auto_delta(d.infinity), small_budget());
    CHECK(r.epsilon.finite_positive());
    CHECK(r.hat_H_above_half);
    CHECK(std::abs(r.epsilon.ln() - (upper_bound_rhs(r) / lower_bound_rhs(r)).ln()) < 1e-9);

    // ε scales with sup²
    auto r2 = r;
    r2.sup.used *= 3;
    CHECK((upper_bound_rhs(r2) / upper_bound_rhs(r)).to_double() == doctest::Approx(9.0));

    const auto f = theorem_main_bound(d, {0, 2}, 2, auto_delta(d.infinity), small_budget());
    CHECK(f.epsilon.finite_positive());
    CHECK(f.a_s_finite > 0.0);
    CHECK(f.q_max == 2);

    const auto w = theorem_laplacian_bound(d, 2, auto_delta(d.infinity), small_budget());
    CHECK(w.window_theorem.finite_positive());
    CHECK(w.lambda_n == laplace_eigenvalue(d.infinity));
    CHECK(w.bracket_theorem == laplacian_bracket(w.bump, w.lambda_n));
  }
}
