#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "chainlab/mie.hpp"
#include "chainlab/phase.hpp"

using namespace chainlab;

TEST_CASE("mie fit from curvature") {
  SECTION("kappa=1, N=1, LJ 6-12") {
    auto pot = mie_fit_from_curvature(1.0, 1, 6.0, 12.0);
    CHECK(pot.c_m == Catch::Approx(1.0 / 72.0).epsilon(1e-14));
    CHECK(pot.c_n == Catch::Approx(1.0 / 36.0).epsilon(1e-14));
    CHECK(pot.a == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(pot.derivative(1.0) == Catch::Approx(0.0).margin(1e-12));
    CHECK(pot.second_derivative(1.0) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(pot.value(1.0) == Catch::Approx(-1.0 / 72.0).epsilon(1e-12));
    CHECK(mie_value_at_minimum(1.0, 1, 6.0, 12.0) == Catch::Approx(-1.0 / 72.0));
  }
  SECTION("N=2 scaling of the coefficients") {
    auto pot = mie_fit_from_curvature(1.0, 2, 6.0, 12.0);
    CHECK(pot.c_n == Catch::Approx((1.0 / 36.0) * std::pow(2.0, -8.0)).epsilon(1e-14));
    CHECK(pot.c_m == Catch::Approx((1.0 / 72.0) * std::pow(2.0, -14.0)).epsilon(1e-14));
    CHECK(pot.second_derivative(0.5) == Catch::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(mie_fit_from_curvature(1.0, 1, 12.0, 6.0), std::domain_error);
}

TEST_CASE("inflection point") {
  auto p1 = mie_fit_from_curvature(1.0, 1, 6.0, 12.0);
  double expect = std::pow(13.0 / 7.0, 1.0 / 6.0);
  CHECK(inflection_point(p1) == Catch::Approx(expect).epsilon(1e-10));
  CHECK(p1.second_derivative(p1.b) == Catch::Approx(0.0).margin(1e-9));
  // numeric cross-check: V'' changes sign at b
  CHECK(p1.second_derivative(p1.b * 0.999) > 0.0);
  CHECK(p1.second_derivative(p1.b * 1.001) < 0.0);

  auto p10 = mie_fit_from_curvature(1.0, 10, 6.0, 12.0);
  CHECK(inflection_point(p10) == Catch::Approx(expect / 10.0).epsilon(1e-10));
}

TEST_CASE("critical force ratio") {
  auto C = critical_force_ratio(6.0, 12.0);
  CHECK(C.oracle == Catch::Approx(0.03737).margin(1e-4));
  CHECK(C.printed == Catch::Approx(0.0459).margin(5e-4));
  CHECK(C.mismatch);

  SECTION("oracle equals the direct numeric max of V' on (a, b]") {
    auto pot = mie_fit_from_curvature(1.0, 1, 6.0, 12.0);
    double best = 0.0;
    for (int i = 1; i <= 20000; ++i) {
      double r = pot.a + (pot.b - pot.a) * i / 20000.0;
      best = std::max(best, pot.derivative(r));
    }
    CHECK(C.oracle == Catch::Approx(best).epsilon(1e-6));
  }
  SECTION("scale covariance: N*V'(b)/kappa identical across N") {
    for (int N : {1, 2, 10, 100}) {
      auto pot = mie_fit_from_curvature(3.7, N, 6.0, 12.0);
      CHECK(N * pot.derivative(pot.b) / 3.7 == Catch::Approx(C.oracle).epsilon(1e-10));
    }
  }
}

TEST_CASE("static fixed points") {
  auto pot = mie_fit_from_curvature(1.0, 20, 6.0, 12.0);
  double fc = pot.derivative(pot.b);

  SECTION("f = 0 gives h = a") {
    auto h = mie_fixed_point(pot, 0.0);
    REQUIRE(h);
    CHECK(*h == Catch::Approx(pot.a).epsilon(1e-12));
  }
  SECTION("threshold force gives h = b") {
    auto h = mie_fixed_point(pot, fc);
    REQUIRE(h);
    // V' - f has a tangent root at b, so the bisection is sqrt(eps) limited
    CHECK(*h == Catch::Approx(pot.b).epsilon(1e-6));
  }
  SECTION("existence flips exactly at f = kappa*C/N, h increasing in f") {
    double prev_h = 0.0;
    for (int i = 0; i < 100; ++i) {
      double f = 2.0 * fc * i / 99.0;
      auto h = mie_fixed_point(pot, f);
      CHECK(h.has_value() == (f <= fc));
      if (h) {
        CHECK(*h >= prev_h);
        CHECK(*h <= pot.b * (1.0 + 1e-9));
        prev_h = *h;
      }
    }
  }
  SECTION("quadratic potential: h = a + sigma always") {
    CHECK(quadratic_fixed_point(4.0, 1.0, 2.0) == 1.5);
    CHECK(quadratic_fixed_point(1.0, 0.25, 0.0) == 0.25);
  }
}

TEST_CASE("relative extension") {
  SECTION("sigma = 0 gives exactly 1") {
    CHECK(relative_extension(20, 0.0, 1, 0.25, 2) == 1.0);
  }
  SECTION("N=2 closed form: r = 1 + 2(1 + sup I) = 5") {
    // epsilon = 0.5 keeps the k=0, l=1 window valid for N=2
    double r = relative_extension(2, 1.0, 1, 0.5, 6);
    CHECK(r == Catch::Approx(5.0).epsilon(1e-5));
  }
  SECTION("infeasible window throws") {
    CHECK_THROWS_AS(relative_extension(4, 1.0, 4, 0.25, 2), std::domain_error);
  }
}

TEST_CASE("phase sweep classification") {
  SECTION("sigma = 0 family vanishes with r = 1") {
    ScalingFamily zero{0.0, 1.0, 0.0};
    SweepOptions opts;
    opts.horizon_periods = 2;
    auto v = phase_sweep(zero, {16, 32, 64}, opts);
    CHECK(v.classification == PhaseClass::extension_vanishes);
    for (double r : v.r) CHECK(r == 1.0);
  }
  SECTION("single-point ladder is inconclusive") {
    ScalingFamily f{0.01, 1.0, 0.0};
    SweepOptions opts;
    opts.horizon_periods = 2;
    auto v = phase_sweep(f, {32}, opts);
    CHECK(v.classification == PhaseClass::inconclusive);
  }
  SECTION("ladder validation") {
    ScalingFamily f{0.01, 1.0, 0.0};
    CHECK_THROWS_AS(phase_sweep(f, {8, 16}), std::domain_error);
    CHECK_THROWS_AS(phase_sweep(f, {32, 32}), std::domain_error);
  }
  SECTION("canonical families, small ladders") {
    SweepOptions opts;
    opts.horizon_periods = 20;
    ScalingFamily vanish{0.01, 1.0, 2.0};  // sigma = 0.01/(N ln^2 N)
    auto v1 = phase_sweep(vanish, {64, 128, 256}, opts);
    CHECK(v1.classification == PhaseClass::extension_vanishes);

    ScalingFamily diverge{0.01, 1.0, 0.0};  // sigma = 0.01/N
    auto v2 = phase_sweep(diverge, {64, 128, 256}, opts);
    CHECK(v2.classification == PhaseClass::extension_diverges);
    CHECK(v2.slope > 0.0);
  }
}
