#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "chainlab/chain.hpp"

using namespace chainlab;

TEST_CASE("mode frequencies") {
  CHECK(mode_frequency(5, 1.0, 0, Dispersion::corrected) == 0.0);
  // N=2 reduces to the scalar oscillator with frequency omega0
  CHECK(mode_frequency(2, 1.0, 1, Dispersion::corrected) == Catch::Approx(1.0).margin(1e-15));
  // top of the band at m = 2N-1
  CHECK(mode_frequency(5, 1.0, 9, Dispersion::corrected) == Catch::Approx(2.0).margin(1e-15));
  CHECK(mode_frequency(2, 1.0, 1, Dispersion::paper_literal) ==
        Catch::Approx(2.0 * std::sin(kPi / 12.0)));
  CHECK_THROWS_AS(mode_frequency(5, 1.0, -1, Dispersion::corrected), std::domain_error);
  CHECK_THROWS_AS(mode_frequency(5, 1.0, 18, Dispersion::corrected), std::domain_error);

  ModeData modes(5, 1.0, Dispersion::corrected);
  REQUIRE(modes.omegas.size() == 8);
  for (std::size_t i = 0; i < modes.omegas.size(); ++i) {
    CHECK(modes.omegas[i] > 0.0);
    if (i > 0) CHECK(modes.omegas[i] > modes.omegas[i - 1]);
  }
}

TEST_CASE("gamma coefficients") {
  CHECK(gamma_coefficient(2, 1, 2, Dispersion::corrected) == 0.0);
  CHECK(gamma_coefficient(2, 1, 2, Dispersion::paper_literal) == 0.0);
  CHECK(gamma_coefficient(2, 1, 1, Dispersion::corrected) == Catch::Approx(3.0).epsilon(1e-14));
  CHECK(gamma_coefficient(2, 0, 1, Dispersion::corrected) == Catch::Approx(0.0).margin(1e-15));
  CHECK_THROWS_AS(gamma_coefficient(2, 1, 3, Dispersion::corrected), std::domain_error);
  CHECK_THROWS_AS(gamma_coefficient(2, 2, 1, Dispersion::corrected), std::domain_error);
}

TEST_CASE("gamma sum identity, corrected convention") {
  for (int N : {2, 3, 5, 17, 64, 257}) {
    for (int n = 0; n < N; ++n) {
      CAPTURE(N, n);
      CHECK(gamma_identity_residual(N, n, Dispersion::corrected) <=
            1e-9 * std::max(1, n));
    }
  }
}

TEST_CASE("gamma sum identity fails under paper-literal") {
  // sum/3 with 8N-4 denominators comes out near 3.73 instead of 1
  double residual = gamma_identity_residual(2, 1, Dispersion::paper_literal);
  CHECK(residual == Catch::Approx(2.73).margin(0.01));
}

TEST_CASE("exact displacement") {
  auto params = ChainParams::from_sigma(7, 1.3, 0.8, 1.0);
  SECTION("pinned particle stays at zero") {
    for (double t : {0.0, 0.7, 3.0, 42.0}) {
      CHECK(exact_displacement(params, 0, t, Dispersion::corrected) ==
            Catch::Approx(0.0).margin(1e-12));
    }
  }
  SECTION("zero initial conditions") {
    for (int n = 0; n < 7; ++n) {
      CHECK(exact_displacement(params, n, 0.0, Dispersion::corrected) ==
            Catch::Approx(0.0).margin(1e-10));
    }
  }
  SECTION("N=2 closed form sigma(1 - cos t)") {
    auto p2 = ChainParams::from_sigma(2, 1.0, 1.0, 1.0);
    CHECK(exact_displacement(p2, 1, kPi, Dispersion::corrected) ==
          Catch::Approx(2.0).epsilon(1e-12));
    for (double t = 0.0; t <= 100.0; t += 0.37) {
      CHECK(exact_displacement(p2, 1, t, Dispersion::corrected) ==
            Catch::Approx(1.0 - std::cos(t)).margin(1e-10));
    }
  }
}

TEST_CASE("extension coefficients, N=2 window") {
  auto c = extension_coefficients(2, 0, 1, Dispersion::corrected);
  CHECK(c.a[0] == Catch::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(c.b[0] == Catch::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(c.a[1] == 0.0);
  // I(0) = -(2/3) a1 b1 = -1 = -l
  CHECK(-2.0 / 3.0 * c.a[0] * c.b[0] == Catch::Approx(-1.0).epsilon(1e-14));
  CHECK_THROWS_AS(extension_coefficients(2, 0, 2, Dispersion::corrected), std::domain_error);
}

TEST_CASE("even modes vanish exactly, |b_m| <= 1") {
  for (int N : {5, 20, 64}) {
    auto c = extension_coefficients(N, 1, 2, Dispersion::corrected);
    for (int m = 1; m <= 2 * N - 2; ++m) {
      if (m % 2 == 0) CHECK(c.a[m - 1] == 0.0);
      CHECK(std::abs(c.b[m - 1]) <= 1.0 + 1e-15);
      if (m % 2 == 0) CHECK(gamma_coefficient(N, 1, m, Dispersion::corrected) == 0.0);
    }
  }
}

TEST_CASE("extension deviation") {
  SECTION("I(0) = -l") {
    auto params = ChainParams::from_sigma(12, 1.0, 0.4, 1.0);
    CHECK(extension_deviation(params, 1, 3, 0.0, Dispersion::corrected) ==
          Catch::Approx(-3.0).epsilon(1e-12));
  }
  SECTION("N=2 scalar closed form: I = -cos t") {
    auto p2 = ChainParams::from_sigma(2, 1.0, 1.0, 1.0);
    CHECK(extension_deviation(p2, 0, 1, kPi, Dispersion::corrected) ==
          Catch::Approx(1.0).epsilon(1e-12));
  }
  SECTION("bounded by the coefficient triangle sum") {
    auto params = ChainParams::from_sigma(9, 1.0, 0.4, 1.0);
    auto c = extension_coefficients(9, 1, 2, Dispersion::corrected);
    double bound = 0.0;
    for (int m = 1; m <= 16; m += 2) bound += std::abs(c.a[m - 1] * c.b[m - 1]);
    bound *= 2.0 / 17.0;
    for (double t = 0.0; t < 40.0; t += 0.61) {
      CHECK(std::abs(extension_deviation(params, 1, 2, t, Dispersion::corrected)) <=
            bound + 1e-12);
    }
  }
}

TEST_CASE("two evaluation paths agree to 1e-9 relative") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> pick_n(3, 40);
  std::uniform_real_distribution<double> pick_t(0.0, 200.0);
  for (int trial = 0; trial < 100; ++trial) {
    int N = pick_n(rng);
    std::uniform_int_distribution<int> pick_l(1, N - 1);
    int l = pick_l(rng);
    std::uniform_int_distribution<int> pick_k(0, N - 1 - l);
    int k = pick_k(rng);
    double t = pick_t(rng);
    auto params = ChainParams::from_sigma(N, 1.0, 0.9, 1.0);
    double via_sum = extension_deviation(params, k, l, t, Dispersion::corrected);
    double via_disp =
        extension_deviation_via_displacement(params, k, l, t, Dispersion::corrected);
    CAPTURE(N, k, l, t);
    CHECK(std::abs(via_sum - via_disp) <= 1e-9 * std::max(1.0, std::abs(via_sum)));
  }
}

TEST_CASE("extension coefficient bands") {
  SECTION("|a_m| <= C N^2/m^2 with one constant across N") {
    double c_hat = 0.0;
    for (int N : {50, 100, 200}) {
      auto c = extension_coefficients(N, 0, 1, Dispersion::corrected);
      for (int m = 1; m <= 2 * N - 2; ++m) {
        c_hat = std::max(c_hat, std::abs(c.a[m - 1]) * m * m / (double(N) * N));
      }
    }
    CHECK(c_hat >= 0.1);
    CHECK(c_hat <= 10.0);
  }
  SECTION("m|a_m|/(N l) band for odd m <= N/l") {
    double lo = 1e30, hi = 0.0;
    for (int N : {50, 100, 200}) {
      for (int l : {1, 2, 5}) {
        auto c = extension_coefficients(N, 0, l, Dispersion::corrected);
        for (int m = 1; m <= N / l; m += 2) {
          double v = m * std::abs(c.a[m - 1]) / (double(N) * l);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
    }
    CHECK(lo > 0.0);
    CHECK(lo < hi);
    // frozen regression band, measured under the corrected convention
    CHECK(lo >= 0.3);
    CHECK(hi <= 1.5);
  }
  SECTION("|b_m|/m + |b_{m+2}|/(m+2) >= c(eps)/m") {
    for (double eps : {0.1, 0.25, 0.5}) {
      double c_eps = 1e30;
      int N = 60;
      for (int l : {1, 2, 4}) {
        int k_top = static_cast<int>((1.0 - eps) * N) - l;
        for (int k : {0, k_top / 2, k_top}) {
          AnalysisWindow w{k, l, eps};
          REQUIRE(w.valid(N));
          auto c = extension_coefficients(N, k, l, Dispersion::corrected);
          for (int m = 1; m + 2 <= 2 * N - 2; m += 2) {
            double v = m * (std::abs(c.b[m - 1]) / m + std::abs(c.b[m + 1]) / (m + 2));
            c_eps = std::min(c_eps, v);
          }
        }
      }
      CAPTURE(eps);
      CHECK(c_eps > 0.0);
    }
  }
}

TEST_CASE("analysis window validity") {
  AnalysisWindow w{0, 1, 0.25};
  CHECK(w.valid(2));
  CHECK_FALSE(AnalysisWindow{0, 10, 0.25}.valid(10));
  CHECK_FALSE(AnalysisWindow{-1, 1, 0.25}.valid(10));
  CHECK_THROWS_AS((AnalysisWindow{9, 1, 0.25}.require_valid(10)), std::domain_error);
}

TEST_CASE("chain params") {
  auto p = ChainParams::from_physical(4, 4.0, 1.0, 2.0, 0.5);
  CHECK(p.omega0 == 2.0);
  CHECK(p.f0 == 2.0);
  CHECK(p.sigma == 0.5);  // f/kappa
  CHECK(p.sigma == p.f0 / (p.omega0 * p.omega0));
  CHECK_THROWS_AS(ChainParams::from_sigma(1, 1.0, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(ChainParams::from_sigma(5, -1.0, 0.0, 1.0), std::domain_error);
}
