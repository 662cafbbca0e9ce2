#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "chainlab/number_theory.hpp"

using namespace chainlab;

namespace {

// independent oracle: count residues coprime to n
long long totient_brute_force(long long n) {
  long long count = 0;
  for (long long k = 1; k <= n; ++k) {
    if (std::gcd(k, n) == 1) ++count;
  }
  return count;
}

bool is_primorial(long long n) {
  long long prod = 1;
  for (long long p = 2; prod < n; ++p) {
    bool prime = p >= 2;
    for (long long d = 2; d * d <= p; ++d) {
      if (p % d == 0) prime = false;
    }
    if (prime) prod *= p;
  }
  return prod == n;
}

}  // namespace

TEST_CASE("euler totient") {
  CHECK(euler_totient(1) == 1);
  CHECK(euler_totient(12) == 4);
  for (long long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                      61, 67, 71, 73, 79, 83, 89, 97}) {
    CHECK(euler_totient(p) == p - 1);
  }
  CHECK_THROWS_AS(euler_totient(0), std::domain_error);
}

TEST_CASE("totient agrees with brute force up to 1000") {
  for (long long n = 1; n <= 1000; ++n) {
    REQUIRE(euler_totient(n) == totient_brute_force(n));
  }
}

TEST_CASE("totient multiplicativity on coprime pairs") {
  for (long long a = 2; a <= 40; ++a) {
    for (long long b = a + 1; b <= 40; ++b) {
      if (std::gcd(a, b) != 1) continue;
      CHECK(euler_totient(a * b) == euler_totient(a) * euler_totient(b));
    }
  }
}

TEST_CASE("totient liminf scan") {
  auto records = totient_liminf_scan(100000);
  REQUIRE_FALSE(records.empty());

  SECTION("records sit at primorials and phi/n is strictly decreasing") {
    double prev = 2.0;
    for (const auto& rec : records) {
      CHECK(is_primorial(rec.n));
      CHECK(rec.phi_over_n < prev);
      prev = rec.phi_over_n;
    }
  }
  SECTION("liminf statistic approaches e^{-gamma} from below") {
    double e_minus_gamma = 0.5614594835668852;
    const auto& last = records.back();
    CHECK(last.n == 30030);
    CHECK(last.liminf_value == Catch::Approx(0.4475).margin(5e-3));
    CHECK(last.liminf_value < e_minus_gamma);
    // statistic increases along the primorial records (n >= 6)
    for (std::size_t i = 2; i < records.size(); ++i) {
      CHECK(records[i].liminf_value > records[i - 1].liminf_value);
    }
  }
  CHECK_THROWS_AS(totient_liminf_scan(5), std::domain_error);
}

TEST_CASE("frequency ratios") {
  auto corrected = frequency_ratios(2, 1, Dispersion::corrected);
  REQUIRE(corrected.size() == 1);
  CHECK(corrected[0] == Catch::Approx(0.5).epsilon(1e-14));

  auto literal = frequency_ratios(2, 1, Dispersion::paper_literal);
  CHECK(literal[0] == Catch::Approx(std::sin(kPi / 12.0)).epsilon(1e-14));

  auto many = frequency_ratios(20, 38, Dispersion::corrected);
  for (std::size_t i = 0; i < many.size(); ++i) {
    CHECK(many[i] > 0.0);
    CHECK(many[i] < 1.0);
    if (i > 0) CHECK(many[i] > many[i - 1]);
  }
  CHECK_THROWS_AS(frequency_ratios(2, 3, Dispersion::corrected), std::domain_error);
}

TEST_CASE("integer relation search") {
  SECTION("2 sin(pi/6) = 1") {
    auto r = integer_relation_search({0.5}, 2, 1e-12);
    REQUIRE(r.found);
    REQUIRE(r.coefficients.size() == 2);
    // a0 = a1 * 0.5 exactly, with a1 nonzero
    CHECK(r.coefficients[1] != 0);
    CHECK(2 * r.coefficients[0] == r.coefficients[1]);
    CHECK(r.residual <= 1e-12);
  }
  SECTION("sin(3pi/10) - sin(pi/10) = 1/2") {
    auto r = integer_relation_search({std::sin(kPi / 10.0), std::sin(3.0 * kPi / 10.0)},
                                     2, 1e-10);
    REQUIRE(r.found);
    // verify the returned relation directly
    double s = r.coefficients[1] * std::sin(kPi / 10.0) +
               r.coefficients[2] * std::sin(3.0 * kPi / 10.0);
    CHECK(std::abs(s - r.coefficients[0]) <= 1e-10);
    CHECK((r.coefficients[1] != 0 || r.coefficients[2] != 0));
  }
  SECTION("2 sin(pi/14) - 2 sin(3pi/14) + 2 sin(5pi/14) = 1 is recovered") {
    auto r = integer_relation_search(
        {std::sin(kPi / 14.0), std::sin(3.0 * kPi / 14.0), std::sin(5.0 * kPi / 14.0)},
        5, 1e-10);
    REQUIRE(r.found);
    double s = r.coefficients[1] * std::sin(kPi / 14.0) +
               r.coefficients[2] * std::sin(3.0 * kPi / 14.0) +
               r.coefficients[3] * std::sin(5.0 * kPi / 14.0);
    CHECK(std::abs(s - r.coefficients[0]) <= 1e-10);
  }
  SECTION("no relation among cos(2pi/11), cos(4pi/11), cos(6pi/11)") {
    // only the full five-term trace relation exists for the 11th roots
    auto r = integer_relation_search({std::cos(2.0 * kPi / 11.0),
                                      std::cos(4.0 * kPi / 11.0),
                                      std::cos(6.0 * kPi / 11.0)},
                                     5, 1e-10);
    CHECK_FALSE(r.found);
  }
  SECTION("bound too small to express the relation") {
    auto r = integer_relation_search({0.5}, 1, 1e-12);
    CHECK_FALSE(r.found);
  }
  SECTION("search space refusal") {
    std::vector<double> values(12, 0.123);
    CHECK_THROWS_AS(integer_relation_search(values, 10, 1e-10), std::length_error);
  }
  SECTION("soundness: residual holds up under compensated summation") {
    std::vector<double> values = {std::sin(kPi / 10.0), std::sin(3.0 * kPi / 10.0),
                                  0.1234567890123456};
    auto r = integer_relation_search(values, 3, 1e-10);
    if (r.found) {
      double sum = 0.0, comp = 0.0;  // Kahan
      for (std::size_t i = 0; i < values.size(); ++i) {
        double term = r.coefficients[i + 1] * values[i];
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
      }
      CHECK(std::abs(sum - r.coefficients[0]) <= 10.0 * 1e-10);
    }
  }
}

TEST_CASE("rational independence check") {
  SECTION("N=2, M=1: corrected ratio 1/2 is rationally dependent") {
    auto r = rational_independence_check(2, 1, 2, 1e-12, Dispersion::corrected);
    CHECK(r.found);
  }
  SECTION("N=2, M=1, B=1: bound excludes the relation") {
    auto r = rational_independence_check(2, 1, 1, 1e-12, Dispersion::corrected);
    CHECK_FALSE(r.found);
  }
  SECTION("N=8, M=3: no relation found") {
    auto r = rational_independence_check(8, 3, 5, 1e-10, Dispersion::corrected);
    CHECK_FALSE(r.found);
  }
}
