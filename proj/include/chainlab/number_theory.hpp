#pragma once

// Empirical number-theory machinery: Euler totient, the totient liminf scan,
// mode-frequency ratios, and brute-force integer-relation search.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chainlab/chain.hpp"

namespace chainlab {

/// phi(n) via trial-division factorization.
inline long long euler_totient(long long n) {
  if (n < 1) throw std::domain_error("euler_totient: n must be >= 1");
  long long result = n;
  long long rest = n;
  for (long long p = 2; p * p <= rest; ++p) {
    if (rest % p == 0) {
      result -= result / p;
      while (rest % p == 0) rest /= p;
    }
  }
  if (rest > 1) result -= result / rest;
  return result;
}

/// The algebraic degree of exp(2*pi*i/n) equals phi(n).
inline long long algebraic_degree_of_root_of_unity(long long n) {
  return euler_totient(n);
}

struct TotientRecord {
  long long n;
  double phi_over_n;
  double liminf_value;  // phi(n) * ln ln n / n
};

/// Scans n = 2..limit and records every n where phi(n)/n reaches a new
/// minimum (these are exactly the primorials), reporting the liminf statistic
/// phi(n)*ln ln n/n there.  The final record approaches e^{-gamma} ~ 0.5615
/// from below.
inline std::vector<TotientRecord> totient_liminf_scan(long long limit) {
  if (limit < 10) throw std::domain_error("totient_liminf_scan: limit must be >= 10");
  std::vector<std::uint32_t> phi(limit + 1);
  for (long long i = 0; i <= limit; ++i) phi[i] = static_cast<std::uint32_t>(i);
  for (long long i = 2; i <= limit; ++i) {
    if (phi[i] == i) {  // prime
      for (long long j = i; j <= limit; j += i) phi[j] -= phi[j] / i;
    }
  }
  std::vector<TotientRecord> records;
  double best = 2.0;
  for (long long n = 2; n <= limit; ++n) {
    double ratio = double(phi[n]) / double(n);
    if (ratio < best) {
      best = ratio;
      records.push_back({n, ratio, ratio * std::log(std::log(double(n)))});
    }
  }
  return records;
}

/// Frequency ratios omega_m / (2*omega0) = sin(pi*m/(4N-2)) for m = 1..M.
inline std::vector<double> frequency_ratios(int n_particles, int M, Dispersion conv) {
  if (M < 1 || M > 2 * n_particles - 2) {
    throw std::domain_error("frequency_ratios: need 1 <= M <= 2N-2");
  }
  double denom = detail::dispersion_denominator(n_particles, conv);
  std::vector<double> out;
  out.reserve(M);
  for (int m = 1; m <= M; ++m) out.push_back(std::sin(kPi * m / denom));
  return out;
}

struct RelationResult {
  bool found = false;
  std::vector<long long> coefficients;  // (a0, a1, ..., aM) when found
  double residual = 0.0;
};

/// Exhaustive search for integers |a_i| <= B, not all of a_1..a_M zero, with
/// |sum a_m v_m - a0| <= tol.  First match in lexicographic order of
/// (a_1, ..., a_M) wins.  Refuses search spaces beyond max_space candidates.
inline RelationResult integer_relation_search(const std::vector<double>& values,
                                              long long bound, double tol,
                                              long long max_space = 200'000'000) {
  if (values.empty()) throw std::domain_error("integer_relation_search: empty values");
  if (bound < 1) throw std::domain_error("integer_relation_search: bound must be >= 1");
  if (!(tol > 0.0)) throw std::domain_error("integer_relation_search: tol must be > 0");
  std::size_t M = values.size();
  double space = 1.0;
  for (std::size_t i = 0; i < M; ++i) space *= 2.0 * bound + 1.0;
  if (space > double(max_space)) {
    throw std::length_error("integer_relation_search: search space " +
                            std::to_string(space) + " exceeds the configured limit");
  }
  std::vector<long long> a(M, -bound);
  for (;;) {
    bool all_zero = true;
    double s = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      if (a[i] != 0) all_zero = false;
      s += double(a[i]) * values[i];
    }
    if (!all_zero) {
      double a0 = std::nearbyint(s);
      double residual = std::abs(s - a0);
      if (std::abs(a0) <= double(bound) && residual <= tol) {
        RelationResult result;
        result.found = true;
        result.coefficients.push_back(static_cast<long long>(a0));
        result.coefficients.insert(result.coefficients.end(), a.begin(), a.end());
        result.residual = residual;
        return result;
      }
    }
    // lexicographic odometer
    std::size_t i = M;
    while (i > 0) {
      --i;
      if (a[i] < bound) {
        ++a[i];
        break;
      }
      a[i] = -bound;
      if (i == 0) return RelationResult{};
    }
  }
}

/// Search for small integer relations among the first M
/// frequency ratios of the chain.  found == false is the "no-relation-found"
/// verdict that licenses the torus head-tail lower bound.
inline RelationResult rational_independence_check(int n_particles, int M,
                                                  long long bound, double tol,
                                                  Dispersion conv) {
  return integer_relation_search(frequency_ratios(n_particles, M, conv), bound, tol);
}

}  // namespace chainlab
