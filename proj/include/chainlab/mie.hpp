#pragma once

// Mie (generalized Lennard-Jones) pair potential: landmarks, curvature fit,
// and the static fixed-point criterion for the pulled chain.

#include <cmath>
#include <optional>
#include <stdexcept>

namespace chainlab {

/// V(r) = -c_n r^{-n} + c_m r^{-m} with 0 < n < m, c_n > 0, c_m > 0.
/// Derived landmarks: minimum a, inflection b (> a), curvature kappa = V''(a).
struct MiePotential {
  double n;
  double m;
  double c_n;
  double c_m;
  double a;      // minimum location, V'(a) = 0
  double b;      // inflection location, V''(b) = 0
  double kappa;  // V''(a)

  MiePotential(double n_, double m_, double cn_, double cm_)
      : n(n_), m(m_), c_n(cn_), c_m(cm_) {
    if (!(0.0 < n && n < m)) throw std::domain_error("MiePotential: need 0 < n < m");
    if (!(c_n > 0.0 && c_m > 0.0)) {
      throw std::domain_error("MiePotential: coefficients must be positive");
    }
    a = std::pow(m * c_m / (n * c_n), 1.0 / (m - n));
    b = a * std::pow((m + 1.0) / (n + 1.0), 1.0 / (m - n));
    kappa = second_derivative(a);
  }

  double value(double r) const {
    return -c_n * std::pow(r, -n) + c_m * std::pow(r, -m);
  }
  double derivative(double r) const {
    return n * c_n * std::pow(r, -n - 1.0) - m * c_m * std::pow(r, -m - 1.0);
  }
  double second_derivative(double r) const {
    return -n * (n + 1.0) * c_n * std::pow(r, -n - 2.0) +
           m * (m + 1.0) * c_m * std::pow(r, -m - 2.0);
  }
};

/// Coefficients of the Mie potential whose minimum sits at a = 1/N with
/// curvature kappa there: c_m = kappa/(m(m-n)) N^{-2-m}, c_n = kappa/(n(m-n)) N^{-2-n}.
inline MiePotential mie_fit_from_curvature(double kappa, int n_particles, double n,
                                           double m) {
  if (!(0.0 < n && n < m)) {
    throw std::domain_error("mie_fit_from_curvature: need 0 < n < m");
  }
  if (!(kappa > 0.0) || n_particles < 1) {
    throw std::domain_error("mie_fit_from_curvature: need kappa > 0 and N >= 1");
  }
  double N = n_particles;
  double cm = kappa / (m * (m - n)) * std::pow(N, -2.0 - m);
  double cn = kappa / (n * (m - n)) * std::pow(N, -2.0 - n);
  MiePotential pot(n, m, cn, cm);
  double rel_a = std::abs(pot.a * N - 1.0);
  double rel_k = std::abs(pot.kappa / kappa - 1.0);
  if (rel_a > 1e-10 || rel_k > 1e-10) {
    throw std::runtime_error("mie_fit_from_curvature: landmark validation failed");
  }
  return pot;
}

/// Well depth of the curvature-fitted potential, V(a) = -kappa/(m*n) N^{-2}.
inline double mie_value_at_minimum(double kappa, int n_particles, double n, double m) {
  double N = n_particles;
  return -kappa / (m * n) * (1.0 / (N * N));
}

/// Inflection point of V, closed form (1/N)((m+1)/(n+1))^{1/(m-n)} for the
/// curvature-fitted family; stored on the potential at construction.
inline double inflection_point(const MiePotential& pot) { return pot.b; }

/// Critical ratio C(n, m) in the fixed-point threshold sigma <= C/N.
///
/// `oracle` is the operational value N*V'(b)/kappa, which is N-independent by
/// scaling and matches a direct maximization of V' on (a, b].  `printed` is a
/// closed form circulating with exponents (n-1, m-1) in place of the derivable
/// (n+1, m+1); the two disagree and `mismatch` records that.
struct CriticalForceRatio {
  double oracle;
  double printed;
  bool mismatch;
};

inline CriticalForceRatio critical_force_ratio(double n, double m) {
  MiePotential pot = mie_fit_from_curvature(1.0, 1, n, m);
  double oracle = pot.derivative(pot.b);  // N = 1, kappa = 1
  double rho = (m + 1.0) / (n + 1.0);
  double printed = (std::pow(rho, -(n - 1.0) / (m - n)) -
                    std::pow(rho, -(m - 1.0) / (m - n))) /
                   (m - n);
  bool mismatch = std::abs(oracle - printed) >
                  1e-9 * std::max(std::abs(oracle), std::abs(printed));
  return {oracle, printed, mismatch};
}

/// Equilibrium gap of the pulled chain: the root of V'(h) = f on (a, b].
/// Returns empty when f exceeds V'(b) = max of V' there (no fixed point; the
/// chain falls apart).  Root located by bisection to 1e-12 relative.
inline std::optional<double> mie_fixed_point(const MiePotential& pot, double f) {
  if (f < 0.0) throw std::domain_error("mie_fixed_point: f must be >= 0");
  if (f == 0.0) return pot.a;
  if (f > pot.derivative(pot.b)) return std::nullopt;
  double lo = pot.a, hi = pot.b;
  // V' - f changes sign on [a, b]: V'(a) - f = -f < 0 and V'(b) - f >= 0.
  while ((hi - lo) > 1e-12 * hi) {
    double mid = 0.5 * (lo + hi);
    if (pot.derivative(mid) < f) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Equilibrium gap for the quadratic potential: always h = a + f/kappa.
inline double quadratic_fixed_point(double kappa, double spacing, double f) {
  if (f < 0.0) throw std::domain_error("quadratic_fixed_point: f must be >= 0");
  return spacing + f / kappa;
}

}  // namespace chainlab
