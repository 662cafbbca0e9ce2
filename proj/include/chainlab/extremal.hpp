#pragma once

// Two-sided estimation of sup/inf of the gap deviation I_{N,k,l}(t) over all
// time: dense-grid sampling with golden-section refinement for the lower
// bound, triangle-inequality head/tail sums for the upper bound, and the
// ratio scans against F_N(l) = l*ln(N/l).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "chainlab/chain.hpp"
#include "chainlab/parallel.hpp"

namespace chainlab {

/// F_N(x) = x*ln(N/x) on 0 < x <= N; F_N(N) = 0.
inline double f_N(int n_particles, double x) {
  if (!(x > 0.0) || x > n_particles) {
    throw std::domain_error("f_N: need 0 < x <= N");
  }
  return x * std::log(n_particles / x);
}

/// Mode cutoff M(N, c) = floor(c*N / ln ln N), clamped to [1, 2N-2].
/// Requires N >= 16 so that ln ln N is safely positive.
inline int m_of_n(int n_particles, double c) {
  if (n_particles < 16) throw std::domain_error("m_of_n: N must be >= 16");
  if (!(c > 0.0)) throw std::domain_error("m_of_n: c must be > 0");
  double raw = std::floor(c * n_particles / std::log(std::log(n_particles)));
  long long m = static_cast<long long>(raw);
  m = std::max<long long>(1, std::min<long long>(m, 2LL * n_particles - 2));
  return static_cast<int>(m);
}

/// Certified bracket for sup and inf of I_{N,k,l} over t in (0, infinity).
/// sup_lower/inf_upper come from sampling (attained values), sup_upper and
/// inf_lower from the triangle inequality on the cosine sum.
struct ExtremalReport {
  AnalysisWindow window;
  double sup_lower = 0.0;
  double sup_upper = 0.0;
  double inf_lower = 0.0;
  double inf_upper = 0.0;
  double t_at_sup = 0.0;
  double horizon = 0.0;
  bool bracketed = true;  // false when the horizon held no interior extremum
};

namespace detail {

/// Odd-mode view of the deviation sum: I(t) = sum_j coef[j]*cos(omega[j]*t)
/// with the -2/(2N-1) prefactor folded into coef.
struct DeviationSum {
  std::vector<double> omega;
  std::vector<double> coef;

  double operator()(double t) const {
    double s = 0.0;
    for (std::size_t j = 0; j < omega.size(); ++j) {
      s += coef[j] * std::cos(omega[j] * t);
    }
    return s;
  }
};

inline DeviationSum make_deviation_sum(const ExtensionCoefficients& c, double omega0,
                                       Dispersion conv) {
  DeviationSum sum;
  int N = c.n_particles;
  double scale = -2.0 / (2.0 * N - 1.0);
  for (int m = 1; m <= 2 * N - 2; m += 2) {
    double ab = c.a[m - 1] * c.b[m - 1];
    if (ab == 0.0) continue;
    sum.omega.push_back(mode_frequency(N, omega0, m, conv));
    sum.coef.push_back(scale * ab);
  }
  return sum;
}

/// Evaluate the sum on the uniform grid t_i = i*h via the two-term cosine
/// recurrence, reseeded from std::cos every block to keep roundoff flat.
inline std::vector<double> evaluate_on_grid(const DeviationSum& sum, double h,
                                            std::size_t npts, int workers) {
  std::vector<double> out(npts, 0.0);
  constexpr std::size_t kBlock = 2048;
  std::size_t nblocks = (npts + kBlock - 1) / kBlock;
  parallel_for(nblocks, workers, [&](std::size_t blk) {
    std::size_t lo = blk * kBlock;
    std::size_t hi = std::min(npts, lo + kBlock);
    double t0 = static_cast<double>(lo) * h;
    for (std::size_t j = 0; j < sum.omega.size(); ++j) {
      double w = sum.omega[j];
      double a = sum.coef[j];
      double two_c = 2.0 * std::cos(w * h);
      double prev = std::cos(w * (t0 - h));
      double cur = std::cos(w * t0);
      for (std::size_t i = lo; i < hi; ++i) {
        out[i] += a * cur;
        double next = two_c * cur - prev;
        prev = cur;
        cur = next;
      }
    }
  });
  return out;
}

/// Golden-section maximization of f on [lo, hi] to relative tolerance in t.
inline std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                            double lo, double hi, double rel_tol) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > rel_tol * std::max(1.0, std::abs(hi))) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    }
  }
  double xm = 0.5 * (lo + hi);
  return {xm, f(xm)};
}

}  // namespace detail

/// Triangle-inequality bound (2/(2N-1)) sum_{m odd} |a_m b_m| >= sup |I|.
inline double triangle_bound(const ExtensionCoefficients& c) {
  int N = c.n_particles;
  double s = 0.0;
  for (int m = 1; m <= 2 * N - 2; m += 2) {
    s += std::abs(c.a[m - 1] * c.b[m - 1]);
  }
  return 2.0 * s / (2.0 * N - 1.0);
}

/// Sample I on a grid of 16 points per fastest period over
/// horizon_periods * (2*pi/omega_1), refine each leading local extremum by
/// golden section, and pair the sampled values with the triangle bound.
inline ExtremalReport sup_inf_extension(const ChainParams& params,
                                        const AnalysisWindow& window,
                                        int horizon_periods, Dispersion conv,
                                        int workers = 1) {
  window.require_valid(params.n_particles);
  if (horizon_periods < 0) {
    throw std::domain_error("sup_inf_extension: horizon_periods must be >= 0");
  }
  int N = params.n_particles;
  auto coeffs = extension_coefficients(N, window.k, window.l, conv);
  auto sum = detail::make_deviation_sum(coeffs, params.omega0, conv);

  ExtremalReport report;
  report.window = window;
  report.sup_upper = triangle_bound(coeffs);
  report.inf_lower = -report.sup_upper;

  double omega_slow = mode_frequency(N, params.omega0, 1, conv);
  double omega_fast = 2.0 * params.omega0;
  double horizon = horizon_periods * (2.0 * kPi / omega_slow);
  report.horizon = horizon;
  double h = (2.0 * kPi / omega_fast) / 16.0;
  std::size_t npts = horizon_periods == 0
                         ? 1
                         : static_cast<std::size_t>(std::floor(horizon / h)) + 1;

  std::vector<double> grid = detail::evaluate_on_grid(sum, h, npts, workers);

  std::size_t i_max = 0, i_min = 0;
  for (std::size_t i = 1; i < npts; ++i) {
    if (grid[i] > grid[i_max]) i_max = i;
    if (grid[i] < grid[i_min]) i_min = i;
  }
  report.sup_lower = grid[i_max];
  report.inf_upper = grid[i_min];
  report.t_at_sup = i_max * h;

  // Collect interior extremum brackets and refine only the most promising
  // ones; the grid already resolves every oscillation of the band-limited sum.
  constexpr std::size_t kRefine = 32;
  std::vector<std::size_t> maxima, minima;
  for (std::size_t i = 1; i + 1 < npts; ++i) {
    if (grid[i] >= grid[i - 1] && grid[i] >= grid[i + 1]) maxima.push_back(i);
    if (grid[i] <= grid[i - 1] && grid[i] <= grid[i + 1]) minima.push_back(i);
  }
  report.bracketed = !maxima.empty() && !minima.empty();

  auto top = [&](std::vector<std::size_t>& idx, bool want_max) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return want_max ? grid[a] > grid[b] : grid[a] < grid[b];
    });
    if (idx.size() > kRefine) idx.resize(kRefine);
  };
  top(maxima, true);
  top(minima, false);

  std::function<double(double)> eval = [&](double t) { return sum(t); };
  std::function<double(double)> neg = [&](double t) { return -sum(t); };
  for (std::size_t i : maxima) {
    auto [t_ref, v_ref] = detail::golden_max(eval, (i - 1) * h, (i + 1) * h, 1e-6);
    if (v_ref > report.sup_lower) {
      report.sup_lower = v_ref;
      report.t_at_sup = t_ref;
    }
  }
  for (std::size_t i : minima) {
    auto [t_ref, v_ref] = detail::golden_max(neg, (i - 1) * h, (i + 1) * h, 1e-6);
    (void)t_ref;
    report.inf_upper = std::min(report.inf_upper, -v_ref);
  }
  return report;
}

struct TorusBound {
  double head;  // (2/(2N-1)) sum_{m <= M odd} |a_m b_m|
  double tail;  // (2/(2N-1)) sum_{m > M odd} C_hat*N^2/m^2, C_hat fitted in-window
};

/// head - tail is a certified lower bound on sup I when the first M mode
/// frequencies are rationally independent (torus density); head + tail is an
/// unconditional upper bound.
inline TorusBound torus_partial_sum_bound(int n_particles, int k, int l, int M,
                                          Dispersion conv) {
  if (M < 1 || M > 2 * n_particles - 2) {
    throw std::domain_error("torus_partial_sum_bound: need 1 <= M <= 2N-2");
  }
  auto c = extension_coefficients(n_particles, k, l, conv);
  int N = n_particles;
  double scale = 2.0 / (2.0 * N - 1.0);
  double c_hat = 0.0;
  for (int m = 1; m <= 2 * N - 2; m += 2) {
    c_hat = std::max(c_hat, std::abs(c.a[m - 1]) * m * m / (double(N) * N));
  }
  TorusBound bound{0.0, 0.0};
  for (int m = 1; m <= 2 * N - 2; m += 2) {
    if (m <= M) {
      bound.head += scale * std::abs(c.a[m - 1] * c.b[m - 1]);
    } else {
      bound.tail += scale * c_hat * double(N) * N / (double(m) * m);
    }
  }
  return bound;
}

struct RatioEntry {
  int n_particles;
  int l;
  int k;
  double sup_ratio;  // sup_t I / F_N(l)
  double inf_ratio;  // -inf_t I / F_N(l)
};

/// Fit results for the two-sided F_N(l) bounds over a ladder of chain sizes.
struct RatioScan {
  double epsilon;
  std::vector<RatioEntry> entries;  // sorted by (N, l, k)
  double c1 = 0.0;  // min sup_ratio
  double c2 = 0.0;  // max sup_ratio
  double c3 = 0.0;  // max inf_ratio
  double c4 = 0.0;  // min inf_ratio
};

/// Sweep (N, l) pairs, measuring the sup/inf deviation ratios against F_N(l).
/// k = 0 for every window (the bounds are uniform in k).
inline RatioScan deviation_ratio_scan(const std::vector<int>& n_ladder,
                                    const std::function<std::vector<int>(int)>& l_rule,
                                    double epsilon, int horizon_periods,
                                    Dispersion conv, int workers = 1) {
  std::vector<std::pair<int, int>> tasks;
  for (int N : n_ladder) {
    for (int l : l_rule(N)) {
      if (l >= N) throw std::domain_error("deviation_ratio_scan: l = N excluded (F_N(N) = 0)");
      tasks.emplace_back(N, l);
    }
  }
  RatioScan scan;
  scan.epsilon = epsilon;
  scan.entries.resize(tasks.size());
  parallel_for(tasks.size(), workers, [&](std::size_t i) {
    auto [N, l] = tasks[i];
    AnalysisWindow window{0, l, epsilon};
    ChainParams params = ChainParams::from_sigma(N, 1.0, 1.0, 1.0);
    ExtremalReport report = sup_inf_extension(params, window, horizon_periods, conv);
    double F = f_N(N, l);
    scan.entries[i] = RatioEntry{N, l, 0, report.sup_lower / F, -report.inf_upper / F};
  });
  std::sort(scan.entries.begin(), scan.entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.n_particles, a.l, a.k) < std::tie(b.n_particles, b.l, b.k);
  });
  bool first = true;
  for (const auto& e : scan.entries) {
    if (first) {
      scan.c1 = scan.c2 = e.sup_ratio;
      scan.c3 = scan.c4 = e.inf_ratio;
      first = false;
    } else {
      scan.c1 = std::min(scan.c1, e.sup_ratio);
      scan.c2 = std::max(scan.c2, e.sup_ratio);
      scan.c3 = std::max(scan.c3, e.inf_ratio);
      scan.c4 = std::min(scan.c4, e.inf_ratio);
    }
  }
  return scan;
}

}  // namespace chainlab
