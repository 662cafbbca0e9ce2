#pragma once

// Time-domain oracle: velocity-Verlet (kick-drift-kick) integration of the
// pinned chain, of the forced auxiliary ring, and of nonlinear Mie chains.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "chainlab/chain.hpp"
#include "chainlab/mie.hpp"

namespace chainlab {

/// Thrown when a step would violate the explicit-scheme stability bound or
/// when a Mie gap collapses onto the potential singularity.
struct StabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadraticPotential {
  double kappa;    // > 0
  double spacing;  // rest gap a, > 0
};

using PotentialSpec = std::variant<QuadraticPotential, MiePotential>;

enum class Topology {
  pinned_line,    // N particles, z0 pinned at zero, pull f on z_{N-1}
  circle_forced,  // 4N-2 sites on a ring, antisymmetric +-f0 drive pattern
};

struct SystemSpec {
  Topology topology = Topology::pinned_line;
  int n_particles = 2;  // N; the ring has 4N-2 sites
  PotentialSpec potential{QuadraticPotential{1.0, 1.0}};
  double f0 = 0.0;   // driving per unit mass
  double mass = 1.0;

  int site_count() const {
    return topology == Topology::pinned_line ? n_particles : 4 * n_particles - 2;
  }
};

/// Positions and velocities at one time instant.  For the pinned line the
/// positions are absolute (z_0 == 0 at all times); for the ring they are the
/// deviations y_n from rest.
struct ChainState {
  double t = 0.0;
  std::vector<double> positions;
  std::vector<double> velocities;
};

namespace detail {

inline double rest_spacing(const PotentialSpec& pot) {
  if (const auto* q = std::get_if<QuadraticPotential>(&pot)) return q->spacing;
  return std::get<MiePotential>(pot).a;
}

inline void accelerations(const SystemSpec& spec, const std::vector<double>& z,
                          std::vector<double>& acc) {
  int count = spec.site_count();
  acc.assign(count, 0.0);
  if (spec.topology == Topology::circle_forced) {
    const auto* q = std::get_if<QuadraticPotential>(&spec.potential);
    if (!q) throw std::domain_error("circle-forced topology requires a quadratic potential");
    double w2 = q->kappa / spec.mass;
    int N = spec.n_particles;
    for (int n = 0; n < count; ++n) {
      int prev = (n + count - 1) % count;
      int next = (n + 1) % count;
      acc[n] = w2 * (z[prev] - 2.0 * z[n] + z[next]);
    }
    acc[N - 1] += spec.f0;
    acc[N] += spec.f0;
    acc[3 * N - 2] -= spec.f0;
    acc[3 * N - 1] -= spec.f0;
    return;
  }
  int N = spec.n_particles;
  if (const auto* q = std::get_if<QuadraticPotential>(&spec.potential)) {
    double w2 = q->kappa / spec.mass;
    for (int k = 1; k <= N - 2; ++k) {
      acc[k] = w2 * (z[k - 1] - 2.0 * z[k] + z[k + 1]);
    }
    acc[N - 1] = w2 * (z[N - 2] - z[N - 1] + q->spacing) + spec.f0;
  } else {
    const auto& mie = std::get<MiePotential>(spec.potential);
    double inv_mass = 1.0 / spec.mass;
    std::vector<double> bond(N - 1);  // V'(gap_k), gap_k = z_k - z_{k-1}
    for (int k = 1; k <= N - 1; ++k) {
      double gap = z[k] - z[k - 1];
      if (gap <= 1e-6 * mie.a) {
        throw StabilityError("mie gap collapsed below 1e-6*a at bond " + std::to_string(k));
      }
      bond[k - 1] = mie.derivative(gap);
    }
    for (int k = 1; k <= N - 2; ++k) {
      acc[k] = (bond[k] - bond[k - 1]) * inv_mass;
    }
    acc[N - 1] = -bond[N - 2] * inv_mass + spec.f0;
  }
  acc[0] = 0.0;  // pinned
}

inline double max_mode_frequency(const SystemSpec& spec, const std::vector<double>& z) {
  if (const auto* q = std::get_if<QuadraticPotential>(&spec.potential)) {
    return 2.0 * std::sqrt(q->kappa / spec.mass);
  }
  const auto& mie = std::get<MiePotential>(spec.potential);
  double min_gap = 0.0;
  int N = spec.n_particles;
  for (int k = 1; k <= N - 1; ++k) {
    double gap = z[k] - z[k - 1];
    if (k == 1 || gap < min_gap) min_gap = gap;
  }
  double curv = min_gap > 0.0 ? mie.second_derivative(min_gap) : mie.kappa;
  return 2.0 * std::sqrt(std::max(curv, mie.kappa) / spec.mass);
}

}  // namespace detail

/// State at rest on the lattice: z_k = k*a for the line, zero deviations for
/// the ring.
inline ChainState lattice_state(const SystemSpec& spec) {
  ChainState s;
  s.positions.assign(spec.site_count(), 0.0);
  s.velocities.assign(spec.site_count(), 0.0);
  if (spec.topology == Topology::pinned_line) {
    double a = detail::rest_spacing(spec.potential);
    for (int k = 0; k < spec.n_particles; ++k) s.positions[k] = k * a;
  }
  return s;
}

/// Step size giving 64 steps per fastest period of the linearized system.
inline double default_time_step(const SystemSpec& spec) {
  ChainState s = lattice_state(spec);
  double wmax = detail::max_mode_frequency(spec, s.positions);
  return (2.0 * kPi / wmax) / 64.0;
}

/// One kick-drift-kick step.  Rejects dt outside the explicit stability bound
/// dt*omega_max < 2, with omega_max taken from the curvature at the current
/// minimum gap for Mie chains.
inline ChainState step(const SystemSpec& spec, const ChainState& state, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("step: dt must be > 0");
  if (state.positions.size() != state.velocities.size() ||
      static_cast<int>(state.positions.size()) != spec.site_count()) {
    throw std::domain_error("step: state size does not match spec");
  }
  double wmax = detail::max_mode_frequency(spec, state.positions);
  if (dt * wmax >= 2.0) {
    throw StabilityError("step: dt*omega_max = " + std::to_string(dt * wmax) +
                         " >= 2 (unstable)");
  }
  ChainState next = state;
  std::vector<double> acc;
  detail::accelerations(spec, next.positions, acc);
  std::size_t count = next.positions.size();
  for (std::size_t i = 0; i < count; ++i) next.velocities[i] += 0.5 * dt * acc[i];
  for (std::size_t i = 0; i < count; ++i) next.positions[i] += dt * next.velocities[i];
  detail::accelerations(spec, next.positions, acc);
  for (std::size_t i = 0; i < count; ++i) next.velocities[i] += 0.5 * dt * acc[i];
  next.t += dt;
  return next;
}

using StateObserver = std::function<void(const ChainState&)>;

/// Integrate from the lattice state to time T (rounded to whole steps).  The
/// observer, when set, sees every state including the initial one.
inline ChainState integrate(const SystemSpec& spec, double T, double dt,
                            const StateObserver& observer = {}) {
  if (!(dt > 0.0)) throw std::domain_error("integrate: dt must be > 0");
  if (T < 0.0) throw std::domain_error("integrate: T must be >= 0");
  ChainState state = lattice_state(spec);
  // Reject an unstable dt even when T is too short for a full step.
  if (dt * detail::max_mode_frequency(spec, state.positions) >= 2.0) {
    throw StabilityError("integrate: dt*omega_max >= 2");
  }
  if (observer) observer(state);
  long long nsteps = static_cast<long long>(std::llround(T / dt));
  // Shared force buffer: the closing kick of one step is the opening kick of
  // the next, so each step costs one force evaluation.
  std::vector<double> acc;
  detail::accelerations(spec, state.positions, acc);
  std::size_t count = state.positions.size();
  for (long long s = 0; s < nsteps; ++s) {
    double wmax = detail::max_mode_frequency(spec, state.positions);
    if (dt * wmax >= 2.0) {
      throw StabilityError("integrate: dt*omega_max >= 2 at t = " + std::to_string(state.t));
    }
    for (std::size_t i = 0; i < count; ++i) state.velocities[i] += 0.5 * dt * acc[i];
    for (std::size_t i = 0; i < count; ++i) state.positions[i] += dt * state.velocities[i];
    detail::accelerations(spec, state.positions, acc);
    for (std::size_t i = 0; i < count; ++i) state.velocities[i] += 0.5 * dt * acc[i];
    state.t = (s + 1) * dt;
    if (observer) observer(state);
  }
  return state;
}

/// Total energy H = sum p^2/2m + sum V(gap) - f*z_{N-1} (line) or its ring
/// analogue with the drive's work term, so H is conserved by the exact flow.
inline double total_energy(const SystemSpec& spec, const ChainState& state) {
  double kinetic = 0.0;
  for (double v : state.velocities) kinetic += 0.5 * spec.mass * v * v;
  double potential = 0.0;
  const auto& z = state.positions;
  if (spec.topology == Topology::pinned_line) {
    int N = spec.n_particles;
    if (const auto* q = std::get_if<QuadraticPotential>(&spec.potential)) {
      for (int k = 1; k <= N - 1; ++k) {
        double stretch = z[k] - z[k - 1] - q->spacing;
        potential += 0.5 * q->kappa * stretch * stretch;
      }
    } else {
      const auto& mie = std::get<MiePotential>(spec.potential);
      for (int k = 1; k <= N - 1; ++k) {
        double gap = z[k] - z[k - 1];
        if (gap <= 0.0) throw std::domain_error("total_energy: non-positive mie gap");
        potential += mie.value(gap);
      }
    }
    return kinetic + potential - spec.mass * spec.f0 * z[N - 1];
  }
  const auto* q = std::get_if<QuadraticPotential>(&spec.potential);
  if (!q) throw std::domain_error("total_energy: circle topology requires quadratic potential");
  int count = spec.site_count();
  for (int n = 0; n < count; ++n) {
    double d = z[(n + 1) % count] - z[n];
    potential += 0.5 * q->kappa * d * d;
  }
  int N = spec.n_particles;
  double drive = z[N - 1] + z[N] - z[3 * N - 2] - z[3 * N - 1];
  return kinetic + potential - spec.mass * spec.f0 * drive;
}

/// Max over particles and sampled times of |x_spectral - x_ode| / (sigma*N).
/// Second-order in dt for the corrected convention; O(1) under paper-literal.
inline double spectral_vs_ode_error(const ChainParams& params, double T, double dt,
                                    Dispersion conv = Dispersion::corrected) {
  int N = params.n_particles;
  SystemSpec spec;
  spec.topology = Topology::pinned_line;
  spec.n_particles = N;
  spec.potential = QuadraticPotential{params.omega0 * params.omega0, params.spacing};
  spec.f0 = params.f0;
  double sample_dt = (2.0 * kPi / (2.0 * params.omega0)) / 8.0;
  long long stride = std::max<long long>(1, std::llround(sample_dt / dt));
  double scale = params.sigma > 0.0 ? 1.0 / (params.sigma * N) : 1.0;
  double max_err = 0.0;
  long long step_index = 0;
  integrate(spec, T, dt, [&](const ChainState& s) {
    if (step_index++ % stride != 0) return;
    for (int n = 0; n < N; ++n) {
      double x_ode = s.positions[n] - n * params.spacing;
      double x_sp = exact_displacement(params, n, s.t, conv);
      max_err = std::max(max_err, std::abs(x_sp - x_ode) * scale);
    }
  });
  return max_err;
}

struct CircleEquivalence {
  double max_difference;     // max |x_n - y_n| / (sigma*N), n = 0..N-1
  double symmetry_residual;  // max |y_n + y_{-n}| over the ring, absolute
};

/// Integrates the pinned line and the forced ring side by side and measures
/// how well the ring solution restricted to n = 0..N-1 reproduces the line,
/// together with the ring's odd-symmetry residual y_n = -y_{-n}.
inline CircleEquivalence circle_equivalence_error(const ChainParams& params, double T,
                                                  double dt) {
  int N = params.n_particles;
  double kappa = params.omega0 * params.omega0;
  SystemSpec line{Topology::pinned_line, N, QuadraticPotential{kappa, params.spacing},
                  params.f0, 1.0};
  SystemSpec ring{Topology::circle_forced, N, QuadraticPotential{kappa, params.spacing},
                  params.f0, 1.0};
  ChainState ls = lattice_state(line);
  ChainState rs = lattice_state(ring);
  double scale = params.sigma > 0.0 ? 1.0 / (params.sigma * N) : 1.0;
  int ring_sites = ring.site_count();
  CircleEquivalence out{0.0, 0.0};
  auto measure = [&] {
    for (int n = 0; n < N; ++n) {
      double x = ls.positions[n] - n * params.spacing;
      out.max_difference = std::max(out.max_difference,
                                    std::abs(x - rs.positions[n]) * scale);
    }
    for (int n = 1; n < ring_sites; ++n) {
      int mirror = ring_sites - n;  // index -n mod 4N-2
      out.symmetry_residual = std::max(
          out.symmetry_residual,
          std::abs(rs.positions[n] + rs.positions[mirror % ring_sites]));
    }
  };
  measure();
  long long nsteps = static_cast<long long>(std::llround(T / dt));
  for (long long s = 0; s < nsteps; ++s) {
    ls = step(line, ls, dt);
    rs = step(ring, rs, dt);
    measure();
  }
  return out;
}

enum class DissociationVerdict { bound, dissociated };

/// Simulates the Mie chain from the lattice for each force and reports
/// whether it falls apart: some gap exceeds 3*b before T and the largest gap
/// is non-decreasing over the last quarter of the run.
inline std::vector<DissociationVerdict> dissociation_scan(const MiePotential& pot,
                                                          int n_particles,
                                                          const std::vector<double>& forces,
                                                          double T, double mass = 1.0) {
  for (std::size_t i = 1; i < forces.size(); ++i) {
    if (forces[i] < forces[i - 1]) {
      throw std::domain_error("dissociation_scan: forces must be sorted ascending");
    }
  }
  std::vector<DissociationVerdict> verdicts;
  verdicts.reserve(forces.size());
  for (double f : forces) {
    SystemSpec spec{Topology::pinned_line, n_particles, pot, f / mass, mass};
    double dt = default_time_step(spec) / 4.0;
    std::vector<double> largest_gap;
    bool escaped = false;
    auto run = [&](double step_size) {
      largest_gap.clear();
      escaped = false;
      integrate(spec, T, step_size, [&](const ChainState& s) {
        double g = 0.0;
        for (int k = 1; k < n_particles; ++k) {
          g = std::max(g, s.positions[k] - s.positions[k - 1]);
        }
        largest_gap.push_back(g);
        if (g > 3.0 * pot.b) escaped = true;
      });
    };
    // A dissociating run can transiently stiffen the inner wall; retry with a
    // smaller step if the stability guard trips.
    for (int attempt = 0;; ++attempt) {
      try {
        run(dt);
        break;
      } catch (const StabilityError&) {
        if (attempt >= 4) throw;
        dt *= 0.5;
      }
    }
    bool tail_monotone = true;
    std::size_t start = largest_gap.size() - largest_gap.size() / 4;
    for (std::size_t i = start; i + 1 < largest_gap.size(); ++i) {
      if (largest_gap[i + 1] < largest_gap[i] - 1e-12 * pot.a) {
        tail_monotone = false;
        break;
      }
    }
    verdicts.push_back(escaped && tail_monotone ? DissociationVerdict::dissociated
                                                : DissociationVerdict::bound);
  }
  return verdicts;
}

}  // namespace chainlab
