// chainlab: batch CLI over the chain toolkit.  Emits CSV for tabular sweeps
// and JSON for structured verdicts.

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chainlab/chain.hpp"
#include "chainlab/csv.hpp"
#include "chainlab/extremal.hpp"
#include "chainlab/integrate.hpp"
#include "chainlab/mie.hpp"
#include "chainlab/number_theory.hpp"
#include "chainlab/parallel.hpp"
#include "chainlab/phase.hpp"

using json = nlohmann::json;

namespace {

struct GlobalOpts {
  std::string convention = "corrected";
  std::string out;
  int precision = 17;
  int workers = 1;
  std::string config;

  chainlab::Dispersion conv() const { return chainlab::dispersion_from_string(convention); }
};

void add_global_options(CLI::App* cmd, GlobalOpts& g) {
  cmd->add_option("--convention", g.convention, "Dispersion convention")
      ->check(CLI::IsMember({"corrected", "paper-literal"}))
      ->capture_default_str();
  cmd->add_option("--out", g.out, "Output path (default stdout)");
  cmd->add_option("--precision", g.precision, "Printed significant digits")
      ->capture_default_str();
  cmd->add_option("--workers", g.workers, "Worker pool size")->capture_default_str();
  cmd->add_option("--config", g.config, "JSON config file mirroring flags");
}

/// Writes to --out or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);  // LF endings on every platform
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

/// Injects config-file entries as trailing flags, skipping any flag the user
/// already passed on the command line (flags override the file).
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json cfg = json::parse(in);
  if (!cfg.is_object()) throw std::runtime_error("config file must hold a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    std::string flag = "--" + key;
    bool present = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (present) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      args.push_back(flag);
      for (const auto& v : value) {
        args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
    } else {
      args.push_back(flag);
      args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  return args;
}

int run_spectrum(const GlobalOpts& g, int n_particles, double omega0) {
  Output out(g.out);
  out.stream() << "m,omega_m\n";
  for (int m = 1; m <= 2 * n_particles - 2; ++m) {
    double w = chainlab::mode_frequency(n_particles, omega0, m, g.conv());
    out.stream() << m << "," << chainlab::format_double(w, g.precision) << "\n";
  }
  return 0;
}

struct SimulateOpts {
  int n_particles = 2;
  double omega0 = 1.0;
  double sigma = 1.0;
  double spacing = 1.0;
  std::string mode = "both";
  double T = 10.0;
  double dt = 0.0;  // 0 means the stability default
  std::string dump;
  int dump_stride = 1;
};

int run_simulate(const GlobalOpts& g, const SimulateOpts& s) {
  auto conv = g.conv();
  auto params = chainlab::ChainParams::from_sigma(s.n_particles, s.omega0, s.sigma,
                                                  s.spacing);
  chainlab::SystemSpec spec{chainlab::Topology::pinned_line, s.n_particles,
                            chainlab::QuadraticPotential{s.omega0 * s.omega0, s.spacing},
                            params.f0, 1.0};
  double dt = s.dt > 0.0 ? s.dt : chainlab::default_time_step(spec);

  std::unique_ptr<Output> dump;
  if (!s.dump.empty()) {
    dump = std::make_unique<Output>(s.dump);
    dump->stream() << "t,site,z,v\n";
  }
  auto dump_row = [&](double t, int site, double z, double v) {
    dump->stream() << chainlab::format_double(t, g.precision) << "," << site << ","
                   << chainlab::format_double(z, g.precision) << ","
                   << chainlab::format_double(v, g.precision) << "\n";
  };

  json summary;
  summary["n_particles"] = s.n_particles;
  summary["omega0"] = s.omega0;
  summary["sigma"] = s.sigma;
  summary["spacing"] = s.spacing;
  summary["mode"] = s.mode;
  summary["T"] = s.T;
  summary["dt"] = dt;
  summary["convention"] = g.convention;

  if (s.mode == "spectral") {
    long long nsamples = static_cast<long long>(std::llround(s.T / dt));
    for (long long i = 0; i <= (dump ? nsamples : 0); i += s.dump_stride) {
      double t = i * dt;
      for (int n = 0; n < s.n_particles; ++n) {
        double z = n * s.spacing + chainlab::exact_displacement(params, n, t, conv);
        double v = chainlab::exact_velocity(params, n, t, conv);
        if (dump) dump_row(t, n, z, v);
      }
      if (!dump) break;
    }
  } else {
    long long step_index = 0;
    chainlab::integrate(spec, s.T, dt, [&](const chainlab::ChainState& st) {
      if (dump && step_index % s.dump_stride == 0) {
        for (int n = 0; n < s.n_particles; ++n) {
          dump_row(st.t, n, st.positions[n], st.velocities[n]);
        }
      }
      ++step_index;
    });
  }
  if (s.mode == "both") {
    double err = chainlab::spectral_vs_ode_error(params, s.T, dt, conv);
    summary["spectral_vs_ode_error"] = err;
    summary["convention_mismatch"] =
        conv == chainlab::Dispersion::paper_literal && err > 1e-2;
  }
  Output out(g.out);
  out.stream() << summary.dump(2) << "\n";
  return 0;
}

struct SupScanOpts {
  std::vector<int> ladder;
  std::vector<int> l_set;
  double epsilon = 0.25;
  int horizon_periods = 50;
  double sigma = 1.0;
  double omega0 = 1.0;
};

int run_sup_scan(const GlobalOpts& g, const SupScanOpts& s) {
  auto conv = g.conv();
  std::vector<std::pair<int, int>> rows;
  for (int N : s.ladder) {
    for (int l : s.l_set) {
      if (l >= N) throw std::domain_error("sup-scan: l >= N rejected (F_N(N) = 0)");
      chainlab::AnalysisWindow{0, l, s.epsilon}.require_valid(N);
      rows.emplace_back(N, l);
    }
  }
  std::sort(rows.begin(), rows.end());
  std::vector<chainlab::ExtremalReport> reports(rows.size());
  chainlab::parallel_for(rows.size(), g.workers, [&](std::size_t i) {
    auto [N, l] = rows[i];
    auto params = chainlab::ChainParams::from_sigma(N, s.omega0, s.sigma, 1.0);
    reports[i] = chainlab::sup_inf_extension(params, {0, l, s.epsilon},
                                             s.horizon_periods, conv);
  });
  Output out(g.out);
  out.stream() << "N,k,l,epsilon,sigma,sup_lower,sup_upper,inf_lower,inf_upper,"
                  "F_N_l,ratio_sup,ratio_inf,horizon\n";
  auto fmt = [&](double x) { return chainlab::format_double(x, g.precision); };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto [N, l] = rows[i];
    const auto& r = reports[i];
    double F = chainlab::f_N(N, l);
    out.stream() << N << ",0," << l << "," << fmt(s.epsilon) << "," << fmt(s.sigma)
                 << "," << fmt(r.sup_lower) << "," << fmt(r.sup_upper) << ","
                 << fmt(r.inf_lower) << "," << fmt(r.inf_upper) << "," << fmt(F) << ","
                 << fmt(r.sup_lower / F) << "," << fmt(-r.inf_upper / F) << ","
                 << fmt(r.horizon) << "\n";
  }
  return 0;
}

struct PhaseOpts {
  double c = 0.01;
  double alpha = 1.0;
  double beta = 0.0;
  std::vector<int> ladder;
  int l = 1;
  double epsilon = 0.25;
  int horizon_periods = 30;
  std::string json_out;
};

int run_phase_sweep(const GlobalOpts& g, const PhaseOpts& p) {
  chainlab::ScalingFamily family{p.c, p.alpha, p.beta};
  chainlab::SweepOptions opts;
  opts.l = p.l;
  opts.epsilon = p.epsilon;
  opts.horizon_periods = p.horizon_periods;
  opts.convention = g.conv();
  opts.workers = g.workers;
  auto verdict = chainlab::phase_sweep(family, p.ladder, opts);

  Output out(g.out);
  auto fmt = [&](double x) { return chainlab::format_double(x, g.precision); };
  out.stream() << "N,sigma,r,slope_estimate,classification\n";
  for (std::size_t i = 0; i < verdict.ladder.size(); ++i) {
    out.stream() << verdict.ladder[i] << "," << fmt(family.sigma(verdict.ladder[i]))
                 << "," << fmt(verdict.r[i]) << "," << fmt(verdict.slope) << ","
                 << chainlab::to_string(verdict.classification) << "\n";
  }

  json j;
  j["family"] = {{"c", p.c}, {"alpha", p.alpha}, {"beta", p.beta}};
  j["ladder"] = verdict.ladder;
  j["r"] = verdict.r;
  j["slope"] = verdict.slope;
  j["classification"] = chainlab::to_string(verdict.classification);
  j["l"] = p.l;
  j["epsilon"] = p.epsilon;
  j["horizon_periods"] = p.horizon_periods;
  if (!p.json_out.empty()) {
    Output jout(p.json_out);
    jout.stream() << j.dump(2) << "\n";
  } else if (!g.out.empty()) {
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

struct StaticOpts {
  double n = 6.0;
  double m = 12.0;
  double kappa = 1.0;
  int n_particles = 20;
  double f_min = 0.0;
  double f_max = -1.0;  // default: 2*kappa*C/N
  int f_count = 100;
};

int run_static(const GlobalOpts& g, const StaticOpts& s) {
  auto pot = chainlab::mie_fit_from_curvature(s.kappa, s.n_particles, s.n, s.m);
  auto C = chainlab::critical_force_ratio(s.n, s.m);
  double threshold = s.kappa * C.oracle / s.n_particles;
  double f_max = s.f_max >= 0.0 ? s.f_max : 2.0 * threshold;

  json j;
  j["n"] = s.n;
  j["m"] = s.m;
  j["kappa"] = s.kappa;
  j["n_particles"] = s.n_particles;
  j["c_n"] = pot.c_n;
  j["c_m"] = pot.c_m;
  j["a"] = pot.a;
  j["b"] = pot.b;
  j["V_at_a"] = chainlab::mie_value_at_minimum(s.kappa, s.n_particles, s.n, s.m);
  j["C"] = {{"oracle", C.oracle}, {"printed", C.printed}, {"mismatch", C.mismatch}};
  j["threshold_force"] = threshold;
  json points = json::array();
  for (int i = 0; i < s.f_count; ++i) {
    double f = s.f_count == 1
                   ? s.f_min
                   : s.f_min + (f_max - s.f_min) * i / double(s.f_count - 1);
    auto h = chainlab::mie_fixed_point(pot, f);
    json row;
    row["f"] = f;
    row["exists"] = h.has_value();
    if (h) row["h"] = *h;
    points.push_back(row);
  }
  j["fixed_points"] = points;
  Output out(g.out);
  out.stream() << j.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify: TAP-style invariant suites.

struct TapCheck {
  std::string name;
  std::function<bool(chainlab::Dispersion)> run;
  bool expected_fail_paper_literal = false;
};

std::vector<TapCheck> chain_suite() {
  using namespace chainlab;
  return {
      {"gamma-sum identity over N in {2,3,5,17,64}",
       [](Dispersion conv) {
         for (int N : {2, 3, 5, 17, 64}) {
           for (int n = 0; n < N; ++n) {
             if (gamma_identity_residual(N, n, conv) > 1e-9 * std::max(1, n)) return false;
           }
         }
         return true;
       },
       true},
      {"two evaluation paths of I agree",
       [](Dispersion conv) {
         auto params = ChainParams::from_sigma(17, 1.0, 0.7, 1.0);
         for (int i = 0; i < 20; ++i) {
           double t = 0.37 * i * i + 0.1;
           double via_sum = extension_deviation(params, 2, 5, t, conv);
           double via_disp = extension_deviation_via_displacement(params, 2, 5, t, conv);
           if (std::abs(via_sum - via_disp) > 1e-9 * (1.0 + std::abs(via_sum))) return false;
         }
         return true;
       },
       false},
      {"even-mode coefficients vanish exactly",
       [](Dispersion conv) {
         auto c = extension_coefficients(20, 3, 4, conv);
         for (int m = 2; m <= 38; m += 2) {
           if (c.a[m - 1] != 0.0) return false;
         }
         return true;
       },
       false},
      {"|b_m| <= 1",
       [](Dispersion conv) {
         auto c = extension_coefficients(20, 3, 4, conv);
         for (double b : c.b) {
           if (std::abs(b) > 1.0 + 1e-15) return false;
         }
         return true;
       },
       false},
      {"N=2 spectral solution equals sigma(1-cos t)",
       [](Dispersion conv) {
         auto params = ChainParams::from_sigma(2, 1.0, 1.0, 1.0);
         for (double t : {0.0, 0.5, 1.0, chainlab::kPi, 7.3}) {
           double expect = 1.0 - std::cos(t);
           if (std::abs(exact_displacement(params, 1, t, conv) - expect) > 1e-10) {
             return false;
           }
         }
         return true;
       },
       true},
  };
}

std::vector<TapCheck> integrator_suite() {
  using namespace chainlab;
  return {
      {"spectral vs ODE cross-check, N=5",
       [](Dispersion conv) {
         auto params = ChainParams::from_sigma(5, 1.0, 1.0, 1.0);
         return spectral_vs_ode_error(params, 20.0, 1e-3, conv) <= 1e-5;
       },
       true},
      {"energy drift bounded, quadratic N=20",
       [](Dispersion) {
         SystemSpec spec{Topology::pinned_line, 20, QuadraticPotential{1.0, 1.0}, 0.5, 1.0};
         ChainState init = lattice_state(spec);
         double e0 = total_energy(spec, init);
         double worst = 0.0;
         integrate(spec, 200.0, 1e-2, [&](const ChainState& s) {
           worst = std::max(worst, std::abs(total_energy(spec, s) - e0));
         });
         return worst <= 1e-4 * std::max(1.0, std::abs(e0));
       },
       false},
      {"circle system reproduces the pinned line, N=5",
       [](Dispersion) {
         auto params = ChainParams::from_sigma(5, 1.0, 1.0, 1.0);
         auto eq = circle_equivalence_error(params, 20.0, 1e-3);
         return eq.max_difference <= 1e-6 && eq.symmetry_residual <= 1e-9 * 5.0;
       },
       false},
  };
}

std::vector<TapCheck> extremal_suite() {
  using namespace chainlab;
  return {
      {"F_N values and concavity probes",
       [](Dispersion) {
         if (std::abs(f_N(100, 100)) > 1e-12) return false;
         if (std::abs(f_N(100, 1) - std::log(100.0)) > 1e-12) return false;
         return m_of_n(100, 1.0) == 65;
       },
       false},
      {"N=2 sup/inf bracket reaches the closed form",
       [](Dispersion conv) {
         auto params = ChainParams::from_sigma(2, 1.0, 1.0, 1.0);
         auto rep = sup_inf_extension(params, {0, 1, 0.25}, 4, conv);
         return std::abs(rep.sup_lower - 1.0) < 1e-6 &&
                rep.sup_lower <= rep.sup_upper + 1e-12;
       },
       true},
      {"sandwich ordering on a sample window",
       [](Dispersion conv) {
         auto params = ChainParams::from_sigma(32, 1.0, 1.0, 1.0);
         auto rep = sup_inf_extension(params, {0, 2, 0.25}, 10, conv);
         return rep.sup_lower <= rep.sup_upper && rep.inf_lower <= rep.inf_upper;
       },
       false},
  };
}

std::vector<TapCheck> phase_suite() {
  using namespace chainlab;
  return {
      {"critical force ratio C(6,12) oracle",
       [](Dispersion) {
         auto C = critical_force_ratio(6.0, 12.0);
         return std::abs(C.oracle - 0.03737) < 1e-4 && C.mismatch;
       },
       false},
      {"static fixed point flips exactly at the threshold",
       [](Dispersion) {
         auto pot = mie_fit_from_curvature(1.0, 20, 6.0, 12.0);
         double fc = pot.derivative(pot.b);
         return mie_fixed_point(pot, fc).has_value() &&
                !mie_fixed_point(pot, fc * 1.0001).has_value();
       },
       false},
      {"quadratic fixed point h = a + sigma",
       [](Dispersion) {
         return quadratic_fixed_point(2.0, 1.0, 0.5) == 1.25;
       },
       false},
      {"relative extension is 1 at sigma = 0",
       [](Dispersion conv) {
         return relative_extension(20, 0.0, 1, 0.25, 2, conv) == 1.0;
       },
       false},
  };
}

std::vector<TapCheck> number_theory_suite() {
  using namespace chainlab;
  return {
      {"totient values",
       [](Dispersion) {
         return euler_totient(1) == 1 && euler_totient(12) == 4 && euler_totient(97) == 96;
       },
       false},
      {"relation search finds 2 sin(pi/6) = 1",
       [](Dispersion) {
         auto r = integer_relation_search({0.5}, 2, 1e-12);
         return r.found && 2 * r.coefficients[0] == r.coefficients[1] &&
                r.residual <= 1e-12;
       },
       false},
      {"no small relation among N=8 frequency ratios",
       [](Dispersion conv) {
         return !rational_independence_check(8, 3, 5, 1e-10, conv).found;
       },
       false},
  };
}

int run_verify(const GlobalOpts& g, const std::string& suite) {
  std::vector<TapCheck> checks;
  auto append = [&](std::vector<TapCheck> more) {
    for (auto& c : more) checks.push_back(std::move(c));
  };
  if (suite == "chain" || suite == "all") append(chain_suite());
  if (suite == "integrator" || suite == "all") append(integrator_suite());
  if (suite == "extremal" || suite == "all") append(extremal_suite());
  if (suite == "phase" || suite == "all") append(phase_suite());
  if (suite == "number-theory" || suite == "all") append(number_theory_suite());
  if (checks.empty()) {
    std::cerr << "unknown suite: " << suite << "\n";
    return 1;
  }
  auto conv = g.conv();
  bool paper_literal = conv == chainlab::Dispersion::paper_literal;
  Output out(g.out);
  out.stream() << "1.." << checks.size() << "\n";
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    bool ok = false;
    try {
      ok = checks[i].run(conv);
    } catch (const std::exception&) {
      ok = false;
    }
    if (ok) {
      out.stream() << "ok " << i + 1 << " - " << checks[i].name << "\n";
    } else if (paper_literal && checks[i].expected_fail_paper_literal) {
      out.stream() << "not ok " << i + 1 << " - " << checks[i].name
                   << " # TODO expected failure under paper-literal convention\n";
    } else {
      out.stream() << "not ok " << i + 1 << " - " << checks[i].name << "\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven harmonic chain toolkit"};
  app.require_subcommand(1);

  GlobalOpts g_spectrum, g_simulate, g_sup, g_phase, g_static, g_verify;

  int spec_n = 0;
  double spec_omega0 = 1.0;
  auto* spectrum = app.add_subcommand("spectrum", "Normal-mode frequencies as CSV");
  spectrum->add_option("--n-particles", spec_n, "Particle count N")->required();
  spectrum->add_option("--omega0", spec_omega0, "Proper frequency")->capture_default_str();
  add_global_options(spectrum, g_spectrum);

  SimulateOpts sim;
  auto* simulate = app.add_subcommand("simulate", "Spectral and/or ODE trajectory");
  simulate->add_option("--n-particles", sim.n_particles)->required();
  simulate->add_option("--omega0", sim.omega0)->capture_default_str();
  simulate->add_option("--sigma", sim.sigma)->capture_default_str();
  simulate->add_option("--spacing", sim.spacing)->capture_default_str();
  simulate->add_option("--mode", sim.mode)->check(CLI::IsMember({"spectral", "ode", "both"}));
  simulate->add_option("--T", sim.T, "Integration horizon")->required();
  simulate->add_option("--dt", sim.dt, "Step (0 selects the stability default)");
  simulate->add_option("--dump", sim.dump, "Trajectory CSV path");
  simulate->add_option("--dump-stride", sim.dump_stride)->capture_default_str();
  add_global_options(simulate, g_simulate);

  SupScanOpts sup;
  auto* sup_scan = app.add_subcommand("sup-scan", "Extremal reports over an N ladder");
  sup_scan->add_option("--ladder", sup.ladder, "N values")->required();
  sup_scan->add_option("--l-set", sup.l_set, "Window spans")->required();
  sup_scan->add_option("--epsilon", sup.epsilon)->capture_default_str();
  sup_scan->add_option("--horizon-periods", sup.horizon_periods)->capture_default_str();
  sup_scan->add_option("--sigma", sup.sigma)->capture_default_str();
  sup_scan->add_option("--omega0", sup.omega0)->capture_default_str();
  add_global_options(sup_scan, g_sup);

  PhaseOpts phase;
  auto* phase_sweep = app.add_subcommand("phase-sweep", "Double-scaling classification");
  phase_sweep->add_option("--c", phase.c, "Family amplitude")->capture_default_str();
  phase_sweep->add_option("--alpha", phase.alpha, "Exponent of N")->capture_default_str();
  phase_sweep->add_option("--beta", phase.beta, "Exponent of ln N")->capture_default_str();
  phase_sweep->add_option("--ladder", phase.ladder, "N values")->required();
  phase_sweep->add_option("--l", phase.l)->capture_default_str();
  phase_sweep->add_option("--epsilon", phase.epsilon)->capture_default_str();
  phase_sweep->add_option("--horizon-periods", phase.horizon_periods)->capture_default_str();
  phase_sweep->add_option("--json-out", phase.json_out, "Verdict JSON path");
  add_global_options(phase_sweep, g_phase);

  StaticOpts st;
  auto* static_cmd = app.add_subcommand("static", "Mie fixed-point analysis as JSON");
  static_cmd->add_option("--mie-n", st.n)->capture_default_str();
  static_cmd->add_option("--mie-m", st.m)->capture_default_str();
  static_cmd->add_option("--kappa", st.kappa)->capture_default_str();
  static_cmd->add_option("--n-particles", st.n_particles)->capture_default_str();
  static_cmd->add_option("--f-min", st.f_min)->capture_default_str();
  static_cmd->add_option("--f-max", st.f_max, "Default 2*kappa*C/N");
  static_cmd->add_option("--f-count", st.f_count)->capture_default_str();
  add_global_options(static_cmd, g_static);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run invariant suites, TAP output");
  verify->add_option("--suite", suite,
                     "chain|integrator|extremal|phase|number-theory|all")
      ->capture_default_str();
  add_global_options(verify, g_verify);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = apply_config_file(args);
    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());

    if (*spectrum) return run_spectrum(g_spectrum, spec_n, spec_omega0);
    if (*simulate) return run_simulate(g_simulate, sim);
    if (*sup_scan) return run_sup_scan(g_sup, sup);
    if (*phase_sweep) return run_phase_sweep(g_phase, phase);
    if (*static_cmd) return run_static(g_static, st);
    if (*verify) return run_verify(g_verify, suite);
    return 1;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const chainlab::StabilityError& e) {
    std::cerr << "numerical-stability error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
