// eigenpath: build adiabatic Hamiltonian paths, integrate schedule-driven
// evolutions along them, and check the distinguishability-based runtime
// bounds by direct computation.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "eigenpath/experiments.hpp"
#include "eigenpath/kernels.hpp"

namespace ep = eigenpath;
namespace ex = eigenpath::experiments;

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << text;
}

template <typename Report>
void emit_report(const Report& rep, const std::string& out_path, const std::string& format) {
  if (format == "json") {
    emit(ex::to_json(rep) + "\n", out_path);
  } else {
    std::ostringstream os;
    ex::write_csv(rep, os);
    emit(os.str(), out_path);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adiabatic eigenpath traversal: paths, schedules, evolutions, bounds"};
  app.set_config("--config", "", "read options from a key=value file");
  app.require_subcommand(1);
  app.fallthrough();  // --out/--format may follow the subcommand

  std::string out_path;
  std::string format = "csv";
  app.add_option("--out", out_path, "output file (default: stdout)")->capture_default_str();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // grover-scaling ----------------------------------------------------------
  auto* grover = app.add_subcommand("grover-scaling",
                                    "min gap, path length and time-to-fidelity vs N");
  ex::GroverScalingConfig gcfg;
  std::size_t g_nmax = 256;
  grover->add_option("--n-max", g_nmax, "largest N (powers of 4 up to this)")
      ->capture_default_str();
  grover->add_option("--dt", gcfg.dt, "integrator step")->capture_default_str();
  grover->add_option("--target-fidelity", gcfg.target_fidelity, "fidelity target")
      ->capture_default_str();
  double grover_eps = -1.0;
  grover->add_option("--eps", grover_eps, "infidelity target (sets fidelity to 1-eps)");
  grover->add_option("--seed", gcfg.seed, "marked-item seed")->capture_default_str();

  // ordered-search-bound ----------------------------------------------------
  auto* ordered = app.add_subcommand(
      "ordered-search-bound", "adversary norms, W(t) traces and the runtime bound");
  ex::OrderedSearchConfig ocfg;
  ordered->add_option("--n", ocfg.n_min, "smallest ensemble n")->capture_default_str();
  ordered->add_option("--n-max", ocfg.n_max, "largest ensemble n")->capture_default_str();
  ordered->add_option("--delta", ocfg.delta, "gap scale")->capture_default_str();
  ordered->add_option("--dt", ocfg.dt, "integrator step")->capture_default_str();
  ordered->add_option("--c", ocfg.cs, "local-schedule speed constants")
      ->capture_default_str();
  std::string ordered_schedule = "both";
  ordered->add_option("--schedule", ordered_schedule, "which schedule family to run")
      ->check(CLI::IsMember({"linear", "local", "both"}))
      ->capture_default_str();
  double ordered_eps = -1.0;
  ordered->add_option("--eps", ordered_eps,
                      "pin the eps used in the spectral bound (default: measured)");

  // clock-traversal ---------------------------------------------------------
  auto* clock = app.add_subcommand("clock-traversal",
                                   "traverse a circuit's clock path adiabatically");
  ex::ClockTraversalConfig ccfg;
  std::string circuit_file;
  int qubits = 1;
  clock->add_option("--circuit", circuit_file, "gate list file")->required();
  clock->add_option("--qubits", qubits, "system qubit count")->required();
  clock->add_option("--delta", ccfg.delta, "gap scale")->capture_default_str();
  clock->add_option("--dt", ccfg.dt, "integrator step")->capture_default_str();
  clock->add_option("--c", ccfg.cs, "speed constants")->capture_default_str();

  // local-condition ---------------------------------------------------------
  auto* local = app.add_subcommand("local-condition",
                                   "gap-profile sweep of the local necessary condition");
  ex::LocalConditionConfig lcfg;
  local->add_option("--n", lcfg.n, "bits")->capture_default_str();
  local->add_option("--delta", lcfg.delta, "gap scale")->capture_default_str();
  local->add_option("--dt", lcfg.dt, "integrator step")->capture_default_str();
  local->add_option("--c", lcfg.cs, "speed constants")->capture_default_str();
  local->add_option("--profile", lcfg.profile, "gap profile")
      ->check(CLI::IsMember({"const", "linear-ramp"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*grover) {
      if (grover_eps >= 0.0) gcfg.target_fidelity = 1.0 - grover_eps;
      gcfg.sizes.clear();
      for (std::size_t n = 4; n <= g_nmax; n *= 4) gcfg.sizes.push_back(n);
      if (gcfg.sizes.empty()) throw ep::ValidationError("--n-max must be >= 4");
      auto rep = ex::grover_scaling(gcfg);
      emit_report(rep, out_path, format);
      std::printf("grover-scaling: slope(linear) = %.3f, slope(local) = %.3f, %s\n",
                  rep.slope_linear, rep.slope_local,
                  rep.all_reached ? "all targets reached" : "SOME TARGETS NOT REACHED");
      return rep.all_reached ? 0 : 1;
    }
    if (*ordered) {
      ocfg.include_linear = ordered_schedule != "local";
      ocfg.include_local = ordered_schedule != "linear";
      if (ordered_eps >= 0.0) ocfg.eps_override = ordered_eps;
      auto rep = ex::ordered_search_bound(ocfg);
      emit_report(rep, out_path, format);
      for (const auto& r : rep.runs) {
        std::printf("n=%d %-12s T=%8.3f eps=%.4f rate %.4f <= %.4f %s  T>=bound %s\n",
                    r.n, r.schedule.c_str(), r.total_time, r.eps_measured, r.max_rate,
                    r.rate_bound + 1e-3, r.rate_pass ? "ok" : "VIOLATED",
                    r.time_above_bound ? "ok" : "VIOLATED");
      }
      std::printf("ordered-search-bound: %s\n", rep.all_pass ? "all checks pass" : "CHECK FAILED");
      return rep.all_pass ? 0 : 1;
    }
    if (*clock) {
      auto circuit = ep::load_circuit_file(circuit_file, qubits);
      std::vector<ep::cplx> seed_amp(circuit.dim(), ep::cplx{0, 0});
      seed_amp[0] = 1.0;
      auto rep = ex::clock_traversal(circuit, ep::StateVector(std::move(seed_amp)), ccfg);
      emit_report(rep, out_path, format);
      std::printf("clock-traversal: L = %.6f (L/n = %.6f)\n", rep.path_length,
                  rep.length_per_gate);
      for (const auto& r : rep.runs) {
        std::printf("c=%.3f T=%8.3f traversal F=%.6f circuit F=%.6f\n", r.c, r.total_time,
                    r.traversal_fidelity, r.circuit_fidelity);
      }
      return 0;
    }
    if (*local) {
      auto rep = ex::local_condition(lcfg);
      emit_report(rep, out_path, format);
      for (const auto& r : rep.runs) {
        std::printf("c=%6.2f T=%8.3f eps=%.4f  (1-eps)n = %.4f <= %.4f %s  critical c = %.3f\n",
                    r.c, r.total_time, r.eps_measured, r.lhs, r.rhs,
                    r.holds ? "ok" : "VIOLATED", r.critical_c);
      }
      std::printf("local-condition: %s\n", rep.all_hold ? "all runs satisfy the bound"
                                                        : "CHECK FAILED");
      return rep.all_hold ? 0 : 1;
    }
  } catch (const ep::CircuitParseError& e) {
    std::fprintf(stderr, "circuit parse error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
