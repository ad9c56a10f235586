#include "eigenpath/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "json.hpp"

namespace eigenpath::experiments {

namespace {

std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double round12(double v) { return std::strtod(g12(v).c_str(), nullptr); }

}  // namespace

double loglog_slope(const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() < 2) throw ValidationError("slope fit needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : xy) {
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = double(xy.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// grover-scaling
// ---------------------------------------------------------------------------

GroverScalingReport grover_scaling(const GroverScalingConfig& cfg) {
  GroverScalingReport rep;
  std::mt19937 rng(cfg.seed);
  rep.all_reached = true;

  for (std::size_t n : cfg.sizes) {
    if (n < 2 || (n & (n - 1)) != 0 || n > 256) {
      throw ValidationError("grover scaling: sizes must be powers of two, 2..256");
    }
    GroverScalingRow row;
    row.n_items = n;
    row.marked = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    auto path = make_grover_path(n, row.marked);

    row.min_gap = min_gap(path, 128);
    auto len = path_length(path, cfg.length_resolution);
    row.path_length = len.value;
    row.path_length_err = len.error_estimate;

    auto lin = time_to_fidelity(path, ScheduleFamilyKind::linear, cfg.target_fidelity,
                                cfg.t_max_linear_per_item * double(n), cfg.dt);
    row.t_linear = lin.total_time;
    row.linear_reached = lin.reached;

    auto loc = time_to_fidelity(path, ScheduleFamilyKind::local, cfg.target_fidelity,
                                cfg.t_max_local_per_sqrt_item * std::sqrt(double(n)),
                                cfg.dt_local);
    row.t_local = loc.total_time;
    row.local_reached = loc.reached;

    rep.all_reached = rep.all_reached && lin.reached && loc.reached;
    rep.rows.push_back(row);
  }

  std::vector<std::pair<double, double>> lin_pts, loc_pts;
  for (const auto& r : rep.rows) {
    if (r.linear_reached) lin_pts.emplace_back(double(r.n_items), r.t_linear);
    if (r.local_reached) loc_pts.emplace_back(double(r.n_items), r.t_local);
  }
  rep.slope_linear = lin_pts.size() >= 2 ? loglog_slope(lin_pts) : 0.0;
  rep.slope_local = loc_pts.size() >= 2 ? loglog_slope(loc_pts) : 0.0;
  return rep;
}

void write_csv(const GroverScalingReport& rep, std::ostream& out) {
  out << "N,marked,min_gap,path_length,path_length_err,T_linear,linear_reached,"
         "T_local,local_reached\n";
  for (const auto& r : rep.rows) {
    out << r.n_items << "," << r.marked << "," << g12(r.min_gap) << ","
        << g12(r.path_length) << "," << g12(r.path_length_err) << "," << g12(r.t_linear)
        << "," << (r.linear_reached ? 1 : 0) << "," << g12(r.t_local) << ","
        << (r.local_reached ? 1 : 0) << "\n";
  }
  out << "# slope_linear=" << g12(rep.slope_linear)
      << " slope_local=" << g12(rep.slope_local) << "\n";
}

std::string to_json(const GroverScalingReport& rep) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    j["rows"].push_back({{"N", r.n_items},
                         {"marked", r.marked},
                         {"min_gap", round12(r.min_gap)},
                         {"path_length", round12(r.path_length)},
                         {"path_length_err", round12(r.path_length_err)},
                         {"T_linear", round12(r.t_linear)},
                         {"linear_reached", r.linear_reached},
                         {"T_local", round12(r.t_local)},
                         {"local_reached", r.local_reached}});
  }
  j["slope_linear"] = round12(rep.slope_linear);
  j["slope_local"] = round12(rep.slope_local);
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// ordered-search-bound
// ---------------------------------------------------------------------------

namespace {

EnsembleResult full_ensemble(int n, double delta, const Schedule& sched, double dt) {
  std::vector<SecretWord> inputs;
  std::vector<HamiltonianPath> paths;
  for (std::uint32_t x = 0; x < (std::uint32_t(1) << n); ++x) {
    inputs.emplace_back(n, x);
    paths.push_back(make_ordered_search_path(inputs.back(), delta));
  }
  const StateVector psi0 = tracked_eigenstate(paths.front(), 0.0).state;
  return ensemble_evolve(inputs, paths, sched, DrivingTerm::zero(), psi0, dt, 1);
}

OrderedSearchRun bound_run(int n, double delta, const Schedule& sched,
                           const std::string& label, double dt,
                           const AdversaryMatrix& adv, double max_gi,
                           std::optional<double> eps_override) {
  OrderedSearchRun run;
  run.n = n;
  run.schedule = label;
  run.total_time = sched.total_time();

  auto ens = full_ensemble(n, delta, sched, dt);
  auto rate = w_rate_bound_check(adv, ens, [delta](double) { return delta; });
  run.w0 = distinguishability(adv, ens, 0.0);
  run.w_final = distinguishability(adv, ens, sched.total_time());
  run.eps_measured = pairwise_overlap_epsilon(ens, sched.total_time());
  run.max_rate = rate.max_rate;
  run.rate_bound = rate.bound;
  run.rate_slack = rate.slack;
  run.rate_pass = rate.pass;
  run.pointwise_pass = rate.pointwise_pass;
  const double eps_for_bound =
      eps_override ? *eps_override : std::min(run.eps_measured, 0.999999);
  run.t_bound = spectral_lower_bound(adv, max_gi, delta, eps_for_bound);
  run.time_above_bound = run.eps_measured > 0.2 || run.total_time >= run.t_bound;
  run.trace = w_trace(adv, ens);
  return run;
}

}  // namespace

OrderedSearchReport ordered_search_bound(const OrderedSearchConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_max > 6 || cfg.n_min > cfg.n_max) {
    throw ValidationError("ordered-search-bound: ensembles need 1 <= n_min <= n_max <= 6");
  }
  OrderedSearchReport rep;
  rep.all_pass = true;

  for (int n = 1; n <= cfg.norms_n_max; ++n) {
    auto adv = ordered_search_adversary(n);
    OrderedSearchNormRow row;
    row.n = n;
    row.gamma_norm = adv.principal_norm;
    row.max_gamma_i_norm = max_restricted_norm(adv);
    row.lower_bound_eps0 = spectral_lower_bound(adv, row.max_gamma_i_norm, cfg.delta, 0.0);
    rep.norms.push_back(row);
  }

  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const auto adv = ordered_search_adversary(n);
    const double max_gi = max_restricted_norm(adv);
    SecretWord w0(n, 0);
    auto ref_path = make_ordered_search_path(w0, cfg.delta);

    if (cfg.include_linear) {
      auto sched = Schedule::linear(cfg.linear_time_per_bit * n);
      rep.runs.push_back(
          bound_run(n, cfg.delta, sched, "linear", cfg.dt, adv, max_gi, cfg.eps_override));
    }
    if (cfg.include_local) {
      for (double c : cfg.cs) {
        auto sched = local_adiabatic_schedule(ref_path, c, 64);
        rep.runs.push_back(bound_run(n, cfg.delta, sched, "local c=" + g12(c), cfg.dt, adv,
                                     max_gi, cfg.eps_override));
      }
    }
  }
  for (const auto& run : rep.runs) {
    rep.all_pass = rep.all_pass && run.rate_pass && run.pointwise_pass && run.time_above_bound;
  }
  return rep;
}

void write_csv(const OrderedSearchReport& rep, std::ostream& out) {
  out << "n,gamma_norm,max_gamma_i_norm,spectral_lower_bound_eps0\n";
  for (const auto& r : rep.norms) {
    out << r.n << "," << g12(r.gamma_norm) << "," << g12(r.max_gamma_i_norm) << ","
        << g12(r.lower_bound_eps0) << "\n";
  }
  out << "n,schedule,T,W0,W_final,eps_measured,max_rate,rate_bound,rate_slack,"
         "rate_pass,pointwise_pass,T_bound,T_above_bound\n";
  for (const auto& r : rep.runs) {
    out << r.n << "," << r.schedule << "," << g12(r.total_time) << "," << g12(r.w0) << ","
        << g12(r.w_final) << "," << g12(r.eps_measured) << "," << g12(r.max_rate) << ","
        << g12(r.rate_bound) << "," << g12(r.rate_slack) << "," << (r.rate_pass ? 1 : 0)
        << "," << (r.pointwise_pass ? 1 : 0) << "," << g12(r.t_bound) << ","
        << (r.time_above_bound ? 1 : 0) << "\n";
  }
}

std::string to_json(const OrderedSearchReport& rep) {
  nlohmann::json j;
  j["norms"] = nlohmann::json::array();
  for (const auto& r : rep.norms) {
    j["norms"].push_back({{"n", r.n},
                          {"gamma_norm", round12(r.gamma_norm)},
                          {"max_gamma_i_norm", round12(r.max_gamma_i_norm)},
                          {"spectral_lower_bound_eps0", round12(r.lower_bound_eps0)}});
  }
  j["runs"] = nlohmann::json::array();
  for (const auto& r : rep.runs) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& [t, w] : r.trace) trace.push_back({round12(t), round12(w)});
    j["runs"].push_back({{"n", r.n},
                         {"schedule", r.schedule},
                         {"T", round12(r.total_time)},
                         {"W0", round12(r.w0)},
                         {"W_final", round12(r.w_final)},
                         {"eps_measured", round12(r.eps_measured)},
                         {"max_rate", round12(r.max_rate)},
                         {"rate_bound", round12(r.rate_bound)},
                         {"rate_slack", round12(r.rate_slack)},
                         {"rate_pass", r.rate_pass},
                         {"pointwise_pass", r.pointwise_pass},
                         {"T_bound", round12(r.t_bound)},
                         {"T_above_bound", r.time_above_bound},
                         {"w_trace", trace}});
  }
  j["all_pass"] = rep.all_pass;
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// clock-traversal
// ---------------------------------------------------------------------------

ClockTraversalReport clock_traversal(const CircuitSpec& circuit, const StateVector& seed,
                                     const ClockTraversalConfig& cfg) {
  if (circuit.qubits > 3 || circuit.gate_count() > 6) {
    throw ValidationError("clock traversal: supported up to 3 qubits and 6 gates");
  }
  ClockTraversalReport rep;
  rep.gate_count = int(circuit.gate_count());

  auto path = make_clock_path(circuit, cfg.delta, seed);
  auto len = path_length(path, cfg.length_resolution);
  rep.path_length = len.value;
  rep.path_length_err = len.error_estimate;
  rep.length_per_gate = len.value / double(rep.gate_count);

  const StateVector want_sys = apply_circuit(circuit, seed);
  const StateVector psi0 = tracked_eigenstate(path, 0.0).state;
  for (double c : cfg.cs) {
    ClockTraversalRun run;
    run.c = c;
    auto sched = local_adiabatic_schedule(path, c, 64);
    run.total_time = sched.total_time();
    auto traj = integrate_schrodinger(path, sched, DrivingTerm::zero(), psi0, cfg.dt, 1 << 20);
    run.traversal_fidelity = final_fidelity(traj, path);
    auto [weight, sys] = clock_extract_system(path, traj.final_state());
    run.clock_weight = weight;
    run.circuit_fidelity = fidelity(sys, want_sys);
    rep.runs.push_back(run);
  }
  return rep;
}

void write_csv(const ClockTraversalReport& rep, std::ostream& out) {
  out << "n_gates,path_length,path_length_err,length_per_gate\n";
  out << rep.gate_count << "," << g12(rep.path_length) << "," << g12(rep.path_length_err)
      << "," << g12(rep.length_per_gate) << "\n";
  out << "c,T,traversal_fidelity,circuit_fidelity,clock_weight\n";
  for (const auto& r : rep.runs) {
    out << g12(r.c) << "," << g12(r.total_time) << "," << g12(r.traversal_fidelity) << ","
        << g12(r.circuit_fidelity) << "," << g12(r.clock_weight) << "\n";
  }
}

std::string to_json(const ClockTraversalReport& rep) {
  nlohmann::json j;
  j["n_gates"] = rep.gate_count;
  j["path_length"] = round12(rep.path_length);
  j["path_length_err"] = round12(rep.path_length_err);
  j["length_per_gate"] = round12(rep.length_per_gate);
  j["runs"] = nlohmann::json::array();
  for (const auto& r : rep.runs) {
    j["runs"].push_back({{"c", round12(r.c)},
                         {"T", round12(r.total_time)},
                         {"traversal_fidelity", round12(r.traversal_fidelity)},
                         {"circuit_fidelity", round12(r.circuit_fidelity)},
                         {"clock_weight", round12(r.clock_weight)}});
  }
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// local-condition
// ---------------------------------------------------------------------------

LocalConditionSweep local_condition(const LocalConditionConfig& cfg) {
  if (cfg.n < 1 || cfg.n > 6) throw ValidationError("local condition: need 1 <= n <= 6");
  GapProfile profile = GapProfile::constant(1.0);
  if (cfg.profile == "linear-ramp") {
    profile = GapProfile::linear_ramp();
  } else if (cfg.profile != "const") {
    throw ValidationError("local condition: profile must be 'const' or 'linear-ramp'");
  }

  LocalConditionSweep rep;
  rep.profile = cfg.profile;
  rep.all_hold = true;

  std::vector<SecretWord> inputs;
  std::vector<HamiltonianPath> paths;
  for (std::uint32_t x = 0; x < (std::uint32_t(1) << cfg.n); ++x) {
    inputs.emplace_back(cfg.n, x);
    paths.push_back(apply_gap_profile(make_ordered_search_path(inputs.back(), cfg.delta),
                                      profile));
  }
  const StateVector psi0 = tracked_eigenstate(paths.front(), 0.0).state;
  rep.path_length = path_length(paths.front(), 64).value;
  auto gap_of_r = [&](double r) { return cfg.delta * profile(r); };

  for (double c : cfg.cs) {
    LocalConditionRun run;
    run.c = c;
    auto sched = local_adiabatic_schedule(paths.front(), c, 64);
    run.total_time = sched.total_time();
    auto ens = ensemble_evolve(inputs, paths, sched, DrivingTerm::zero(), psi0, cfg.dt, 8);
    run.eps_measured = pairwise_overlap_epsilon(ens, sched.total_time());
    auto check = local_condition_check(cfg.n, run.eps_measured, sched, gap_of_r, c,
                                       rep.path_length);
    run.lhs = check.lhs;
    run.rhs = check.rhs;
    run.holds = check.holds;
    run.rhs_change_of_variables = check.rhs_change_of_variables.value_or(0.0);
    run.critical_c = critical_speed_constant(std::min(run.eps_measured, 0.999999));
    rep.all_hold = rep.all_hold && run.holds;
    rep.runs.push_back(run);
  }
  return rep;
}

void write_csv(const LocalConditionSweep& rep, std::ostream& out) {
  out << "profile,path_length\n";
  out << rep.profile << "," << g12(rep.path_length) << "\n";
  out << "c,T,eps_measured,lhs,rhs_gap_integral,holds,rhs_path_form,critical_c\n";
  for (const auto& r : rep.runs) {
    out << g12(r.c) << "," << g12(r.total_time) << "," << g12(r.eps_measured) << ","
        << g12(r.lhs) << "," << g12(r.rhs) << "," << (r.holds ? 1 : 0) << ","
        << g12(r.rhs_change_of_variables) << "," << g12(r.critical_c) << "\n";
  }
}

std::string to_json(const LocalConditionSweep& rep) {
  nlohmann::json j;
  j["profile"] = rep.profile;
  j["path_length"] = round12(rep.path_length);
  j["runs"] = nlohmann::json::array();
  for (const auto& r : rep.runs) {
    j["runs"].push_back({{"c", round12(r.c)},
                         {"T", round12(r.total_time)},
                         {"eps_measured", round12(r.eps_measured)},
                         {"lhs", round12(r.lhs)},
                         {"rhs_gap_integral", round12(r.rhs)},
                         {"holds", r.holds},
                         {"rhs_path_form", round12(r.rhs_change_of_variables)},
                         {"critical_c", round12(r.critical_c)}});
  }
  j["all_hold"] = rep.all_hold;
  return j.dump(2);
}

}  // namespace eigenpath::experiments
