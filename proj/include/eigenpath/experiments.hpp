#pragma once

#include <iosfwd>
#include <string>

#include "eigenpath/adversary.hpp"
#include "eigenpath/oracle.hpp"

// Batch experiment drivers shared by the CLI and the acceptance suite. All
// sweeps run on fixed grids in a deterministic order, so emitted files are
// bit-for-bit reproducible for a given configuration.
namespace eigenpath::experiments {

double loglog_slope(const std::vector<std::pair<double, double>>& xy);

// ---------------------------------------------------------------------------
// grover-scaling
// ---------------------------------------------------------------------------

struct GroverScalingConfig {
  std::vector<std::size_t> sizes{4, 16, 64, 256};
  double target_fidelity = 0.9;
  double dt = 0.05;         // linear-family step
  double dt_local = 0.015;  // local schedules sweep r fast at the ends
  double t_max_linear_per_item = 40.0;     // t_max = per_item * N
  double t_max_local_per_sqrt_item = 60.0; // t_max = per_sqrt * sqrt(N)
  int length_resolution = 64;
  unsigned seed = 1;  // deterministic choice of the marked item
};

struct GroverScalingRow {
  std::size_t n_items = 0;
  std::size_t marked = 0;
  double min_gap = 0.0;
  double path_length = 0.0;
  double path_length_err = 0.0;
  double t_linear = 0.0;
  bool linear_reached = false;
  double t_local = 0.0;
  bool local_reached = false;
};

struct GroverScalingReport {
  std::vector<GroverScalingRow> rows;
  double slope_linear = 0.0;
  double slope_local = 0.0;
  bool all_reached = false;
};

GroverScalingReport grover_scaling(const GroverScalingConfig& cfg);
void write_csv(const GroverScalingReport& rep, std::ostream& out);
std::string to_json(const GroverScalingReport& rep);

// ---------------------------------------------------------------------------
// ordered-search-bound
// ---------------------------------------------------------------------------

struct OrderedSearchConfig {
  int n_min = 2;
  int n_max = 4;
  double delta = 1.0;
  double dt = 0.01;
  bool include_linear = true;
  bool include_local = true;
  double linear_time_per_bit = 5.0;  // linear run T = per_bit * n
  std::vector<double> cs{0.05, 0.2};  // local runs
  int norms_n_max = 8;                // norm table reaches this n
  // bound formulas default to the measured pairwise overlap; set to pin eps
  std::optional<double> eps_override;
};

struct OrderedSearchNormRow {
  int n = 0;
  double gamma_norm = 0.0;
  double max_gamma_i_norm = 0.0;
  double lower_bound_eps0 = 0.0;  // spectral bound at eps = 0
};

struct OrderedSearchRun {
  int n = 0;
  std::string schedule;  // "linear" or "local c=..."
  double total_time = 0.0;
  double w0 = 0.0;
  double w_final = 0.0;
  double eps_measured = 0.0;
  double max_rate = 0.0;
  double rate_bound = 0.0;
  double rate_slack = 0.0;
  bool rate_pass = false;
  bool pointwise_pass = false;
  double t_bound = 0.0;  // spectral bound at the measured eps
  bool time_above_bound = false;
  std::vector<std::pair<double, double>> trace;
};

struct OrderedSearchReport {
  std::vector<OrderedSearchNormRow> norms;
  std::vector<OrderedSearchRun> runs;
  bool all_pass = false;  // every rate bound and every T >= bound check
};

OrderedSearchReport ordered_search_bound(const OrderedSearchConfig& cfg);
void write_csv(const OrderedSearchReport& rep, std::ostream& out);
std::string to_json(const OrderedSearchReport& rep);

// ---------------------------------------------------------------------------
// clock-traversal
// ---------------------------------------------------------------------------

struct ClockTraversalConfig {
  double delta = 1.0;
  double dt = 0.01;
  std::vector<double> cs{0.05};
  int length_resolution = 64;
};

struct ClockTraversalRun {
  double c = 0.0;
  double total_time = 0.0;
  double traversal_fidelity = 0.0;  // vs tracked eigenstate at r = 1
  double circuit_fidelity = 0.0;    // extracted system state vs direct circuit
  double clock_weight = 0.0;        // probability of clock |n>
};

struct ClockTraversalReport {
  int gate_count = 0;
  double path_length = 0.0;
  double path_length_err = 0.0;
  double length_per_gate = 0.0;
  std::vector<ClockTraversalRun> runs;
};

ClockTraversalReport clock_traversal(const CircuitSpec& circuit, const StateVector& seed,
                                     const ClockTraversalConfig& cfg);
void write_csv(const ClockTraversalReport& rep, std::ostream& out);
std::string to_json(const ClockTraversalReport& rep);

// ---------------------------------------------------------------------------
// local-condition
// ---------------------------------------------------------------------------

struct LocalConditionConfig {
  int n = 2;
  double delta = 1.0;
  double dt = 0.01;
  std::vector<double> cs{0.1, 0.5, 2.0, 10.0};
  std::string profile = "const";  // "const" | "linear-ramp"
};

struct LocalConditionRun {
  double c = 0.0;
  double total_time = 0.0;
  double eps_measured = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  double rhs_change_of_variables = 0.0;  // 4 pi L / c
  double critical_c = 0.0;               // at the measured eps
};

struct LocalConditionSweep {
  std::string profile;
  double path_length = 0.0;
  std::vector<LocalConditionRun> runs;
  bool all_hold = false;
};

LocalConditionSweep local_condition(const LocalConditionConfig& cfg);
void write_csv(const LocalConditionSweep& rep, std::ostream& out);
std::string to_json(const LocalConditionSweep& rep);

}  // namespace eigenpath::experiments
