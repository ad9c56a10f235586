#pragma once

#include <cstdint>
#include <functional>

#include "eigenpath/evolution.hpp"

namespace eigenpath {

/// Threshold string over the 2^n positions: alpha_x^i = 1 iff i >= x.
class AlphaString {
 public:
  AlphaString(int n, std::uint32_t x);
  int bits() const { return n_; }
  std::uint32_t length() const { return std::uint32_t(1) << n_; }
  std::uint32_t threshold() const { return x_; }
  int bit(std::uint32_t i) const { return i >= x_ ? 1 : 0; }
  /// Materialized bits, LSB-first packing, for enumeration-style checks.
  std::vector<std::uint64_t> packed() const;

 private:
  int n_;
  std::uint32_t x_;
};

AlphaString alpha_string(const SecretWord& x);
/// Hamming distance computed from the materialized strings.
std::uint32_t hamming_distance(const AlphaString& a, const AlphaString& b);

/// Dense square real matrix, row-major.
struct RealMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  RealMatrix() = default;
  explicit RealMatrix(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Spectral norm of a symmetric nonnegative matrix: shifted power iteration,
/// deterministic uniform start, residual tolerance 1e-10.
double symmetric_norm(const RealMatrix& m);

/// Gamma for ordered search (entries 1/Hd(alpha_x, alpha_y)) with its
/// principal pair.
struct AdversaryMatrix {
  int n_bits = 0;
  std::size_t n_inputs = 0;
  RealMatrix gamma;
  double principal_norm = 0.0;
  std::vector<double> principal_vector;  // unit, nonnegative
};

AdversaryMatrix ordered_search_adversary(int n);

/// Gamma^i: entries kept where the alpha strings disagree at position i,
/// i.e. x <= i < y or y <= i < x.
RealMatrix restricted_adversary(const AdversaryMatrix& adv, std::uint32_t i);

/// max_i ||Gamma^i||; the 2^n norms are computed concurrently.
double max_restricted_norm(const AdversaryMatrix& adv);

/// W(t) = sum_{x,y} Gamma_xy v_x v_y <phi_x(t)|phi_y(t)>; asserts the
/// imaginary residue stays below 1e-10.
double distinguishability(const AdversaryMatrix& adv, const EnsembleResult& ens, double t);
std::vector<std::pair<double, double>> w_trace(const AdversaryMatrix& adv,
                                               const EnsembleResult& ens);

/// max over x != y of |<phi_x(t)|phi_y(t)>|
double pairwise_overlap_epsilon(const EnsembleResult& ens, double t);

struct WRateReport {
  double max_rate = 0.0;          // max |W(t_{k+1}) - W(t_k)| / dt
  double max_gamma_i_norm = 0.0;
  double bound = 0.0;             // 4 max_t Delta(t) max_i ||Gamma^i||
  double tol = 1e-3;              // integrator allowance added to the bound
  double slack = 0.0;             // bound + tol - max_rate
  bool pass = false;
  bool pointwise_pass = false;    // rate_k <= 4 Delta(t_k) max_i||Gamma^i|| + tol
  std::vector<double> mid_times;
  std::vector<double> rates;
  std::vector<double> pointwise_bounds;
};

/// Finite-difference check of the W(t) rate bound; delta_of_t supplies the
/// (possibly time-dependent) gap entering the bound.
WRateReport w_rate_bound_check(const AdversaryMatrix& adv, const EnsembleResult& ens,
                               const std::function<double(double)>& delta_of_t,
                               double tol = 1e-3);

/// (1 - eps) ||Gamma|| / (4 Delta max_i ||Gamma^i||), with exactly computed
/// norms.
double spectral_lower_bound(int n, double delta, double eps);
double spectral_lower_bound(const AdversaryMatrix& adv, double max_gamma_i_norm,
                            double delta, double eps);

struct LocalConditionReport {
  double lhs = 0.0;   // (1 - eps) n
  double rhs = 0.0;   // 4 pi int_0^T Delta(r(t)) dt
  bool holds = false;
  std::optional<double> rhs_change_of_variables;  // 4 pi L / c, monotone schedules
};

LocalConditionReport local_condition_check(int n, double eps_measured,
                                           const Schedule& schedule,
                                           const std::function<double(double)>& gap_of_r,
                                           std::optional<double> c = {},
                                           std::optional<double> path_len = {});

/// 2 pi^2 / (1 - eps); the speed constant above which the local condition
/// becomes inconsistent.
double critical_speed_constant(double eps);

std::string adversary_report_json(const AdversaryMatrix& adv, double max_gamma_i_norm,
                                  double lower_bound_time,
                                  const std::vector<std::pair<double, double>>& trace,
                                  double rate_bound_slack);

}  // namespace eigenpath
