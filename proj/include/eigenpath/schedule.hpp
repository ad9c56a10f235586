#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "eigenpath/analysis.hpp"

namespace eigenpath {

class ScheduleError : public std::runtime_error {
 public:
  explicit ScheduleError(const std::string& what) : std::runtime_error(what) {}
};

enum class ScheduleKind { linear, local, custom };

/// Time parametrization t in [0, T] -> r. Linear and local schedules are
/// state-preparation schedules (r(0) = 0, r(T) = 1, monotone); custom tables
/// only need strictly increasing times and may be non-monotone in r.
class Schedule {
 public:
  static Schedule linear(double total_time);
  /// (t, r) samples with strictly increasing t; linear interpolation between.
  static Schedule custom(std::vector<std::pair<double, double>> table);
  /// Constant r for a duration (not a state-preparation schedule).
  static Schedule frozen(double r, double total_time);

  ScheduleKind kind() const { return kind_; }
  double total_time() const { return total_time_; }
  double r_of(double t) const;

  /// Same r-profile with all times multiplied by `factor` (> 0).
  Schedule time_scaled(double factor) const;
  /// Runs the same r-profile backwards: r'(t) = r(T - t).
  Schedule reversed() const;

  const std::vector<std::pair<double, double>>& table() const { return table_; }

 private:
  Schedule(ScheduleKind kind, double total_time, std::vector<std::pair<double, double>> table)
      : kind_(kind), total_time_(total_time), table_(std::move(table)) {}
  ScheduleKind kind_;
  double total_time_;
  std::vector<std::pair<double, double>> table_;
  friend Schedule local_adiabatic_schedule(const HamiltonianPath&, double, int);
};

/// Schedule with dr/dt = c * gap(r) / ||d_r psi|| exactly, built by
/// integrating dt/dr = velocity / (c gap) with per-interval Simpson;
/// T = integral over [0,1]. `resolution` is intervals per path segment.
Schedule local_adiabatic_schedule(const HamiltonianPath& path, double c, int resolution = 128);

}  // namespace eigenpath
