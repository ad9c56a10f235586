#pragma once

#include <functional>
#include <iosfwd>
#include <optional>

#include "eigenpath/schedule.hpp"

namespace eigenpath {

class IntegratorError : public std::runtime_error {
 public:
  explicit IntegratorError(const std::string& what) : std::runtime_error(what) {}
};

/// Input-independent driving Hamiltonian H_D(t); the default adds nothing.
class DrivingTerm {
 public:
  static DrivingTerm zero() { return DrivingTerm{}; }
  static DrivingTerm constant(HermitianOperator h);
  static DrivingTerm time_dependent(std::function<HermitianOperator(double)> gen);

  bool is_zero() const { return !add_; }
  /// h += H_D(t)
  void add_into(double t, ComplexMatrix& h) const {
    if (add_) add_(t, h);
  }

 private:
  std::function<void(double, ComplexMatrix&)> add_;
};

/// Time-stamped evolution samples for one input.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> rs;
  std::vector<StateVector> states;
  std::optional<SecretWord> input;
  double norm_drift = 0.0;  // max | ||psi|| - 1 | over all integration steps
  double dt = 0.0;          // integrator step

  double total_time() const { return times.back(); }
  const StateVector& final_state() const { return states.back(); }
  std::size_t samples() const { return times.size(); }
  /// Index of the stored sample at time t (within half a sample spacing).
  std::size_t index_of_time(double t) const;
};

/// Midpoint-exponential integration of
///   i d/dt |psi> = (H(r(t)) + H_D(t)) |psi>
/// with exact exponentials per step (unitary by construction). Every `keep`-th
/// state plus the endpoint is stored. Norm drift beyond 1e-9 raises
/// IntegratorError (the step exponential is exact, so drift means dt is
/// fighting rounding).
Trajectory integrate_schrodinger(const HamiltonianPath& path, const Schedule& schedule,
                                 const DrivingTerm& drive, const StateVector& psi0,
                                 double dt, int keep = 1);

/// fidelity(final state, tracked eigenstate at r = 1)
double final_fidelity(const Trajectory& traj, const HamiltonianPath& path);

enum class ScheduleFamilyKind { linear, local };

struct TimeToFidelity {
  bool reached = false;
  double total_time = 0.0;
  double fidelity = 0.0;
};

/// Smallest T in the family whose evolution reaches `target` final fidelity:
/// bisection (<= 20 rounds, 2% relative tolerance) over T for the linear
/// family and over 1/c for the local family (T = T_unit / c). Starts from the
/// tracked eigenstate at r = 0. Returns reached = false when t_max is not
/// enough.
TimeToFidelity time_to_fidelity(const HamiltonianPath& path, ScheduleFamilyKind family,
                                double target, double t_max, double dt);

/// One trajectory per secret word, all on the same time grid; inputs are
/// integrated concurrently. Schedule, drive and psi0 are shared by signature,
/// which is what makes the ensemble x-independent.
struct EnsembleResult {
  std::vector<SecretWord> inputs;
  std::vector<Trajectory> trajectories;
};
EnsembleResult ensemble_evolve(const std::vector<SecretWord>& inputs,
                               const std::vector<HamiltonianPath>& paths,
                               const Schedule& schedule, const DrivingTerm& drive,
                               const StateVector& psi0, double dt, int keep = 1);

/// CSV rows `t,r,re_amp_0,im_amp_0,...`, 12 significant digits.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
/// {"T": ..., "final_fidelity": ..., "norm_drift": ...}
std::string trajectory_summary_json(const Trajectory& traj, double final_fidelity);

}  // namespace eigenpath
