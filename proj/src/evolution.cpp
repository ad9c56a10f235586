#include "eigenpath/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "eigenpath/parallel.hpp"

namespace eigenpath {

DrivingTerm DrivingTerm::constant(HermitianOperator h) {
  DrivingTerm d;
  d.add_ = [h = std::move(h)](double, ComplexMatrix& m) {
    if (m.dim() != h.dim()) throw ValidationError("driving term dimension mismatch");
    const std::size_t nn = m.dim() * m.dim();
    for (std::size_t i = 0; i < nn; ++i) m.data()[i] += h.matrix().data()[i];
  };
  return d;
}

DrivingTerm DrivingTerm::time_dependent(std::function<HermitianOperator(double)> gen) {
  DrivingTerm d;
  d.add_ = [gen = std::move(gen)](double t, ComplexMatrix& m) {
    const HermitianOperator h = gen(t);
    if (m.dim() != h.dim()) throw ValidationError("driving term dimension mismatch");
    const std::size_t nn = m.dim() * m.dim();
    for (std::size_t i = 0; i < nn; ++i) m.data()[i] += h.matrix().data()[i];
  };
  return d;
}

std::size_t Trajectory::index_of_time(double t) const {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  std::size_t idx = std::size_t(it - times.begin());
  if (idx > 0 && (idx == times.size() || std::abs(times[idx - 1] - t) < std::abs(times[idx] - t))) {
    --idx;
  }
  const double spacing = times.size() > 1 ? (times.back() - times.front()) / double(times.size() - 1)
                                          : 1.0;
  if (std::abs(times[idx] - t) > 0.5 * spacing + 1e-12) {
    throw ValidationError("trajectory has no sample near t = " + std::to_string(t));
  }
  return idx;
}

namespace {

double operator_scale(const HamiltonianPath& path, const Schedule& schedule,
                      const DrivingTerm& drive) {
  ComplexMatrix m(path.dim());
  double scale = 0.0;
  for (double t : {0.0, schedule.total_time() / 2, schedule.total_time()}) {
    path.evaluate_into(schedule.r_of(t), m);
    drive.add_into(t, m);
    scale = std::max(scale, operator_norm(m));
  }
  return scale;
}

}  // namespace

Trajectory integrate_schrodinger(const HamiltonianPath& path, const Schedule& schedule,
                                 const DrivingTerm& drive, const StateVector& psi0,
                                 double dt, int keep) {
  if (psi0.dim() != path.dim()) throw ValidationError("integrate: psi0 dimension mismatch");
  if (!(dt > 0.0)) throw ValidationError("integrate: dt must be positive");
  if (keep < 1) throw ValidationError("integrate: keep must be >= 1");
  const double scale = operator_scale(path, schedule, drive);
  if (dt > 0.1 / std::max(scale, 1e-300) * (1 + 1e-12)) {
    throw ValidationError("integrate: dt exceeds 0.1/||H||; use dt <= " +
                          std::to_string(0.1 / scale));
  }

  const double total = schedule.total_time();
  const long n_steps = std::max(1L, long(std::ceil(total / dt - 1e-12)));

  Trajectory traj;
  traj.dt = dt;
  traj.times.reserve(std::size_t(n_steps / keep) + 2);
  traj.rs.reserve(std::size_t(n_steps / keep) + 2);
  traj.states.reserve(std::size_t(n_steps / keep) + 2);

  std::vector<cplx> cur(psi0.amplitudes()), next(psi0.dim());
  ComplexMatrix h(path.dim());
  detail::PropagatorWorkspace ws;

  auto store = [&](double t, const std::vector<cplx>& amps) {
    traj.times.push_back(t);
    traj.rs.push_back(schedule.r_of(t));
    traj.states.push_back(trusted_state(amps));
  };

  store(0.0, cur);
  double t = 0.0;
  double drift = 0.0;
  for (long k = 0; k < n_steps; ++k) {
    const double h_step = std::min(dt, total - t);
    const double t_mid = t + h_step / 2;
    path.evaluate_into(schedule.r_of(t_mid), h);
    drive.add_into(t_mid, h);
    detail::propagate_into(h, h_step, cur.data(), next.data(), ws);
    std::swap(cur, next);
    t += h_step;
    drift = std::max(drift, std::abs(std::sqrt(kernels::norm_sq(cur.size(), cur.data())) - 1.0));
    if (drift > 1e-9) {
      throw IntegratorError("norm drift " + std::to_string(drift) +
                            " exceeded 1e-9 at t = " + std::to_string(t) +
                            "; reduce dt");
    }
    if ((k + 1) % keep == 0 || k + 1 == n_steps) store(t, cur);
  }
  traj.norm_drift = drift;
  return traj;
}

double final_fidelity(const Trajectory& traj, const HamiltonianPath& path) {
  return fidelity(traj.final_state(), tracked_eigenstate(path, 1.0).state);
}

TimeToFidelity time_to_fidelity(const HamiltonianPath& path, ScheduleFamilyKind family,
                                double target, double t_max, double dt) {
  if (!(target >= 0.0 && target < 1.0)) {
    throw ValidationError("time_to_fidelity: target must be in [0, 1)");
  }
  if (!(t_max > 0.0)) throw ValidationError("time_to_fidelity: t_max must be positive");

  const StateVector psi0 = tracked_eigenstate(path, 0.0).state;
  std::optional<Schedule> unit;  // local family: c = 1 profile, rescaled per probe
  if (family == ScheduleFamilyKind::local) {
    unit = local_adiabatic_schedule(path, 1.0, 128);
  }

  auto probe = [&](double total) {
    const Schedule sched = (family == ScheduleFamilyKind::linear)
                               ? Schedule::linear(total)
                               : unit->time_scaled(total / unit->total_time());
    const Trajectory traj =
        integrate_schrodinger(path, sched, DrivingTerm::zero(), psi0, dt, 1 << 20);
    return final_fidelity(traj, path);
  };

  // doubling bracket (keeps probe cost near the answer), then bisection
  int budget = 20;
  double lo = 0.0, hi = 4 * dt, f_hi = probe(hi);
  while (f_hi < target && budget > 0) {
    if (hi >= t_max) return {false, t_max, f_hi};
    lo = hi;
    hi = std::min(2 * hi, t_max);
    f_hi = probe(hi);
    --budget;
  }
  if (f_hi < target) return {false, t_max, f_hi};
  for (; budget > 0 && (hi - lo) > 0.02 * hi; --budget) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= dt) break;  // probes below one step are pointless
    const double f = probe(mid);
    if (f >= target) {
      hi = mid;
      f_hi = f;
    } else {
      lo = mid;
    }
  }
  return {true, hi, f_hi};
}

EnsembleResult ensemble_evolve(const std::vector<SecretWord>& inputs,
                               const std::vector<HamiltonianPath>& paths,
                               const Schedule& schedule, const DrivingTerm& drive,
                               const StateVector& psi0, double dt, int keep) {
  if (inputs.size() != paths.size() || inputs.empty()) {
    throw ValidationError("ensemble_evolve: need one path per input");
  }
  for (const auto& p : paths) {
    if (p.dim() != paths.front().dim()) {
      throw ValidationError("ensemble_evolve: paths must share one dimension");
    }
  }

  EnsembleResult out;
  out.inputs = inputs;
  out.trajectories.resize(inputs.size());
  std::vector<std::string> errors(inputs.size());
  parallel_for_index(inputs.size(), [&](std::size_t i) {
    try {
      out.trajectories[i] = integrate_schrodinger(paths[i], schedule, drive, psi0, dt, keep);
      out.trajectories[i].input = inputs[i];
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  std::string all;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!errors[i].empty()) {
      all += "input x=" + std::to_string(inputs[i].x) + ": " + errors[i] + "; ";
    }
  }
  if (!all.empty()) throw IntegratorError("ensemble failures: " + all);
  return out;
}

namespace {

std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  const std::size_t d = traj.states.front().dim();
  out << "t,r";
  for (std::size_t i = 0; i < d; ++i) out << ",re_amp_" << i << ",im_amp_" << i;
  out << "\n";
  for (std::size_t k = 0; k < traj.samples(); ++k) {
    out << g12(traj.times[k]) << "," << g12(traj.rs[k]);
    for (std::size_t i = 0; i < d; ++i) {
      out << "," << g12(traj.states[k][i].real()) << "," << g12(traj.states[k][i].imag());
    }
    out << "\n";
  }
}

std::string trajectory_summary_json(const Trajectory& traj, double final_fidelity) {
  std::ostringstream os;
  os << "{\"T\": " << g12(traj.total_time()) << ", \"final_fidelity\": " << g12(final_fidelity)
     << ", \"norm_drift\": " << g12(traj.norm_drift) << "}";
  return os.str();
}

}  // namespace eigenpath
