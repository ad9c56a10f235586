#include "eigenpath/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace eigenpath {

Schedule Schedule::linear(double total_time) {
  if (!(total_time > 0.0)) throw ValidationError("linear schedule: T must be positive");
  return Schedule(ScheduleKind::linear, total_time,
                  {{0.0, 0.0}, {total_time, 1.0}});
}

Schedule Schedule::custom(std::vector<std::pair<double, double>> table) {
  if (table.size() < 2) throw ValidationError("custom schedule: need >= 2 samples");
  if (table.front().first != 0.0) throw ValidationError("custom schedule: must start at t = 0");
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (table[i].first <= table[i - 1].first) {
      throw ValidationError("custom schedule: times must be strictly increasing");
    }
  }
  const double total = table.back().first;
  return Schedule(ScheduleKind::custom, total, std::move(table));
}

Schedule Schedule::frozen(double r, double total_time) {
  if (!(total_time > 0.0)) throw ValidationError("frozen schedule: T must be positive");
  return Schedule(ScheduleKind::custom, total_time, {{0.0, r}, {total_time, r}});
}

double Schedule::r_of(double t) const {
  if (kind_ == ScheduleKind::linear) {
    return std::clamp(t / total_time_, 0.0, 1.0);
  }
  if (t <= table_.front().first) return table_.front().second;
  if (t >= table_.back().first) return table_.back().second;
  auto it = std::upper_bound(table_.begin(), table_.end(), t,
                             [](double v, const auto& s) { return v < s.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (t - lo.first) / (hi.first - lo.first);
  return lo.second + w * (hi.second - lo.second);
}

Schedule Schedule::time_scaled(double factor) const {
  if (!(factor > 0.0)) throw ValidationError("time_scaled: factor must be positive");
  auto table = table_;
  for (auto& s : table) s.first *= factor;
  return Schedule(kind_, total_time_ * factor, std::move(table));
}

Schedule Schedule::reversed() const {
  std::vector<std::pair<double, double>> table(table_.rbegin(), table_.rend());
  for (auto& s : table) s.first = total_time_ - s.first;
  return Schedule(ScheduleKind::custom, total_time_, std::move(table));
}

Schedule local_adiabatic_schedule(const HamiltonianPath& path, double c, int resolution) {
  if (!(c > 0.0)) throw ValidationError("local schedule: c must be positive");
  if (resolution < 8) resolution = 8;

  std::vector<double> bounds{0.0};
  for (double b : path.breakpoints()) bounds.push_back(b);
  bounds.push_back(1.0);

  std::vector<std::pair<double, double>> table;  // (t, r)
  table.emplace_back(0.0, 0.0);
  double t_acc = 0.0;

  EigenpathSample chain;
  bool have_chain = false;
  auto integrand = [&](double r) {
    double v;
    if (path.track() == TrackRule::continuation) {
      EigenpathSample s = tracked_eigenstate(path, r, have_chain ? &chain : nullptr);
      v = path_velocity(path, r, &s).value;
      chain = std::move(s);
      have_chain = true;
    } else {
      v = path_velocity(path, r).value;
    }
    return v / (c * local_gap(path, r));
  };

  for (std::size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
    const double a = bounds[seg], b = bounds[seg + 1];
    const double h = (b - a) / resolution;
    double f_lo = integrand(a);
    double v_max = f_lo;
    for (int k = 0; k < resolution; ++k) {
      const double r_lo = a + k * h;
      const double f_mid = integrand(r_lo + h / 2);
      const double f_hi = integrand(r_lo + h);
      t_acc += h * (f_lo + 4 * f_mid + f_hi) / 6.0;
      table.emplace_back(t_acc, r_lo + h);
      f_lo = f_hi;
      v_max = std::max({v_max, f_mid, f_hi});
    }
    if (!(v_max * c > 1e-10)) {
      throw ScheduleError("local schedule degenerate: path velocity vanishes on segment " +
                          std::to_string(seg + 1));
    }
  }

  for (std::size_t i = 1; i < table.size(); ++i) {
    if (table[i].first <= table[i - 1].first) {
      throw ScheduleError("local schedule degenerate: time table not strictly increasing");
    }
  }
  // r(T) must land on 1 exactly for a preparation schedule
  table.back().second = 1.0;
  return Schedule(ScheduleKind::local, t_acc, std::move(table));
}

}  // namespace eigenpath
