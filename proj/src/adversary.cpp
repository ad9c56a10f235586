#include "eigenpath/adversary.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eigenpath/parallel.hpp"
#include "json.hpp"

namespace eigenpath {

namespace {
constexpr double kPi = std::numbers::pi;
}

AlphaString::AlphaString(int n, std::uint32_t x) : n_(n), x_(x) {
  if (n < 1 || n > 16) throw ValidationError("alpha string: need 1 <= n <= 16");
  if (x >= (std::uint32_t(1) << n)) throw ValidationError("alpha string: x out of range");
}

std::vector<std::uint64_t> AlphaString::packed() const {
  const std::uint32_t len = length();
  std::vector<std::uint64_t> words((len + 63) / 64, 0);
  for (std::uint32_t i = x_; i < len; ++i) {
    words[i / 64] |= std::uint64_t(1) << (i % 64);
  }
  return words;
}

AlphaString alpha_string(const SecretWord& x) { return AlphaString(x.n, x.x); }

std::uint32_t hamming_distance(const AlphaString& a, const AlphaString& b) {
  if (a.bits() != b.bits()) throw ValidationError("hamming_distance: length mismatch");
  const auto wa = a.packed();
  const auto wb = b.packed();
  std::uint64_t d = 0;
  for (std::size_t k = 0; k < wa.size(); ++k) d += std::popcount(wa[k] ^ wb[k]);
  return std::uint32_t(d);
}

namespace {

struct PowerResult {
  double eigenvalue = 0.0;
  std::vector<double> vector;
};

// Shifted power iteration on M + sigma I with sigma the max row sum. The
// shift keeps bipartite-support matrices (the Gamma^i corners) from
// oscillating between +/- lambda.
PowerResult shifted_power_iteration(const RealMatrix& m) {
  const std::size_t n = m.n;
  PowerResult out;
  out.vector.assign(n, 1.0 / std::sqrt(double(n)));

  double sigma = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(m.at(i, j));
    sigma = std::max(sigma, row);
  }
  if (sigma == 0.0) return out;  // zero matrix

  std::vector<double> w(n), mv(n);
  for (int iter = 0; iter < 200000; ++iter) {
    kernels::dmatvec(n, m.a.data(), out.vector.data(), mv.data());
    const double lambda = kernels::ddot(n, out.vector.data(), mv.data());
    double res_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = mv[i] - lambda * out.vector[i];
      res_sq += d * d;
    }
    out.eigenvalue = lambda;
    if (std::sqrt(res_sq) <= 1e-10 * std::max(std::abs(lambda), 1.0)) break;
    for (std::size_t i = 0; i < n; ++i) w[i] = mv[i] + sigma * out.vector[i];
    const double nrm = std::sqrt(kernels::ddot(n, w.data(), w.data()));
    if (nrm == 0.0) break;
    kernels::dscal(n, 1.0 / nrm, w.data());
    std::swap(out.vector, w);
  }
  double sum = 0.0;
  for (double v : out.vector) sum += v;
  if (sum < 0.0) kernels::dscal(n, -1.0, out.vector.data());
  return out;
}

}  // namespace

double symmetric_norm(const RealMatrix& m) {
  return shifted_power_iteration(m).eigenvalue;
}

AdversaryMatrix ordered_search_adversary(int n) {
  if (n < 1 || n > 12) throw ValidationError("ordered_search_adversary: need 1 <= n <= 12");
  AdversaryMatrix adv;
  adv.n_bits = n;
  adv.n_inputs = std::size_t(1) << n;
  adv.gamma = RealMatrix(adv.n_inputs);
  std::vector<std::vector<std::uint64_t>> packed(adv.n_inputs);
  for (std::size_t x = 0; x < adv.n_inputs; ++x) {
    packed[x] = AlphaString(n, std::uint32_t(x)).packed();
  }
  for (std::size_t x = 0; x < adv.n_inputs; ++x) {
    for (std::size_t y = x + 1; y < adv.n_inputs; ++y) {
      std::uint64_t hd = 0;
      for (std::size_t k = 0; k < packed[x].size(); ++k) {
        hd += std::popcount(packed[x][k] ^ packed[y][k]);
      }
      adv.gamma.at(x, y) = adv.gamma.at(y, x) = 1.0 / double(hd);
    }
  }
  auto pr = shifted_power_iteration(adv.gamma);
  adv.principal_norm = pr.eigenvalue;
  adv.principal_vector = std::move(pr.vector);
  return adv;
}

RealMatrix restricted_adversary(const AdversaryMatrix& adv, std::uint32_t i) {
  if (i >= adv.n_inputs) throw ValidationError("restricted_adversary: position out of range");
  RealMatrix out(adv.n_inputs);
  for (std::size_t x = 0; x < adv.n_inputs; ++x) {
    for (std::size_t y = 0; y < adv.n_inputs; ++y) {
      const bool ax = i >= x, ay = i >= y;
      if (ax != ay) out.at(x, y) = adv.gamma.at(x, y);
    }
  }
  return out;
}

double max_restricted_norm(const AdversaryMatrix& adv) {
  std::vector<double> norms(adv.n_inputs, 0.0);
  parallel_for_index(adv.n_inputs, [&](std::size_t i) {
    norms[i] = symmetric_norm(restricted_adversary(adv, std::uint32_t(i)));
  });
  return *std::max_element(norms.begin(), norms.end());
}

namespace {

cplx w_value_at_index(const AdversaryMatrix& adv, const EnsembleResult& ens,
                      std::size_t idx) {
  const std::size_t m = ens.trajectories.size();
  const std::size_t d = ens.trajectories.front().states.front().dim();
  cplx w{0.0, 0.0};
  for (std::size_t x = 0; x < m; ++x) {
    const auto& sx = ens.trajectories[x].states[idx];
    for (std::size_t y = 0; y < m; ++y) {
      if (x == y) continue;
      const auto& sy = ens.trajectories[y].states[idx];
      const cplx ov = kernels::dot_conj(d, sx.data(), sy.data());
      w += adv.gamma.at(x, y) * adv.principal_vector[x] * adv.principal_vector[y] * ov;
    }
  }
  return w;
}

void check_common_grid(const EnsembleResult& ens) {
  if (ens.trajectories.empty()) throw ValidationError("empty ensemble");
  const auto& t0 = ens.trajectories.front().times;
  for (const auto& traj : ens.trajectories) {
    if (traj.times.size() != t0.size()) {
      throw ValidationError("ensemble trajectories disagree on the time grid");
    }
    for (std::size_t k = 0; k < t0.size(); ++k) {
      if (std::abs(traj.times[k] - t0[k]) > 1e-12 * std::max(1.0, t0.back())) {
        throw ValidationError("ensemble trajectories disagree on the time grid");
      }
    }
  }
  if (ens.inputs.size() != ens.trajectories.size()) {
    throw ValidationError("ensemble inputs and trajectories mismatch");
  }
}

}  // namespace

double distinguishability(const AdversaryMatrix& adv, const EnsembleResult& ens, double t) {
  check_common_grid(ens);
  if (adv.n_inputs != ens.trajectories.size()) {
    throw ValidationError("adversary matrix and ensemble sizes differ");
  }
  const std::size_t idx = ens.trajectories.front().index_of_time(t);
  const cplx w = w_value_at_index(adv, ens, idx);
  if (std::abs(w.imag()) > 1e-10) {
    throw std::runtime_error("W(t) imaginary residue " + std::to_string(w.imag()) +
                             " exceeds 1e-10");
  }
  return w.real();
}

std::vector<std::pair<double, double>> w_trace(const AdversaryMatrix& adv,
                                               const EnsembleResult& ens) {
  check_common_grid(ens);
  const auto& times = ens.trajectories.front().times;
  std::vector<std::pair<double, double>> out(times.size());
  parallel_for_index(times.size(), [&](std::size_t k) {
    const cplx w = w_value_at_index(adv, ens, k);
    if (std::abs(w.imag()) > 1e-10) {
      throw std::runtime_error("W(t) imaginary residue exceeds 1e-10");
    }
    out[k] = {times[k], w.real()};
  });
  return out;
}

double pairwise_overlap_epsilon(const EnsembleResult& ens, double t) {
  check_common_grid(ens);
  const std::size_t idx = ens.trajectories.front().index_of_time(t);
  const std::size_t m = ens.trajectories.size();
  const std::size_t d = ens.trajectories.front().states.front().dim();
  double eps = 0.0;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = x + 1; y < m; ++y) {
      const cplx ov = kernels::dot_conj(d, ens.trajectories[x].states[idx].data(),
                                        ens.trajectories[y].states[idx].data());
      eps = std::max(eps, std::abs(ov));
    }
  }
  return eps;
}

WRateReport w_rate_bound_check(const AdversaryMatrix& adv, const EnsembleResult& ens,
                               const std::function<double(double)>& delta_of_t,
                               double tol) {
  WRateReport rep;
  rep.tol = tol;
  rep.max_gamma_i_norm = max_restricted_norm(adv);
  const auto trace = w_trace(adv, ens);

  double delta_max = 0.0;
  for (const auto& [t, w] : trace) delta_max = std::max(delta_max, delta_of_t(t));
  rep.bound = 4.0 * delta_max * rep.max_gamma_i_norm;

  rep.pointwise_pass = true;
  for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
    const double dt = trace[k + 1].first - trace[k].first;
    const double rate = std::abs(trace[k + 1].second - trace[k].second) / dt;
    rep.max_rate = std::max(rep.max_rate, rate);
    rep.mid_times.push_back(0.5 * (trace[k].first + trace[k + 1].first));
    rep.rates.push_back(rate);
    const double local =
        4.0 * std::max(delta_of_t(trace[k].first), delta_of_t(trace[k + 1].first)) *
        rep.max_gamma_i_norm;
    rep.pointwise_bounds.push_back(local);
    if (rate > local + tol) rep.pointwise_pass = false;
  }
  rep.pass = rep.max_rate <= rep.bound + tol;
  rep.slack = rep.bound + tol - rep.max_rate;
  return rep;
}

double spectral_lower_bound(const AdversaryMatrix& adv, double max_gamma_i_norm,
                            double delta, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw ValidationError("spectral bound: need 0 <= eps < 1");
  if (!(delta > 0.0)) throw ValidationError("spectral bound: delta must be positive");
  return (1.0 - eps) * adv.principal_norm / (4.0 * delta * max_gamma_i_norm);
}

double spectral_lower_bound(int n, double delta, double eps) {
  const AdversaryMatrix adv = ordered_search_adversary(n);
  return spectral_lower_bound(adv, max_restricted_norm(adv), delta, eps);
}

LocalConditionReport local_condition_check(int n, double eps_measured,
                                           const Schedule& schedule,
                                           const std::function<double(double)>& gap_of_r,
                                           std::optional<double> c,
                                           std::optional<double> path_len) {
  if (!(eps_measured >= 0.0 && eps_measured <= 1.0)) {
    throw ValidationError("local condition: eps must be in [0,1]");
  }
  LocalConditionReport rep;
  rep.lhs = (1.0 - eps_measured) * n;

  // Simpson in t over a fine uniform grid
  const int m = 4096;
  const double total = schedule.total_time();
  double s = gap_of_r(schedule.r_of(0.0)) + gap_of_r(schedule.r_of(total));
  for (int k = 1; k < m; ++k) {
    const double t = total * double(k) / m;
    s += gap_of_r(schedule.r_of(t)) * ((k % 2 == 1) ? 4.0 : 2.0);
  }
  rep.rhs = 4.0 * kPi * s * (total / m) / 3.0;
  rep.holds = rep.lhs <= rep.rhs + 1e-9 * std::max(1.0, rep.rhs);

  bool monotone = true;
  const auto& table = schedule.table();
  for (std::size_t k = 1; k < table.size(); ++k) {
    if (table[k].second < table[k - 1].second) monotone = false;
  }
  if (monotone && c && path_len) {
    rep.rhs_change_of_variables = 4.0 * kPi * (*path_len) / (*c);
  }
  return rep;
}

double critical_speed_constant(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw ValidationError("critical speed constant: need 0 <= eps < 1");
  }
  return 2.0 * kPi * kPi / (1.0 - eps);
}

namespace {

double round12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace

std::string adversary_report_json(const AdversaryMatrix& adv, double max_gamma_i_norm,
                                  double lower_bound_time,
                                  const std::vector<std::pair<double, double>>& trace,
                                  double rate_bound_slack) {
  nlohmann::json j;
  j["n"] = adv.n_bits;
  j["gamma_norm"] = round12(adv.principal_norm);
  j["max_gamma_i_norm"] = round12(max_gamma_i_norm);
  j["spectral_lower_bound"] = round12(lower_bound_time);
  auto& wt = j["w_trace"] = nlohmann::json::array();
  for (const auto& [t, w] : trace) wt.push_back({round12(t), round12(w)});
  j["rate_bound_slack"] = round12(rate_bound_slack);
  return j.dump();
}

}  // namespace eigenpath
