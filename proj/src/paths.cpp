#include "eigenpath/paths.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eigenpath {

namespace {
constexpr double kPi = std::numbers::pi;
}

SecretWord::SecretWord(int bits, std::uint32_t value) : n(bits), x(value) {
  if (n < 1 || n > 16) throw ValidationError("secret word needs 1 <= n <= 16 bits");
  if (x >= (std::uint32_t(1) << n)) throw ValidationError("secret word value out of range");
}

std::uint32_t SecretWord::prefix(int l) const {
  if (l < 0 || l > n) throw ValidationError("prefix length out of range");
  if (l == 0) return 0;
  return x >> (n - l);
}

GapProfile GapProfile::constant(double value) {
  return GapProfile([value](double) { return value; });
}

GapProfile GapProfile::linear_ramp() {
  return GapProfile([](double r) { return 1.0 + r; });
}

GapProfile GapProfile::from_table(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw ValidationError("gap profile table needs >= 2 samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].first <= samples[i - 1].first) {
      throw ValidationError("gap profile table must be strictly increasing in r");
    }
  }
  return GapProfile([t = std::move(samples)](double r) {
    if (r <= t.front().first) return t.front().second;
    if (r >= t.back().first) return t.back().second;
    auto it = std::upper_bound(t.begin(), t.end(), r,
                               [](double v, const auto& s) { return v < s.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (r - lo.first) / (hi.first - lo.first);
    return lo.second + w * (hi.second - lo.second);
  });
}

struct HamiltonianPath::Impl {
  std::size_t dim = 0;
  PathKind kind = PathKind::custom;
  TrackRule track = TrackRule::extremal_bottom;
  double delta = 1.0;
  int segments = 1;
  std::vector<double> breakpoints;
  std::function<void(double, ComplexMatrix&)> eval;
  std::optional<double> tracked_hint;

  // clock
  std::vector<std::vector<cplx>> gammas;
  std::size_t sys_dim = 0;
  std::vector<cplx> seed;
  bool has_seed = false;

  // grover
  std::size_t n_items = 0, marked = 0;

  // ordered search
  std::optional<SecretWord> word;
  std::vector<std::vector<cplx>> prefixes;

  // scaled
  std::shared_ptr<const Impl> base;
};

std::size_t HamiltonianPath::dim() const { return impl_->dim; }
PathKind HamiltonianPath::kind() const { return impl_->kind; }
TrackRule HamiltonianPath::track() const { return impl_->track; }
double HamiltonianPath::delta() const { return impl_->delta; }
int HamiltonianPath::segment_count() const { return impl_->segments; }
const std::vector<double>& HamiltonianPath::breakpoints() const { return impl_->breakpoints; }

std::optional<double> HamiltonianPath::tracked_eigenvalue_hint() const {
  return impl_->tracked_hint;
}

const std::vector<cplx>* HamiltonianPath::continuation_seed() const {
  return impl_->has_seed ? &impl_->seed : nullptr;
}

int HamiltonianPath::segment_of(double r) const {
  if (r < -1e-9 || r > 1.0 + 1e-9) throw ValidationError("path parameter r outside [0,1]");
  const int n = impl_->segments;
  const int l = 1 + int(std::floor(std::clamp(r, 0.0, 1.0) * n));
  return std::clamp(l, 1, n);
}

void HamiltonianPath::evaluate_into(double r, ComplexMatrix& out) const {
  if (r < -1e-9 || r > 1.0 + 1e-9) throw ValidationError("path parameter r outside [0,1]");
  if (out.dim() != impl_->dim) out = ComplexMatrix(impl_->dim);
  impl_->eval(std::clamp(r, 0.0, 1.0), out);
}

HermitianOperator HamiltonianPath::evaluate(double r) const {
  ComplexMatrix m(impl_->dim);
  evaluate_into(r, m);
  return HermitianOperator::trusted(std::move(m));
}

HamiltonianPath HamiltonianPath::negated() const {
  auto impl = std::make_shared<Impl>(*impl_);
  const auto inner = impl_->eval;
  impl->eval = [inner](double r, ComplexMatrix& m) {
    inner(r, m);
    kernels::scal(m.dim() * m.dim(), cplx{-1.0, 0.0}, m.data());
  };
  if (impl->track == TrackRule::extremal_bottom) {
    impl->track = TrackRule::extremal_top;
  } else if (impl->track == TrackRule::extremal_top) {
    impl->track = TrackRule::extremal_bottom;
  }
  if (impl->tracked_hint) impl->tracked_hint = -*impl->tracked_hint;
  return HamiltonianPath(std::move(impl));
}

namespace {

double segment_parameter(int segments, int l, double r) {
  return r * segments - l + 1;  // s in [0,1] on segment l
}

bool is_power_of_two(std::size_t v) { return v >= 1 && (v & (v - 1)) == 0; }

}  // namespace

HamiltonianPath make_grover_path(std::size_t n_items, std::size_t marked) {
  if (!is_power_of_two(n_items) || n_items < 2) {
    throw ValidationError("grover path: N must be a power of two, N >= 2");
  }
  if (marked >= n_items) throw ValidationError("grover path: marked item out of range");

  auto impl = std::make_shared<HamiltonianPath::Impl>();
  impl->dim = n_items;
  impl->kind = PathKind::grover;
  impl->track = TrackRule::extremal_bottom;
  impl->delta = 1.0 / std::sqrt(double(n_items));
  impl->segments = 1;
  impl->n_items = n_items;
  impl->marked = marked;
  impl->eval = [n = n_items, m = marked](double r, ComplexMatrix& out) {
    const cplx off{-(1.0 - r) / double(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      cplx* row = out.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) row[j] = off;
      row[i] += 1.0;
    }
    out.at(m, m) -= r;
  };
  return HamiltonianPath(std::move(impl));
}

HamiltonianPath make_clock_path(const CircuitSpec& circuit, double delta,
                                const StateVector& seed) {
  if (delta <= 0.0) throw ValidationError("clock path: delta must be positive");
  if (seed.dim() != circuit.dim()) {
    throw ValidationError("clock path: seed dimension does not match the circuit");
  }
  const int n = int(circuit.gate_count());
  const std::size_t sys = circuit.dim();
  const std::size_t clock = std::size_t(n) + 1;

  auto impl = std::make_shared<HamiltonianPath::Impl>();
  impl->dim = sys * clock;
  impl->kind = PathKind::clock;
  impl->track = TrackRule::continuation;
  impl->delta = delta;
  impl->segments = n;
  impl->tracked_hint = -delta / 2;
  impl->sys_dim = sys;
  for (int l = 1; l < n; ++l) impl->breakpoints.push_back(double(l) / n);

  // |gamma_l> = (U_l ... U_1 |psi>) |l>
  std::vector<cplx> sys_state(seed.amplitudes()), next(sys);
  impl->gammas.resize(clock, std::vector<cplx>(impl->dim, cplx{0, 0}));
  for (std::size_t i = 0; i < sys; ++i) impl->gammas[0][i * clock + 0] = sys_state[i];
  for (int l = 1; l <= n; ++l) {
    kernels::matvec(sys, circuit.gates[l - 1].data(), sys_state.data(), next.data());
    std::swap(sys_state, next);
    for (std::size_t i = 0; i < sys; ++i) impl->gammas[l][i * clock + l] = sys_state[i];
  }
  impl->seed = impl->gammas[0];
  impl->has_seed = true;

  auto gates = std::make_shared<std::vector<ComplexMatrix>>(circuit.gates);
  impl->eval = [gates, n, sys, clock, delta](double r, ComplexMatrix& out) {
    const int l = std::clamp(1 + int(std::floor(r * n)), 1, n);
    const double s = segment_parameter(n, l, r);
    const double cs = std::cos(kPi * s), sn = std::sin(kPi * s);
    const ComplexMatrix& u = (*gates)[l - 1];
    out.set_zero();
    for (std::size_t i = 0; i < sys; ++i) {
      out.at(i * clock + (l - 1), i * clock + (l - 1)) = -0.5 * delta * cs;
      out.at(i * clock + l, i * clock + l) = 0.5 * delta * cs;
      for (std::size_t j = 0; j < sys; ++j) {
        const cplx uij = u.at(i, j);
        out.at(i * clock + l, j * clock + (l - 1)) = -0.5 * delta * sn * uij;
        out.at(j * clock + (l - 1), i * clock + l) = -0.5 * delta * sn * std::conj(uij);
      }
    }
  };
  return HamiltonianPath(std::move(impl));
}

std::vector<cplx> prefix_plus_state(int n, int l, std::uint32_t prefix_value) {
  if (n < 1 || l < 0 || l > n) throw ValidationError("prefix state: bad n or l");
  const std::size_t dim = std::size_t(1) << n;
  const int rest = n - l;
  if (l < 32 && prefix_value >= (std::uint32_t(1) << l) && l > 0) {
    throw ValidationError("prefix state: value does not fit in l bits");
  }
  std::vector<cplx> v(dim, cplx{0, 0});
  const double amp = std::pow(2.0, -0.5 * rest);
  const std::size_t lo = std::size_t(prefix_value) << rest;
  const std::size_t hi = lo + (std::size_t(1) << rest);
  for (std::size_t b = lo; b < hi; ++b) v[b] = amp;
  return v;
}

HamiltonianPath make_ordered_search_path(const SecretWord& word, double delta) {
  if (delta <= 0.0) throw ValidationError("ordered-search path: delta must be positive");
  const int n = word.n;

  auto impl = std::make_shared<HamiltonianPath::Impl>();
  impl->dim = std::size_t(1) << n;
  impl->kind = PathKind::ordered_search;
  impl->track = TrackRule::extremal_top;
  impl->delta = delta;
  impl->segments = n;
  impl->word = word;
  for (int l = 1; l < n; ++l) impl->breakpoints.push_back(double(l) / n);
  for (int l = 0; l <= n; ++l) {
    impl->prefixes.push_back(prefix_plus_state(n, l, word.prefix(l)));
  }

  auto prefixes = std::make_shared<std::vector<std::vector<cplx>>>(impl->prefixes);
  impl->eval = [prefixes, n, delta](double r, ComplexMatrix& out) {
    const int l = std::clamp(1 + int(std::floor(r * n)), 1, n);
    const double s = segment_parameter(n, l, r);
    const double a = delta * std::cos(kPi * s / 2), b = delta * std::sin(kPi * s / 2);
    const auto& u = (*prefixes)[l - 1];
    const auto& v = (*prefixes)[l];
    const std::size_t d = u.size();
    for (std::size_t i = 0; i < d; ++i) {
      cplx* row = out.data() + i * d;
      const cplx ui = a * u[i], vi = b * v[i];
      for (std::size_t j = 0; j < d; ++j) {
        row[j] = ui * std::conj(u[j]) + vi * std::conj(v[j]);
      }
    }
  };
  return HamiltonianPath(std::move(impl));
}

HamiltonianPath apply_gap_profile(const HamiltonianPath& path, const GapProfile& profile) {
  if (path.kind() != PathKind::ordered_search) {
    throw ValidationError("gap profiles apply to ordered-search paths only");
  }
  for (int k = 0; k <= 1024; ++k) {
    const double r = double(k) / 1024;
    if (!(profile(r) > 0.0)) {
      throw ValidationError("gap profile not positive at r = " + std::to_string(r));
    }
  }
  auto impl = std::make_shared<HamiltonianPath::Impl>(path.impl());
  impl->kind = PathKind::scaled;
  impl->base = path.share_impl();
  const auto inner = path.impl().eval;
  impl->eval = [inner, profile](double r, ComplexMatrix& m) {
    inner(r, m);
    kernels::scal(m.dim() * m.dim(), cplx{profile(r), 0.0}, m.data());
  };
  return HamiltonianPath(std::move(impl));
}

HamiltonianPath make_custom_path(std::size_t dim,
                                 std::function<void(double, ComplexMatrix&)> evaluator,
                                 std::vector<double> interior_breakpoints,
                                 TrackRule track, double delta) {
  if (dim < 2) throw ValidationError("custom path: dim must be >= 2");
  auto impl = std::make_shared<HamiltonianPath::Impl>();
  impl->dim = dim;
  impl->kind = PathKind::custom;
  impl->track = track;
  impl->delta = delta;
  impl->segments = int(interior_breakpoints.size()) + 1;
  impl->breakpoints = std::move(interior_breakpoints);
  impl->eval = std::move(evaluator);
  return HamiltonianPath(std::move(impl));
}

namespace {

StateVector grover_reference(const HamiltonianPath::Impl& p, double r) {
  const std::size_t n = p.n_items;
  const double mu = 1.0 / std::sqrt(double(n));
  const double nu = std::sqrt(1.0 - mu * mu);
  // H(r) restricted to span{|m>, |m_perp>} with |m_perp> = (|phi> - mu|m>)/nu
  const double h11 = 1.0 - (1.0 - r) * mu * mu - r;
  const double h12 = -(1.0 - r) * mu * nu;
  const double h22 = 1.0 - (1.0 - r) * nu * nu;
  const double mid = 0.5 * (h11 + h22);
  const double rad = std::sqrt(0.25 * (h11 - h22) * (h11 - h22) + h12 * h12);
  const double lam = mid - rad;  // bottom branch
  double a, b;
  // pick the better-conditioned null-space formula for (H - lam)
  if (std::abs(lam - h22) + std::abs(h12) > std::abs(lam - h11) + std::abs(h12)) {
    a = lam - h22;
    b = h12;
  } else {
    a = h12;
    b = lam - h11;
  }
  const double nrm = std::hypot(a, b);
  a /= nrm;
  b /= nrm;
  if (a < 0.0) {  // gauge: component along |m> stays positive for all r
    a = -a;
    b = -b;
  }
  std::vector<cplx> v(n, cplx{b * mu / nu, 0.0});  // b * phi_k / nu off the mark
  v[p.marked] = a;
  return StateVector::normalized(std::move(v));
}

}  // namespace

StateVector reference_eigenpath(const HamiltonianPath& path, double r) {
  if (r < -1e-9 || r > 1.0 + 1e-9) throw ValidationError("path parameter r outside [0,1]");
  r = std::clamp(r, 0.0, 1.0);
  const auto& p = path.impl();
  switch (p.kind) {
    case PathKind::grover:
      return grover_reference(p, r);
    case PathKind::clock: {
      const int l = path.segment_of(r);
      const double s = segment_parameter(p.segments, l, r);
      const double c = std::cos(kPi * s / 2), sn = std::sin(kPi * s / 2);
      std::vector<cplx> v(p.dim);
      for (std::size_t i = 0; i < p.dim; ++i) {
        v[i] = c * p.gammas[l - 1][i] + sn * p.gammas[l][i];
      }
      return StateVector::normalized(std::move(v));
    }
    case PathKind::ordered_search: {
      const int l = path.segment_of(r);
      const double s = segment_parameter(p.segments, l, r);
      // top eigenvector rotates by pi*s/4 from u toward u_perp, where
      // v = (u + u_perp)/sqrt(2)
      const double cu = std::cos(kPi * s / 4) - std::sin(kPi * s / 4);
      const double cv = std::sqrt(2.0) * std::sin(kPi * s / 4);
      const auto& u = p.prefixes[l - 1];
      const auto& v = p.prefixes[l];
      std::vector<cplx> out(p.dim);
      for (std::size_t i = 0; i < p.dim; ++i) out[i] = cu * u[i] + cv * v[i];
      return StateVector::normalized(std::move(out));
    }
    case PathKind::scaled:
      return reference_eigenpath(HamiltonianPath(p.base), r);
    case PathKind::custom:
      break;
  }
  throw ValidationError("reference eigenpath unsupported for this path kind");
}

std::pair<double, StateVector> clock_extract_system(const HamiltonianPath& path,
                                                    const StateVector& state) {
  const auto& p = path.impl();
  if (p.kind != PathKind::clock) throw ValidationError("not a clock path");
  if (state.dim() != p.dim) throw ValidationError("state dimension mismatch");
  const std::size_t clock = p.dim / p.sys_dim;
  std::vector<cplx> sys(p.sys_dim);
  double weight = 0.0;
  for (std::size_t i = 0; i < p.sys_dim; ++i) {
    sys[i] = state[i * clock + (clock - 1)];
    weight += std::norm(sys[i]);
  }
  if (weight < 1e-12) throw ValidationError("no amplitude on the final clock state");
  return {weight, StateVector::normalized(std::move(sys))};
}

}  // namespace eigenpath
