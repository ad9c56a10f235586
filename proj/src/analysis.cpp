#include "eigenpath/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace eigenpath {

namespace {

constexpr std::size_t kDenseDimLimit = 64;

std::string fmt_r(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", r);
  return buf;
}

// ---------------------------------------------------------------------------
// Lanczos edge solver: bottom/top distinct eigenvalues (and the extremal
// eigenvector) of a dense Hermitian matrix, certified by Ritz residuals.
// Used for dim > 64 where full zheevd per sample is too slow; falls back to
// the dense route when it cannot certify.
// ---------------------------------------------------------------------------

struct EdgeResult {
  bool ok = false;
  std::vector<double> distinct;  // converged distinct Ritz values, ascending
  std::vector<cplx> extremal_vector;
};

EdgeResult lanczos_edge(const ComplexMatrix& h, bool want_bottom, bool want_vector) {
  const std::size_t n = h.dim();
  const int m_max = int(std::min<std::size_t>(48, n));
  EdgeResult out;

  std::vector<cplx> basis(std::size_t(m_max + 1) * n);
  std::vector<cplx> w(n);
  std::vector<double> alpha, beta;
  alpha.reserve(m_max);
  beta.reserve(m_max);

  // deterministic full-support start
  cplx* v0 = basis.data();
  for (std::size_t i = 0; i < n; ++i) v0[i] = 1.0 + 0.01 * std::sin(1.7 * double(i) + 0.3);
  {
    const double nrm = std::sqrt(kernels::norm_sq(n, v0));
    kernels::scal(n, cplx{1.0 / nrm, 0.0}, v0);
  }

  std::vector<double> d, e, z;
  for (int j = 0; j < m_max; ++j) {
    const cplx* vj = basis.data() + std::size_t(j) * n;
    kernels::matvec(n, h.data(), vj, w.data());
    alpha.push_back(kernels::dot_conj(n, vj, w.data()).real());
    kernels::axpy(n, cplx{-alpha[j], 0.0}, vj, w.data());
    if (j > 0) {
      kernels::axpy(n, cplx{-beta[j - 1], 0.0}, basis.data() + std::size_t(j - 1) * n, w.data());
    }
    for (int p = 0; p <= j; ++p) {
      const cplx* vp = basis.data() + std::size_t(p) * n;
      const cplx c = kernels::dot_conj(n, vp, w.data());
      kernels::axpy(n, -c, vp, w.data());
    }
    const double bj = std::sqrt(kernels::norm_sq(n, w.data()));
    beta.push_back(bj);
    const int k = j + 1;

    // Ritz values/vectors of T_k
    d.assign(alpha.begin(), alpha.end());
    e.assign(std::max(1, k - 1), 0.0);
    for (int i = 0; i + 1 < k; ++i) e[i] = beta[i];
    z.assign(std::size_t(k) * k, 0.0);
    for (int i = 0; i < k; ++i) z[std::size_t(i) * k + i] = 1.0;
    if (LAPACKE_dsteqr(LAPACK_ROW_MAJOR, 'I', k, d.data(), e.data(), z.data(), k) != 0) {
      return out;  // fall back to dense
    }
    const double scale = std::max({std::abs(d.front()), std::abs(d.back()), 1e-300});
    const double tol = 1e-12 * scale;
    const bool breakdown = bj < 1e-13 * scale;

    auto residual = [&](int ritz) { return breakdown ? 0.0 : bj * std::abs(z[std::size_t(k - 1) * k + ritz]); };

    // distinct clusters among Ritz values
    const double cluster_tol = 1e-9 * scale;
    std::vector<int> reps;  // index of first Ritz value in each cluster
    for (int i = 0; i < k; ++i) {
      if (reps.empty() || d[i] - d[reps.back()] > cluster_tol) reps.push_back(i);
    }

    // need the two edge clusters (from the tracked side) certified
    bool certified = false;
    if (breakdown) {
      certified = true;  // Krylov space is invariant: T_k spectrum is exact
    } else if (reps.size() >= 2) {
      if (want_bottom) {
        certified = residual(reps[0]) <= tol && residual(reps[1]) <= tol;
      } else {
        certified = residual(reps[reps.size() - 1]) <= tol && residual(reps[reps.size() - 2]) <= tol;
      }
    }
    if (certified) {
      out.ok = true;
      out.distinct.clear();
      for (int rep : reps) out.distinct.push_back(d[rep]);
      if (want_vector) {
        const int col = want_bottom ? reps.front() : reps.back();
        out.extremal_vector.assign(n, cplx{0, 0});
        for (int p = 0; p < k; ++p) {
          kernels::axpy(n, cplx{z[std::size_t(p) * k + col], 0.0},
                        basis.data() + std::size_t(p) * n, out.extremal_vector.data());
        }
        const double nrm = std::sqrt(kernels::norm_sq(n, out.extremal_vector.data()));
        kernels::scal(n, cplx{1.0 / nrm, 0.0}, out.extremal_vector.data());
      }
      return out;
    }
    if (breakdown) break;
    cplx* vnext = basis.data() + std::size_t(j + 1) * n;
    for (std::size_t i = 0; i < n; ++i) vnext[i] = w[i] / bj;
  }
  return out;
}

double spectrum_scale(const std::vector<double>& w) {
  return std::max({std::abs(w.front()), std::abs(w.back()), 1e-300});
}

// first eigenvalue strictly above w[idx] (beyond tol), NaN when none
double next_distinct_above(const std::vector<double>& w, std::size_t idx, double tol) {
  for (std::size_t j = idx + 1; j < w.size(); ++j) {
    if (w[j] - w[idx] > tol) return w[j];
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double next_distinct_below(const std::vector<double>& w, std::size_t idx, double tol) {
  for (std::size_t j = idx; j-- > 0;) {
    if (w[idx] - w[j] > tol) return w[j];
  }
  return std::numeric_limits<double>::quiet_NaN();
}

struct TrackedVector {
  std::vector<cplx> state;
  double eigenvalue = 0.0;
  double gap = 0.0;
};

// tracked state/eigenvalue/gap for extremal tracks
TrackedVector extremal_tracked(const HamiltonianPath& path, double r, bool want_gap) {
  const bool bottom = path.track() == TrackRule::extremal_bottom;
  ComplexMatrix m(path.dim());
  path.evaluate_into(r, m);
  TrackedVector out;

  if (path.dim() > kDenseDimLimit) {
    EdgeResult edge = lanczos_edge(m, bottom, true);
    if (edge.ok && edge.distinct.size() >= 2) {
      out.state = std::move(edge.extremal_vector);
      out.eigenvalue = bottom ? edge.distinct.front() : edge.distinct.back();
      out.gap = bottom ? edge.distinct[1] - edge.distinct[0]
                       : edge.distinct[edge.distinct.size() - 1] -
                             edge.distinct[edge.distinct.size() - 2];
      return out;
    }
  }

  auto h = HermitianOperator::trusted(std::move(m));
  if (!want_gap) {
    // partial solve: extremal pair only
    const int idx = bottom ? 1 : int(path.dim());
    auto part = eigenpairs_range(h, idx, idx);
    out.state = part.vectors[0];
    out.eigenvalue = part.eigenvalues[0];
    out.gap = 0.0;
    return out;
  }
  auto dec = eigendecompose(h);
  const std::size_t idx = bottom ? 0 : path.dim() - 1;
  out.state = dec.eigenvector(idx);
  out.eigenvalue = dec.eigenvalues[idx];
  const double tol = 1e-8 * spectrum_scale(dec.eigenvalues);
  const double other = bottom ? next_distinct_above(dec.eigenvalues, idx, tol)
                              : next_distinct_below(dec.eigenvalues, idx, tol);
  out.gap = std::isnan(other) ? 0.0 : std::abs(other - out.eigenvalue);
  return out;
}

// continuation track: project `previous` onto the best-overlap eigenspace
TrackedVector continuation_tracked(const HamiltonianPath& path, double r,
                                   const std::vector<cplx>& previous) {
  const std::size_t n = path.dim();
  auto dec = eigendecompose(path.evaluate(r));
  const double scale = spectrum_scale(dec.eigenvalues);
  const double cluster_tol = 1e-7 * std::max(scale, 1.0);

  // eigenvalue clusters [begin, end)
  std::vector<std::pair<std::size_t, std::size_t>> clusters;
  std::size_t begin = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    if (j == n || dec.eigenvalues[j] - dec.eigenvalues[j - 1] > cluster_tol) {
      clusters.emplace_back(begin, j);
      begin = j;
    }
  }

  // projection weight of `previous` on each cluster
  std::vector<double> weight(clusters.size(), 0.0);
  std::vector<cplx> coeff(n);
  for (std::size_t j = 0; j < n; ++j) coeff[j] = cplx{0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* vrow = dec.vectors.data() + i * n;
    const cplx pi = previous[i];
    for (std::size_t j = 0; j < n; ++j) coeff[j] += std::conj(vrow[j]) * pi;
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (std::size_t j = clusters[c].first; j < clusters[c].second; ++j) {
      weight[c] += std::norm(coeff[j]);
    }
  }
  std::size_t best = 0, second = clusters.size() > 1 ? 1 : 0;
  for (std::size_t c = 1; c < clusters.size(); ++c) {
    if (weight[c] > weight[best]) {
      second = best;
      best = c;
    } else if (weight[c] > weight[second] || second == best) {
      second = c;
    }
  }
  if (clusters.size() > 1) {
    const double ov_best = std::sqrt(weight[best]);
    const double ov_second = std::sqrt(weight[second]);
    if (ov_best - ov_second < 1e-6) {
      throw DegeneracyError("ambiguous eigenpath continuation at r = " + fmt_r(r) +
                            " (overlap difference " + fmt_r(ov_best - ov_second) + ")");
    }
  }

  TrackedVector out;
  out.state.assign(n, cplx{0, 0});
  for (std::size_t j = clusters[best].first; j < clusters[best].second; ++j) {
    auto vj = dec.eigenvector(j);
    kernels::axpy(n, coeff[j], vj.data(), out.state.data());
  }
  const double nrm = std::sqrt(kernels::norm_sq(n, out.state.data()));
  if (nrm < 1e-12) throw DegeneracyError("continuation lost the tracked branch at r = " + fmt_r(r));
  kernels::scal(n, cplx{1.0 / nrm, 0.0}, out.state.data());
  out.eigenvalue = dec.eigenvalues[clusters[best].first];

  if (path.kind() == PathKind::clock) {
    // distance to the +delta/2 branch (the only coupled one)
    out.gap = dec.eigenvalues.back() - out.eigenvalue;
  } else {
    const double tol = 1e-8 * scale;
    double g = std::numeric_limits<double>::infinity();
    for (double w : dec.eigenvalues) {
      const double dist = std::abs(w - out.eigenvalue);
      if (dist > tol) g = std::min(g, dist);
    }
    out.gap = std::isinf(g) ? 0.0 : g;
  }
  return out;
}

// march the continuation from the seed up to r (used when no previous sample
// is supplied mid-path)
std::vector<cplx> continuation_walk(const HamiltonianPath& path, double r) {
  const auto* seed = path.continuation_seed();
  if (seed == nullptr) {
    throw ValidationError("overlap-continuation tracking needs a previous sample or a seed");
  }
  std::vector<cplx> cur = *seed;
  const int steps_per_segment = 24;
  const int total = std::max(1, int(std::ceil(r * path.segment_count() * steps_per_segment)));
  for (int k = 1; k < total; ++k) {
    const double rk = r * double(k) / total;
    cur = continuation_tracked(path, rk, cur).state;
  }
  return cur;
}

void fix_phase_against(const std::vector<cplx>& reference, std::vector<cplx>& v) {
  const cplx ov = kernels::dot_conj(v.size(), reference.data(), v.data());
  const double mag = std::abs(ov);
  if (mag > 1e-14) {
    kernels::scal(v.size(), std::conj(ov) / mag, v.data());
  }
}

void fix_phase_canonical(std::vector<cplx>& v) {
  std::size_t imax = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::norm(v[i]) > best) {
      best = std::norm(v[i]);
      imax = i;
    }
  }
  const double mag = std::abs(v[imax]);
  if (mag > 0.0) kernels::scal(v.size(), std::conj(v[imax]) / mag, v.data());
}

// tracked state only (no gap), sharing the fast paths
std::vector<cplx> tracked_state_only(const HamiltonianPath& path, double r,
                                     const std::vector<cplx>* previous) {
  if (path.track() == TrackRule::continuation) {
    if (previous != nullptr) return continuation_tracked(path, r, *previous).state;
    return continuation_tracked(path, r, continuation_walk(path, r)).state;
  }
  return extremal_tracked(path, r, false).state;
}

double fs_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const double ov = std::abs(kernels::dot_conj(a.size(), a.data(), b.data()));
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - std::min(1.0, ov))));
}

}  // namespace

EigenpathSample tracked_eigenstate(const HamiltonianPath& path, double r,
                                   const EigenpathSample* previous) {
  if (r < -1e-9 || r > 1 + 1e-9) throw ValidationError("tracked_eigenstate: r outside [0,1]");
  r = std::clamp(r, 0.0, 1.0);

  TrackedVector tv;
  const std::vector<cplx>* prev_amp = nullptr;
  if (previous != nullptr) prev_amp = &previous->state.amplitudes();

  if (path.track() == TrackRule::continuation) {
    if (prev_amp != nullptr) {
      tv = continuation_tracked(path, r, *prev_amp);
      fix_phase_against(*prev_amp, tv.state);
    } else {
      auto walked = continuation_walk(path, r);
      tv = continuation_tracked(path, r, walked);
      fix_phase_against(walked, tv.state);
    }
  } else {
    tv = extremal_tracked(path, r, true);
    if (prev_amp != nullptr) {
      fix_phase_against(*prev_amp, tv.state);
    } else {
      fix_phase_canonical(tv.state);
    }
  }

  EigenpathSample out{r, trusted_state(std::move(tv.state)), tv.eigenvalue, tv.gap, {}};
  return out;
}

double local_gap(const HamiltonianPath& path, double r) {
  if (r < -1e-9 || r > 1 + 1e-9) throw ValidationError("local_gap: r outside [0,1]");
  r = std::clamp(r, 0.0, 1.0);

  const bool bottom = path.track() == TrackRule::extremal_bottom;
  if (path.track() != TrackRule::continuation && path.dim() > kDenseDimLimit) {
    ComplexMatrix m(path.dim());
    path.evaluate_into(r, m);
    EdgeResult edge = lanczos_edge(m, bottom, false);
    if (edge.ok && edge.distinct.size() >= 2) {
      return bottom ? edge.distinct[1] - edge.distinct[0]
                    : edge.distinct[edge.distinct.size() - 1] -
                          edge.distinct[edge.distinct.size() - 2];
    }
  }

  auto w = eigenvalues_of(path.evaluate(r));
  const double tol = 1e-8 * spectrum_scale(w);
  switch (path.track()) {
    case TrackRule::extremal_bottom: {
      const double other = next_distinct_above(w, 0, tol);
      return std::isnan(other) ? 0.0 : other - w.front();
    }
    case TrackRule::extremal_top: {
      const double other = next_distinct_below(w, w.size() - 1, tol);
      return std::isnan(other) ? 0.0 : w.back() - other;
    }
    case TrackRule::continuation: {
      if (auto hint = path.tracked_eigenvalue_hint()) {
        // nearest eigenvalue to the hint is the tracked branch
        double tracked = w.front();
        for (double v : w) {
          if (std::abs(v - *hint) < std::abs(tracked - *hint)) tracked = v;
        }
        if (path.kind() == PathKind::clock) return w.back() - tracked;
        double g = std::numeric_limits<double>::infinity();
        for (double v : w) {
          const double dist = std::abs(v - tracked);
          if (dist > tol) g = std::min(g, dist);
        }
        return std::isinf(g) ? 0.0 : g;
      }
      return tracked_eigenstate(path, r).gap;
    }
  }
  return 0.0;
}

VelocityResult path_velocity(const HamiltonianPath& path, double r,
                             const EigenpathSample* previous) {
  if (r < -1e-9 || r > 1 + 1e-9) throw ValidationError("path_velocity: r outside [0,1]");
  r = std::clamp(r, 0.0, 1.0);
  const int n = path.segment_count();
  const double delta = 1e-5 / n;

  // segment bounds containing r (closed-open; r = 1 belongs to the last)
  const int l = path.segment_of(r);
  const double lo = double(l - 1) / n, hi = double(l) / n;

  const std::vector<cplx>* prev_amp =
      previous != nullptr ? &previous->state.amplitudes() : nullptr;
  std::vector<cplx> center;
  auto state_at = [&](double rr) {
    if (path.track() == TrackRule::continuation) {
      if (center.empty()) {
        center = prev_amp != nullptr ? continuation_tracked(path, r, *prev_amp).state
                                     : tracked_state_only(path, r, nullptr);
      }
      if (rr == r) return center;
      return continuation_tracked(path, rr, center).state;
    }
    return tracked_state_only(path, rr, nullptr);
  };

  VelocityResult out;
  if (r - delta >= lo - 1e-15 && r + delta <= hi + 1e-15 && r - delta >= 0 && r + delta <= 1) {
    const auto pm = state_at(r - delta);
    const auto pp = state_at(r + delta);
    const auto pm2 = state_at(r - delta / 2);
    const auto pp2 = state_at(r + delta / 2);
    const double v_full = fs_distance(pm, pp) / (2 * delta);
    const double v_half = fs_distance(pm2, pp2) / delta;
    out.value = v_half;
    out.fd_warning = std::abs(v_full - v_half) > 1e-4 * std::max(std::abs(v_half), 1e-12);
  } else {
    // one-sided from inside the segment, first-order Richardson
    const double dir = (hi - r > r - lo) ? 1.0 : -1.0;
    const auto p0 = state_at(r);
    const auto p1 = state_at(r + dir * delta);
    const auto p2 = state_at(r + dir * 2 * delta);
    const auto ph = state_at(r + dir * delta / 2);
    const double d1 = fs_distance(p0, p1) / delta;
    const double d2 = fs_distance(p0, p2) / (2 * delta);
    const double dh = fs_distance(p0, ph) / (delta / 2);
    const double v1 = 2 * d1 - d2;   // steps (delta, 2 delta)
    const double v2 = 2 * dh - d1;   // steps (delta/2, delta)
    out.value = v2;
    out.one_sided = true;
    out.fd_warning = std::abs(v1 - v2) > 1e-4 * std::max(std::abs(v2), 1e-12);
  }
  return out;
}

namespace {

// composite Simpson over 2M+1 equally spaced values spanning [a, b]
double simpson(const std::vector<double>& f, double a, double b) {
  const std::size_t n = f.size();  // odd
  const double h = (b - a) / double(n - 1);
  double s = f.front() + f.back();
  for (std::size_t k = 1; k + 1 < n; ++k) s += f[k] * ((k % 2 == 1) ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

PathLengthResult path_length(const HamiltonianPath& path, int resolution) {
  if (resolution < 64) throw ValidationError("path_length: resolution must be >= 64");
  if (resolution % 2 != 0) ++resolution;

  const int segs = path.segment_count();
  std::vector<double> bounds{0.0};
  for (double b : path.breakpoints()) bounds.push_back(b);
  bounds.push_back(1.0);

  EigenpathSample chain;  // continuation state carried across nodes
  bool have_chain = false;

  double total = 0.0, err = 0.0;
  for (int seg = 0; seg + 1 < int(bounds.size()); ++seg) {
    const double a = bounds[seg], b = bounds[seg + 1];
    const int m2 = 2 * resolution;  // fine grid intervals (even)
    std::vector<double> v(m2 + 1);
    for (int k = 0; k <= m2; ++k) {
      const double r = a + (b - a) * double(k) / m2;
      if (path.track() == TrackRule::continuation) {
        EigenpathSample s = tracked_eigenstate(path, r, have_chain ? &chain : nullptr);
        v[k] = path_velocity(path, r, &s).value;
        chain = std::move(s);
        have_chain = true;
      } else {
        v[k] = path_velocity(path, r).value;
      }
    }
    const double fine = simpson(v, a, b);
    std::vector<double> coarse_v;
    for (int k = 0; k <= m2; k += 2) coarse_v.push_back(v[k]);
    const double coarse = simpson(coarse_v, a, b);
    total += fine;
    err += std::abs(fine - coarse) / 15.0;
  }
  (void)segs;
  if (err > 1e-3 * std::max(total, 1e-300)) {
    throw QuadratureError("path_length: quadrature error estimate " + fmt_r(err) +
                          " exceeds 1e-3 of L = " + fmt_r(total) +
                          "; raise the resolution");
  }
  return {total, err};
}

namespace {

template <typename F>
double golden_section_min(F f, double a, double b, int iters) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && (b - a) > 1e-12; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return std::min(fc, fd);
}

}  // namespace

double min_gap(const HamiltonianPath& path, int resolution) {
  if (resolution < 128) resolution = 128;
  std::vector<double> bounds{0.0};
  for (double b : path.breakpoints()) bounds.push_back(b);
  bounds.push_back(1.0);
  const int per_seg = std::max(16, resolution / std::max(1, path.segment_count()));

  double best = std::numeric_limits<double>::infinity();
  for (int seg = 0; seg + 1 < int(bounds.size()); ++seg) {
    const double a = bounds[seg], b = bounds[seg + 1];
    std::vector<double> g(per_seg + 1);
    int argmin = 0;
    for (int k = 0; k <= per_seg; ++k) {
      g[k] = local_gap(path, a + (b - a) * double(k) / per_seg);
      if (g[k] < g[argmin]) argmin = k;
    }
    const double lo = a + (b - a) * double(std::max(0, argmin - 1)) / per_seg;
    const double hi = a + (b - a) * double(std::min(per_seg, argmin + 1)) / per_seg;
    const double refined =
        golden_section_min([&](double r) { return local_gap(path, r); }, lo, hi, 60);
    best = std::min({best, g[argmin], refined});
  }
  return best;
}

double path_length_upper_bound(const HamiltonianPath& path) {
  std::vector<double> bounds{0.0};
  for (double b : path.breakpoints()) bounds.push_back(b);
  bounds.push_back(1.0);
  const int per_seg = std::max(8, 256 / std::max(1, path.segment_count()));
  const double h = 1e-6 / path.segment_count();

  ComplexMatrix ma(path.dim()), mb(path.dim());
  auto deriv_norm = [&](double r, double lo, double hi) {
    double ra = r - h, rb = r + h;
    if (ra < lo) { ra = r; rb = r + h; }
    if (rb > hi) { ra = r - h; rb = r; }
    path.evaluate_into(ra, ma);
    path.evaluate_into(rb, mb);
    const std::size_t nn = path.dim() * path.dim();
    for (std::size_t i = 0; i < nn; ++i) {
      mb.data()[i] = (mb.data()[i] - ma.data()[i]) / (rb - ra);
    }
    return operator_norm(mb);
  };

  double best = 0.0;
  for (int seg = 0; seg + 1 < int(bounds.size()); ++seg) {
    const double a = bounds[seg], b = bounds[seg + 1];
    std::vector<double> f(per_seg + 1);
    int argmax = 0;
    for (int k = 0; k <= per_seg; ++k) {
      f[k] = deriv_norm(a + (b - a) * double(k) / per_seg, a, b);
      if (f[k] > f[argmax]) argmax = k;
    }
    const double lo = a + (b - a) * double(std::max(0, argmax - 1)) / per_seg;
    const double hi = a + (b - a) * double(std::min(per_seg, argmax + 1)) / per_seg;
    const double refined = -golden_section_min(
        [&](double r) { return -deriv_norm(r, a, b); }, lo, hi, 40);
    best = std::max({best, f[argmax], refined});
  }
  return best / min_gap(path, 128);
}

}  // namespace eigenpath
