#include "eigenpath/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace eigenpath {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), a_(std::move(entries)) {
  if (a_.size() != dim_ * dim_) {
    throw ValidationError("matrix entry count does not match dimension");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      m.at(j, i) = std::conj(at(i, j));
    }
  }
  return m;
}

void ComplexMatrix::set_zero() { std::fill(a_.begin(), a_.end(), cplx{0.0, 0.0}); }

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : a_) m = std::max(m, std::abs(v));
  return m;
}

double hermiticity_deviation(const ComplexMatrix& m) {
  double dev = 0.0;
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      dev = std::max(dev, std::abs(m.at(i, j) - std::conj(m.at(j, i))));
    }
  }
  return dev;
}

StateVector::StateVector(std::vector<cplx> amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() < 2) throw ValidationError("state dimension must be >= 2");
  const double n = detail::vec_norm(amp_);
  if (std::abs(n - 1.0) > kNormTol) {
    throw ValidationError("state norm deviates from 1 by " + fmt(std::abs(n - 1.0)));
  }
}

StateVector StateVector::normalized(std::vector<cplx> amplitudes) {
  if (amplitudes.size() < 2) throw ValidationError("state dimension must be >= 2");
  const double n = detail::vec_norm(amplitudes);
  if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
  kernels::scal(amplitudes.size(), cplx{1.0 / n, 0.0}, amplitudes.data());
  return trusted_state(std::move(amplitudes));
}

double StateVector::norm() const { return detail::vec_norm(amp_); }

StateVector trusted_state(std::vector<cplx> amplitudes) {
  return StateVector(std::move(amplitudes), StateVector::Trusted{});
}

HermitianOperator::HermitianOperator(ComplexMatrix m, double tol) : m_(std::move(m)) {
  const double dev = hermiticity_deviation(m_);
  if (dev > tol) {
    throw ValidationError("operator is not Hermitian: max |H - H^dagger| entry = " + fmt(dev));
  }
}

HermitianOperator HermitianOperator::trusted(ComplexMatrix m) {
  return HermitianOperator(std::move(m), TrustedTag{});
}

std::vector<cplx> SpectralDecomposition::eigenvector(std::size_t j) const {
  const std::size_t n = vectors.dim();
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = vectors.at(i, j);
  return v;
}

SpectralDecomposition eigendecompose(const HermitianOperator& h) {
  const std::size_t n = h.dim();
  SpectralDecomposition out;
  out.vectors = h.matrix();  // zheevd overwrites with eigenvectors (column j = vec j)
  out.eigenvalues.resize(n);
  const lapack_int info = LAPACKE_zheevd(
      LAPACK_ROW_MAJOR, 'V', 'U', static_cast<lapack_int>(n), out.vectors.data(),
      static_cast<lapack_int>(n), out.eigenvalues.data());
  if (info != 0) {
    throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
  }
  return out;
}

std::vector<double> eigenvalues_of(const HermitianOperator& h) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h.matrix();
  std::vector<double> w(n);
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'N', 'U', static_cast<lapack_int>(n), a.data(),
                     static_cast<lapack_int>(n), w.data());
  if (info != 0) {
    throw std::runtime_error("zheevd(N) failed, info=" + std::to_string(info));
  }
  return w;
}

PartialSpectrum eigenpairs_range(const HermitianOperator& h, int il, int iu) {
  const std::size_t n = h.dim();
  if (il < 1 || iu > static_cast<int>(n) || il > iu) {
    throw ValidationError("eigenpair index range out of bounds");
  }
  const int m_req = iu - il + 1;
  ComplexMatrix a = h.matrix();
  std::vector<double> w(n);
  std::vector<cplx> z(n * m_req);
  std::vector<lapack_int> isuppz(2 * std::max(1, m_req));
  lapack_int m_found = 0;
  const lapack_int info = LAPACKE_zheevr(
      LAPACK_ROW_MAJOR, 'V', 'I', 'U', static_cast<lapack_int>(n), a.data(),
      static_cast<lapack_int>(n), 0.0, 0.0, il, iu, 0.0, &m_found, w.data(), z.data(),
      m_req, isuppz.data());
  if (info != 0 || m_found != m_req) {
    throw std::runtime_error("zheevr failed, info=" + std::to_string(info));
  }
  PartialSpectrum out;
  out.eigenvalues.assign(w.begin(), w.begin() + m_req);
  out.vectors.resize(m_req);
  for (int j = 0; j < m_req; ++j) {
    out.vectors[j].resize(n);
    for (std::size_t i = 0; i < n; ++i) out.vectors[j][i] = z[i * m_req + j];
  }
  return out;
}

double operator_norm(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  if (n == 0) throw ValidationError("operator_norm of empty matrix");
  for (std::size_t i = 0; i < n * n; ++i) {
    if (!std::isfinite(a.data()[i].real()) || !std::isfinite(a.data()[i].imag())) {
      throw ValidationError("operator_norm: non-finite entry");
    }
  }

  const ComplexMatrix b = a.adjoint();
  std::vector<cplx> v(n, cplx{1.0 / std::sqrt(double(n)), 0.0});
  std::vector<cplx> w(n), u(n);

  // Deterministic fallback seeds in case the uniform vector sits in ker(A).
  kernels::matvec(n, a.data(), v.data(), w.data());
  std::size_t seed = 0;
  while (kernels::norm_sq(n, w.data()) < 1e-300 && seed < n) {
    std::fill(v.begin(), v.end(), cplx{0.0, 0.0});
    v[seed] = 1.0;
    kernels::matvec(n, a.data(), v.data(), w.data());
    ++seed;
  }
  if (kernels::norm_sq(n, w.data()) < 1e-300) return 0.0;

  double mu = 0.0;
  for (int iter = 0; iter < 50000; ++iter) {
    kernels::matvec(n, a.data(), v.data(), w.data());
    kernels::matvec(n, b.data(), w.data(), u.data());  // u = A^dagger A v
    mu = kernels::norm_sq(n, w.data());                // Rayleigh quotient, ||v|| = 1
    // residual ||u - mu v||
    double res_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx d = u[i] - mu * v[i];
      res_sq += std::norm(d);
    }
    if (std::sqrt(res_sq) <= 1e-9 * std::max(mu, 1e-300)) break;
    const double un = std::sqrt(kernels::norm_sq(n, u.data()));
    if (un < 1e-300) break;
    kernels::scal(n, cplx{1.0 / un, 0.0}, u.data());
    std::swap(v, u);
  }
  return std::sqrt(mu);
}

double fidelity(const StateVector& psi, const StateVector& chi) {
  if (psi.dim() != chi.dim()) {
    throw ValidationError("fidelity: dimension mismatch " + std::to_string(psi.dim()) +
                          " vs " + std::to_string(chi.dim()));
  }
  return std::norm(kernels::dot_conj(psi.dim(), psi.data(), chi.data()));
}

namespace detail {

double vec_norm(const std::vector<cplx>& v) {
  return std::sqrt(kernels::norm_sq(v.size(), v.data()));
}

void normalize(std::vector<cplx>& v) {
  const double n = vec_norm(v);
  if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
  kernels::scal(v.size(), cplx{1.0 / n, 0.0}, v.data());
}

namespace {

// Lanczos beats a fresh zheevd per step well below dim 64: the Krylov degree
// needed at dt ||H|| <= 0.1 stays under ~10 regardless of dimension.
constexpr std::size_t kSpectralDimLimit = 16;
constexpr int kLanczosMax = 30;
constexpr double kLanczosTol = 1e-12;

// exp(-i tau T) e_1 for the real symmetric tridiagonal T given by
// alpha[0..k-1], beta[0..k-2]; result is a complex k-vector.
void tridiag_exp_e1(int k, const double* alpha, const double* beta, double tau,
                    std::vector<cplx>& y) {
  std::vector<double> d(alpha, alpha + k);
  std::vector<double> e(std::max(1, k - 1), 0.0);
  for (int i = 0; i + 1 < k; ++i) e[i] = beta[i];
  std::vector<double> z(std::size_t(k) * k, 0.0);
  for (int i = 0; i < k; ++i) z[std::size_t(i) * k + i] = 1.0;
  const lapack_int info =
      LAPACKE_dsteqr(LAPACK_ROW_MAJOR, 'I', k, d.data(), e.data(), z.data(), k);
  if (info != 0) {
    throw std::runtime_error("dsteqr failed, info=" + std::to_string(info));
  }
  y.assign(k, cplx{0.0, 0.0});
  for (int j = 0; j < k; ++j) {
    const cplx phase = std::exp(cplx{0.0, -tau * d[j]});
    const double zj0 = z[std::size_t(0) * k + j];  // <e_1 | v_j>
    for (int i = 0; i < k; ++i) {
      y[i] += z[std::size_t(i) * k + j] * phase * zj0;
    }
  }
}

void propagate_spectral(const ComplexMatrix& h, double tau, const cplx* in, cplx* out,
                        PropagatorWorkspace& ws) {
  const std::size_t n = h.dim();
  ws.eigvecs.assign(h.data(), h.data() + n * n);
  ws.eigvals.resize(n);
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', static_cast<lapack_int>(n),
                     ws.eigvecs.data(), static_cast<lapack_int>(n), ws.eigvals.data());
  if (info != 0) {
    throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
  }
  ws.coeff.assign(n, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    const cplx vi = in[i];
    const cplx* vrow = ws.eigvecs.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      ws.coeff[j] += std::conj(vrow[j]) * vi;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    ws.coeff[j] *= std::exp(cplx{0.0, -tau * ws.eigvals[j]});
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = kernels::dot_plain(n, ws.eigvecs.data() + i * n, ws.coeff.data());
  }
}

bool propagate_lanczos_once(const ComplexMatrix& h, double tau, const cplx* in, cplx* out,
                            PropagatorWorkspace& ws) {
  const std::size_t n = h.dim();
  const double beta0 = std::sqrt(kernels::norm_sq(n, in));
  if (beta0 == 0.0) throw ValidationError("propagate: zero input state");

  ws.basis.resize(std::size_t(kLanczosMax + 1) * n);
  ws.w.resize(n);
  ws.alpha.assign(kLanczosMax, 0.0);
  ws.beta.assign(kLanczosMax, 0.0);

  cplx* v0 = ws.basis.data();
  for (std::size_t i = 0; i < n; ++i) v0[i] = in[i] / beta0;

  int k = 0;
  bool converged = false;
  for (int j = 0; j < kLanczosMax; ++j) {
    const cplx* vj = ws.basis.data() + std::size_t(j) * n;
    kernels::matvec(n, h.data(), vj, ws.w.data());
    ws.alpha[j] = kernels::dot_conj(n, vj, ws.w.data()).real();
    kernels::axpy(n, cplx{-ws.alpha[j], 0.0}, vj, ws.w.data());
    if (j > 0) {
      kernels::axpy(n, cplx{-ws.beta[j - 1], 0.0}, ws.basis.data() + std::size_t(j - 1) * n,
                    ws.w.data());
    }
    // full reorthogonalization; m <= 30 keeps this cheap
    for (int p = 0; p <= j; ++p) {
      const cplx* vp = ws.basis.data() + std::size_t(p) * n;
      const cplx c = kernels::dot_conj(n, vp, ws.w.data());
      kernels::axpy(n, -c, vp, ws.w.data());
    }
    const double bj = std::sqrt(kernels::norm_sq(n, ws.w.data()));
    ws.beta[j] = bj;
    k = j + 1;

    tridiag_exp_e1(k, ws.alpha.data(), ws.beta.data(), tau, ws.small_vec);
    if (bj < 1e-13 * std::max(1.0, std::abs(ws.alpha[j]))) {
      converged = true;  // invariant subspace: expansion is exact
      break;
    }
    const double resid = bj * std::abs(ws.small_vec[k - 1]) * std::abs(tau);
    if (resid <= kLanczosTol) {
      converged = true;
      break;
    }
    cplx* vnext = ws.basis.data() + std::size_t(j + 1) * n;
    for (std::size_t i = 0; i < n; ++i) vnext[i] = ws.w[i] / bj;
  }
  if (!converged) return false;

  std::fill(out, out + n, cplx{0.0, 0.0});
  for (int p = 0; p < k; ++p) {
    kernels::axpy(n, beta0 * ws.small_vec[p], ws.basis.data() + std::size_t(p) * n, out);
  }
  return true;
}

void propagate_lanczos(const ComplexMatrix& h, double tau, const cplx* in, cplx* out,
                       PropagatorWorkspace& ws, int depth) {
  if (propagate_lanczos_once(h, tau, in, out, ws)) return;
  if (depth > 24) {
    throw std::runtime_error("Lanczos propagator failed to converge after step splitting");
  }
  const std::size_t n = h.dim();
  std::vector<cplx> mid(n);
  propagate_lanczos(h, tau / 2, in, mid.data(), ws, depth + 1);
  propagate_lanczos(h, tau / 2, mid.data(), out, ws, depth + 1);
}

}  // namespace

void propagate_into(const ComplexMatrix& h, double tau, const cplx* in, cplx* out,
                    PropagatorWorkspace& ws) {
  if (tau == 0.0) {
    std::copy(in, in + h.dim(), out);
    return;
  }
  if (h.dim() <= kSpectralDimLimit) {
    propagate_spectral(h, tau, in, out, ws);
  } else {
    propagate_lanczos(h, tau, in, out, ws, 0);
  }
}

}  // namespace detail

StateVector propagate(const HermitianOperator& h, double tau, const StateVector& psi) {
  if (tau < 0.0) throw ValidationError("propagate: tau must be >= 0");
  if (h.dim() != psi.dim()) throw ValidationError("propagate: dimension mismatch");
  std::vector<cplx> out(psi.dim());
  detail::PropagatorWorkspace ws;
  detail::propagate_into(h.matrix(), tau, psi.data(), out.data(), ws);
  return trusted_state(std::move(out));
}

}  // namespace eigenpath
