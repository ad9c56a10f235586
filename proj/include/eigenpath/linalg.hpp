#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "eigenpath/kernels.hpp"

namespace eigenpath {

using cplx = std::complex<double>;

/// Thrown when a domain invariant fails at an API boundary (bad norm,
/// non-Hermitian input, dimension mismatch, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}
  ComplexMatrix(std::size_t dim, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  cplx& at(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }
  const cplx* row(std::size_t i) const { return a_.data() + i * dim_; }

  ComplexMatrix adjoint() const;
  void set_zero();
  double max_abs() const;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> a_;
};

/// max_ij |H_ij - conj(H_ji)|
double hermiticity_deviation(const ComplexMatrix& m);

/// Normalized pure state of dimension D >= 2. Construction checks the norm
/// (within 1e-10 of 1); use normalized() to rescale arbitrary amplitude data.
class StateVector {
 public:
  static constexpr double kNormTol = 1e-10;

  StateVector() = default;  // empty placeholder (dim 0), assign before use
  explicit StateVector(std::vector<cplx> amplitudes);
  static StateVector normalized(std::vector<cplx> amplitudes);

  std::size_t dim() const { return amp_.size(); }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  const cplx* data() const { return amp_.data(); }
  cplx operator[](std::size_t i) const { return amp_[i]; }

  double norm() const;

 private:
  struct Trusted {};
  StateVector(std::vector<cplx> amplitudes, Trusted) : amp_(std::move(amplitudes)) {}
  std::vector<cplx> amp_;
  friend StateVector trusted_state(std::vector<cplx>);
};

/// Internal: wrap amplitudes known (by construction) to be normalized.
StateVector trusted_state(std::vector<cplx> amplitudes);

/// Hermitian operator (energy units, hbar = 1). Checked constructor rejects
/// matrices whose hermiticity deviation exceeds `tol`; trusted() skips the
/// scan for matrices Hermitian by construction.
class HermitianOperator {
 public:
  static constexpr double kHermTol = 1e-12;

  explicit HermitianOperator(ComplexMatrix m, double tol = kHermTol);
  static HermitianOperator trusted(ComplexMatrix m);

  std::size_t dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  const cplx& at(std::size_t i, std::size_t j) const { return m_.at(i, j); }

 private:
  struct TrustedTag {};
  HermitianOperator(ComplexMatrix m, TrustedTag) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Full spectral decomposition H = V diag(w) V^dagger, eigenvalues ascending,
/// eigenvector j stored as column j of `vectors`.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix vectors;

  std::vector<cplx> eigenvector(std::size_t j) const;
};

SpectralDecomposition eigendecompose(const HermitianOperator& h);

/// Eigenvalues only (ascending); cheaper than the full decomposition.
std::vector<double> eigenvalues_of(const HermitianOperator& h);

/// Eigenpairs with 1-based ascending indices il..iu (e.g. il=iu=1 for the
/// ground pair, il=iu=dim for the top).
struct PartialSpectrum {
  std::vector<double> eigenvalues;
  std::vector<std::vector<cplx>> vectors;
};
PartialSpectrum eigenpairs_range(const HermitianOperator& h, int il, int iu);

/// Largest singular value, via power iteration on A^dagger A (deterministic
/// start, residual-controlled; relative accuracy ~1e-8).
double operator_norm(const ComplexMatrix& a);

/// exp(-i H tau) psi. Spectral route for dim <= 64, Lanczos above
/// (subspace <= 30, residual 1e-12, internal step-splitting fallback).
StateVector propagate(const HermitianOperator& h, double tau, const StateVector& psi);

/// |<psi|chi>|^2
double fidelity(const StateVector& psi, const StateVector& chi);

namespace detail {

double vec_norm(const std::vector<cplx>& v);
void normalize(std::vector<cplx>& v);

/// Reusable buffers for the repeated-exponential hot path.
struct PropagatorWorkspace {
  std::vector<cplx> basis;      // Lanczos vectors, packed
  std::vector<cplx> w;          // scratch vector
  std::vector<double> alpha, beta;
  std::vector<cplx> small_vec;
  std::vector<cplx> coeff;
  std::vector<cplx> eigvecs;    // spectral route
  std::vector<double> eigvals;
};

/// Trusted-core propagation: out = exp(-i H tau) in. `h` must be Hermitian.
void propagate_into(const ComplexMatrix& h, double tau, const cplx* in, cplx* out,
                    PropagatorWorkspace& ws);

}  // namespace detail

}  // namespace eigenpath
