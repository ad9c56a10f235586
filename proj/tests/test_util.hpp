#pragma once

#include <complex>
#include <random>
#include <vector>

#include "eigenpath/linalg.hpp"

namespace testutil {

using eigenpath::ComplexMatrix;
using eigenpath::HermitianOperator;
using eigenpath::StateVector;
using eigenpath::cplx;

inline HermitianOperator random_hermitian(std::mt19937_64& rng, std::size_t n,
                                          double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = scale * u(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v{scale * u(rng), scale * u(rng)};
      m.at(i, j) = v;
      m.at(j, i) = std::conj(v);
    }
  }
  return HermitianOperator::trusted(std::move(m));
}

inline StateVector random_state(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx{u(rng), u(rng)};
  return StateVector::normalized(std::move(v));
}

inline StateVector basis_state(std::size_t n, std::size_t k) {
  std::vector<cplx> v(n, cplx{0.0, 0.0});
  v[k] = 1.0;
  return StateVector(std::move(v));
}

inline StateVector uniform_state(std::size_t n) {
  std::vector<cplx> v(n, cplx{1.0, 0.0});
  return StateVector::normalized(std::move(v));
}

// rank-1 projector multiple: c |v><v|
inline ComplexMatrix outer(double c, const std::vector<cplx>& v) {
  ComplexMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      m.at(i, j) = c * v[i] * std::conj(v[j]);
    }
  }
  return m;
}

}  // namespace testutil
