// AVX2+FMA kernel variants. This TU is compiled with -mavx2 -mfma; nothing
// here may run unless cpuid reports both features (checked in kernels.cpp).

#include "eigenpath/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace eigenpath::kernels {
namespace {

inline double reduce_even_odd(__m256d v, double sign_odd) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return lanes[0] + lanes[2] + sign_odd * (lanes[1] + lanes[3]);
}

// Shared core for both complex dot products.
//   acc_a lanes: [xr*yr, xi*yi, ...]   acc_b lanes: [xr*yi, xi*yr, ...]
// dot_plain: re = even(a) - odd(a), im = even(b) + odd(b)
// dot_conj : re = even(a) + odd(a), im = even(b) - odd(b)
template <bool Conj>
cplx v_dot(std::size_t n, const cplx* xc, const cplx* yc) {
  const double* x = reinterpret_cast<const double*>(xc);
  const double* y = reinterpret_cast<const double*>(yc);
  __m256d a0 = _mm256_setzero_pd(), b0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd(), b1 = _mm256_setzero_pd();
  std::size_t i = 0;
  const std::size_t nd = 2 * n;
  for (; i + 8 <= nd; i += 8) {
    __m256d xv0 = _mm256_loadu_pd(x + i);
    __m256d yv0 = _mm256_loadu_pd(y + i);
    __m256d xv1 = _mm256_loadu_pd(x + i + 4);
    __m256d yv1 = _mm256_loadu_pd(y + i + 4);
    a0 = _mm256_fmadd_pd(xv0, yv0, a0);
    b0 = _mm256_fmadd_pd(xv0, _mm256_permute_pd(yv0, 0b0101), b0);
    a1 = _mm256_fmadd_pd(xv1, yv1, a1);
    b1 = _mm256_fmadd_pd(xv1, _mm256_permute_pd(yv1, 0b0101), b1);
  }
  for (; i + 4 <= nd; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d yv = _mm256_loadu_pd(y + i);
    a0 = _mm256_fmadd_pd(xv, yv, a0);
    b0 = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), b0);
  }
  a0 = _mm256_add_pd(a0, a1);
  b0 = _mm256_add_pd(b0, b1);
  double re, im;
  if constexpr (Conj) {
    re = reduce_even_odd(a0, +1.0);
    im = reduce_even_odd(b0, -1.0);
  } else {
    re = reduce_even_odd(a0, -1.0);
    im = reduce_even_odd(b0, +1.0);
  }
  // scalar tail (odd complex count)
  for (; i < nd; i += 2) {
    const double xr = x[i], xi = x[i + 1], yr = y[i], yi = y[i + 1];
    if constexpr (Conj) {
      re += xr * yr + xi * yi;
      im += xr * yi - xi * yr;
    } else {
      re += xr * yr - xi * yi;
      im += xr * yi + xi * yr;
    }
  }
  return {re, im};
}

cplx v_dot_conj(std::size_t n, const cplx* x, const cplx* y) { return v_dot<true>(n, x, y); }
cplx v_dot_plain(std::size_t n, const cplx* x, const cplx* y) { return v_dot<false>(n, x, y); }

void v_axpy(std::size_t n, cplx a, const cplx* xc, cplx* yc) {
  const double* x = reinterpret_cast<const double*>(xc);
  double* y = reinterpret_cast<double*>(yc);
  const double ar = a.real(), ai = a.imag();
  const __m256d arv = _mm256_set1_pd(ar);
  const __m256d aiv = _mm256_set_pd(ai, -ai, ai, -ai);  // lanes [-ai, ai, -ai, ai]
  const std::size_t nd = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= nd; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(arv, xv, yv);
    yv = _mm256_fmadd_pd(aiv, _mm256_permute_pd(xv, 0b0101), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < nd; i += 2) {
    const double xr = x[i], xi = x[i + 1];
    y[i] += ar * xr - ai * xi;
    y[i + 1] += ar * xi + ai * xr;
  }
}

void v_scal(std::size_t n, cplx a, cplx* xc) {
  double* x = reinterpret_cast<double*>(xc);
  const double ar = a.real(), ai = a.imag();
  const __m256d arv = _mm256_set1_pd(ar);
  const __m256d aiv = _mm256_set_pd(ai, -ai, ai, -ai);
  const std::size_t nd = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= nd; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d t = _mm256_mul_pd(arv, xv);
    t = _mm256_fmadd_pd(aiv, _mm256_permute_pd(xv, 0b0101), t);
    _mm256_storeu_pd(x + i, t);
  }
  for (; i < nd; i += 2) {
    const double xr = x[i], xi = x[i + 1];
    x[i] = ar * xr - ai * xi;
    x[i + 1] = ar * xi + ai * xr;
  }
}

double v_norm_sq(std::size_t n, const cplx* xc) {
  const double* x = reinterpret_cast<const double*>(xc);
  const std::size_t nd = 2 * n;
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= nd; i += 8) {
    __m256d v0 = _mm256_loadu_pd(x + i);
    __m256d v1 = _mm256_loadu_pd(x + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 4 <= nd; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc0);
  double acc = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < nd; ++i) acc += x[i] * x[i];
  return acc;
}

void v_matvec(std::size_t n, const cplx* a, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = v_dot<false>(n, a + i * n, x);
  }
}

double v_ddot(std::size_t n, const double* x, const double* y) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc0);
  double acc = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void v_daxpy(std::size_t n, double a, const double* x, double* y) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void v_dscal(std::size_t n, double a, double* x) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) x[i] *= a;
}

void v_dmatvec(std::size_t n, const double* a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = v_ddot(n, a + i * n, x);
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable t{
      v_dot_conj, v_dot_plain, v_axpy, v_scal, v_norm_sq, v_matvec,
      v_ddot, v_daxpy, v_dscal, v_dmatvec,
  };
  return &t;
}

}  // namespace eigenpath::kernels

#else

namespace eigenpath::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace eigenpath::kernels

#endif
