#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Low-level array kernels used by the dense linear algebra layer. Every
// kernel has a scalar reference implementation and (on x86-64) an AVX2+FMA
// variant; the active set is chosen at runtime from cpuid and can be pinned
// through set_backend() or the EIGENPATH_SIMD environment variable
// ("auto", "scalar", "avx2"). Scalar and SIMD variants are equivalence-tested
// against each other.
namespace eigenpath::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_available(Backend b);
void set_backend(Backend b);  // throws std::runtime_error if unavailable
std::string_view backend_name();

struct KernelTable {
  // complex, interleaved re/im
  cplx (*dot_conj)(std::size_t n, const cplx* x, const cplx* y);   // sum conj(x[i]) y[i]
  cplx (*dot_plain)(std::size_t n, const cplx* x, const cplx* y);  // sum x[i] y[i]
  void (*axpy)(std::size_t n, cplx a, const cplx* x, cplx* y);     // y += a x
  void (*scal)(std::size_t n, cplx a, cplx* x);
  double (*norm_sq)(std::size_t n, const cplx* x);
  void (*matvec)(std::size_t n, const cplx* a, const cplx* x, cplx* y);  // y = A x, A row-major n*n
  // real double
  double (*ddot)(std::size_t n, const double* x, const double* y);
  void (*daxpy)(std::size_t n, double a, const double* x, double* y);
  void (*dscal)(std::size_t n, double a, double* x);
  void (*dmatvec)(std::size_t n, const double* a, const double* x, double* y);
};

const KernelTable& table();          // active table
const KernelTable& scalar_table();   // always available, reference semantics

// Convenience forwarders through the active table.
inline cplx dot_conj(std::size_t n, const cplx* x, const cplx* y) { return table().dot_conj(n, x, y); }
inline cplx dot_plain(std::size_t n, const cplx* x, const cplx* y) { return table().dot_plain(n, x, y); }
inline void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) { table().axpy(n, a, x, y); }
inline void scal(std::size_t n, cplx a, cplx* x) { table().scal(n, a, x); }
inline double norm_sq(std::size_t n, const cplx* x) { return table().norm_sq(n, x); }
inline void matvec(std::size_t n, const cplx* a, const cplx* x, cplx* y) { table().matvec(n, a, x, y); }
inline double ddot(std::size_t n, const double* x, const double* y) { return table().ddot(n, x, y); }
inline void daxpy(std::size_t n, double a, const double* x, double* y) { table().daxpy(n, a, x, y); }
inline void dscal(std::size_t n, double a, double* x) { table().dscal(n, a, x); }
inline void dmatvec(std::size_t n, const double* a, const double* x, double* y) { table().dmatvec(n, a, x, y); }

}  // namespace eigenpath::kernels
