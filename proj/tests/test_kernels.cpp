#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "eigenpath/kernels.hpp"

using namespace eigenpath;
using kernels::cplx;

namespace {

std::vector<cplx> random_cvec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx{u(rng), u(rng)};
  return v;
}

std::vector<double> random_dvec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("scalar complex kernels match hand results") {
  const auto& t = kernels::scalar_table();
  std::vector<cplx> x = {{1, 2}, {3, -1}};
  std::vector<cplx> y = {{0, 1}, {2, 2}};
  // conj(x).y = (1-2i)(i) + (3+i)(2+2i) = (2+i) + (4+8i) = 6+9i
  CHECK(close(t.dot_conj(2, x.data(), y.data()), cplx{6, 9}, 1e-14));
  // x.y = (1+2i)(i) + (3-i)(2+2i) = (-2+i) + (8+4i) = 6+5i
  CHECK(close(t.dot_plain(2, x.data(), y.data()), cplx{6, 5}, 1e-14));
  CHECK(t.norm_sq(2, x.data()) == doctest::Approx(1 + 4 + 9 + 1));

  std::vector<cplx> z = y;
  t.axpy(2, cplx{2, -1}, x.data(), z.data());
  CHECK(close(z[0], y[0] + cplx{2, -1} * x[0], 1e-14));
  CHECK(close(z[1], y[1] + cplx{2, -1} * x[1], 1e-14));
}

TEST_CASE("simd kernels agree with scalar reference") {
  if (kernels::active_backend() == kernels::Backend::scalar) {
    MESSAGE("no SIMD backend on this host; dispatch equivalence trivially holds");
    return;
  }
  const auto& simd = kernels::table();
  const auto& ref = kernels::scalar_table();
  std::mt19937_64 rng(12345);

  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 8u, 13u, 64u, 257u}) {
    auto x = random_cvec(rng, n);
    auto y = random_cvec(rng, n);
    const double scale = double(n);

    CHECK(close(simd.dot_conj(n, x.data(), y.data()), ref.dot_conj(n, x.data(), y.data()),
                1e-13 * scale));
    CHECK(close(simd.dot_plain(n, x.data(), y.data()), ref.dot_plain(n, x.data(), y.data()),
                1e-13 * scale));
    CHECK(simd.norm_sq(n, x.data()) ==
          doctest::Approx(ref.norm_sq(n, x.data())).epsilon(1e-13));

    auto y1 = y, y2 = y;
    const cplx a{0.7, -0.3};
    simd.axpy(n, a, x.data(), y1.data());
    ref.axpy(n, a, x.data(), y2.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(close(y1[i], y2[i], 1e-13));

    auto x1 = x, x2 = x;
    simd.scal(n, a, x1.data());
    ref.scal(n, a, x2.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(close(x1[i], x2[i], 1e-13));

    auto m = random_cvec(rng, n * n);
    std::vector<cplx> r1(n), r2(n);
    simd.matvec(n, m.data(), x.data(), r1.data());
    ref.matvec(n, m.data(), x.data(), r2.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(close(r1[i], r2[i], 1e-12 * scale));

    auto dx = random_dvec(rng, n);
    auto dy = random_dvec(rng, n);
    CHECK(simd.ddot(n, dx.data(), dy.data()) ==
          doctest::Approx(ref.ddot(n, dx.data(), dy.data())).epsilon(1e-13));
    auto dm = random_dvec(rng, n * n);
    std::vector<double> dr1(n), dr2(n);
    simd.dmatvec(n, dm.data(), dx.data(), dr1.data());
    ref.dmatvec(n, dm.data(), dx.data(), dr2.data());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(dr1[i] == doctest::Approx(dr2[i]).epsilon(1e-12));
    }

    auto dy1 = dy, dy2 = dy;
    simd.daxpy(n, 0.9, dx.data(), dy1.data());
    ref.daxpy(n, 0.9, dx.data(), dy2.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(dy1[i] == doctest::Approx(dy2[i]));
  }
}

TEST_CASE("dot_conj of a vector with itself equals norm_sq") {
  std::mt19937_64 rng(99);
  for (std::size_t n : {2u, 17u, 100u}) {
    auto x = random_cvec(rng, n);
    const cplx d = kernels::dot_conj(n, x.data(), x.data());
    CHECK(d.real() == doctest::Approx(kernels::norm_sq(n, x.data())).epsilon(1e-13));
    CHECK(std::abs(d.imag()) <= 1e-13 * n);
  }
}

TEST_CASE("backend switching round-trips") {
  const auto original = kernels::active_backend();
  kernels::set_backend(kernels::Backend::scalar);
  CHECK(kernels::active_backend() == kernels::Backend::scalar);
  CHECK(kernels::backend_name() == "scalar");
  if (kernels::backend_available(kernels::Backend::avx2)) {
    kernels::set_backend(kernels::Backend::avx2);
    CHECK(kernels::backend_name() == "avx2");
  }
  kernels::set_backend(original);
}
