#include "eigenpath/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace eigenpath::kernels {

#if defined(EIGENPATH_HAVE_AVX2_TU)
const KernelTable* avx2_table();  // defined in kernels_avx2.cpp
#else
static const KernelTable* avx2_table() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct Dispatch {
  Backend backend = Backend::scalar;
  const KernelTable* active = nullptr;

  Dispatch() {
    backend = Backend::scalar;
    active = &scalar_table();
    if (avx2_table() != nullptr && cpu_has_avx2_fma()) {
      backend = Backend::avx2;
      active = avx2_table();
    }
    if (const char* env = std::getenv("EIGENPATH_SIMD")) {
      const std::string v(env);
      if (v == "scalar") {
        backend = Backend::scalar;
        active = &scalar_table();
      } else if (v == "avx2" && avx2_table() != nullptr && cpu_has_avx2_fma()) {
        backend = Backend::avx2;
        active = avx2_table();
      }
      // "auto" or anything else keeps the detected default
    }
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

Backend active_backend() { return dispatch().backend; }

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
  return avx2_table() != nullptr && cpu_has_avx2_fma();
}

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::runtime_error("kernel backend not available on this host");
  }
  dispatch().backend = b;
  dispatch().active = (b == Backend::scalar) ? &scalar_table() : avx2_table();
}

std::string_view backend_name() {
  switch (dispatch().backend) {
    case Backend::avx2: return "avx2";
    case Backend::scalar: return "scalar";
  }
  return "scalar";
}

const KernelTable& table() { return *dispatch().active; }

}  // namespace eigenpath::kernels
