#include <cstdlib>
#include <cstring>

#include "dualitykit/kernels.hpp"

namespace dualitykit::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(DUALITYKIT_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa pick() {
  const char* env = std::getenv("DUALITYKIT_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = pick();
  return isa;
}

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
#if defined(DUALITYKIT_HAVE_AVX2_TU)
  if (active_isa() == Isa::avx2) return avx2::axpy(n, a, x, y);
#endif
  scalar::axpy(n, a, x, y);
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
#if defined(DUALITYKIT_HAVE_AVX2_TU)
  if (active_isa() == Isa::avx2) return avx2::dotc(n, x, y);
#endif
  return scalar::dotc(n, x, y);
}

double max_abs_diff(std::size_t n, const cplx* x, const cplx* y) {
#if defined(DUALITYKIT_HAVE_AVX2_TU)
  if (active_isa() == Isa::avx2) return avx2::max_abs_diff(n, x, y);
#endif
  return scalar::max_abs_diff(n, x, y);
}

}  // namespace dualitykit::kernels
