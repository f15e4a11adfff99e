#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace dualitykit::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

/// y[i] += a * x[i]
void axpy(std::size_t n, cplx a, const cplx* x, cplx* y);
/// sum_i conj(x[i]) * y[i]
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
/// max_i |x[i] - y[i]|
double max_abs_diff(std::size_t n, const cplx* x, const cplx* y);

/// Kernel set picked at first use: AVX2+FMA when the CPU has it, scalar
/// otherwise. DUALITYKIT_SIMD=scalar|avx2 overrides (avx2 falls back to
/// scalar on a CPU without it).
Isa active_isa();
std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);

namespace scalar {
void axpy(std::size_t n, cplx a, const cplx* x, cplx* y);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
double max_abs_diff(std::size_t n, const cplx* x, const cplx* y);
}  // namespace scalar

#if defined(DUALITYKIT_HAVE_AVX2_TU)
namespace avx2 {
void axpy(std::size_t n, cplx a, const cplx* x, cplx* y);
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
double max_abs_diff(std::size_t n, const cplx* x, const cplx* y);
}  // namespace avx2
#endif

}  // namespace dualitykit::kernels
