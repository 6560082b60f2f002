#pragma once

// Dense complex vector kernels used by the numeric side (image-algebra
// closure, trace-form Gram matrices). Every kernel has a portable scalar
// reference and, on x86-64, an AVX2+FMA variant; the active table is chosen
// once at startup from CPUID. Set CHTRACE_SIMD=scalar to force the reference.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace chtrace::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;
  // sum conj(x[i]) * y[i]
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  // sum x[i] * y[i]
  cplx (*dotu)(const cplx* x, const cplx* y, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // sum |x[i]|^2
  double (*norm2)(const cplx* x, std::size_t n);
  // x[i] *= alpha (real)
  void (*scal)(double alpha, cplx* x, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;
/// The table selected at startup.
const KernelTable& active() noexcept;

/// Override the selection ("scalar" or "avx2"); returns false if unavailable.
bool select(std::string_view name) noexcept;

inline cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  return active().dotc(x.data(), y.data(), x.size());
}
inline cplx dotu(std::span<const cplx> x, std::span<const cplx> y) {
  return active().dotu(x.data(), y.data(), x.size());
}
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double norm2(std::span<const cplx> x) {
  return active().norm2(x.data(), x.size());
}
inline void scal(double alpha, std::span<cplx> x) {
  active().scal(alpha, x.data(), x.size());
}

}  // namespace chtrace::kernels
