// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include "chtrace/kernels.hpp"

#include <immintrin.h>

namespace chtrace::kernels::detail {
namespace {

// Each __m256d holds two interleaved complex numbers [r0 i0 r1 i1].

inline double hsum_even_minus_odd(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] - t[1]) + (t[2] - t[3]);
}

inline double hsum(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[1]) + (t[2] + t[3]);
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d re0 = _mm256_setzero_pd(), im0 = _mm256_setzero_pd();
  __m256d re1 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a0 = _mm256_loadu_pd(xp + 2 * i);
    __m256d b0 = _mm256_loadu_pd(yp + 2 * i);
    __m256d a1 = _mm256_loadu_pd(xp + 2 * i + 4);
    __m256d b1 = _mm256_loadu_pd(yp + 2 * i + 4);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im0);
    re1 = _mm256_fmadd_pd(a1, b1, re1);
    im1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), im1);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d a0 = _mm256_loadu_pd(xp + 2 * i);
    __m256d b0 = _mm256_loadu_pd(yp + 2 * i);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im0);
  }
  // re lanes hold ar*br, ai*bi; im lanes hold ar*bi, ai*br
  double re = hsum(_mm256_add_pd(re0, re1));
  double im = hsum_even_minus_odd(_mm256_add_pd(im0, im1));
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

cplx dotu_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d re0 = _mm256_setzero_pd(), im0 = _mm256_setzero_pd();
  __m256d re1 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a0 = _mm256_loadu_pd(xp + 2 * i);
    __m256d b0 = _mm256_loadu_pd(yp + 2 * i);
    __m256d a1 = _mm256_loadu_pd(xp + 2 * i + 4);
    __m256d b1 = _mm256_loadu_pd(yp + 2 * i + 4);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im0);
    re1 = _mm256_fmadd_pd(a1, b1, re1);
    im1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), im1);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d a0 = _mm256_loadu_pd(xp + 2 * i);
    __m256d b0 = _mm256_loadu_pd(yp + 2 * i);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im0);
  }
  double re = hsum_even_minus_odd(_mm256_add_pd(re0, re1));
  double im = hsum(_mm256_add_pd(im0, im1));
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  // [-ai, ai, -ai, ai] times swapped x gives the cross terms
  const __m256d ai = _mm256_setr_pd(-alpha.imag(), alpha.imag(), -alpha.imag(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    yv = _mm256_fmadd_pd(ar, xv, yv);
    yv = _mm256_fmadd_pd(ai, _mm256_permute_pd(xv, 0b0101), yv);
    _mm256_storeu_pd(yp + 2 * i, yv);
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + alpha.real() * xr - alpha.imag() * xi,
            y[i].imag() + alpha.real() * xi + alpha.imag() * xr};
  }
}

double norm2_avx2(const cplx* x, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a0 = _mm256_loadu_pd(xp + 2 * i);
    __m256d a1 = _mm256_loadu_pd(xp + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(a0, a0, acc0);
    acc1 = _mm256_fmadd_pd(a1, a1, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d a0 = _mm256_loadu_pd(xp + 2 * i);
    acc0 = _mm256_fmadd_pd(a0, a0, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void scal_avx2(double alpha, cplx* x, std::size_t n) {
  double* xp = reinterpret_cast<double*>(x);
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(xp + 2 * i, _mm256_mul_pd(a, _mm256_loadu_pd(xp + 2 * i)));
  for (; i < n; ++i) x[i] *= alpha;
}

constexpr KernelTable kAvx2{"avx2", dotc_avx2, dotu_avx2, axpy_avx2, norm2_avx2, scal_avx2};

}  // namespace

const KernelTable& avx2_table_impl() noexcept { return kAvx2; }

}  // namespace chtrace::kernels::detail
