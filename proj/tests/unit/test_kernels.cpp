#include <random>
#include <vector>

#include "chtrace/kernels.hpp"
#include "doctest.h"

using chtrace::kernels::cplx;
namespace kn = chtrace::kernels;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = {u(rng), u(rng)};
  return v;
}

double scale_of(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i]) * std::abs(b[i]);
  return s;
}

}  // namespace

TEST_CASE("active table is one of the known variants") {
  const auto& t = kn::active();
  CHECK((t.name == "scalar" || t.name == "avx2"));
}

TEST_CASE("simd kernels agree with the scalar reference") {
  const kn::KernelTable* simd = kn::avx2_table();
  if (simd == nullptr) {
    MESSAGE("AVX2 unavailable on this machine; equivalence test skipped");
    return;
  }
  const kn::KernelTable& ref = kn::scalar_table();
  std::mt19937_64 rng(42);
  for (std::size_t n = 0; n < 70; ++n) {
    CAPTURE(n);
    auto x = random_vec(n, rng);
    auto y = random_vec(n, rng);
    const double tol = 1e-14 * scale_of(x, y);

    CHECK(std::abs(ref.dotc(x.data(), y.data(), n) - simd->dotc(x.data(), y.data(), n)) <= tol);
    CHECK(std::abs(ref.dotu(x.data(), y.data(), n) - simd->dotu(x.data(), y.data(), n)) <= tol);
    CHECK(std::abs(ref.norm2(x.data(), n) - simd->norm2(x.data(), n)) <= tol);

    const cplx alpha{0.3, -1.7};
    auto y1 = y, y2 = y;
    ref.axpy(alpha, x.data(), y1.data(), n);
    simd->axpy(alpha, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-14 * (1 + std::abs(y1[i])));

    auto x1 = x, x2 = x;
    ref.scal(-2.5, x1.data(), n);
    simd->scal(-2.5, x2.data(), n);
    CHECK(x1 == x2);
  }
}

TEST_CASE("dotc is conjugate-linear in its first argument") {
  std::vector<cplx> x{{0, 1}}, y{{2, 0}};
  CHECK(kn::dotc(x, y) == cplx(0, -2));
  CHECK(kn::dotu(x, y) == cplx(0, 2));
}

TEST_CASE("select switches implementations") {
  CHECK(kn::select("scalar"));
  CHECK(kn::active().name == "scalar");
  if (kn::avx2_table() != nullptr) {
    CHECK(kn::select("avx2"));
    CHECK(kn::active().name == "avx2");
  }
  CHECK_FALSE(kn::select("sse9"));
}
