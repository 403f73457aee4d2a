#include <doctest.h>

#include <random>
#include <vector>

#include "dslab/simd.hpp"

using namespace dslab::simd;

namespace {

std::vector<cplx> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

// Relative to the largest entry; FMA contraction changes the last bits.
double diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0, s = 1e-300;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i])), s = std::max(s, std::abs(a[i]));
  return m / s;
}

}  // namespace

TEST_CASE("scalar and AVX2 kernels agree") {
  const KernelTable* fast = avx2_kernels();
  if (!fast) {
    MESSAGE("AVX2 unavailable; only the scalar path is exercised");
    return;
  }
  const KernelTable& ref = scalar_kernels();
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 2u, 3u, 7u, 64u, 1025u}) {
    CAPTURE(n);
    const auto x = random_vec(rng, n), a = random_vec(rng, n), y0 = random_vec(rng, n);
    std::vector<double> ky(n);
    for (std::size_t i = 0; i < n; ++i) ky[i] = double(i) - double(n) / 2;

    auto r1 = y0, r2 = y0;
    ref.scale_affine(r1.data(), ky.data(), n, {0.5, -1}, {0.25, 2});
    fast->scale_affine(r2.data(), ky.data(), n, {0.5, -1}, {0.25, 2});
    CHECK(diff(r1, r2) < 1e-15);

    r1 = y0, r2 = y0;
    ref.mul_add(r1.data(), a.data(), x.data(), n);
    fast->mul_add(r2.data(), a.data(), x.data(), n);
    CHECK(diff(r1, r2) < 1e-15);

    r1 = y0, r2 = y0;
    ref.axpy(r1.data(), {-0.3, 1.7}, x.data(), n);
    fast->axpy(r2.data(), {-0.3, 1.7}, x.data(), n);
    CHECK(diff(r1, r2) < 1e-15);

    for (int dim : {5, 6}) {
      std::vector<std::vector<cplx>> av, bv;
      std::vector<const cplx*> ap, bp;
      for (int c = 0; c < dim; ++c) {
        av.push_back(random_vec(rng, n));
        bv.push_back(random_vec(rng, n));
      }
      for (int c = 0; c < dim; ++c) ap.push_back(av[c].data()), bp.push_back(bv[c].data());
      std::vector<cplx> o1(n), o2(n);
      ref.mink_dot(o1.data(), ap.data(), bp.data(), dim, n);
      fast->mink_dot(o2.data(), ap.data(), bp.data(), dim, n);
      CHECK(diff(o1, o2) < 1e-14);
      cplx expect = -av[0][0] * bv[0][0];
      for (int c = 1; c < dim; ++c) expect += av[c][0] * bv[c][0];
      CHECK(std::abs(o1[0] - expect) < 1e-13);
    }
  }
}

TEST_CASE("active table is stable") {
  CHECK(&active_kernels() == &active_kernels());
  CHECK(active_kernels().name != nullptr);
}
