// Compiled with -mavx2 -mfma. Two complex doubles per 256-bit lane.

#include <immintrin.h>

#include "dslab/simd.hpp"

namespace dslab::simd {

namespace {

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline __m256d load(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

void scale_affine(cplx* row, const double* ky, std::size_t n, cplx a, cplx b) {
  const __m256d va = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
  const __m256d vb = _mm256_setr_pd(b.real(), b.imag(), b.real(), b.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d kk = _mm256_setr_pd(ky[k], ky[k], ky[k + 1], ky[k + 1]);
    const __m256d m = _mm256_fmadd_pd(vb, kk, va);
    store(row + k, cmul(load(row + k), m));
  }
  for (; k < n; ++k) row[k] *= a + b * ky[k];
}

void mink_dot(cplx* out, const cplx* const* a, const cplx* const* b, int dim, std::size_t n) {
  std::size_t p = 0;
  const __m256d neg = _mm256_set1_pd(-1.0);
  for (; p + 2 <= n; p += 2) {
    __m256d acc = _mm256_mul_pd(neg, cmul(load(a[0] + p), load(b[0] + p)));
    for (int c = 1; c < dim; ++c) acc = _mm256_add_pd(acc, cmul(load(a[c] + p), load(b[c] + p)));
    store(out + p, acc);
  }
  for (; p < n; ++p) {
    cplx s = -a[0][p] * b[0][p];
    for (int c = 1; c < dim; ++c) s += a[c][p] * b[c][p];
    out[p] = s;
  }
}

void mul_add(cplx* y, const cplx* a, const cplx* x, std::size_t n) {
  std::size_t p = 0;
  for (; p + 2 <= n; p += 2) store(y + p, _mm256_add_pd(load(y + p), cmul(load(a + p), load(x + p))));
  for (; p < n; ++p) y[p] += a[p] * x[p];
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t p = 0;
  for (; p + 2 <= n; p += 2) store(y + p, _mm256_add_pd(load(y + p), cmul(va, load(x + p))));
  for (; p < n; ++p) y[p] += alpha * x[p];
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2", scale_affine, mink_dot, mul_add, axpy};
  return table;
}

}  // namespace dslab::simd
