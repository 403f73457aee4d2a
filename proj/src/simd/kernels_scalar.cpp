#include "dslab/simd.hpp"

namespace dslab::simd {

namespace {

void scale_affine(cplx* row, const double* ky, std::size_t n, cplx a, cplx b) {
  for (std::size_t k = 0; k < n; ++k) row[k] *= a + b * ky[k];
}

void mink_dot(cplx* out, const cplx* const* a, const cplx* const* b, int dim, std::size_t n) {
  for (std::size_t p = 0; p < n; ++p) out[p] = -a[0][p] * b[0][p];
  for (int c = 1; c < dim; ++c) {
    const cplx* ac = a[c];
    const cplx* bc = b[c];
    for (std::size_t p = 0; p < n; ++p) out[p] += ac[p] * bc[p];
  }
}

void mul_add(cplx* y, const cplx* a, const cplx* x, std::size_t n) {
  for (std::size_t p = 0; p < n; ++p) y[p] += a[p] * x[p];
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  for (std::size_t p = 0; p < n; ++p) y[p] += alpha * x[p];
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", scale_affine, mink_dot, mul_add, axpy};
  return table;
}

}  // namespace dslab::simd
