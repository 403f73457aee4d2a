#pragma once

// Data-parallel inner loops of the spectral pipeline. Each kernel has a
// portable scalar reference and, on x86-64, an AVX2/FMA variant. The active
// table is picked once at startup from CPUID; DSLAB_SIMD=scalar forces the
// reference path.

#include <complex>
#include <cstddef>

namespace dslab::simd {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;

  /// row[k] *= a + b * ky[k]
  void (*scale_affine)(cplx* row, const double* ky, std::size_t n, cplx a, cplx b);

  /// out[p] = -a0[p] b0[p] + sum_{c >= 1} ac[p] bc[p]   (complex bilinear)
  void (*mink_dot)(cplx* out, const cplx* const* a, const cplx* const* b, int dim, std::size_t n);

  /// y[p] += a[p] * x[p]
  void (*mul_add)(cplx* y, const cplx* a, const cplx* x, std::size_t n);

  /// y[p] += alpha * x[p]
  void (*axpy)(cplx* y, cplx alpha, const cplx* x, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// Selected table; stable for the lifetime of the process.
const KernelTable& active_kernels();

}  // namespace dslab::simd
