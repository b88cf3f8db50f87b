// SPDX-License-Identifier: Apache-2.0
#include "apirec/nn/kernels.hpp"

namespace apirec::kernels::scalar {
namespace {

template <typename T>
void gemm_nn_impl(int m, int n, int k, const T* a, int lda, const T* b, int ldb, T* c, int ldc) {
  for (int i = 0; i < m; ++i) {
    T* ci = c + static_cast<long>(i) * ldc;
    const T* ai = a + static_cast<long>(i) * lda;
    for (int p = 0; p < k; ++p) {
      const T s = ai[p];
      const T* bp = b + static_cast<long>(p) * ldb;
      for (int j = 0; j < n; ++j) ci[j] += s * bp[j];
    }
  }
}

}  // namespace

void gemm_nn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c, int ldc) {
  gemm_nn_impl(m, n, k, a, lda, b, ldb, c, ldc);
}
void gemm_nn(int m, int n, int k, const double* a, int lda, const double* b, int ldb, double* c, int ldc) {
  gemm_nn_impl(m, n, k, a, lda, b, ldb, c, ldc);
}

}  // namespace apirec::kernels::scalar
