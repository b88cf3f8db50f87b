// SPDX-License-Identifier: Apache-2.0
//
// Dense row-major matrix products used by the network. Every entry point
// accumulates: C += op(A) * op(B).
#pragma once

#include <string_view>

namespace apirec::kernels {

enum class Backend { Scalar, Avx2 };

/// Backend chosen at first use: APIREC_KERNELS=scalar|avx2 if set, otherwise
/// AVX2+FMA when the CPU has it.
Backend active_backend();
void set_backend(Backend b);
bool avx2_available();
std::string_view to_string(Backend b);

namespace scalar {
void gemm_nn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c, int ldc);
void gemm_nn(int m, int n, int k, const double* a, int lda, const double* b, int ldb, double* c, int ldc);
}  // namespace scalar

namespace avx2 {
void gemm_nn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c, int ldc);
void gemm_nn(int m, int n, int k, const double* a, int lda, const double* b, int ldb, double* c, int ldc);
}  // namespace avx2

/// C (m x n) += op(A) (m x k) * op(B) (k x n). With trans_a, A is stored
/// k x m; with trans_b, B is stored n x k.
template <typename T>
void gemm(bool trans_a, bool trans_b, int m, int n, int k, const T* a, int lda, const T* b, int ldb, T* c, int ldc);

}  // namespace apirec::kernels
