// SPDX-License-Identifier: Apache-2.0
// Built with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "apirec/nn/kernels.hpp"

namespace apirec::kernels::avx2 {
namespace {

struct F32 {
  using T = float;
  using V = __m256;
  static constexpr int W = 8;
  static V zero() { return _mm256_setzero_ps(); }
  static V load(const T* p) { return _mm256_loadu_ps(p); }
  static void store(T* p, V v) { _mm256_storeu_ps(p, v); }
  static V broadcast(T x) { return _mm256_set1_ps(x); }
  static V fma(V a, V b, V c) { return _mm256_fmadd_ps(a, b, c); }
};

struct F64 {
  using T = double;
  using V = __m256d;
  static constexpr int W = 4;
  static V zero() { return _mm256_setzero_pd(); }
  static V load(const T* p) { return _mm256_loadu_pd(p); }
  static void store(T* p, V v) { _mm256_storeu_pd(p, v); }
  static V broadcast(T x) { return _mm256_set1_pd(x); }
  static V fma(V a, V b, V c) { return _mm256_fmadd_pd(a, b, c); }
};

// 4 x (2W) register tile of C, accumulated over the full k range.
template <typename S>
inline void tile_4x2(int k, const typename S::T* a, int lda, const typename S::T* b, int ldb, typename S::T* c,
                     int ldc) {
  using V = typename S::V;
  V c00 = S::load(c), c01 = S::load(c + S::W);
  V c10 = S::load(c + ldc), c11 = S::load(c + ldc + S::W);
  V c20 = S::load(c + 2 * ldc), c21 = S::load(c + 2 * ldc + S::W);
  V c30 = S::load(c + 3 * ldc), c31 = S::load(c + 3 * ldc + S::W);
  for (int p = 0; p < k; ++p) {
    const auto* bp = b + static_cast<long>(p) * ldb;
    const V b0 = S::load(bp), b1 = S::load(bp + S::W);
    V x = S::broadcast(a[p]);
    c00 = S::fma(x, b0, c00);
    c01 = S::fma(x, b1, c01);
    x = S::broadcast(a[lda + p]);
    c10 = S::fma(x, b0, c10);
    c11 = S::fma(x, b1, c11);
    x = S::broadcast(a[2 * lda + p]);
    c20 = S::fma(x, b0, c20);
    c21 = S::fma(x, b1, c21);
    x = S::broadcast(a[3 * lda + p]);
    c30 = S::fma(x, b0, c30);
    c31 = S::fma(x, b1, c31);
  }
  S::store(c, c00), S::store(c + S::W, c01);
  S::store(c + ldc, c10), S::store(c + ldc + S::W, c11);
  S::store(c + 2 * ldc, c20), S::store(c + 2 * ldc + S::W, c21);
  S::store(c + 3 * ldc, c30), S::store(c + 3 * ldc + S::W, c31);
}

// One row of C over a single vector of columns.
template <typename S>
inline void tile_1x1(int k, const typename S::T* a, const typename S::T* b, int ldb, typename S::T* c) {
  typename S::V acc = S::load(c);
  for (int p = 0; p < k; ++p) acc = S::fma(S::broadcast(a[p]), S::load(b + static_cast<long>(p) * ldb), acc);
  S::store(c, acc);
}

template <typename S>
void gemm_nn_impl(int m, int n, int k, const typename S::T* a, int lda, const typename S::T* b, int ldb,
                  typename S::T* c, int ldc) {
  constexpr int W = S::W;
  const int n_wide = n - n % (2 * W);
  const int n_vec = n - n % W;
  const int m4 = m - m % 4;
  for (int j = 0; j < n_wide; j += 2 * W) {
    for (int i = 0; i < m4; i += 4)
      tile_4x2<S>(k, a + static_cast<long>(i) * lda, lda, b + j, ldb, c + static_cast<long>(i) * ldc + j, ldc);
    for (int i = m4; i < m; ++i) {
      tile_1x1<S>(k, a + static_cast<long>(i) * lda, b + j, ldb, c + static_cast<long>(i) * ldc + j);
      tile_1x1<S>(k, a + static_cast<long>(i) * lda, b + j + W, ldb, c + static_cast<long>(i) * ldc + j + W);
    }
  }
  for (int j = n_wide; j < n_vec; j += W)
    for (int i = 0; i < m; ++i)
      tile_1x1<S>(k, a + static_cast<long>(i) * lda, b + j, ldb, c + static_cast<long>(i) * ldc + j);
  if (n_vec < n) {
    for (int i = 0; i < m; ++i) {
      const auto* ai = a + static_cast<long>(i) * lda;
      auto* ci = c + static_cast<long>(i) * ldc;
      for (int p = 0; p < k; ++p) {
        const auto* bp = b + static_cast<long>(p) * ldb;
        for (int jj = n_vec; jj < n; ++jj) ci[jj] += ai[p] * bp[jj];
      }
    }
  }
}

}  // namespace

void gemm_nn(int m, int n, int k, const float* a, int lda, const float* b, int ldb, float* c, int ldc) {
  gemm_nn_impl<F32>(m, n, k, a, lda, b, ldb, c, ldc);
}
void gemm_nn(int m, int n, int k, const double* a, int lda, const double* b, int ldb, double* c, int ldc) {
  gemm_nn_impl<F64>(m, n, k, a, lda, b, ldb, c, ldc);
}

}  // namespace apirec::kernels::avx2
