// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <string>
#include <vector>

#include "apirec/nn/kernels.hpp"

namespace apirec::kernels {
namespace {

Backend detect() {
  if (const char* env = std::getenv("APIREC_KERNELS")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && avx2_available()) return Backend::Avx2;
  }
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<int>& backend_slot() {
  static std::atomic<int> slot{static_cast<int>(detect())};
  return slot;
}

template <typename T>
void transpose(int rows, int cols, const T* src, int ld, std::vector<T>& dst) {
  dst.resize(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) dst[static_cast<std::size_t>(j) * rows + i] = src[static_cast<long>(i) * ld + j];
}

template <typename T>
void gemm_nn(int m, int n, int k, const T* a, int lda, const T* b, int ldb, T* c, int ldc) {
  if (m <= 0 || n <= 0 || k <= 0) return;
  if (active_backend() == Backend::Avx2) avx2::gemm_nn(m, n, k, a, lda, b, ldb, c, ldc);
  else scalar::gemm_nn(m, n, k, a, lda, b, ldb, c, ldc);
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return static_cast<Backend>(backend_slot().load(std::memory_order_relaxed)); }

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available()) b = Backend::Scalar;
  backend_slot().store(static_cast<int>(b), std::memory_order_relaxed);
}

std::string_view to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

template <typename T>
void gemm(bool trans_a, bool trans_b, int m, int n, int k, const T* a, int lda, const T* b, int ldb, T* c, int ldc) {
  thread_local std::vector<T> at, bt;
  if (trans_a) {
    transpose(k, m, a, lda, at);
    a = at.data();
    lda = k;
  }
  if (trans_b) {
    transpose(n, k, b, ldb, bt);
    b = bt.data();
    ldb = n;
  }
  gemm_nn(m, n, k, a, lda, b, ldb, c, ldc);
}

template void gemm<float>(bool, bool, int, int, int, const float*, int, const float*, int, float*, int);
template void gemm<double>(bool, bool, int, int, int, const double*, int, const double*, int, double*, int);

}  // namespace apirec::kernels
