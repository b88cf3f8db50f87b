// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "apirec/nn/kernels.hpp"

namespace apirec::nn {

/// Dense row-major matrix. Vectors are 1 x n.
template <typename T>
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, T(0)) {}

  T* row(int i) { return data.data() + static_cast<std::size_t>(i) * cols; }
  const T* row(int i) const { return data.data() + static_cast<std::size_t>(i) * cols; }
  T& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  T operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
  std::size_t size() const { return data.size(); }

  void reset(int r, int c) {
    rows = r;
    cols = c;
    data.assign(static_cast<std::size_t>(r) * c, T(0));
  }
  void zero() { std::fill(data.begin(), data.end(), T(0)); }

  bool operator==(const Matrix&) const = default;
};

/// C += op(A) * op(B) on whole matrices.
template <typename T>
void gemm(bool ta, bool tb, const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c) {
  const int m = ta ? a.cols : a.rows;
  const int k = ta ? a.rows : a.cols;
  const int n = tb ? b.rows : b.cols;
  kernels::gemm(ta, tb, m, n, k, a.data.data(), a.cols, b.data.data(), b.cols, c.data.data(), c.cols);
}

}  // namespace apirec::nn
