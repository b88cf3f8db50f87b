// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "apirec/nn/tensor.hpp"

namespace apirec::nn {

/// Adam with bias correction.
template <typename T>
class Adam {
 public:
  Adam(const std::vector<Matrix<T>>& params, double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
    for (const auto& p : params) {
      m_.emplace_back(p.rows, p.cols);
      v_.emplace_back(p.rows, p.cols);
    }
  }

  void step(std::vector<Matrix<T>>& params, const std::vector<Matrix<T>>& grads) {
    ++t_;
    const double step = lr_ * std::sqrt(1.0 - std::pow(beta2_, t_)) / (1.0 - std::pow(beta1_, t_));
    const T b1 = static_cast<T>(beta1_), b2 = static_cast<T>(beta2_);
    const T a = static_cast<T>(step), eps = static_cast<T>(eps_);
    for (std::size_t k = 0; k < params.size(); ++k) {
      auto& p = params[k].data;
      const auto& g = grads[k].data;
      auto& m = m_[k].data;
      auto& v = v_[k].data;
      for (std::size_t i = 0; i < p.size(); ++i) {
        m[i] = b1 * m[i] + (T(1) - b1) * g[i];
        v[i] = b2 * v[i] + (T(1) - b2) * g[i] * g[i];
        p[i] -= a * m[i] / (std::sqrt(v[i]) + eps);
      }
    }
  }

  int steps() const { return t_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  int t_ = 0;
  std::vector<Matrix<T>> m_, v_;
};

}  // namespace apirec::nn
