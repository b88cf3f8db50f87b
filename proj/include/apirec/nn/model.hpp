// SPDX-License-Identifier: Apache-2.0
//
// Gated graph network over the API context graph, a feed-forward token
// network, a joint tanh layer and a softmax classifier.
//
//   x_n(0)   = E_node[label(n)]
//   m_n      = sum over edges (n, u) of W[type, dir] x_u(t-1) + b[type, dir]
//   x_n(t)   = GRU(m_n, x_n(t-1))
//   x_g      = tanh( sum_n sigmoid(i([x_n(T); x_n(0)])) * tanh(j([x_n(T); x_n(0)])) )
//   x_t      = sum over tokens of tanh-MLP(E_tok[token])
//   joint    = tanh(W_joint [x_g; x_t] + b_joint)
//   p        = softmax(W_out joint + b_out)
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "apirec/corpus/corpus.hpp"
#include "apirec/nn/config.hpp"
#include "apirec/nn/tensor.hpp"
#include "apirec/nn/vocab.hpp"

namespace apirec::nn {

/// Message slots: edge type x direction. Slot 2*type receives from the
/// source along an incoming edge, slot 2*type+1 from the target along an
/// outgoing edge.
inline constexpr int kMessageSlots = 8;

class EmptyGraphError : public std::invalid_argument {
 public:
  EmptyGraphError() : std::invalid_argument("graph has no nodes") {}
};

class NonFiniteLossError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set of graphs, bags and targets flattened into index arrays.
struct Batch {
  int graphs = 0;
  std::vector<int> node_label;
  std::vector<int> node_graph;
  std::array<std::vector<int>, kMessageSlots> msg_target;
  std::array<std::vector<int>, kMessageSlots> msg_source;
  std::vector<int> token_id;
  std::vector<int> token_graph;
  std::vector<int> target;  // class index, kUnk when out of vocabulary
};

/// Indices of the named tensors in Network::params().
struct ParamLayout {
  int node_embed = -1;
  std::array<int, kMessageSlots> edge_w{};
  std::array<int, kMessageSlots> edge_b{};
  int gru_w = -1;     // d x 3d, input side of z | r | candidate
  int gru_u_zr = -1;  // d x 2d
  int gru_u_h = -1;   // d x d
  int gru_b = -1;     // 1 x 3d
  int attn_i_w = -1, attn_i_b = -1;
  int attn_j_w = -1, attn_j_b = -1;
  int token_embed = -1;
  std::vector<int> token_w, token_b;
  int joint_w = -1, joint_b = -1;
  int out_w = -1, out_b = -1;
};

template <typename T>
class Network {
 public:
  /// Glorot-uniform matrices, zero biases, drawn from cfg.seed.
  Network(ModelConfig cfg, ModelVocabs vocabs);

  const ModelConfig& config() const { return cfg_; }
  const ModelVocabs& vocabs() const { return vocabs_; }
  const ParamLayout& layout() const { return layout_; }
  std::vector<Matrix<T>>& params() { return params_; }
  const std::vector<Matrix<T>>& params() const { return params_; }
  const std::vector<std::string>& param_names() const { return names_; }
  /// Zero tensors shaped like params().
  std::vector<Matrix<T>> zeros_like() const;

  Batch encode(const std::vector<const TrainingInstance*>& instances) const;
  Batch encode(const std::vector<TrainingInstance>& instances) const;
  /// Single graph and bag without a target.
  Batch encode(const ApiContextGraph& g, const TokenBag& bag) const;

  /// Node states x(0..T) for every node of the batch.
  std::vector<Matrix<T>> propagate(const Batch& b) const;
  /// One row per graph.
  Matrix<T> readout(const std::vector<Matrix<T>>& states, const Batch& b) const;
  /// One row per graph, inference mode.
  Matrix<T> token_vectors(const Batch& b) const;
  /// Class probabilities, one row per graph.
  Matrix<T> classify(const Matrix<T>& xg, const Matrix<T>& xt) const;
  /// Full inference pass.
  Matrix<T> probabilities(const Batch& b) const;

  /// Mean cross-entropy over the batch. With `train`, dropout masks are drawn
  /// from `mask_seed`. When `grads` is given it receives d loss / d param
  /// (accumulated, so callers zero it first).
  T loss(const Batch& b, bool train, std::uint64_t mask_seed, std::vector<Matrix<T>>* grads = nullptr) const;

 private:
  struct Workspace;

  void forward(const Batch& b, bool train, std::uint64_t mask_seed, Workspace& ws) const;
  void backward(const Batch& b, Workspace& ws, std::vector<Matrix<T>>& grads) const;
  int add_param(std::string name, int rows, int cols);

  ModelConfig cfg_;
  ModelVocabs vocabs_;
  ParamLayout layout_;
  std::vector<Matrix<T>> params_;
  std::vector<std::string> names_;
};

extern template class Network<float>;
extern template class Network<double>;

}  // namespace apirec::nn
