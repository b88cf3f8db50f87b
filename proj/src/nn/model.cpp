// SPDX-License-Identifier: Apache-2.0
#include "apirec/nn/model.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace apirec::nn {
namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename T>
T sigmoid(T x) {
  return T(1) / (T(1) + std::exp(-x));
}

template <typename T>
Matrix<T> gather(const Matrix<T>& src, const std::vector<int>& idx) {
  Matrix<T> out(static_cast<int>(idx.size()), src.cols);
  for (std::size_t i = 0; i < idx.size(); ++i) std::copy_n(src.row(idx[i]), src.cols, out.row(static_cast<int>(i)));
  return out;
}

template <typename T>
void scatter_add(Matrix<T>& dst, const std::vector<int>& idx, const Matrix<T>& rows) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    T* d = dst.row(idx[i]);
    const T* s = rows.row(static_cast<int>(i));
    for (int j = 0; j < dst.cols; ++j) d[j] += s[j];
  }
}

template <typename T>
void add_bias(Matrix<T>& m, const Matrix<T>& bias) {
  for (int i = 0; i < m.rows; ++i) {
    T* r = m.row(i);
    for (int j = 0; j < m.cols; ++j) r[j] += bias.data[j];
  }
}

template <typename T>
void add_column_sums(const Matrix<T>& m, Matrix<T>& out) {
  for (int i = 0; i < m.rows; ++i) {
    const T* r = m.row(i);
    for (int j = 0; j < m.cols; ++j) out.data[j] += r[j];
  }
}

template <typename T>
Matrix<T> dropout_mask(int rows, int cols, double keep, std::mt19937_64& rng) {
  Matrix<T> mask(rows, cols);
  const T scale = static_cast<T>(1.0 / keep);
  for (auto& v : mask.data) v = unit_uniform(rng) < keep ? scale : T(0);
  return mask;
}

template <typename T>
void multiply(Matrix<T>& m, const Matrix<T>& mask) {
  for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] *= mask.data[i];
}

}  // namespace

template <typename T>
struct Network<T>::Workspace {
  bool train = false;
  std::vector<Matrix<T>> H;  // x(0..T)
  std::vector<Matrix<T>> M, Z, R, RH, HC;
  Matrix<T> Zcat, G, V, XG;
  std::vector<Matrix<T>> E;  // token activations after dropout, E[0] = embeddings
  std::vector<Matrix<T>> A;  // tanh outputs before dropout
  std::vector<Matrix<T>> tok_mask;
  Matrix<T> XT, Q, J0, J, joint_mask, P;
  std::vector<double> target_logp;
};

template <typename T>
int Network<T>::add_param(std::string name, int rows, int cols) {
  params_.emplace_back(rows, cols);
  names_.push_back(std::move(name));
  return static_cast<int>(params_.size()) - 1;
}

template <typename T>
Network<T>::Network(ModelConfig cfg, ModelVocabs vocabs) : cfg_(std::move(cfg)), vocabs_(std::move(vocabs)) {
  validate(cfg_);
  const int d = cfg_.embedding_size;
  const int h = cfg_.hidden_size;
  const int xt = cfg_.hidden_layers > 0 ? h : d;
  static const char* kSlotNames[kMessageSlots] = {"c_in", "c_out", "d_in", "d_out", "cd_in", "cd_out", "s_in", "s_out"};

  layout_.node_embed = add_param("node_embed", vocabs_.node_labels.size(), d);
  for (int s = 0; s < kMessageSlots; ++s) {
    layout_.edge_w[s] = add_param(std::string("edge_w_") + kSlotNames[s], d, d);
    layout_.edge_b[s] = add_param(std::string("edge_b_") + kSlotNames[s], 1, d);
  }
  layout_.gru_w = add_param("gru_w", d, 3 * d);
  layout_.gru_u_zr = add_param("gru_u_zr", d, 2 * d);
  layout_.gru_u_h = add_param("gru_u_h", d, d);
  layout_.gru_b = add_param("gru_b", 1, 3 * d);
  layout_.attn_i_w = add_param("attn_i_w", 2 * d, d);
  layout_.attn_i_b = add_param("attn_i_b", 1, d);
  layout_.attn_j_w = add_param("attn_j_w", 2 * d, d);
  layout_.attn_j_b = add_param("attn_j_b", 1, d);
  layout_.token_embed = add_param("token_embed", vocabs_.tokens.size(), d);
  for (int l = 0; l < cfg_.hidden_layers; ++l) {
    layout_.token_w.push_back(add_param("token_w" + std::to_string(l), l == 0 ? d : h, h));
    layout_.token_b.push_back(add_param("token_b" + std::to_string(l), 1, h));
  }
  layout_.joint_w = add_param("joint_w", d + xt, d);
  layout_.joint_b = add_param("joint_b", 1, d);
  layout_.out_w = add_param("out_w", d, vocabs_.classes.size());
  layout_.out_b = add_param("out_b", 1, vocabs_.classes.size());

  std::mt19937_64 rng(cfg_.seed);
  for (auto& p : params_) {
    if (p.rows == 1) continue;  // biases start at zero
    const double limit = std::sqrt(6.0 / (p.rows + p.cols));
    for (auto& v : p.data) v = static_cast<T>((2.0 * unit_uniform(rng) - 1.0) * limit);
  }
}

template <typename T>
std::vector<Matrix<T>> Network<T>::zeros_like() const {
  std::vector<Matrix<T>> out;
  out.reserve(params_.size());
  for (const auto& p : params_) out.emplace_back(p.rows, p.cols);
  return out;
}

template <typename T>
Batch Network<T>::encode(const std::vector<const TrainingInstance*>& instances) const {
  Batch b;
  for (const TrainingInstance* inst : instances) {
    const int g = b.graphs++;
    const int base = static_cast<int>(b.node_label.size());
    for (const auto& n : inst->graph.nodes) {
      b.node_label.push_back(vocabs_.node_labels.lookup(n.label));
      b.node_graph.push_back(g);
    }
    for (const auto& e : inst->graph.edges) {
      const int type = static_cast<int>(e.type);
      b.msg_target[2 * type].push_back(base + e.dst);
      b.msg_source[2 * type].push_back(base + e.src);
      b.msg_target[2 * type + 1].push_back(base + e.src);
      b.msg_source[2 * type + 1].push_back(base + e.dst);
    }
    for (const auto& t : inst->tokens) {
      b.token_id.push_back(vocabs_.tokens.lookup(t));
      b.token_graph.push_back(g);
    }
    b.target.push_back(vocabs_.classes.lookup(inst->label));
  }
  return b;
}

template <typename T>
Batch Network<T>::encode(const std::vector<TrainingInstance>& instances) const {
  std::vector<const TrainingInstance*> ptrs;
  ptrs.reserve(instances.size());
  for (const auto& i : instances) ptrs.push_back(&i);
  return encode(ptrs);
}

template <typename T>
Batch Network<T>::encode(const ApiContextGraph& g, const TokenBag& bag) const {
  TrainingInstance inst{g, bag, std::string()};
  return encode(std::vector<const TrainingInstance*>{&inst});
}

template <typename T>
void Network<T>::forward(const Batch& b, bool train, std::uint64_t mask_seed, Workspace& ws) const {
  const int d = cfg_.embedding_size;
  const int n = static_cast<int>(b.node_label.size());
  const int steps = cfg_.propagation_steps;
  {
    std::vector<char> seen(b.graphs, 0);
    for (int g : b.node_graph) seen[g] = 1;
    for (char s : seen)
      if (!s) throw EmptyGraphError();
  }
  std::mt19937_64 rng(mask_seed);
  const bool drop = train && cfg_.keep_prob < 1.0;
  ws.train = train;

  // Propagation.
  ws.H.assign(1, gather(params_[layout_.node_embed], b.node_label));
  ws.M.clear(), ws.Z.clear(), ws.R.clear(), ws.RH.clear(), ws.HC.clear();
  const Matrix<T>& gw = params_[layout_.gru_w];
  const Matrix<T>& gb = params_[layout_.gru_b];
  for (int t = 1; t <= steps; ++t) {
    const Matrix<T>& H = ws.H.back();
    Matrix<T> M(n, d);
    for (int s = 0; s < kMessageSlots; ++s) {
      if (b.msg_target[s].empty()) continue;
      const Matrix<T> src = gather(H, b.msg_source[s]);
      Matrix<T> msg(src.rows, d);
      gemm(false, false, src, params_[layout_.edge_w[s]], msg);
      add_bias(msg, params_[layout_.edge_b[s]]);
      scatter_add(M, b.msg_target[s], msg);
    }
    Matrix<T> A(n, 3 * d);
    gemm(false, false, M, gw, A);
    add_bias(A, gb);
    Matrix<T> Bzr(n, 2 * d);
    gemm(false, false, H, params_[layout_.gru_u_zr], Bzr);
    Matrix<T> Z(n, d), R(n, d), RH(n, d);
    for (int i = 0; i < n; ++i) {
      const T* a = A.row(i);
      const T* bz = Bzr.row(i);
      const T* h = H.row(i);
      T* z = Z.row(i);
      T* r = R.row(i);
      T* rh = RH.row(i);
      for (int j = 0; j < d; ++j) {
        z[j] = sigmoid(a[j] + bz[j]);
        r[j] = sigmoid(a[d + j] + bz[d + j]);
        rh[j] = r[j] * h[j];
      }
    }
    Matrix<T> HC(n, d);
    gemm(false, false, RH, params_[layout_.gru_u_h], HC);
    Matrix<T> Hn(n, d);
    for (int i = 0; i < n; ++i) {
      const T* a = A.row(i);
      const T* z = Z.row(i);
      const T* h = H.row(i);
      T* hc = HC.row(i);
      T* out = Hn.row(i);
      for (int j = 0; j < d; ++j) {
        hc[j] = std::tanh(a[2 * d + j] + hc[j]);
        out[j] = (T(1) - z[j]) * h[j] + z[j] * hc[j];
      }
    }
    ws.M.push_back(std::move(M));
    ws.Z.push_back(std::move(Z));
    ws.R.push_back(std::move(R));
    ws.RH.push_back(std::move(RH));
    ws.HC.push_back(std::move(HC));
    ws.H.push_back(std::move(Hn));
  }

  // Readout.
  const Matrix<T>& HT = ws.H.back();
  const Matrix<T>& H0 = ws.H.front();
  ws.Zcat.reset(n, 2 * d);
  for (int i = 0; i < n; ++i) {
    std::copy_n(HT.row(i), d, ws.Zcat.row(i));
    std::copy_n(H0.row(i), d, ws.Zcat.row(i) + d);
  }
  ws.G.reset(n, d);
  ws.V.reset(n, d);
  gemm(false, false, ws.Zcat, params_[layout_.attn_i_w], ws.G);
  add_bias(ws.G, params_[layout_.attn_i_b]);
  gemm(false, false, ws.Zcat, params_[layout_.attn_j_w], ws.V);
  add_bias(ws.V, params_[layout_.attn_j_b]);
  for (auto& v : ws.G.data) v = sigmoid(v);
  for (auto& v : ws.V.data) v = std::tanh(v);
  ws.XG.reset(b.graphs, d);
  for (int i = 0; i < n; ++i) {
    T* s = ws.XG.row(b.node_graph[i]);
    const T* g = ws.G.row(i);
    const T* v = ws.V.row(i);
    for (int j = 0; j < d; ++j) s[j] += g[j] * v[j];
  }
  for (auto& v : ws.XG.data) v = std::tanh(v);

  // Token network.
  const int layers = cfg_.hidden_layers;
  const int xt_dim = layers > 0 ? cfg_.hidden_size : d;
  ws.E.clear(), ws.A.clear(), ws.tok_mask.clear();
  ws.XT.reset(b.graphs, xt_dim);
  if (!cfg_.structure_only) {
    ws.E.push_back(gather(params_[layout_.token_embed], b.token_id));
    const int nt = static_cast<int>(b.token_id.size());
    for (int l = 0; l < layers; ++l) {
      Matrix<T> act(nt, cfg_.hidden_size);
      gemm(false, false, ws.E.back(), params_[layout_.token_w[l]], act);
      add_bias(act, params_[layout_.token_b[l]]);
      for (auto& v : act.data) v = std::tanh(v);
      Matrix<T> out = act;
      if (drop) {
        ws.tok_mask.push_back(dropout_mask<T>(nt, cfg_.hidden_size, cfg_.keep_prob, rng));
        multiply(out, ws.tok_mask.back());
      }
      ws.A.push_back(std::move(act));
      ws.E.push_back(std::move(out));
    }
    for (int i = 0; i < nt; ++i) {
      T* dst = ws.XT.row(b.token_graph[i]);
      const T* src = ws.E.back().row(i);
      for (int j = 0; j < xt_dim; ++j) dst[j] += src[j];
    }
  }

  // Joint layer and classifier.
  ws.Q.reset(b.graphs, d + xt_dim);
  for (int g = 0; g < b.graphs; ++g) {
    std::copy_n(ws.XG.row(g), d, ws.Q.row(g));
    std::copy_n(ws.XT.row(g), xt_dim, ws.Q.row(g) + d);
  }
  ws.J0.reset(b.graphs, d);
  gemm(false, false, ws.Q, params_[layout_.joint_w], ws.J0);
  add_bias(ws.J0, params_[layout_.joint_b]);
  for (auto& v : ws.J0.data) v = std::tanh(v);
  ws.J = ws.J0;
  ws.joint_mask = Matrix<T>();
  if (drop) {
    ws.joint_mask = dropout_mask<T>(b.graphs, d, cfg_.keep_prob, rng);
    multiply(ws.J, ws.joint_mask);
  }
  const int classes = vocabs_.classes.size();
  ws.P.reset(b.graphs, classes);
  gemm(false, false, ws.J, params_[layout_.out_w], ws.P);
  add_bias(ws.P, params_[layout_.out_b]);
  for (int g = 0; g < b.graphs; ++g) {
    T* p = ws.P.row(g);
    const T mx = *std::max_element(p, p + classes);
    const bool has_target = g < static_cast<int>(b.target.size());
    const double shifted = has_target ? static_cast<double>(p[b.target[g]] - mx) : 0.0;
    T sum = 0;
    for (int c = 0; c < classes; ++c) sum += (p[c] = std::exp(p[c] - mx));
    if (has_target) ws.target_logp.push_back(shifted - std::log(static_cast<double>(sum)));
    for (int c = 0; c < classes; ++c) p[c] /= sum;
  }
}

template <typename T>
void Network<T>::backward(const Batch& b, Workspace& ws, std::vector<Matrix<T>>& grads) const {
  const int d = cfg_.embedding_size;
  const int n = static_cast<int>(b.node_label.size());
  const int classes = vocabs_.classes.size();
  const int layers = cfg_.hidden_layers;
  const int xt_dim = layers > 0 ? cfg_.hidden_size : d;
  const T inv_batch = T(1) / static_cast<T>(b.graphs);

  // Softmax and output layer.
  Matrix<T> dlogits = ws.P;
  for (int g = 0; g < b.graphs; ++g) {
    dlogits(g, b.target[g]) -= T(1);
    T* r = dlogits.row(g);
    for (int c = 0; c < classes; ++c) r[c] *= inv_batch;
  }
  gemm(true, false, ws.J, dlogits, grads[layout_.out_w]);
  add_column_sums(dlogits, grads[layout_.out_b]);
  Matrix<T> dJ(b.graphs, d);
  gemm(false, true, dlogits, params_[layout_.out_w], dJ);

  // Joint layer.
  if (!ws.joint_mask.data.empty()) multiply(dJ, ws.joint_mask);
  for (std::size_t i = 0; i < dJ.data.size(); ++i) dJ.data[i] *= T(1) - ws.J0.data[i] * ws.J0.data[i];
  gemm(true, false, ws.Q, dJ, grads[layout_.joint_w]);
  add_column_sums(dJ, grads[layout_.joint_b]);
  Matrix<T> dQ(b.graphs, d + xt_dim);
  gemm(false, true, dJ, params_[layout_.joint_w], dQ);

  // Token network.
  if (!cfg_.structure_only) {
    const int nt = static_cast<int>(b.token_id.size());
    Matrix<T> dE(nt, xt_dim);
    for (int i = 0; i < nt; ++i) std::copy_n(dQ.row(b.token_graph[i]) + d, xt_dim, dE.row(i));
    for (int l = layers - 1; l >= 0; --l) {
      if (!ws.tok_mask.empty()) multiply(dE, ws.tok_mask[l]);
      const Matrix<T>& act = ws.A[l];
      for (std::size_t i = 0; i < dE.data.size(); ++i) dE.data[i] *= T(1) - act.data[i] * act.data[i];
      gemm(true, false, ws.E[l], dE, grads[layout_.token_w[l]]);
      add_column_sums(dE, grads[layout_.token_b[l]]);
      Matrix<T> dprev(nt, params_[layout_.token_w[l]].rows);
      gemm(false, true, dE, params_[layout_.token_w[l]], dprev);
      dE = std::move(dprev);
    }
    scatter_add(grads[layout_.token_embed], b.token_id, dE);
  }

  // Readout.
  Matrix<T> dGV(n, d);
  for (int i = 0; i < n; ++i) {
    const int g = b.node_graph[i];
    const T* xg = ws.XG.row(g);
    const T* dq = dQ.row(g);
    T* out = dGV.row(i);
    for (int j = 0; j < d; ++j) out[j] = dq[j] * (T(1) - xg[j] * xg[j]);
  }
  Matrix<T> dGp(n, d), dVp(n, d);
  for (std::size_t i = 0; i < dGV.data.size(); ++i) {
    const T g = ws.G.data[i], v = ws.V.data[i];
    dGp.data[i] = dGV.data[i] * v * g * (T(1) - g);
    dVp.data[i] = dGV.data[i] * g * (T(1) - v * v);
  }
  gemm(true, false, ws.Zcat, dGp, grads[layout_.attn_i_w]);
  add_column_sums(dGp, grads[layout_.attn_i_b]);
  gemm(true, false, ws.Zcat, dVp, grads[layout_.attn_j_w]);
  add_column_sums(dVp, grads[layout_.attn_j_b]);
  Matrix<T> dZcat(n, 2 * d);
  gemm(false, true, dGp, params_[layout_.attn_i_w], dZcat);
  gemm(false, true, dVp, params_[layout_.attn_j_w], dZcat);
  Matrix<T> dH(n, d), dX0(n, d);
  for (int i = 0; i < n; ++i) {
    std::copy_n(dZcat.row(i), d, dH.row(i));
    std::copy_n(dZcat.row(i) + d, d, dX0.row(i));
  }

  // Propagation, back through time.
  for (int t = cfg_.propagation_steps; t >= 1; --t) {
    const Matrix<T>& Hp = ws.H[t - 1];
    const Matrix<T>& Z = ws.Z[t - 1];
    const Matrix<T>& R = ws.R[t - 1];
    const Matrix<T>& HC = ws.HC[t - 1];
    Matrix<T> dHp(n, d);
    Matrix<T> dA(n, 3 * d);
    Matrix<T> dah(n, d);
    for (int i = 0; i < n; ++i) {
      const T* dh = dH.row(i);
      const T* hp = Hp.row(i);
      const T* z = Z.row(i);
      const T* hc = HC.row(i);
      T* dhp = dHp.row(i);
      T* da = dA.row(i);
      T* dc = dah.row(i);
      for (int j = 0; j < d; ++j) {
        const T dz = dh[j] * (hc[j] - hp[j]);
        const T dhc = dh[j] * z[j];
        dhp[j] = dh[j] * (T(1) - z[j]);
        da[j] = dz * z[j] * (T(1) - z[j]);
        dc[j] = dhc * (T(1) - hc[j] * hc[j]);
        da[2 * d + j] = dc[j];
      }
    }
    gemm(true, false, ws.RH[t - 1], dah, grads[layout_.gru_u_h]);
    Matrix<T> dRH(n, d);
    gemm(false, true, dah, params_[layout_.gru_u_h], dRH);
    for (int i = 0; i < n; ++i) {
      const T* drh = dRH.row(i);
      const T* hp = Hp.row(i);
      const T* r = R.row(i);
      T* dhp = dHp.row(i);
      T* da = dA.row(i);
      for (int j = 0; j < d; ++j) {
        const T dr = drh[j] * hp[j];
        dhp[j] += drh[j] * r[j];
        da[d + j] = dr * r[j] * (T(1) - r[j]);
      }
    }
    gemm(true, false, ws.M[t - 1], dA, grads[layout_.gru_w]);
    add_column_sums(dA, grads[layout_.gru_b]);
    Matrix<T> dBzr(n, 2 * d);
    for (int i = 0; i < n; ++i) std::copy_n(dA.row(i), 2 * d, dBzr.row(i));
    gemm(true, false, Hp, dBzr, grads[layout_.gru_u_zr]);
    gemm(false, true, dBzr, params_[layout_.gru_u_zr], dHp);
    Matrix<T> dM(n, d);
    gemm(false, true, dA, params_[layout_.gru_w], dM);
    for (int s = 0; s < kMessageSlots; ++s) {
      if (b.msg_target[s].empty()) continue;
      const Matrix<T> dmsg = gather(dM, b.msg_target[s]);
      const Matrix<T> src = gather(Hp, b.msg_source[s]);
      gemm(true, false, src, dmsg, grads[layout_.edge_w[s]]);
      add_column_sums(dmsg, grads[layout_.edge_b[s]]);
      Matrix<T> dsrc(dmsg.rows, d);
      gemm(false, true, dmsg, params_[layout_.edge_w[s]], dsrc);
      scatter_add(dHp, b.msg_source[s], dsrc);
    }
    dH = std::move(dHp);
  }
  for (std::size_t i = 0; i < dX0.data.size(); ++i) dX0.data[i] += dH.data[i];
  scatter_add(grads[layout_.node_embed], b.node_label, dX0);
}

template <typename T>
T Network<T>::loss(const Batch& b, bool train, std::uint64_t mask_seed, std::vector<Matrix<T>>* grads) const {
  Workspace ws;
  forward(b, train, mask_seed, ws);
  double total = 0;
  for (double lp : ws.target_logp) total -= lp;
  const T mean = static_cast<T>(total / b.graphs);
  if (!std::isfinite(mean)) throw NonFiniteLossError("loss is not finite (" + std::to_string(total) + ")");
  if (grads) backward(b, ws, *grads);
  return mean;
}

template <typename T>
std::vector<Matrix<T>> Network<T>::propagate(const Batch& b) const {
  Workspace ws;
  forward(b, false, 0, ws);
  return std::move(ws.H);
}

template <typename T>
Matrix<T> Network<T>::readout(const std::vector<Matrix<T>>& states, const Batch& b) const {
  const int d = cfg_.embedding_size;
  const int n = static_cast<int>(b.node_label.size());
  Matrix<T> zcat(n, 2 * d);
  for (int i = 0; i < n; ++i) {
    std::copy_n(states.back().row(i), d, zcat.row(i));
    std::copy_n(states.front().row(i), d, zcat.row(i) + d);
  }
  Matrix<T> g(n, d), v(n, d);
  gemm(false, false, zcat, params_[layout_.attn_i_w], g);
  add_bias(g, params_[layout_.attn_i_b]);
  gemm(false, false, zcat, params_[layout_.attn_j_w], v);
  add_bias(v, params_[layout_.attn_j_b]);
  Matrix<T> xg(b.graphs, d);
  for (int i = 0; i < n; ++i) {
    T* s = xg.row(b.node_graph[i]);
    for (int j = 0; j < d; ++j) s[j] += sigmoid(g(i, j)) * std::tanh(v(i, j));
  }
  for (auto& x : xg.data) x = std::tanh(x);
  return xg;
}

template <typename T>
Matrix<T> Network<T>::token_vectors(const Batch& b) const {
  Workspace ws;
  forward(b, false, 0, ws);
  return std::move(ws.XT);
}

template <typename T>
Matrix<T> Network<T>::classify(const Matrix<T>& xg, const Matrix<T>& xt) const {
  const int d = cfg_.embedding_size;
  const int rows = xg.rows;
  Matrix<T> q(rows, d + xt.cols);
  for (int g = 0; g < rows; ++g) {
    std::copy_n(xg.row(g), d, q.row(g));
    if (!cfg_.structure_only) std::copy_n(xt.row(g), xt.cols, q.row(g) + d);
  }
  Matrix<T> j(rows, d);
  gemm(false, false, q, params_[layout_.joint_w], j);
  add_bias(j, params_[layout_.joint_b]);
  for (auto& v : j.data) v = std::tanh(v);
  const int classes = vocabs_.classes.size();
  Matrix<T> p(rows, classes);
  gemm(false, false, j, params_[layout_.out_w], p);
  add_bias(p, params_[layout_.out_b]);
  for (int g = 0; g < rows; ++g) {
    T* r = p.row(g);
    const T mx = *std::max_element(r, r + classes);
    T sum = 0;
    for (int c = 0; c < classes; ++c) sum += (r[c] = std::exp(r[c] - mx));
    for (int c = 0; c < classes; ++c) r[c] /= sum;
  }
  return p;
}

template <typename T>
Matrix<T> Network<T>::probabilities(const Batch& b) const {
  Workspace ws;
  forward(b, false, 0, ws);
  return std::move(ws.P);
}

template class Network<float>;
template class Network<double>;

}  // namespace apirec::nn
