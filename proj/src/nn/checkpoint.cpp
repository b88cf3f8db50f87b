// SPDX-License-Identifier: Apache-2.0
#include "apirec/nn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace apirec::nn {
namespace {

constexpr char kMagic[8] = {'A', 'P', 'I', 'R', 'E', 'C', 'C', 'K'};

template <typename U>
void put_le(std::ostream& out, U v) {
  unsigned char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(U));
}

template <typename U>
U get_le(std::istream& in) {
  unsigned char bytes[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(U))) throw CheckpointError("truncated checkpoint");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
  return v;
}

void put_string(std::ostream& out, const std::string& s) {
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in) {
  const auto n = get_le<std::uint32_t>(in);
  if (n > (1u << 30)) throw CheckpointError("implausible string length");
  std::string s(n, '\0');
  if (n && !in.read(s.data(), n)) throw CheckpointError("truncated checkpoint");
  return s;
}

void put_table(std::ostream& out, const Vocab& v) {
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(v.size() - 1));
  for (int i = 1; i < v.size(); ++i) put_string(out, v.at(i));
}

Vocab get_table(std::istream& in) {
  const auto n = get_le<std::uint32_t>(in);
  std::vector<std::string> items;
  items.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) items.push_back(get_string(in));
  try {
    return Vocab(items);
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(e.what());
  }
}

template <typename T>
void put_element(std::ostream& out, T v) {
  if constexpr (sizeof(T) == 4) put_le(out, std::bit_cast<std::uint32_t>(v));
  else put_le(out, std::bit_cast<std::uint64_t>(v));
}

template <typename T>
T get_element(std::istream& in) {
  if constexpr (sizeof(T) == 4) return std::bit_cast<T>(get_le<std::uint32_t>(in));
  else return std::bit_cast<T>(get_le<std::uint64_t>(in));
}

template <typename T>
Network<T> read_tensors(std::istream& in, const ModelConfig& cfg, ModelVocabs vocabs) {
  Network<T> net(cfg, std::move(vocabs));
  const auto count = get_le<std::uint32_t>(in);
  if (count != net.params().size()) throw CheckpointError("tensor count does not match the configuration");
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::string name = get_string(in);
    if (name != net.param_names()[k]) throw CheckpointError("unexpected tensor '" + name + "'");
    const auto rank = get_le<std::uint32_t>(in);
    if (rank != 2) throw CheckpointError("tensor '" + name + "' has rank " + std::to_string(rank));
    const auto rows = get_le<std::uint64_t>(in);
    const auto cols = get_le<std::uint64_t>(in);
    Matrix<T>& p = net.params()[k];
    if (rows != static_cast<std::uint64_t>(p.rows) || cols != static_cast<std::uint64_t>(p.cols))
      throw CheckpointError("tensor '" + name + "' has the wrong shape");
    const auto width = get_le<std::uint8_t>(in);
    if (width != sizeof(T)) throw CheckpointError("tensor '" + name + "' has the wrong precision");
    for (auto& v : p.data) v = get_element<T>(in);
  }
  return net;
}

}  // namespace

template <typename T>
void save_checkpoint(const Network<T>& net, std::ostream& out) {
  out.write(kMagic, sizeof(kMagic));
  put_le<std::uint32_t>(out, kCheckpointVersion);
  ModelConfig cfg = net.config();
  cfg.precision = sizeof(T) == 4 ? Precision::F32 : Precision::F64;
  std::string header;
  for (const auto& [k, v] : to_key_values(cfg)) header += k + "=" + v + "\n";
  put_string(out, header);
  put_table(out, net.vocabs().node_labels);
  put_table(out, net.vocabs().classes);
  put_table(out, net.vocabs().tokens);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(net.params().size()));
  for (std::size_t k = 0; k < net.params().size(); ++k) {
    const Matrix<T>& p = net.params()[k];
    put_string(out, net.param_names()[k]);
    put_le<std::uint32_t>(out, 2);
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(p.rows));
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(p.cols));
    put_le<std::uint8_t>(out, sizeof(T));
    for (T v : p.data) put_element(out, v);
  }
  if (!out) throw CheckpointError("failed to write checkpoint");
}

template <typename T>
void save_checkpoint(const Network<T>& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot write " + path.string());
  save_checkpoint(net, out);
}

AnyNetwork load_checkpoint(std::istream& in) {
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw CheckpointError("not a checkpoint file");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kCheckpointVersion) throw CheckpointError("unsupported checkpoint version " + std::to_string(version));

  std::map<std::string, std::string> kv;
  std::istringstream header(get_string(in));
  std::string line;
  while (std::getline(header, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw CheckpointError("malformed header line '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  ModelConfig cfg;
  try {
    apply_key_values(cfg, kv);
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(std::string("bad header: ") + e.what());
  }
  ModelVocabs vocabs;
  vocabs.node_labels = get_table(in);
  vocabs.classes = get_table(in);
  vocabs.tokens = get_table(in);
  AnyNetwork net = cfg.precision == Precision::F32 ? AnyNetwork(read_tensors<float>(in, cfg, std::move(vocabs)))
                                                   : AnyNetwork(read_tensors<double>(in, cfg, std::move(vocabs)));
  if (in.peek() != std::char_traits<char>::eof()) throw CheckpointError("trailing bytes after the last tensor");
  return net;
}

AnyNetwork load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open " + path.string());
  return load_checkpoint(in);
}

const ModelConfig& config_of(const AnyNetwork& net) {
  return std::visit([](const auto& n) -> const ModelConfig& { return n.config(); }, net);
}

template void save_checkpoint<float>(const Network<float>&, std::ostream&);
template void save_checkpoint<double>(const Network<double>&, std::ostream&);
template void save_checkpoint<float>(const Network<float>&, const std::filesystem::path&);
template void save_checkpoint<double>(const Network<double>&, const std::filesystem::path&);

}  // namespace apirec::nn
