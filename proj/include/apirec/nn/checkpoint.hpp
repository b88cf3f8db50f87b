// SPDX-License-Identifier: Apache-2.0
//
// Checkpoint container, all integers little-endian:
//
//   magic "APIRECCK", u32 version
//   u32 length + key=value lines        model configuration
//   3 x (u32 count, count x (u32 length, bytes))
//                                       node labels, classes, tokens (UNK omitted)
//   u32 tensor count, then per tensor:
//     u32 name length, name, u32 rank, rank x u64 dims, u8 element bytes (4|8),
//     row-major payload
#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <variant>

#include "apirec/nn/model.hpp"

namespace apirec::nn {

inline constexpr std::uint32_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyNetwork = std::variant<Network<float>, Network<double>>;

template <typename T>
void save_checkpoint(const Network<T>& net, std::ostream& out);
template <typename T>
void save_checkpoint(const Network<T>& net, const std::filesystem::path& path);

/// The element type follows the stored precision.
AnyNetwork load_checkpoint(std::istream& in);
AnyNetwork load_checkpoint(const std::filesystem::path& path);

const ModelConfig& config_of(const AnyNetwork& net);

}  // namespace apirec::nn
