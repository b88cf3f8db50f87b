// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "apirec/corpus/corpus.hpp"

namespace apirec::nn {

inline constexpr int kUnk = 0;
inline constexpr std::string_view kUnkText = "<unk>";

/// String table with UNK at index 0.
class Vocab {
 public:
  Vocab();
  /// `items` excludes UNK; order is kept.
  explicit Vocab(const std::vector<std::string>& items);

  int lookup(std::string_view s) const;
  bool contains(std::string_view s) const { return lookup(s) != kUnk; }
  const std::string& at(int i) const { return items_.at(static_cast<std::size_t>(i)); }
  int size() const { return static_cast<int>(items_.size()); }
  /// All entries including UNK.
  const std::vector<std::string>& items() const { return items_; }

  bool operator==(const Vocab& o) const { return items_ == o.items_; }

 private:
  std::vector<std::string> items_;
  std::unordered_map<std::string, int> index_;
};

struct ModelVocabs {
  Vocab node_labels;
  Vocab classes;
  Vocab tokens;

  /// Node labels and tokens seen in `train`; classes seen at least
  /// `min_class_freq` times as instance labels. Entries sorted.
  static ModelVocabs build(const std::vector<TrainingInstance>& train, int min_class_freq);

  bool operator==(const ModelVocabs&) const = default;
};

}  // namespace apirec::nn
