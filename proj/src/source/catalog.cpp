// SPDX-License-Identifier: Apache-2.0
#include "apirec/source/catalog.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "apirec/source/errors.hpp"

namespace apirec {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string_view next_word(std::string_view& s) {
  s = trim(s);
  const auto end = s.find_first_of(" \t");
  auto word = s.substr(0, end);
  s = end == std::string_view::npos ? std::string_view() : s.substr(end);
  return word;
}

std::string simple_name(std::string_view fq) {
  const auto dot = fq.rfind('.');
  return std::string(dot == std::string_view::npos ? fq : fq.substr(dot + 1));
}

}  // namespace

ApiCatalog ApiCatalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open catalog " + path.string());
  return parse(in);
}

ApiCatalog ApiCatalog::parse(std::istream& in) {
  std::set<ApiSignature> unique;
  std::set<std::pair<std::string, std::string>> extends;
  std::set<std::string> class_names;
  std::string raw;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto kind = next_word(line);
    if (kind == "X") {
      const auto sub = next_word(line);
      const auto rel = next_word(line);
      const auto super = next_word(line);
      if (sub.empty() || rel != "extends" || super.empty() || !trim(line).empty())
        throw FormatError("malformed extends line", line_no);
      extends.emplace(std::string(sub), std::string(super));
      class_names.emplace(sub);
      continue;
    }
    ApiSignature sig;
    if (kind == "M") sig.kind = MemberKind::Method;
    else if (kind == "C") sig.kind = MemberKind::Constructor;
    else if (kind == "F") sig.kind = MemberKind::Field;
    else throw FormatError("unknown entry kind '" + std::string(kind) + "'", line_no);

    sig.fq_class = std::string(next_word(line));
    const auto member = next_word(line);
    if (sig.fq_class.empty() || member.empty()) throw FormatError("missing class or member", line_no);
    sig.member = sig.kind == MemberKind::Constructor ? "new" : std::string(member);
    if (sig.kind == MemberKind::Constructor && member != "-" && member != simple_name(sig.fq_class))
      throw FormatError("constructor member must be '-'", line_no);

    line = trim(line);
    if (line.empty() || line.front() != '(') throw FormatError("expected parameter list", line_no);
    const auto close = line.find(')');
    if (close == std::string_view::npos) throw FormatError("unterminated parameter list", line_no);
    std::string_view params = line.substr(1, close - 1);
    while (!trim(params).empty()) {
      const auto comma = params.find(',');
      const auto p = trim(params.substr(0, comma));
      if (p.empty()) throw FormatError("empty parameter type", line_no);
      sig.param_types.emplace_back(p);
      params = comma == std::string_view::npos ? std::string_view() : params.substr(comma + 1);
    }
    line.remove_prefix(close + 1);
    sig.return_type = std::string(next_word(line));
    if (sig.return_type.empty() || !trim(line).empty()) throw FormatError("expected one return type", line_no);
    if (sig.kind == MemberKind::Field && !sig.param_types.empty())
      throw FormatError("field entries take no parameters", line_no);
    class_names.insert(sig.fq_class);
    unique.insert(std::move(sig));
  }
  if (unique.empty() && class_names.empty()) throw FormatError("catalog is empty", line_no);

  ApiCatalog cat;
  cat.entries_.assign(unique.begin(), unique.end());
  for (const auto& name : class_names) cat.classes_[name].fq_name = name;
  for (std::size_t i = 0; i < cat.entries_.size(); ++i) cat.classes_[cat.entries_[i].fq_class].members.push_back(i);
  for (const auto& [sub, super] : extends) cat.classes_[sub].supertypes.push_back(super);

  // Simple-name index: java.lang wins, then the smallest qualified name.
  for (const auto& [fq, cls] : cat.classes_) {
    const std::string simple = simple_name(fq);
    auto it = cat.simple_index_.find(simple);
    if (it == cat.simple_index_.end()) {
      cat.simple_index_.emplace(simple, fq);
      continue;
    }
    const bool current_lang = it->second.rfind("java.lang.", 0) == 0 && it->second.find('.', 10) == std::string::npos;
    const bool candidate_lang = fq.rfind("java.lang.", 0) == 0 && fq.find('.', 10) == std::string::npos;
    if (candidate_lang && !current_lang) it->second = fq;
  }
  return cat;
}

const ApiClass* ApiCatalog::find_class(std::string_view name) const {
  if (auto it = classes_.find(name); it != classes_.end()) return &it->second;
  if (name.find('.') != std::string_view::npos) return nullptr;
  if (auto it = simple_index_.find(name); it != simple_index_.end()) return &classes_.find(it->second)->second;
  return nullptr;
}

std::vector<std::string> ApiCatalog::lineage(std::string_view fq_class) const {
  std::vector<std::string> order;
  std::deque<std::string> queue{std::string(fq_class)};
  std::set<std::string> seen;
  while (!queue.empty()) {
    std::string cur = std::move(queue.front());
    queue.pop_front();
    if (!seen.insert(cur).second) continue;
    order.push_back(cur);
    if (auto it = classes_.find(cur); it != classes_.end())
      for (const auto& s : it->second.supertypes) queue.push_back(s);
  }
  return order;
}

bool ApiCatalog::is_subtype(std::string_view sub, std::string_view super) const {
  if (sub == super) return true;
  const auto chain = lineage(sub);
  return std::find(chain.begin(), chain.end(), super) != chain.end();
}

}  // namespace apirec
