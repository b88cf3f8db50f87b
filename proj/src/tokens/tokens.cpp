// SPDX-License-Identifier: Apache-2.0
#include "apirec/tokens/tokens.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "apirec/source/errors.hpp"
#include "apirec/source/resolver.hpp"

namespace apirec {
namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

void camel_split(std::string_view part, std::vector<std::string>& out) {
  std::string cur;
  for (std::size_t i = 0; i < part.size(); ++i) {
    const char c = part[i];
    const bool boundary =
        !cur.empty() && is_upper(c) &&
        (is_lower(cur.back()) || (i + 1 < part.size() && is_lower(part[i + 1]) && is_upper(cur.back())));
    if (boundary) {
      out.push_back(std::move(cur));
      cur.clear();
    }
    cur += c;
  }
  if (!cur.empty()) out.push_back(std::move(cur));
}

}  // namespace

TokenVocabulary::TokenVocabulary(const std::vector<std::string>& words) : words_(words.begin(), words.end()) {}

TokenVocabulary TokenVocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open vocabulary " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) words.push_back(line);
  }
  if (words.empty()) throw FormatError("vocabulary is empty", 0);
  return TokenVocabulary(words);
}

std::set<std::string> eligible_variables(const MethodIR& m, const ApiCatalog& catalog) {
  std::set<std::string> out;
  for (const auto& p : m.parameters)
    if (!qualify_type(p.type, catalog).empty()) out.insert(p.name);
  for_each_statement(m.body, [&](const Statement& s) {
    if ((is_declaration(s.kind) || s.kind == StmtKind::Foreach) && !qualify_type(s.type, catalog).empty())
      out.insert(s.var);
    for (const auto& b : s.blocks)
      if (b.role == BlockRole::Catch && !qualify_type(b.catch_type, catalog).empty()) out.insert(b.catch_var);
  });
  return out;
}

std::vector<std::string> extract_names(const MethodIR& m, const ApiCatalog& catalog) {
  std::vector<std::string> names{m.name};
  auto add = [&](const std::string& name, const TypeRef& type) {
    if (qualify_type(type, catalog).empty()) return;
    if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
  };
  for (const auto& p : m.parameters) add(p.name, p.type);
  for_each_statement(m.body, [&](const Statement& s) {
    if (is_declaration(s.kind) || s.kind == StmtKind::Foreach) add(s.var, s.type);
    for (const auto& b : s.blocks)
      if (b.role == BlockRole::Catch) add(b.catch_var, b.catch_type);
  });
  return names;
}

std::string lemmatize(std::string_view word) {
  std::string w(word);
  if (ends_with(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  for (std::string_view suf : {"sses", "xes", "ches", "shes", "zes"})
    if (ends_with(w, suf) && w.size() - 2 >= 3) return w.substr(0, w.size() - 2);
  if (ends_with(w, "s") && w.size() - 1 >= 3 && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is"))
    return w.substr(0, w.size() - 1);
  if (ends_with(w, "ed") && w.size() - 2 >= 3) return w.substr(0, w.size() - 2);
  if (ends_with(w, "ing") && w.size() - 3 >= 4) return w.substr(0, w.size() - 3);
  return w;
}

std::vector<std::string> split_name(std::string_view raw) {
  std::string cleaned;
  for (char c : raw)
    if (!std::isdigit(static_cast<unsigned char>(c))) cleaned += c;

  std::vector<std::string> parts;
  std::string cur;
  for (char c : cleaned) {
    if (c == '_' || c == '$') {
      if (!cur.empty()) parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(std::move(cur));

  std::vector<std::string> out;
  for (const auto& p : parts) {
    std::vector<std::string> pieces;
    camel_split(p, pieces);
    for (auto& piece : pieces) {
      std::transform(piece.begin(), piece.end(), piece.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      out.push_back(lemmatize(piece));
    }
  }
  return out;
}

TokenBag normalize_bag(const std::vector<std::string>& tokens, const TokenVocabulary& vocab) {
  TokenBag bag;
  for (const auto& t : tokens)
    if (t.size() >= 2 && vocab.contains(t)) bag.insert(t);
  return bag;
}

TokenBag bag_from_names(const std::vector<std::string>& names, const TokenVocabulary& vocab) {
  std::vector<std::string> tokens;
  for (const auto& n : names) {
    auto pieces = split_name(n);
    tokens.insert(tokens.end(), pieces.begin(), pieces.end());
  }
  return normalize_bag(tokens, vocab);
}

}  // namespace apirec
