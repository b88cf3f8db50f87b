// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace apirec {

enum class MemberKind { Method, Constructor, Field };

/// One library member as listed in a catalog file.
struct ApiSignature {
  MemberKind kind = MemberKind::Method;
  std::string fq_class;
  std::string member;  // "new" for constructors
  std::vector<std::string> param_types;
  std::string return_type;

  auto operator<=>(const ApiSignature&) const = default;
  bool operator==(const ApiSignature&) const = default;
};

struct ApiClass {
  std::string fq_name;
  std::vector<std::size_t> members;      // indices into ApiCatalog::entries()
  std::vector<std::string> supertypes;   // direct "extends" relations
};

/// Immutable set of library signatures indexed by class.
///
/// Catalog lines look like
///   M java.lang.String hashCode () int
///   C java.io.File - (java.lang.String) void
///   F java.lang.System out () java.io.PrintStream
///   X java.util.ArrayList extends java.util.AbstractList
class ApiCatalog {
 public:
  static ApiCatalog load(const std::filesystem::path& path);
  static ApiCatalog parse(std::istream& in);

  const std::vector<ApiSignature>& entries() const { return entries_; }
  std::size_t class_count() const { return classes_.size(); }
  std::size_t member_count() const { return entries_.size(); }

  /// Looks up a class by fully qualified or simple name. Ambiguous simple
  /// names prefer java.lang, then the lexicographically smallest name.
  const ApiClass* find_class(std::string_view name) const;

  /// True when `sub` equals `super` or reaches it through extends relations.
  bool is_subtype(std::string_view sub, std::string_view super) const;

  /// `fq_class` followed by its catalog ancestors, breadth first.
  std::vector<std::string> lineage(std::string_view fq_class) const;

 private:
  std::vector<ApiSignature> entries_;
  std::map<std::string, ApiClass, std::less<>> classes_;
  std::map<std::string, std::string, std::less<>> simple_index_;
};

}  // namespace apirec
