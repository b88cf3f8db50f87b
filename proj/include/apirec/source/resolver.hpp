// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apirec/source/catalog.hpp"
#include "apirec/source/ir.hpp"

namespace apirec {

/// Fully qualified name of a declared type: primitives stay as written,
/// catalog classes are qualified, arrays keep their "[]" suffixes. Returns ""
/// for types the catalog does not know.
std::string qualify_type(const TypeRef& type, const ApiCatalog& catalog);

/// Overload selection: member name and arity first, then exact (or catalog
/// subtype) argument types; remaining ties go to the lexicographically
/// smallest parameter list. Empty argument types act as wildcards and "null"
/// matches any reference type.
std::optional<ApiSignature> select_member(const ApiCatalog& catalog, const std::string& fq_class, MemberKind kind,
                                          const std::string& member, const std::vector<std::string>& arg_types);

/// Annotates every call, creation and field-access site whose receiver type
/// (or created class) is in the catalog. Sites left without `ref` are
/// unresolved. Pure function of its inputs.
MethodIR resolve_apis(MethodIR m, const ApiCatalog& catalog);

}  // namespace apirec
