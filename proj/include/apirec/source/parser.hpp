// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "apirec/source/ir.hpp"

namespace apirec {

/// The statement marking the position to recommend for.
inline constexpr std::string_view kHoleMarker = "__HOLE__";

/// Parses exactly one method declaration in the supported Java subset.
/// `first_line` is the source line of the first character of `source`.
/// Throws SyntaxError or MultipleHolesError.
MethodIR parse_method(std::string_view source, int first_line = 1);

/// Renders a method back to source in the supported subset. Parsing the
/// output yields a structurally identical MethodIR.
std::string to_source(const MethodIR& m);

/// Location of one method declaration inside a larger compilation unit.
struct MethodSpan {
  std::string name;
  std::size_t begin = 0;  // byte offsets into the file text
  std::size_t end = 0;
  int first_line = 1;
  int last_line = 1;
};

/// Finds method declarations (with bodies) in a Java file, including a file
/// that holds a bare method. Constructors and lambdas are not reported.
std::vector<MethodSpan> find_methods(std::string_view file_text);

/// Inserts `__HOLE__;` at the start of the given 1-based line.
std::string insert_hole_marker(std::string_view text, int line);

}  // namespace apirec
