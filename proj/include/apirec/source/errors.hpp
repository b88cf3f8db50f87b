// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace apirec {

/// Raised for unbalanced or unsupported constructs in method source text.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

class MultipleHolesError : public SyntaxError {
 public:
  explicit MultipleHolesError(int line) : SyntaxError("more than one __HOLE__ marker", line) {}
};

/// Malformed catalog, vocabulary, corpus or checkpoint content.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, long position)
      : std::runtime_error(what + " (at " + std::to_string(position) + ")"), position_(position) {}

  /// Line number or record index the problem was found at.
  long position() const noexcept { return position_; }

 private:
  long position_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace apirec
