// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace apirec {

enum class TokenKind { Identifier, Keyword, IntLiteral, FloatLiteral, StringLiteral, CharLiteral, Operator, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  int line = 1;
  int column = 1;
  std::size_t offset = 0;  // byte offset of the first character

  bool is(std::string_view op) const {
    return (kind == TokenKind::Operator || kind == TokenKind::Keyword) && text == op;
  }
};

/// Splits Java source into tokens, dropping comments and whitespace. The
/// returned list always ends with an End token. Throws SyntaxError on
/// unterminated literals or comments, and on annotations unless
/// `skip_annotations` is set, in which case they are dropped.
std::vector<Token> tokenize(std::string_view source, int first_line = 1, bool skip_annotations = false);

}  // namespace apirec
