// SPDX-License-Identifier: Apache-2.0
#include "apirec/source/lexer.hpp"

#include <array>
#include <cctype>

#include "apirec/source/errors.hpp"

namespace apirec {
namespace {

constexpr std::array<std::string_view, 34> kKeywords = {
    "abstract", "boolean", "break",   "byte",      "case",         "catch",  "char",   "class",  "continue",
    "default",  "do",      "double",  "else",      "extends",      "final",  "finally", "float", "for",
    "if",       "instanceof", "int",  "long",      "new",          "private", "protected", "public", "return",
    "short",    "static",  "switch",  "synchronized", "throw"};

constexpr std::array<std::string_view, 9> kMoreKeywords = {"throws", "try",   "void",  "while", "this",
                                                            "super",  "true",  "false", "null"};

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords)
    if (k == word) return true;
  for (auto k : kMoreKeywords)
    if (k == word) return true;
  return false;
}

// Longest first so that maximal munch works with a linear scan.
constexpr std::array<std::string_view, 41> kOperators = {
    ">>>=", "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=",
    "%=",   "&=",  "|=",  "^=", "<<", "+",  "-",  "*",  "/",  "%",  "=",  "<",  ">",  "!",  "~",  "?",
    ":",    ";",   ",",   ".",  "(",  ")",  "[",  "]"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool ident_part(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }

}  // namespace

std::vector<Token> tokenize(std::string_view src, int first_line, bool skip_annotations) {
  std::vector<Token> out;
  int line = first_line;
  std::size_t line_start = 0;
  std::size_t i = 0;
  const std::size_t n = src.size();

  auto push = [&](TokenKind kind, std::size_t begin, std::size_t end, int tok_line, std::size_t tok_line_start) {
    Token t;
    t.kind = kind;
    t.text = std::string(src.substr(begin, end - begin));
    t.line = tok_line;
    t.column = static_cast<int>(begin - tok_line_start) + 1;
    t.offset = begin;
    out.push_back(std::move(t));
  };

  while (i < n) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      line_start = ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      const int start_line = line;
      i += 2;
      while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/')) {
        if (src[i] == '\n') {
          ++line;
          line_start = i + 1;
        }
        ++i;
      }
      if (i + 1 >= n) throw SyntaxError("unterminated comment", start_line);
      i += 2;
      continue;
    }
    if (c == '@') {
      if (!skip_annotations) throw SyntaxError("annotations are not supported", line);
      ++i;
      while (i < n && (ident_part(src[i]) || src[i] == '.')) ++i;
      std::size_t j = i;
      while (j < n && (src[j] == ' ' || src[j] == '\t')) ++j;
      if (j < n && src[j] == '(') {
        int depth = 0;
        for (i = j; i < n; ++i) {
          if (src[i] == '\n') {
            ++line;
            line_start = i + 1;
          }
          if (src[i] == '(') ++depth;
          if (src[i] == ')' && --depth == 0) {
            ++i;
            break;
          }
        }
      }
      continue;
    }

    const std::size_t begin = i;
    if (ident_start(c)) {
      while (i < n && ident_part(src[i])) ++i;
      const auto word = src.substr(begin, i - begin);
      push(is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, begin, i, line, line_start);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      bool is_float = false;
      if (c == '0' && i + 1 < n && (src[i + 1] == 'x' || src[i + 1] == 'X')) {
        i += 2;
        while (i < n && (std::isxdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      } else {
        while (i < n && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
        if (i < n && src[i] == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
          is_float = true;
          ++i;
          while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        } else if (i < n && src[i] == '.' && !(i + 1 < n && ident_start(src[i + 1]))) {
          is_float = true;
          ++i;
        }
        if (i < n && (src[i] == 'e' || src[i] == 'E')) {
          is_float = true;
          ++i;
          if (i < n && (src[i] == '+' || src[i] == '-')) ++i;
          while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        }
      }
      if (i < n && (src[i] == 'f' || src[i] == 'F' || src[i] == 'd' || src[i] == 'D')) {
        is_float = true;
        ++i;
      } else if (i < n && (src[i] == 'l' || src[i] == 'L')) {
        ++i;
      }
      push(is_float ? TokenKind::FloatLiteral : TokenKind::IntLiteral, begin, i, line, line_start);
      continue;
    }
    if (c == '"' || c == '\'') {
      const char quote = c;
      ++i;
      while (i < n && src[i] != quote) {
        if (src[i] == '\\') ++i;
        if (i < n && src[i] == '\n') throw SyntaxError("unterminated literal", line);
        ++i;
      }
      if (i >= n) throw SyntaxError("unterminated literal", line);
      ++i;
      push(quote == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral, begin, i, line, line_start);
      continue;
    }
    bool matched = false;
    for (auto op : kOperators) {
      if (src.substr(i, op.size()) == op) {
        i += op.size();
        push(TokenKind::Operator, begin, i, line, line_start);
        matched = true;
        break;
      }
    }
    if (!matched) {
      // '{', '}', '&', '|', '^' and anything not covered above.
      if (std::string_view("{}&|^").find(c) != std::string_view::npos) {
        ++i;
        push(TokenKind::Operator, begin, i, line, line_start);
      } else {
        throw SyntaxError(std::string("unexpected character '") + c + "'", line);
      }
    }
  }
  Token end;
  end.kind = TokenKind::End;
  end.line = line;
  end.offset = n;
  out.push_back(end);
  return out;
}

}  // namespace apirec
