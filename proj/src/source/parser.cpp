// SPDX-License-Identifier: Apache-2.0
#include "apirec/source/parser.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "apirec/source/errors.hpp"
#include "apirec/source/lexer.hpp"

namespace apirec {
namespace {

constexpr std::array<std::string_view, 8> kPrimitives = {"boolean", "byte", "char",  "short",
                                                          "int",     "long", "float", "double"};

constexpr std::array<std::string_view, 10> kModifiers = {"public", "private",      "protected", "static", "final",
                                                          "abstract", "synchronized", "native", "strictfp", "default"};

bool is_primitive_keyword(const Token& t) {
  return t.kind == TokenKind::Keyword &&
         std::find(kPrimitives.begin(), kPrimitives.end(), t.text) != kPrimitives.end();
}

bool is_modifier(const Token& t) {
  return std::find(kModifiers.begin(), kModifiers.end(), t.text) != kModifiers.end() &&
         (t.kind == TokenKind::Keyword || t.text == "native" || t.text == "strictfp");
}

bool is_assign_op(const Token& t) {
  if (t.kind != TokenKind::Operator) return false;
  static constexpr std::array<std::string_view, 11> ops = {"=",  "+=", "-=", "*=", "/=", "%=",
                                                           "&=", "|=", "^=", "<<=", ">>>="};
  return std::find(ops.begin(), ops.end(), t.text) != ops.end();
}

int binary_precedence(std::string_view op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "|") return 3;
  if (op == "^") return 4;
  if (op == "&") return 5;
  if (op == "==" || op == "!=") return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof") return 7;
  if (op == "<<" || op == ">>" || op == ">>>") return 8;
  if (op == "+" || op == "-") return 9;
  if (op == "*" || op == "/" || op == "%") return 10;
  return 0;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  MethodIR method() {
    MethodIR m;
    m.line = peek().line;
    while (is_modifier(peek())) next();
    if (peek().is("<")) skip_type_args();
    if (peek().is("void")) {
      next();
      m.return_type = TypeRef{"void", 0};
    } else {
      m.return_type = type();
    }
    m.name = identifier("method name");
    expect("(");
    if (!peek().is(")")) {
      do {
        if (peek().is("final")) next();
        Parameter p;
        p.type = type();
        if (accept("...")) ++p.type.array_dims;
        p.name = identifier("parameter name");
        while (accept("[")) {
          expect("]");
          ++p.type.array_dims;
        }
        m.parameters.push_back(std::move(p));
      } while (accept(","));
    }
    expect(")");
    if (accept("throws")) {
      do type();
      while (accept(","));
    }
    if (!peek().is("{")) fail("expected method body");
    m.body = block();
    if (peek().kind != TokenKind::End) fail("unexpected content after method body");

    const Statement* first_hole = nullptr;
    for_each_statement(m.body, [&](const Statement& s) {
      if (s.kind != StmtKind::HoleMarker) return;
      if (first_hole) throw MultipleHolesError(s.line);
      first_hole = &s;
    });
    return m;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(std::string_view op) {
    if (peek().is(op)) {
      next();
      return true;
    }
    return false;
  }
  void expect(std::string_view op) {
    if (!accept(op)) fail("expected '" + std::string(op) + "'");
  }
  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    const std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(message + ", found " + found, t.line);
  }
  std::string identifier(const char* what) {
    if (peek().kind != TokenKind::Identifier) fail(std::string("expected ") + what);
    return next().text;
  }

  void skip_type_args() {
    expect("<");
    int depth = 1;
    while (depth > 0) {
      const Token& t = peek();
      if (t.kind == TokenKind::End) fail("unterminated type arguments");
      if (t.is("<")) ++depth;
      else if (t.is(">")) --depth;
      else if (!(t.kind == TokenKind::Identifier || is_primitive_keyword(t) || t.is(".") || t.is(",") ||
                 t.is("?") || t.is("extends") || t.is("super") || t.is("[") || t.is("]") || t.is("&")))
        fail("unexpected token in type arguments");
      next();
    }
  }

  TypeRef type() {
    TypeRef t;
    if (is_primitive_keyword(peek())) {
      t.name = next().text;
    } else {
      t.name = identifier("type");
      if (peek().is("<")) skip_type_args();
      while (peek().is(".") && peek(1).kind == TokenKind::Identifier) {
        next();
        t.name += "." + next().text;
        if (peek().is("<")) skip_type_args();
      }
    }
    while (peek().is("[") && peek(1).is("]")) {
      next();
      next();
      ++t.array_dims;
    }
    return t;
  }

  std::optional<TypeRef> try_type() {
    const std::size_t save = pos_;
    try {
      return type();
    } catch (const SyntaxError&) {
      pos_ = save;
      return std::nullopt;
    }
  }

  /// True when the upcoming tokens start a local variable declaration.
  bool at_declaration() {
    const std::size_t save = pos_;
    if (peek().is("final")) {
      pos_ = save;
      return true;
    }
    bool result = false;
    if (auto t = try_type()) {
      if (peek().kind == TokenKind::Identifier) {
        const Token& after = peek(1);
        result = after.is("=") || after.is(";") || after.is(",") || after.is("[") || after.is(":");
      }
    }
    pos_ = save;
    return result;
  }

  std::vector<Statement> block() {
    expect("{");
    std::vector<Statement> out;
    while (!peek().is("}")) {
      if (peek().kind == TokenKind::End) fail("unbalanced braces");
      statement(out);
    }
    expect("}");
    return out;
  }

  /// Body of a control statement: a braced block or a single statement.
  std::vector<Statement> body() {
    if (peek().is("{")) return block();
    std::vector<Statement> out;
    statement(out);
    return out;
  }

  Expr paren_expression() {
    expect("(");
    Expr e = expression();
    expect(")");
    return e;
  }

  void declaration(std::vector<Statement>& out, bool require_semicolon = true) {
    while (accept("final")) {
    }
    const int line = peek().line;
    TypeRef base = type();
    do {
      Statement s;
      s.line = line;
      s.type = base;
      s.var = identifier("variable name");
      while (accept("[")) {
        expect("]");
        ++s.type.array_dims;
      }
      if (accept("=")) {
        Expr init = peek().is("{") ? array_init() : expression();
        s.kind = classify_initializer(init);
        s.expr = std::move(init);
      } else {
        s.kind = StmtKind::VarDecl;
      }
      out.push_back(std::move(s));
    } while (accept(","));
    if (require_semicolon) expect(";");
  }

  static StmtKind classify_initializer(const Expr& init) {
    switch (init.kind) {
      case ExprKind::Null:
        return StmtKind::VarDeclNull;
      case ExprKind::Literal:
        return StmtKind::VarDeclConst;
      case ExprKind::Unary:
        if ((init.text == "-" || init.text == "+") && init.args.size() == 1 &&
            init.args[0].kind == ExprKind::Literal)
          return StmtKind::VarDeclConst;
        return StmtKind::VarDecl;
      case ExprKind::New:
        return StmtKind::VarDeclNew;
      default:
        return StmtKind::VarDecl;
    }
  }

  Statement expression_statement(Expr e, int line) {
    Statement s;
    s.line = line;
    if (e.kind == ExprKind::Assign && e.args[0].kind == ExprKind::Name) {
      s.kind = StmtKind::Assign;
      s.var = e.args[0].text;
    } else {
      s.kind = StmtKind::ExprStmt;
    }
    s.expr = std::move(e);
    return s;
  }

  void statement(std::vector<Statement>& out) {
    const Token& t = peek();
    const int line = t.line;
    if (t.is("{")) {
      auto inner = block();
      for (auto& s : inner) out.push_back(std::move(s));
      return;
    }
    if (accept(";")) return;
    if (t.kind == TokenKind::Identifier && t.text == kHoleMarker) {
      next();
      expect(";");
      Statement s;
      s.kind = StmtKind::HoleMarker;
      s.line = line;
      out.push_back(std::move(s));
      return;
    }
    if (t.kind == TokenKind::Keyword) {
      if (t.text == "if") return out.push_back(if_statement());
      if (t.text == "while") {
        next();
        Statement s;
        s.kind = StmtKind::While;
        s.line = line;
        s.expr = paren_expression();
        s.blocks.push_back(Block{BlockRole::Body, std::nullopt, {}, {}, body(), line});
        return out.push_back(std::move(s));
      }
      if (t.text == "do") {
        next();
        Statement s;
        s.kind = StmtKind::DoWhile;
        s.line = line;
        s.blocks.push_back(Block{BlockRole::Body, std::nullopt, {}, {}, body(), line});
        expect("while");
        s.expr = paren_expression();
        expect(";");
        return out.push_back(std::move(s));
      }
      if (t.text == "for") return out.push_back(for_statement());
      if (t.text == "switch") return out.push_back(switch_statement());
      if (t.text == "try") return out.push_back(try_statement());
      if (t.text == "return" || t.text == "throw") {
        const bool is_return = t.text == "return";
        next();
        Statement s;
        s.kind = is_return ? StmtKind::Return : StmtKind::Throw;
        s.line = line;
        if (!peek().is(";")) s.expr = expression();
        else if (!is_return) fail("expected expression");
        expect(";");
        return out.push_back(std::move(s));
      }
      if (t.text == "break" || t.text == "continue") {
        Statement s;
        s.kind = t.text == "break" ? StmtKind::Break : StmtKind::Continue;
        s.line = line;
        next();
        if (peek().kind == TokenKind::Identifier) fail("labeled jumps are not supported");
        expect(";");
        return out.push_back(std::move(s));
      }
      if (t.text == "final") return declaration(out);
      if (!is_primitive_keyword(t) && !t.is("this") && !t.is("new") && !t.is("super"))
        fail("unsupported statement");
    }
    if (t.kind == TokenKind::Identifier && peek(1).is(":")) fail("labeled statements are not supported");
    if (at_declaration()) return declaration(out);
    Expr e = expression();
    expect(";");
    out.push_back(expression_statement(std::move(e), line));
  }

  Statement if_statement() {
    Statement s;
    s.kind = StmtKind::If;
    s.line = peek().line;
    expect("if");
    s.expr = paren_expression();
    s.blocks.push_back(Block{BlockRole::Then, std::nullopt, {}, {}, body(), s.line});
    while (peek().is("else")) {
      const int line = next().line;
      if (accept("if")) {
        Expr cond = paren_expression();
        s.blocks.push_back(Block{BlockRole::ElseIf, std::move(cond), {}, {}, body(), line});
      } else {
        s.blocks.push_back(Block{BlockRole::Else, std::nullopt, {}, {}, body(), line});
        break;
      }
    }
    return s;
  }

  Statement for_statement() {
    Statement s;
    s.line = peek().line;
    expect("for");
    expect("(");
    // Foreach: [final] Type name ':' expr
    {
      const std::size_t save = pos_;
      while (accept("final")) {
      }
      if (auto t = try_type(); t && peek().kind == TokenKind::Identifier && peek(1).is(":")) {
        s.kind = StmtKind::Foreach;
        s.type = *t;
        s.var = next().text;
        next();
        s.expr = expression();
        expect(")");
        s.blocks.push_back(Block{BlockRole::Body, std::nullopt, {}, {}, body(), s.line});
        return s;
      }
      pos_ = save;
    }
    s.kind = StmtKind::For;
    if (!peek().is(";")) {
      if (at_declaration()) {
        declaration(s.init, false);
      } else {
        do {
          const int line = peek().line;
          s.init.push_back(expression_statement(expression(), line));
        } while (accept(","));
      }
    }
    expect(";");
    if (!peek().is(";")) s.expr = expression();
    expect(";");
    if (!peek().is(")")) {
      do s.update.push_back(expression());
      while (accept(","));
    }
    expect(")");
    s.blocks.push_back(Block{BlockRole::Body, std::nullopt, {}, {}, body(), s.line});
    return s;
  }

  Statement switch_statement() {
    Statement s;
    s.kind = StmtKind::Switch;
    s.line = peek().line;
    expect("switch");
    s.expr = paren_expression();
    expect("{");
    while (!accept("}")) {
      const int line = peek().line;
      Block b;
      b.line = line;
      if (accept("case")) {
        b.role = BlockRole::Case;
        b.cond = conditional();
      } else if (accept("default")) {
        b.role = BlockRole::Default;
      } else {
        fail("expected 'case' or 'default'");
      }
      expect(":");
      while (!peek().is("case") && !peek().is("default") && !peek().is("}")) {
        if (peek().kind == TokenKind::End) fail("unbalanced braces");
        statement(b.body);
      }
      s.blocks.push_back(std::move(b));
    }
    return s;
  }

  Statement try_statement() {
    Statement s;
    s.kind = StmtKind::Try;
    s.line = peek().line;
    expect("try");
    if (peek().is("(")) fail("try-with-resources is not supported");
    s.blocks.push_back(Block{BlockRole::Body, std::nullopt, {}, {}, block(), s.line});
    while (peek().is("catch")) {
      Block b;
      b.role = BlockRole::Catch;
      b.line = next().line;
      expect("(");
      while (accept("final")) {
      }
      b.catch_type = type();
      while (accept("|")) type();
      b.catch_var = identifier("catch variable");
      expect(")");
      b.body = block();
      s.blocks.push_back(std::move(b));
    }
    if (peek().is("finally")) {
      const int line = next().line;
      s.blocks.push_back(Block{BlockRole::Finally, std::nullopt, {}, {}, block(), line});
    }
    if (s.blocks.size() == 1) fail("try without catch or finally");
    return s;
  }

  // ---- expressions ----

  Expr expression() {
    Expr lhs = conditional();
    if (is_assign_op(peek())) {
      Expr e;
      e.kind = ExprKind::Assign;
      e.line = peek().line;
      e.text = next().text;
      if (lhs.kind != ExprKind::Name && lhs.kind != ExprKind::FieldAccess && lhs.kind != ExprKind::ArrayAccess)
        fail("invalid assignment target");
      e.args.push_back(std::move(lhs));
      e.args.push_back(expression());
      return e;
    }
    return lhs;
  }

  Expr conditional() {
    Expr c = binary(1);
    if (peek().is("?")) {
      Expr e;
      e.kind = ExprKind::Conditional;
      e.line = next().line;
      e.args.push_back(std::move(c));
      e.args.push_back(expression());
      expect(":");
      e.args.push_back(conditional());
      return e;
    }
    return c;
  }

  /// Reads a binary operator at the cursor without consuming it; returns its
  /// spelling and token count. Shift operators arrive as adjacent '>' tokens.
  std::pair<std::string, int> peek_binary_op() const {
    const Token& t = peek();
    if (t.is(">") && peek(1).is(">") && peek(1).offset == t.offset + 1) {
      if (peek(2).is(">") && peek(2).offset == t.offset + 2) return {">>>", 3};
      return {">>", 2};
    }
    if (t.kind == TokenKind::Operator || t.is("instanceof")) {
      if (binary_precedence(t.text) > 0) return {t.text, 1};
    }
    return {"", 0};
  }

  Expr binary(int min_prec) {
    Expr lhs = unary();
    while (true) {
      auto [op, width] = peek_binary_op();
      const int prec = width ? binary_precedence(op) : 0;
      if (prec == 0 || prec < min_prec) break;
      const int line = peek().line;
      for (int i = 0; i < width; ++i) next();
      Expr e;
      e.line = line;
      if (op == "instanceof") {
        e.kind = ExprKind::InstanceOf;
        e.type = type();
        e.args.push_back(std::move(lhs));
      } else {
        e.kind = ExprKind::Binary;
        e.text = op;
        e.args.push_back(std::move(lhs));
        e.args.push_back(binary(prec + 1));
      }
      lhs = std::move(e);
    }
    return lhs;
  }

  bool starts_operand(const Token& t) const {
    switch (t.kind) {
      case TokenKind::Identifier:
      case TokenKind::IntLiteral:
      case TokenKind::FloatLiteral:
      case TokenKind::StringLiteral:
      case TokenKind::CharLiteral:
        return true;
      case TokenKind::Keyword:
        return t.is("this") || t.is("new") || t.is("true") || t.is("false") || t.is("null");
      case TokenKind::Operator:
        return t.is("(") || t.is("!") || t.is("~");
      default:
        return false;
    }
  }

  std::optional<Expr> try_cast() {
    const std::size_t save = pos_;
    const int line = peek().line;
    next();  // '('
    const bool primitive = is_primitive_keyword(peek());
    auto t = try_type();
    if (t && accept(")")) {
      const bool reference_ok = !primitive && starts_operand(peek()) &&
                                (std::isupper(static_cast<unsigned char>(t->name[0])) || t->array_dims > 0);
      if (primitive || reference_ok) {
        Expr e;
        e.kind = ExprKind::Cast;
        e.line = line;
        e.type = *t;
        e.args.push_back(unary());
        return e;
      }
    }
    pos_ = save;
    return std::nullopt;
  }

  Expr unary() {
    const Token& t = peek();
    if (t.is("+") || t.is("-") || t.is("!") || t.is("~") || t.is("++") || t.is("--")) {
      Expr e;
      e.kind = ExprKind::Unary;
      e.line = t.line;
      e.text = next().text;
      e.args.push_back(unary());
      return e;
    }
    if (t.is("(")) {
      if (auto cast = try_cast()) return std::move(*cast);
    }
    Expr e = postfix(primary());
    while (peek().is("++") || peek().is("--")) {
      Expr u;
      u.kind = ExprKind::Unary;
      u.line = peek().line;
      u.text = next().text;
      u.postfix = true;
      u.args.push_back(std::move(e));
      e = std::move(u);
    }
    return e;
  }

  std::vector<Expr> arguments() {
    expect("(");
    std::vector<Expr> args;
    if (!peek().is(")")) {
      do args.push_back(expression());
      while (accept(","));
    }
    expect(")");
    return args;
  }

  Expr array_init() {
    Expr e;
    e.kind = ExprKind::ArrayInit;
    e.line = peek().line;
    expect("{");
    while (!peek().is("}")) {
      e.args.push_back(peek().is("{") ? array_init() : expression());
      if (!accept(",")) break;
    }
    expect("}");
    return e;
  }

  Expr primary() {
    const Token& t = peek();
    Expr e;
    e.line = t.line;
    switch (t.kind) {
      case TokenKind::IntLiteral: {
        e.kind = ExprKind::Literal;
        e.text = next().text;
        const char last = e.text.back();
        e.literal = (last == 'l' || last == 'L') ? LiteralType::Long : LiteralType::Int;
        return e;
      }
      case TokenKind::FloatLiteral: {
        e.kind = ExprKind::Literal;
        e.text = next().text;
        const char last = e.text.back();
        e.literal = (last == 'f' || last == 'F') ? LiteralType::Float : LiteralType::Double;
        return e;
      }
      case TokenKind::StringLiteral:
        e.kind = ExprKind::Literal;
        e.literal = LiteralType::String;
        e.text = next().text;
        return e;
      case TokenKind::CharLiteral:
        e.kind = ExprKind::Literal;
        e.literal = LiteralType::Char;
        e.text = next().text;
        return e;
      case TokenKind::Identifier:
        e.text = next().text;
        if (peek().is("(")) {
          e.kind = ExprKind::Call;
          e.args = arguments();
        } else {
          e.kind = ExprKind::Name;
        }
        return e;
      default:
        break;
    }
    if (t.is("true") || t.is("false")) {
      e.kind = ExprKind::Literal;
      e.literal = LiteralType::Boolean;
      e.text = next().text;
      return e;
    }
    if (t.is("null")) {
      next();
      e.kind = ExprKind::Null;
      return e;
    }
    if (t.is("this")) {
      next();
      e.kind = ExprKind::This;
      return e;
    }
    if (t.is("(")) return paren_expression();
    if (t.is("new")) return creator();
    fail("unsupported expression");
  }

  Expr creator() {
    Expr e;
    e.line = next().line;  // 'new'
    TypeRef t;
    if (is_primitive_keyword(peek())) {
      t.name = next().text;
    } else {
      t.name = identifier("type");
      if (peek().is("<")) skip_type_args();
      while (peek().is(".") && peek(1).kind == TokenKind::Identifier) {
        next();
        t.name += "." + next().text;
        if (peek().is("<")) skip_type_args();
      }
    }
    if (peek().is("[")) {
      e.kind = ExprKind::NewArray;
      while (accept("[")) {
        ++t.array_dims;
        if (!peek().is("]")) e.args.push_back(expression());
        expect("]");
      }
      if (peek().is("{")) e.args.push_back(array_init());
      e.type = t;
      return e;
    }
    e.kind = ExprKind::New;
    e.type = t;
    e.args = arguments();
    if (peek().is("{")) fail("anonymous classes are not supported");
    return e;
  }

  Expr postfix(Expr e) {
    while (true) {
      if (peek().is(".")) {
        next();
        if (peek().is("<")) skip_type_args();
        Expr s;
        s.line = peek().line;
        if (peek().is("class")) {
          next();
          s.kind = ExprKind::FieldAccess;
          s.text = "class";
        } else {
          s.text = identifier("member name");
          if (peek().is("(")) {
            s.kind = ExprKind::Call;
            s.args = arguments();
          } else {
            s.kind = ExprKind::FieldAccess;
          }
        }
        s.target = std::move(e);
        e = std::move(s);
      } else if (peek().is("[")) {
        Expr s;
        s.kind = ExprKind::ArrayAccess;
        s.line = next().line;
        s.args.push_back(std::move(e));
        s.args.push_back(expression());
        expect("]");
        e = std::move(s);
      } else {
        return e;
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---- printing ----

void print_expr(const Expr& e, std::string& out);

void print_args(const std::vector<Expr>& args, std::string& out) {
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    print_expr(args[i], out);
  }
  out += ')';
}

void print_expr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::Literal:
    case ExprKind::Name:
      out += e.text;
      break;
    case ExprKind::Null:
      out += "null";
      break;
    case ExprKind::This:
      out += "this";
      break;
    case ExprKind::FieldAccess:
      print_expr(*e.target, out);
      out += '.' + e.text;
      break;
    case ExprKind::Call:
      if (e.target) {
        print_expr(*e.target, out);
        out += '.';
      }
      out += e.text;
      print_args(e.args, out);
      break;
    case ExprKind::New:
      out += "new " + e.type.name;
      print_args(e.args, out);
      break;
    case ExprKind::NewArray: {
      out += "new " + e.type.name;
      std::size_t sized = 0;
      for (const auto& a : e.args)
        if (a.kind != ExprKind::ArrayInit) ++sized;
      for (int d = 0; d < e.type.array_dims; ++d) {
        out += '[';
        if (static_cast<std::size_t>(d) < sized) print_expr(e.args[d], out);
        out += ']';
      }
      if (!e.args.empty() && e.args.back().kind == ExprKind::ArrayInit) print_expr(e.args.back(), out);
      break;
    }
    case ExprKind::ArrayInit:
      out += '{';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        print_expr(e.args[i], out);
      }
      out += '}';
      break;
    case ExprKind::ArrayAccess:
      print_expr(e.args[0], out);
      out += '[';
      print_expr(e.args[1], out);
      out += ']';
      break;
    case ExprKind::Assign:
      out += '(';
      print_expr(e.args[0], out);
      out += ' ' + e.text + ' ';
      print_expr(e.args[1], out);
      out += ')';
      break;
    case ExprKind::Binary:
      out += '(';
      print_expr(e.args[0], out);
      out += ' ' + e.text + ' ';
      print_expr(e.args[1], out);
      out += ')';
      break;
    case ExprKind::Unary:
      out += '(';
      if (e.postfix) {
        print_expr(e.args[0], out);
        out += e.text;
      } else {
        out += e.text;
        // Keep "- -x" from printing as the decrement operator.
        out += ' ';
        print_expr(e.args[0], out);
      }
      out += ')';
      break;
    case ExprKind::Conditional:
      out += '(';
      print_expr(e.args[0], out);
      out += " ? ";
      print_expr(e.args[1], out);
      out += " : ";
      print_expr(e.args[2], out);
      out += ')';
      break;
    case ExprKind::Cast:
      out += "((" + e.type.spelled() + ") ";
      print_expr(e.args[0], out);
      out += ')';
      break;
    case ExprKind::InstanceOf:
      out += '(';
      print_expr(e.args[0], out);
      out += " instanceof " + e.type.spelled() + ')';
      break;
  }
}

/// Prints a statement-level expression; top-level assignments drop parentheses.
std::string statement_expr(const Expr& e) {
  std::string out;
  if (e.kind == ExprKind::Assign) {
    print_expr(e.args[0], out);
    out += ' ' + e.text + ' ';
    print_expr(e.args[1], out);
  } else {
    print_expr(e, out);
  }
  return out;
}

void print_block(const std::vector<Statement>& stmts, int indent, std::string& out);

void print_statement(const Statement& s, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto expr = [&](const std::optional<Expr>& e) {
    std::string r;
    if (e) print_expr(*e, r);
    return r;
  };
  switch (s.kind) {
    case StmtKind::VarDecl:
    case StmtKind::VarDeclConst:
    case StmtKind::VarDeclNull:
    case StmtKind::VarDeclNew:
      out += pad + s.type.spelled() + ' ' + s.var;
      if (s.expr) out += " = " + expr(s.expr);
      out += ";\n";
      break;
    case StmtKind::Assign:
    case StmtKind::ExprStmt:
      out += pad + statement_expr(*s.expr) + ";\n";
      break;
    case StmtKind::If:
      for (std::size_t i = 0; i < s.blocks.size(); ++i) {
        const Block& b = s.blocks[i];
        if (b.role == BlockRole::Then) out += pad + "if (" + expr(s.expr) + ") {\n";
        else if (b.role == BlockRole::ElseIf) out += pad + "} else if (" + expr(b.cond) + ") {\n";
        else out += pad + "} else {\n";
        print_block(b.body, indent + 1, out);
      }
      out += pad + "}\n";
      break;
    case StmtKind::While:
      out += pad + "while (" + expr(s.expr) + ") {\n";
      print_block(s.blocks[0].body, indent + 1, out);
      out += pad + "}\n";
      break;
    case StmtKind::DoWhile:
      out += pad + "do {\n";
      print_block(s.blocks[0].body, indent + 1, out);
      out += pad + "} while (" + expr(s.expr) + ");\n";
      break;
    case StmtKind::For: {
      std::string init;
      if (!s.init.empty() && is_declaration(s.init[0].kind)) {
        init = s.init[0].type.spelled() + ' ';
        for (std::size_t i = 0; i < s.init.size(); ++i) {
          if (i) init += ", ";
          init += s.init[i].var;
          if (s.init[i].expr) init += " = " + expr(s.init[i].expr);
        }
      } else {
        for (std::size_t i = 0; i < s.init.size(); ++i) {
          if (i) init += ", ";
          init += statement_expr(*s.init[i].expr);
        }
      }
      std::string update;
      for (std::size_t i = 0; i < s.update.size(); ++i) {
        if (i) update += ", ";
        update += statement_expr(s.update[i]);
      }
      out += pad + "for (" + init + "; " + expr(s.expr) + "; " + update + ") {\n";
      print_block(s.blocks[0].body, indent + 1, out);
      out += pad + "}\n";
      break;
    }
    case StmtKind::Foreach:
      out += pad + "for (" + s.type.spelled() + ' ' + s.var + " : " + expr(s.expr) + ") {\n";
      print_block(s.blocks[0].body, indent + 1, out);
      out += pad + "}\n";
      break;
    case StmtKind::Switch:
      out += pad + "switch (" + expr(s.expr) + ") {\n";
      for (const Block& b : s.blocks) {
        if (b.role == BlockRole::Case) out += pad + "  case " + expr(b.cond) + ":\n";
        else out += pad + "  default:\n";
        print_block(b.body, indent + 2, out);
      }
      out += pad + "}\n";
      break;
    case StmtKind::Try:
      out += pad + "try {\n";
      print_block(s.blocks[0].body, indent + 1, out);
      for (std::size_t i = 1; i < s.blocks.size(); ++i) {
        const Block& b = s.blocks[i];
        if (b.role == BlockRole::Catch) out += pad + "} catch (" + b.catch_type.spelled() + ' ' + b.catch_var + ") {\n";
        else out += pad + "} finally {\n";
        print_block(b.body, indent + 1, out);
      }
      out += pad + "}\n";
      break;
    case StmtKind::Return:
      out += pad + "return" + (s.expr ? " " + expr(s.expr) : std::string()) + ";\n";
      break;
    case StmtKind::Throw:
      out += pad + "throw " + expr(s.expr) + ";\n";
      break;
    case StmtKind::Break:
      out += pad + "break;\n";
      break;
    case StmtKind::Continue:
      out += pad + "continue;\n";
      break;
    case StmtKind::HoleMarker:
      out += pad + std::string(kHoleMarker) + ";\n";
      break;
  }
}

void print_block(const std::vector<Statement>& stmts, int indent, std::string& out) {
  for (const auto& s : stmts) print_statement(s, indent, out);
}

bool ends_type(const Token& t) {
  return t.kind == TokenKind::Identifier || t.is(">") || t.is("]") || t.is("void") || is_primitive_keyword(t);
}

}  // namespace

std::string TypeRef::spelled() const {
  std::string s = name;
  for (int i = 0; i < array_dims; ++i) s += "[]";
  return s;
}

bool is_primitive_type(std::string_view name) {
  return std::find(kPrimitives.begin(), kPrimitives.end(), name) != kPrimitives.end();
}

std::string literal_type_name(LiteralType type) {
  switch (type) {
    case LiteralType::String:
      return "java.lang.String";
    case LiteralType::Char:
      return "char";
    case LiteralType::Int:
      return "int";
    case LiteralType::Long:
      return "long";
    case LiteralType::Float:
      return "float";
    case LiteralType::Double:
      return "double";
    case LiteralType::Boolean:
      return "boolean";
  }
  return "";
}

const char* to_string(StmtKind kind) {
  switch (kind) {
    case StmtKind::VarDecl: return "VarDecl";
    case StmtKind::VarDeclConst: return "VarDeclConst";
    case StmtKind::VarDeclNull: return "VarDeclNull";
    case StmtKind::VarDeclNew: return "VarDeclNew";
    case StmtKind::Assign: return "Assign";
    case StmtKind::ExprStmt: return "ExprStmt";
    case StmtKind::If: return "If";
    case StmtKind::While: return "While";
    case StmtKind::DoWhile: return "DoWhile";
    case StmtKind::For: return "For";
    case StmtKind::Foreach: return "Foreach";
    case StmtKind::Switch: return "Switch";
    case StmtKind::Try: return "Try";
    case StmtKind::Return: return "Return";
    case StmtKind::Throw: return "Throw";
    case StmtKind::Break: return "Break";
    case StmtKind::Continue: return "Continue";
    case StmtKind::HoleMarker: return "HoleMarker";
  }
  return "?";
}

bool is_declaration(StmtKind kind) {
  return kind == StmtKind::VarDecl || kind == StmtKind::VarDeclConst || kind == StmtKind::VarDeclNull ||
         kind == StmtKind::VarDeclNew;
}

int count_holes(const MethodIR& m) {
  int n = 0;
  for_each_statement(m.body, [&](const Statement& s) { n += s.kind == StmtKind::HoleMarker; });
  return n;
}

MethodIR parse_method(std::string_view source, int first_line) {
  Parser p(tokenize(source, first_line));
  return p.method();
}

std::string to_source(const MethodIR& m) {
  std::string out = m.return_type.spelled() + ' ' + m.name + '(';
  for (std::size_t i = 0; i < m.parameters.size(); ++i) {
    if (i) out += ", ";
    out += m.parameters[i].type.spelled() + ' ' + m.parameters[i].name;
  }
  out += ") {\n";
  print_block(m.body, 1, out);
  out += "}\n";
  return out;
}

std::vector<MethodSpan> find_methods(std::string_view text) {
  std::vector<MethodSpan> spans;
  std::vector<Token> toks;
  try {
    toks = tokenize(text, 1, true);
  } catch (const SyntaxError&) {
    return spans;
  }
  auto match_close = [&](std::size_t open, std::string_view l, std::string_view r) -> std::size_t {
    int depth = 0;
    for (std::size_t k = open; k < toks.size(); ++k) {
      if (toks[k].is(l)) ++depth;
      else if (toks[k].is(r) && --depth == 0) return k;
    }
    return toks.size();
  };

  std::size_t i = 1;
  while (i + 1 < toks.size()) {
    const Token& t = toks[i];
    if (t.kind == TokenKind::Identifier && toks[i + 1].is("(") && ends_type(toks[i - 1]) &&
        !(i >= 2 && (toks[i - 2].is("new") || toks[i - 2].is(".")))) {
      std::size_t close = match_close(i + 1, "(", ")");
      if (close >= toks.size()) break;
      std::size_t k = close + 1;
      while (k + 1 < toks.size() && toks[k].is("[") && toks[k + 1].is("]")) k += 2;
      if (k < toks.size() && toks[k].is("throws")) {
        ++k;
        while (k < toks.size() && (toks[k].kind == TokenKind::Identifier || toks[k].is(".") || toks[k].is(",") ||
                                   toks[k].is("<") || toks[k].is(">")))
          ++k;
      }
      if (k < toks.size() && toks[k].is("{")) {
        const std::size_t end = match_close(k, "{", "}");
        if (end >= toks.size()) break;
        // Walk back over the return type, type parameters and modifiers.
        std::size_t begin = i;
        while (begin > 0) {
          const Token& p = toks[begin - 1];
          if (p.is(";") || p.is("{") || p.is("}") || p.is("=") || p.is("(") || p.is(",") || p.is(")")) break;
          --begin;
        }
        MethodSpan span;
        span.name = t.text;
        span.begin = toks[begin].offset;
        span.end = toks[end].offset + 1;
        span.first_line = toks[begin].line;
        span.last_line = toks[end].line;
        spans.push_back(std::move(span));
        i = end + 1;
        continue;
      }
    }
    ++i;
  }
  return spans;
}

std::string insert_hole_marker(std::string_view text, int line) {
  std::size_t pos = 0;
  for (int l = 1; l < line; ++l) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      pos = text.size();
      break;
    }
    pos = nl + 1;
  }
  std::string out(text.substr(0, pos));
  out += std::string(kHoleMarker) + "; ";
  out += text.substr(pos);
  return out;
}

}  // namespace apirec
