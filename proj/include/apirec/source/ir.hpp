// SPDX-License-Identifier: Apache-2.0
//
// Statement-level intermediate representation of a single parsed method.
// Expressions and statements are plain value types; deep copies are cheap
// enough at method scale and keep annotated copies independent of the input.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apirec/source/catalog.hpp"

namespace apirec {

/// Owning pointer with value semantics (deep copy) for recursive IR nodes.
template <typename T>
class Box {
 public:
  Box() = default;
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)
  Box(const Box& other) : ptr_(other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr;
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  explicit operator bool() const noexcept { return static_cast<bool>(ptr_); }
  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }
  T* get() { return ptr_.get(); }
  const T* get() const { return ptr_.get(); }

 private:
  std::unique_ptr<T> ptr_;
};

/// A type as written in source, with generic arguments erased.
struct TypeRef {
  std::string name;  // "String", "java.util.List", "int"
  int array_dims = 0;

  bool empty() const { return name.empty(); }
  std::string spelled() const;
  bool operator==(const TypeRef&) const = default;
};

bool is_primitive_type(std::string_view name);

enum class LiteralType { String, Char, Int, Long, Float, Double, Boolean };

/// Fully qualified type name a literal evaluates to ("java.lang.String", "int", ...).
std::string literal_type_name(LiteralType type);

enum class ExprKind {
  Literal,
  Null,
  Name,
  This,
  FieldAccess,  // target.name
  Call,         // [target.]name(args)
  New,          // new Type(args)
  NewArray,     // new Type[dims] / new Type[]{...}
  ArrayInit,    // {a, b}
  ArrayAccess,  // args[0][args[1]]
  Assign,       // args[0] op args[1]
  Binary,
  Unary,        // prefix unless postfix flag
  Conditional,  // args[0] ? args[1] : args[2]
  Cast,         // (type) args[0]
  InstanceOf,   // args[0] instanceof type
};

/// Resolution outcome attached to call, field-access and creation sites.
struct ResolvedRef {
  ApiSignature signature;
  std::optional<std::string> receiver_var;
  std::vector<std::optional<std::string>> arg_vars;

  bool operator==(const ResolvedRef&) const = default;
};

struct Expr {
  ExprKind kind = ExprKind::Null;
  std::string text;  // identifier, member name, operator or literal spelling
  LiteralType literal = LiteralType::Int;
  bool postfix = false;
  TypeRef type;  // New, NewArray, Cast, InstanceOf
  Box<Expr> target;
  std::vector<Expr> args;
  int line = 0;

  // Filled by resolve_apis.
  std::optional<ResolvedRef> ref;
  std::string static_type;  // fully qualified, empty when unknown
};

enum class StmtKind {
  VarDecl,
  VarDeclConst,
  VarDeclNull,
  VarDeclNew,
  Assign,
  ExprStmt,
  If,
  While,
  DoWhile,
  For,
  Foreach,
  Switch,
  Try,
  Return,
  Throw,
  Break,
  Continue,
  HoleMarker,
};

const char* to_string(StmtKind kind);

bool is_declaration(StmtKind kind);

struct Statement;

enum class BlockRole { Then, ElseIf, Else, Body, Case, Default, Catch, Finally };

/// A nested statement list owned by a control statement.
struct Block {
  BlockRole role = BlockRole::Body;
  std::optional<Expr> cond;  // else-if condition or case label
  TypeRef catch_type;
  std::string catch_var;
  std::vector<Statement> body;
  int line = 0;
};

struct Statement {
  StmtKind kind = StmtKind::ExprStmt;
  int line = 0;
  TypeRef type;     // declarations and foreach variable
  std::string var;  // declared or assigned variable
  // Declaration initializer, assignment/expression statement, loop or if
  // condition, switch selector, foreach iterable, return/throw value.
  std::optional<Expr> expr;
  std::vector<Statement> init;  // for-loop initializers
  std::vector<Expr> update;     // for-loop updates
  std::vector<Block> blocks;

  // Filled by resolve_apis: fully qualified declared type ("" when unknown).
  std::string resolved_type;
};

struct Parameter {
  std::string name;
  TypeRef type;
  std::string resolved_type;
  bool operator==(const Parameter&) const = default;
};

struct MethodIR {
  std::string name;
  TypeRef return_type;
  std::vector<Parameter> parameters;
  std::vector<Statement> body;
  int line = 1;
  bool resolved = false;
};

/// Depth-first visit of every statement (control statements before their blocks).
template <typename Fn>
void for_each_statement(const std::vector<Statement>& stmts, Fn&& fn) {
  for (const auto& s : stmts) {
    fn(s);
    for (const auto& i : s.init) fn(i);
    for (const auto& b : s.blocks) for_each_statement(b.body, fn);
  }
}

template <typename Fn>
void for_each_expr(const Expr& e, Fn&& fn) {
  fn(e);
  if (e.target) for_each_expr(*e.target, fn);
  for (const auto& a : e.args) for_each_expr(a, fn);
}

/// Number of HoleMarker statements anywhere in the method.
int count_holes(const MethodIR& m);

}  // namespace apirec
