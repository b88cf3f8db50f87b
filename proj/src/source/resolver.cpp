// SPDX-License-Identifier: Apache-2.0
#include "apirec/source/resolver.hpp"

#include <algorithm>
#include <map>

namespace apirec {
namespace {

constexpr std::string_view kClassRef = "class:";
constexpr std::string_view kNullType = "null";

std::optional<std::string> dotted_name(const Expr& e) {
  if (e.kind == ExprKind::Name) return e.text;
  if (e.kind == ExprKind::FieldAccess && e.target) {
    if (auto prefix = dotted_name(*e.target)) return *prefix + "." + e.text;
  }
  return std::nullopt;
}

const Expr& root_of(const Expr& e) {
  const Expr* cur = &e;
  while (cur->kind == ExprKind::FieldAccess && cur->target) cur = cur->target.get();
  return *cur;
}

bool arg_matches(const ApiCatalog& catalog, const std::string& arg, const std::string& param) {
  if (arg.empty()) return true;
  if (arg == kNullType) return !is_primitive_type(param);
  return arg == param || catalog.is_subtype(arg, param);
}

class Resolver {
 public:
  explicit Resolver(const ApiCatalog& catalog) : catalog_(catalog) {}

  void run(MethodIR& m) {
    scopes_.emplace_back();
    for (auto& p : m.parameters) {
      p.resolved_type = qualify_type(p.type, catalog_);
      declare(p.name, p.resolved_type);
    }
    block(m.body);
    scopes_.clear();
  }

 private:
  void declare(const std::string& name, const std::string& type) { scopes_.back()[name] = type; }

  const std::string* lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (auto f = it->find(name); f != it->end()) return &f->second;
    }
    return nullptr;
  }

  void block(std::vector<Statement>& stmts) {
    scopes_.emplace_back();
    for (auto& s : stmts) statement(s);
    scopes_.pop_back();
  }

  void statement(Statement& s) {
    switch (s.kind) {
      case StmtKind::VarDecl:
      case StmtKind::VarDeclConst:
      case StmtKind::VarDeclNull:
      case StmtKind::VarDeclNew:
        s.resolved_type = qualify_type(s.type, catalog_);
        if (s.expr) expr(*s.expr);
        declare(s.var, s.resolved_type);
        return;
      case StmtKind::Foreach:
        expr(*s.expr);
        s.resolved_type = qualify_type(s.type, catalog_);
        scopes_.emplace_back();
        declare(s.var, s.resolved_type);
        block(s.blocks[0].body);
        scopes_.pop_back();
        return;
      case StmtKind::For:
        scopes_.emplace_back();
        for (auto& i : s.init) statement(i);
        if (s.expr) expr(*s.expr);
        for (auto& u : s.update) expr(u);
        block(s.blocks[0].body);
        scopes_.pop_back();
        return;
      default:
        break;
    }
    if (s.kind == StmtKind::Assign) {
      if (const auto* t = lookup(s.var)) s.resolved_type = *t;
    }
    if (s.expr) expr(*s.expr);
    for (auto& b : s.blocks) {
      if (b.cond) expr(*b.cond);
      scopes_.emplace_back();
      if (b.role == BlockRole::Catch) declare(b.catch_var, qualify_type(b.catch_type, catalog_));
      block(b.body);
      scopes_.pop_back();
    }
  }

  /// Static type of a class reference expression such as `Integer` or
  /// `java.util.Collections`, when the root name is not a variable.
  std::optional<std::string> class_reference(const Expr& e) const {
    if (e.kind != ExprKind::Name && e.kind != ExprKind::FieldAccess) return std::nullopt;
    const Expr& root = root_of(e);
    if (root.kind != ExprKind::Name || lookup(root.text)) return std::nullopt;
    auto name = dotted_name(e);
    if (!name) return std::nullopt;
    if (const ApiClass* cls = catalog_.find_class(*name)) return cls->fq_name;
    return std::nullopt;
  }

  std::optional<std::string> variable_name(const Expr& e) const {
    if (e.kind == ExprKind::Name && lookup(e.text)) return e.text;
    return std::nullopt;
  }

  std::vector<std::string> argument_types(std::vector<Expr>& args) {
    std::vector<std::string> types;
    types.reserve(args.size());
    for (auto& a : args) types.push_back(expr(a));
    return types;
  }

  ResolvedRef make_ref(ApiSignature sig, const Expr* receiver, const std::vector<Expr>& args) const {
    ResolvedRef ref;
    ref.signature = std::move(sig);
    if (receiver) ref.receiver_var = variable_name(*receiver);
    for (const auto& a : args) ref.arg_vars.push_back(variable_name(a));
    return ref;
  }

  /// Resolves `e` in place and returns its static type ("" when unknown).
  std::string expr(Expr& e) {
    std::string type = compute(e);
    e.static_type = type.rfind(kClassRef, 0) == 0 || type == kNullType ? std::string() : type;
    return type;
  }

  std::string compute(Expr& e) {
    switch (e.kind) {
      case ExprKind::Literal:
        return literal_type_name(e.literal);
      case ExprKind::Null:
        return std::string(kNullType);
      case ExprKind::This:
        return "";
      case ExprKind::Name: {
        if (const auto* t = lookup(e.text)) return *t;
        if (auto cls = class_reference(e)) return std::string(kClassRef) + *cls;
        return "";
      }
      case ExprKind::FieldAccess: {
        if (auto cls = class_reference(e)) return std::string(kClassRef) + *cls;
        const std::string target = expr(*e.target);
        const bool is_static = target.rfind(kClassRef, 0) == 0;
        const std::string owner = is_static ? target.substr(kClassRef.size()) : target;
        if (owner.empty() || owner == kNullType || !catalog_.find_class(owner)) return "";
        auto sig = select_member(catalog_, owner, MemberKind::Field, e.text, {});
        if (!sig) return "";
        e.ref = make_ref(*sig, is_static ? nullptr : e.target.get(), {});
        return sig->return_type;
      }
      case ExprKind::Call: {
        std::string target;
        if (e.target) target = expr(*e.target);
        const auto arg_types = argument_types(e.args);
        if (!e.target) return "";
        const bool is_static = target.rfind(kClassRef, 0) == 0;
        const std::string owner = is_static ? target.substr(kClassRef.size()) : target;
        if (owner.empty() || owner == kNullType || !catalog_.find_class(owner)) return "";
        auto sig = select_member(catalog_, owner, MemberKind::Method, e.text, arg_types);
        if (!sig) return "";
        e.ref = make_ref(*sig, is_static ? nullptr : e.target.get(), e.args);
        return sig->return_type == "void" ? "" : sig->return_type;
      }
      case ExprKind::New: {
        const auto arg_types = argument_types(e.args);
        const std::string cls = qualify_type(e.type, catalog_);
        if (cls.empty() || !catalog_.find_class(cls)) return cls;
        if (auto sig = select_member(catalog_, cls, MemberKind::Constructor, "new", arg_types))
          e.ref = make_ref(*sig, nullptr, e.args);
        return cls;
      }
      case ExprKind::NewArray:
        for (auto& a : e.args) expr(a);
        return qualify_type(e.type, catalog_);
      case ExprKind::ArrayInit:
        for (auto& a : e.args) expr(a);
        return "";
      case ExprKind::ArrayAccess: {
        std::string t = expr(e.args[0]);
        expr(e.args[1]);
        if (t.size() > 2 && t.ends_with("[]")) return t.substr(0, t.size() - 2);
        return "";
      }
      case ExprKind::Assign: {
        std::string lhs = expr(e.args[0]);
        expr(e.args[1]);
        return lhs;
      }
      case ExprKind::Binary: {
        const std::string a = expr(e.args[0]);
        const std::string b = expr(e.args[1]);
        const std::string& op = e.text;
        if (op == "==" || op == "!=" || op == "<" || op == ">" || op == "<=" || op == ">=" || op == "&&" ||
            op == "||")
          return "boolean";
        if (op == "+" && (a == "java.lang.String" || b == "java.lang.String")) return "java.lang.String";
        if (a == b && is_primitive_type(a)) return a;
        return "";
      }
      case ExprKind::Unary: {
        const std::string t = expr(e.args[0]);
        return e.text == "!" ? "boolean" : t;
      }
      case ExprKind::Conditional: {
        expr(e.args[0]);
        const std::string a = expr(e.args[1]);
        const std::string b = expr(e.args[2]);
        return a == b ? a : "";
      }
      case ExprKind::Cast:
        expr(e.args[0]);
        return qualify_type(e.type, catalog_);
      case ExprKind::InstanceOf:
        expr(e.args[0]);
        return "boolean";
    }
    return "";
  }

  const ApiCatalog& catalog_;
  std::vector<std::map<std::string, std::string>> scopes_;
};

}  // namespace

std::string qualify_type(const TypeRef& type, const ApiCatalog& catalog) {
  std::string base;
  if (is_primitive_type(type.name)) {
    base = type.name;
  } else if (const ApiClass* cls = catalog.find_class(type.name)) {
    base = cls->fq_name;
  } else {
    return "";
  }
  for (int i = 0; i < type.array_dims; ++i) base += "[]";
  return base;
}

std::optional<ApiSignature> select_member(const ApiCatalog& catalog, const std::string& fq_class, MemberKind kind,
                                          const std::string& member, const std::vector<std::string>& arg_types) {
  std::vector<const ApiSignature*> candidates;
  const std::vector<std::string> owners =
      kind == MemberKind::Constructor ? std::vector<std::string>{fq_class} : catalog.lineage(fq_class);
  for (const auto& owner : owners) {
    const ApiClass* cls = catalog.find_class(owner);
    if (!cls) continue;
    for (std::size_t idx : cls->members) {
      const ApiSignature& sig = catalog.entries()[idx];
      if (sig.kind == kind && sig.member == member && sig.param_types.size() == arg_types.size())
        candidates.push_back(&sig);
    }
    if (!candidates.empty()) break;
  }
  if (candidates.empty()) return std::nullopt;

  auto filter = [&](const std::vector<const ApiSignature*>& from, auto&& match) {
    std::vector<const ApiSignature*> kept;
    for (const auto* sig : from) {
      bool ok = true;
      for (std::size_t i = 0; i < arg_types.size() && ok; ++i) ok = match(arg_types[i], sig->param_types[i]);
      if (ok) kept.push_back(sig);
    }
    return kept;
  };
  const auto compatible = filter(candidates, [&](const std::string& a, const std::string& p) {
    return arg_matches(catalog, a, p);
  });
  const auto exact = filter(compatible, [](const std::string& a, const std::string& p) {
    return a.empty() || a == kNullType || a == p;
  });
  const auto& pool = !exact.empty() ? exact : !compatible.empty() ? compatible : candidates;
  const auto* best = *std::min_element(pool.begin(), pool.end(), [](const ApiSignature* a, const ApiSignature* b) {
    return a->param_types < b->param_types;
  });
  return *best;
}

MethodIR resolve_apis(MethodIR m, const ApiCatalog& catalog) {
  Resolver(catalog).run(m);
  m.resolved = true;
  return m;
}

}  // namespace apirec
