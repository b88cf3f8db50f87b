// SPDX-License-Identifier: Apache-2.0
#include "apirec/graph/builder.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace apirec {
namespace {

std::string join_params(const std::vector<std::string>& params) {
  std::string out = "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ',';
    out += params[i];
  }
  return out + ")";
}

bool is_site(const Expr& e) {
  return (e.kind == ExprKind::Call || e.kind == ExprKind::FieldAccess || e.kind == ExprKind::New) && e.ref;
}

/// Resolved chain elements ending at `top`, innermost first.
std::vector<const Expr*> chain_of(const Expr& top) {
  std::vector<const Expr*> chain{&top};
  const Expr* cur = &top;
  while (cur->kind != ExprKind::New && cur->target && is_site(*cur->target)) {
    cur = cur->target.get();
    chain.push_back(cur);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::string element_label(const Expr& e, bool qualified) {
  const ApiSignature& sig = e.ref->signature;
  std::string owner = sig.fq_class;
  // instance members are named after the receiver's declared class
  if (e.kind != ExprKind::New && e.target && !e.target->static_type.empty()) owner = e.target->static_type;
  std::string out = qualified ? owner + "." : ".";
  out += sig.member;
  if (sig.kind != MemberKind::Field) out += join_params(sig.param_types);
  return out;
}

void collect_names(const Expr& e, std::set<std::string>& out) {
  for_each_expr(e, [&](const Expr& x) {
    if (x.kind == ExprKind::Name) out.insert(x.text);
  });
}

class GraphBuilder {
 public:
  explicit GraphBuilder(const MethodIR& m) {
    for (const auto& p : m.parameters) variables_.insert(p.name);
    for_each_statement(m.body, [&](const Statement& s) {
      if (!s.var.empty()) variables_.insert(s.var);
      for (const auto& b : s.blocks)
        if (!b.catch_var.empty()) variables_.insert(b.catch_var);
    });
  }

  ApiContextGraph build(const MethodIR& m) {
    enter_block();
    block(m.body);
    leave_block();
    normalize_edges(graph_.edges);
    bool has_api = false;
    for (const auto& n : graph_.nodes) has_api |= n.label != kHoleLabel;
    if (!has_api) throw EmptyMethodError();
    return std::move(graph_);
  }

 private:
  struct Unit {
    int statement = -1;
    int line = 0;
    std::vector<std::string> vars;
  };

  void enter_block() { block_path_.push_back(next_block_id_++); }
  void leave_block() { block_path_.pop_back(); }

  int new_node(std::string label, const Unit* unit) {
    const int id = static_cast<int>(graph_.nodes.size());
    GraphNode node;
    node.id = id;
    node.label = std::move(label);
    if (unit) node.origin = NodeOrigin{unit->statement, unit->line, unit->vars};
    graph_.nodes.push_back(std::move(node));
    return id;
  }

  void edge(int src, int dst, EdgeType t) { graph_.edges.push_back({src, dst, t}); }

  /// A statement-level node: linked from the frontier, wired to a pending
  /// hole when it follows the hole in the same or an enclosing block, and
  /// fed by data flow from the last writers of `uses`.
  int sequential(std::string label, const Unit& unit, const std::set<std::string>& uses = {}) {
    const int id = new_node(std::move(label), &unit);
    if (pending_hole_ && std::equal(block_path_.begin(), block_path_.end(), hole_path_.begin(),
                                    hole_path_.begin() + std::min(block_path_.size(), hole_path_.size())) &&
        block_path_.size() <= hole_path_.size()) {
      edge(*pending_hole_, id, EdgeType::S);
      pending_hole_.reset();
    }
    if (frontier_) edge(*frontier_, id, EdgeType::C);
    frontier_ = id;
    for (const auto& v : uses) {
      if (auto it = last_def_.find(v); it != last_def_.end() && it->second != id) edge(it->second, id, EdgeType::D);
    }
    return id;
  }

  /// Child of a control node (Condition, Body, ...); becomes the frontier.
  int scope_unit(int parent, const char* label) {
    const int id = new_node(label, nullptr);
    edge(parent, id, EdgeType::C);
    frontier_ = id;
    return id;
  }

  Unit unit_for(const Statement& s, const Expr* e) const {
    Unit u;
    u.statement = current_;
    u.line = s.line;
    std::set<std::string> names;
    if (is_declaration(s.kind) || s.kind == StmtKind::Assign) names.insert(s.var);
    if (e) collect_names(*e, names);
    for (const auto& n : names)
      if (variables_.count(n)) u.vars.push_back(n);
    return u;
  }

  std::set<std::string> chain_uses(const std::vector<const Expr*>& chain) const {
    std::set<std::string> uses;
    for (const Expr* el : chain) {
      if (el->ref->receiver_var) uses.insert(*el->ref->receiver_var);
      for (const auto& a : el->ref->arg_vars)
        if (a) uses.insert(*a);
    }
    return uses;
  }

  void expr(const Expr& e, const Unit& unit) {
    if (is_site(e)) {
      const auto chain = chain_of(e);
      const Expr& inner = *chain.front();
      if (inner.target) expr(*inner.target, unit);
      for (const Expr* el : chain)
        for (const auto& a : el->args) expr(a, unit);
      sequential(*site_label(e), unit, chain_uses(chain));
      return;
    }
    if (e.kind == ExprKind::Assign) {
      const std::size_t before = graph_.nodes.size();
      expr(e.args[1], unit);
      const Expr& lhs = e.args[0];
      if (lhs.kind == ExprKind::Name) {
        define(lhs.text, before, e.text == "=" ? &e.args[1] : nullptr, lhs.static_type, unit);
      } else {
        if (lhs.target) expr(*lhs.target, unit);
        for (const auto& a : lhs.args) expr(a, unit);
      }
      return;
    }
    if (e.target) expr(*e.target, unit);
    for (const auto& a : e.args) expr(a, unit);
  }

  /// Records `var` as defined by the node(s) emitted since `before`. A plain
  /// literal or null assignment without nodes gets a Constant/Null node.
  void define(const std::string& var, std::size_t before, const Expr* rhs, const std::string& type,
              const Unit& unit) {
    if (graph_.nodes.size() == before && rhs && !type.empty()) {
      if (rhs->kind == ExprKind::Null) sequential(declaration_label(type, DeclForm::Null), unit);
      else if (is_literal(*rhs)) sequential(declaration_label(type, DeclForm::Constant), unit);
    }
    if (graph_.nodes.size() > before) last_def_[var] = static_cast<int>(graph_.nodes.size()) - 1;
    else last_def_.erase(var);
  }

  static bool is_literal(const Expr& e) {
    if (e.kind == ExprKind::Literal) return true;
    return e.kind == ExprKind::Unary && (e.text == "-" || e.text == "+") && e.args.size() == 1 &&
           e.args[0].kind == ExprKind::Literal;
  }

  void declaration(const Statement& s) {
    const Unit unit = unit_for(s, s.expr ? &*s.expr : nullptr);
    const std::size_t before = graph_.nodes.size();
    if (s.expr) expr(*s.expr, unit);
    if (graph_.nodes.size() == before && !s.resolved_type.empty()) {
      DeclForm form = DeclForm::Declaration;
      if (s.kind == StmtKind::VarDeclConst) form = DeclForm::Constant;
      if (s.kind == StmtKind::VarDeclNull) form = DeclForm::Null;
      sequential(declaration_label(s.resolved_type, form), unit);
    }
    if (graph_.nodes.size() > before) last_def_[s.var] = static_cast<int>(graph_.nodes.size()) - 1;
    else last_def_.erase(s.var);
  }

  void block(const std::vector<Statement>& stmts) {
    for (const auto& s : stmts) statement(s);
  }

  /// Nodes of a control statement's sub-block hang off `unit_node`.
  void sub_block(int unit_node, const std::vector<Statement>& body) {
    frontier_ = unit_node;
    const int saved = current_;
    enter_block();
    block(body);
    leave_block();
    current_ = saved;
  }

  void condition(int owner, const Statement& s, const Expr* cond) {
    const int c = scope_unit(owner, "Condition");
    frontier_ = c;
    enter_block();
    if (cond) expr(*cond, unit_for(s, cond));
    leave_block();
  }

  void statement(const Statement& s) {
    const int index = ++statement_index_;
    current_ = index;
    statement_body(s, index);
  }

  void statement_body(const Statement& s, int index) {
    switch (s.kind) {
      case StmtKind::VarDecl:
      case StmtKind::VarDeclConst:
      case StmtKind::VarDeclNull:
      case StmtKind::VarDeclNew:
        declaration(s);
        return;
      case StmtKind::Assign:
      case StmtKind::ExprStmt:
        expr(*s.expr, unit_for(s, &*s.expr));
        return;
      case StmtKind::Return:
      case StmtKind::Throw:
        if (s.expr) expr(*s.expr, unit_for(s, &*s.expr));
        frontier_.reset();
        return;
      case StmtKind::Break:
      case StmtKind::Continue:
        frontier_.reset();
        return;
      case StmtKind::HoleMarker: {
        const int h = new_node(std::string(kHoleLabel), nullptr);
        graph_.nodes[h].origin = NodeOrigin{index, s.line, {}};
        graph_.hole = h;
        if (frontier_) edge(*frontier_, h, EdgeType::S);
        pending_hole_ = h;
        hole_path_ = block_path_;
        return;
      }
      case StmtKind::While:
      case StmtKind::For:
      case StmtKind::Foreach: {
        const char* label = s.kind == StmtKind::While ? "While" : s.kind == StmtKind::For ? "For" : "Foreach";
        const int owner = sequential(label, unit_for(s, nullptr));
        const int cond = scope_unit(owner, "Condition");
        enter_block();
        if (s.kind == StmtKind::For) {
          for (const auto& i : s.init) statement(i);
          current_ = index;
          if (s.expr) expr(*s.expr, unit_for(s, &*s.expr));
          for (const auto& u : s.update) expr(u, unit_for(s, &u));
        } else if (s.kind == StmtKind::Foreach) {
          const Unit unit = unit_for(s, &*s.expr);
          expr(*s.expr, unit);
          if (!s.resolved_type.empty()) {
            Unit decl = unit;
            decl.vars = {s.var};
            last_def_[s.var] = sequential(declaration_label(s.resolved_type, DeclForm::Declaration), decl);
          } else {
            last_def_.erase(s.var);
          }
        } else if (s.expr) {
          expr(*s.expr, unit_for(s, &*s.expr));
        }
        leave_block();
        (void)cond;
        sub_block(scope_unit(owner, "Body"), s.blocks[0].body);
        frontier_ = owner;
        return;
      }
      case StmtKind::DoWhile: {
        const int owner = sequential("DoWhile", unit_for(s, nullptr));
        sub_block(scope_unit(owner, "Body"), s.blocks[0].body);
        condition(owner, s, s.expr ? &*s.expr : nullptr);
        frontier_ = owner;
        return;
      }
      case StmtKind::If: {
        const int owner = sequential("If", unit_for(s, nullptr));
        condition(owner, s, &*s.expr);
        int prev = owner;
        for (const Block& b : s.blocks) {
          if (b.role == BlockRole::Then) {
            sub_block(scope_unit(owner, "Then"), b.body);
          } else if (b.role == BlockRole::ElseIf) {
            const int elif = scope_unit(prev, "ElseIf");
            condition(elif, s, &*b.cond);
            sub_block(scope_unit(elif, "Then"), b.body);
            prev = elif;
          } else {
            sub_block(scope_unit(prev, "Else"), b.body);
          }
        }
        frontier_ = owner;
        return;
      }
      case StmtKind::Switch: {
        const int owner = sequential("Switch", unit_for(s, nullptr));
        scope_unit(owner, "Selector");
        enter_block();
        expr(*s.expr, unit_for(s, &*s.expr));
        leave_block();
        for (const Block& b : s.blocks)
          sub_block(scope_unit(owner, b.role == BlockRole::Case ? "Case" : "Default"), b.body);
        frontier_ = owner;
        return;
      }
      case StmtKind::Try: {
        const int owner = sequential("Try", unit_for(s, nullptr));
        sub_block(scope_unit(owner, "Body"), s.blocks[0].body);
        int prev = owner;
        for (std::size_t i = 1; i < s.blocks.size(); ++i) {
          const Block& b = s.blocks[i];
          const int unit = scope_unit(prev, b.role == BlockRole::Catch ? "Catch" : "Finally");
          if (b.role == BlockRole::Catch) last_def_.erase(b.catch_var);
          sub_block(unit, b.body);
          prev = unit;
        }
        frontier_ = owner;
        return;
      }
    }
  }

  ApiContextGraph graph_;
  std::set<std::string> variables_;
  std::map<std::string, int> last_def_;
  std::optional<int> frontier_;
  std::optional<int> pending_hole_;
  std::vector<int> block_path_;
  std::vector<int> hole_path_;
  int next_block_id_ = 0;
  int statement_index_ = -1;
  int current_ = -1;
};

}  // namespace

std::optional<std::string> site_label(const Expr& site) {
  if (!is_site(site)) return std::nullopt;
  const auto chain = chain_of(site);
  std::string label;
  for (std::size_t i = 0; i < chain.size(); ++i) label += element_label(*chain[i], i == 0);
  return label;
}

std::string declaration_label(std::string_view fq_type, DeclForm form) {
  std::string label(fq_type);
  switch (form) {
    case DeclForm::Declaration: return label + ".Declaration";
    case DeclForm::Constant: return label + ".Constant";
    case DeclForm::Null: return label + ".Null";
  }
  return label;
}

ApiContextGraph build_graph(const MethodIR& m) {
  GraphBuilder builder(m);
  return builder.build(m);
}

}  // namespace apirec
