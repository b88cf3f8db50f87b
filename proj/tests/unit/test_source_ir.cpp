// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "apirec/source/errors.hpp"
#include "apirec/source/parser.hpp"
#include "apirec/source/resolver.hpp"
#include "fixtures.hpp"
#include "synthetic.hpp"

using namespace apirec;

namespace {

ApiCatalog catalog_from(const std::string& text) {
  std::istringstream in(text);
  return ApiCatalog::parse(in);
}

std::string shape(const std::vector<Statement>& body) {
  std::string out;
  for_each_statement(body, [&](const Statement& s) {
    out += to_string(s.kind);
    out += ":" + s.var + ":" + std::to_string(s.blocks.size()) + ";";
  });
  return out;
}

const Expr* find_call(const Expr& e, const std::string& member) {
  const Expr* hit = nullptr;
  for_each_expr(e, [&](const Expr& x) {
    if (!hit && x.ref && x.ref->signature.member == member) hit = &x;
  });
  return hit;
}

const Expr* find_in(const MethodIR& m, const std::string& member) {
  const Expr* hit = nullptr;
  for_each_statement(m.body, [&](const Statement& s) {
    if (!hit && s.expr) hit = find_call(*s.expr, member);
    for (const auto& b : s.blocks)
      if (!hit && b.cond) hit = find_call(*b.cond, member);
  });
  return hit;
}

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("single method line gives one entry") {
    const auto c = catalog_from("M java.lang.String hashCode () int\n");
    CHECK(c.member_count() == 1);
    CHECK(c.class_count() == 1);
    const auto& e = c.entries().front();
    CHECK(e.kind == MemberKind::Method);
    CHECK(e.fq_class == "java.lang.String");
    CHECK(e.member == "hashCode");
    CHECK(e.param_types.empty());
    CHECK(e.return_type == "int");
  }

  TEST_CASE("duplicate lines collapse") {
    const std::string line = "M java.lang.String hashCode () int\n";
    const auto once = catalog_from(line + "C java.io.File - (java.lang.String) void\n");
    const auto twice = catalog_from(line + line + "C java.io.File - (java.lang.String) void\n");
    CHECK(once.entries() == twice.entries());
    CHECK(twice.member_count() == 2);
  }

  TEST_CASE("format errors carry the line number") {
    try {
      catalog_from("M java.lang.String hashCode () int\n\nQ bogus line\n");
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.position() == 3);
    }
    CHECK_THROWS_AS(catalog_from(""), FormatError);
    CHECK_THROWS_AS(catalog_from("# only a comment\n"), FormatError);
    CHECK_THROWS_AS(catalog_from("F a.B f (int) int\n"), FormatError);
    CHECK_THROWS_AS(catalog_from("M a.B f (int int\n"), FormatError);
  }

  TEST_CASE("extends relation gives lineage and subtyping") {
    const auto c = catalog_from(
        "X java.io.FileWriter extends java.io.Writer\n"
        "M java.io.Writer write (java.lang.String) void\n");
    CHECK(c.is_subtype("java.io.FileWriter", "java.io.Writer"));
    CHECK_FALSE(c.is_subtype("java.io.Writer", "java.io.FileWriter"));
    const auto lin = c.lineage("java.io.FileWriter");
    REQUIRE(lin.size() >= 2);
    CHECK(lin[0] == "java.io.FileWriter");
    CHECK(lin[1] == "java.io.Writer");
  }

  TEST_CASE("every member belongs to exactly one class") {
    const auto& c = testing::jdk_catalog();
    std::set<std::string> classes;
    for (const auto& e : c.entries()) {
      REQUIRE(c.find_class(e.fq_class) != nullptr);
      classes.insert(e.fq_class);
    }
    std::map<std::size_t, int> seen;
    for (const auto& name : classes)
      for (std::size_t idx : c.find_class(name)->members) ++seen[idx];
    CHECK(seen.size() == c.entries().size());
    for (const auto& [idx, n] : seen) CHECK(n == 1);
  }

  TEST_CASE("bundled catalog loads") {
    const auto& c = testing::jdk_catalog();
    CHECK(c.member_count() > 200);
    CHECK(c.find_class("String") != nullptr);
    CHECK(c.find_class("java.util.ArrayList") != nullptr);
  }
}

TEST_SUITE("parser") {
  TEST_CASE("single declaration") {
    const auto m = parse_method("void f(){ String s; }");
    CHECK(m.name == "f");
    REQUIRE(m.body.size() == 1);
    CHECK(m.body[0].kind == StmtKind::VarDecl);
    CHECK(m.body[0].type.name == "String");
    CHECK(m.body[0].var == "s");
  }

  TEST_CASE("declaration kinds follow the initializer") {
    const auto m = parse_method("void f(){ String a; String b = \"x\"; String c = null; File d = new File(a); int e = -1; }");
    REQUIRE(m.body.size() == 5);
    CHECK(m.body[0].kind == StmtKind::VarDecl);
    CHECK(m.body[1].kind == StmtKind::VarDeclConst);
    CHECK(m.body[2].kind == StmtKind::VarDeclNull);
    CHECK(m.body[3].kind == StmtKind::VarDeclNew);
    CHECK(m.body[4].kind == StmtKind::VarDeclConst);
  }

  TEST_CASE("sample hash-code method structure") {
    const auto m = testing::load_sample("ComputeHashCode.java").ir;
    CHECK(m.name == "computeHashCode");
    REQUIRE(m.parameters.size() == 1);
    CHECK(m.parameters[0].name == "path");
    // 5 statements before the loop, the loop, close, return
    REQUIRE(m.body.size() == 7);
    CHECK(m.body[0].line == 2);
    CHECK(m.body[6].line == 12);
    const Statement& loop = m.body[4];
    CHECK(loop.kind == StmtKind::While);
    CHECK(loop.line == 6);
    REQUIRE(loop.expr.has_value());
    REQUIRE(loop.blocks.size() == 1);
    CHECK(loop.blocks[0].role == BlockRole::Body);
    REQUIRE(loop.blocks[0].body.size() == 3);
    CHECK(loop.blocks[0].body[0].line == 7);
    CHECK(loop.blocks[0].body[1].kind == StmtKind::Assign);
    CHECK(loop.blocks[0].body[2].line == 9);
    CHECK(m.body[6].kind == StmtKind::Return);
  }

  TEST_CASE("control statements carry their blocks") {
    const auto m = parse_method(R"(void f(int k, List<String> xs) {
      if (k > 0) { k = 1; } else if (k < 0) { k = 2; } else { k = 3; }
      do { k--; } while (k > 0);
      for (int i = 0; i < k; i++) { xs.clear(); }
      for (String x : xs) { x.trim(); }
      switch (k) { case 1: k = 0; break; default: k = 1; }
      try { xs.clear(); } catch (Exception e) { e.getMessage(); } finally { xs.clear(); }
    })");
    REQUIRE(m.body.size() == 6);
    const auto& i = m.body[0];
    CHECK(i.kind == StmtKind::If);
    REQUIRE(i.blocks.size() == 3);
    CHECK(i.blocks[0].role == BlockRole::Then);
    CHECK(i.blocks[1].role == BlockRole::ElseIf);
    CHECK(i.blocks[1].cond.has_value());
    CHECK(i.blocks[2].role == BlockRole::Else);
    CHECK(m.body[1].kind == StmtKind::DoWhile);
    CHECK(m.body[2].kind == StmtKind::For);
    CHECK(m.body[2].init.size() == 1);
    CHECK(m.body[2].update.size() == 1);
    CHECK(m.body[3].kind == StmtKind::Foreach);
    CHECK(m.body[3].var == "x");
    CHECK(m.body[4].kind == StmtKind::Switch);
    REQUIRE(m.body[4].blocks.size() == 2);
    CHECK(m.body[4].blocks[0].role == BlockRole::Case);
    CHECK(m.body[4].blocks[1].role == BlockRole::Default);
    CHECK(m.body[5].kind == StmtKind::Try);
    REQUIRE(m.body[5].blocks.size() == 3);
    CHECK(m.body[5].blocks[1].role == BlockRole::Catch);
    CHECK(m.body[5].blocks[1].catch_var == "e");
    CHECK(m.body[5].blocks[2].role == BlockRole::Finally);
  }

  TEST_CASE("syntax errors") {
    CHECK_THROWS_AS(parse_method("void f(){"), SyntaxError);
    CHECK_THROWS_AS(parse_method("void f() { x = ; }"), SyntaxError);
    CHECK_THROWS_AS(parse_method("void f() { int a = 1 }"), SyntaxError);
    try {
      parse_method("void f() {\n  int a;\n  a = (1 + ;\n}");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.line() == 3);
    }
  }

  TEST_CASE("hole markers") {
    const auto m = parse_method("void f(){ String s; __HOLE__; }");
    CHECK(count_holes(m) == 1);
    CHECK(m.body[1].kind == StmtKind::HoleMarker);
    CHECK_THROWS_AS(parse_method("void f(){ __HOLE__; __HOLE__; }"), MultipleHolesError);
    CHECK(insert_hole_marker("a\nb\nc\n", 2) == "a\n__HOLE__; b\nc\n");
  }

  TEST_CASE("line numbers honour the first line offset") {
    const auto m = parse_method("void f() {\n  String s;\n}", 10);
    CHECK(m.line == 10);
    CHECK(m.body[0].line == 11);
  }

  TEST_CASE("find_methods locates every method of a file") {
    const std::string text =
        "import java.io.File;\npublic class A {\n  public static int one(int a) { return a; }\n"
        "  private List<String> two() throws IOException {\n    return null;\n  }\n}\n";
    const auto spans = find_methods(text);
    REQUIRE(spans.size() == 2);
    CHECK(spans[0].name == "one");
    CHECK(spans[0].first_line == 3);
    CHECK(spans[1].name == "two");
    CHECK(spans[1].first_line == 4);
    CHECK(spans[1].last_line == 6);
    for (const auto& s : spans) CHECK_NOTHROW(parse_method(text.substr(s.begin, s.end - s.begin)));
  }

  TEST_CASE("pretty-print round trip preserves structure") {
    std::vector<std::string> sources = testing::method_templates();
    for (const char* f : {"ComputeHashCode.java", "ComputeHashCodeHole.java", "GetIntegerScore.java"}) {
      std::ifstream in(testing::sample_path(f));
      std::stringstream ss;
      ss << in.rdbuf();
      sources.push_back(ss.str());
    }
    sources.push_back(R"(void g(int k, List<String> xs) {
      if (k > 0) { k = 1; } else if (k < 0) { k = 2; } else { k = 3; }
      do { k--; } while (k > 0);
      for (int i = 0; i < k; i++) { xs.clear(); }
      switch (k) { case 1: k = 0; break; default: k = 1; }
      try { xs.clear(); } catch (Exception e) { throw e; } finally { xs.clear(); }
      String s = k > 1 ? "a" : (String) null;
    })");
    for (const auto& src : sources) {
      const auto a = parse_method(src);
      const std::string printed = to_source(a);
      const auto b = parse_method(printed);
      CHECK(a.name == b.name);
      CHECK(a.parameters == b.parameters);
      CHECK(shape(a.body) == shape(b.body));
      CHECK(to_source(b) == printed);
    }
  }
}

TEST_SUITE("resolver") {
  const auto& cat = testing::jdk_catalog();

  TEST_CASE("constructor with a declared String argument") {
    const auto m = resolve_apis(parse_method("void f(String path) { File file = new File(path); }"), cat);
    const Expr* e = find_in(m, "new");
    REQUIRE(e != nullptr);
    CHECK(e->ref->signature.fq_class == "java.io.File");
    CHECK(e->ref->signature.param_types == std::vector<std::string>{"java.lang.String"});
    CHECK_FALSE(e->ref->receiver_var.has_value());
    REQUIRE(e->ref->arg_vars.size() == 1);
    CHECK(e->ref->arg_vars[0] == "path");
  }

  TEST_CASE("string literal selects the String overload") {
    const auto m = resolve_apis(
        parse_method("void f() { StringBuilder builder = new StringBuilder(); builder.append(\"str\"); }"), cat);
    const Expr* e = find_in(m, "append");
    REQUIRE(e != nullptr);
    CHECK(e->ref->signature.fq_class == "java.lang.StringBuilder");
    CHECK(e->ref->signature.param_types == std::vector<std::string>{"java.lang.String"});
    CHECK(e->ref->receiver_var == "builder");
  }

  TEST_CASE("literal types") {
    const auto m = resolve_apis(parse_method("void f() { Integer.toString(1); Math.abs(2.5); String.valueOf('c'); }"), cat);
    CHECK(find_in(m, "toString")->ref->signature.param_types == std::vector<std::string>{"int"});
    CHECK(find_in(m, "abs")->ref->signature.param_types == std::vector<std::string>{"double"});
  }

  TEST_CASE("non-catalog receiver stays unresolved") {
    const auto m = resolve_apis(parse_method("void f(MyType x) { x.run(); }"), cat);
    CHECK(find_in(m, "run") == nullptr);
    bool any = false;
    for_each_statement(m.body, [&](const Statement& s) {
      if (s.expr) for_each_expr(*s.expr, [&](const Expr& e) { any = any || e.ref.has_value(); });
    });
    CHECK_FALSE(any);
  }

  TEST_CASE("inherited members resolve through the lineage") {
    const auto m = resolve_apis(parse_method("void f(FileWriter w) { w.write(\"x\"); w.close(); }"), cat);
    const Expr* e = find_in(m, "write");
    REQUIRE(e != nullptr);
    CHECK(cat.is_subtype("java.io.FileWriter", e->ref->signature.fq_class));
    CHECK(e->target->static_type == "java.io.FileWriter");
  }

  TEST_CASE("resolution is deterministic") {
    for (const auto& src : testing::method_templates()) {
      const auto a = resolve_apis(parse_method(src), cat);
      const auto b = resolve_apis(parse_method(src), cat);
      CHECK(to_source(a) == to_source(b));
      std::vector<ResolvedRef> ra, rb;
      for_each_statement(a.body, [&](const Statement& s) {
        if (s.expr) for_each_expr(*s.expr, [&](const Expr& e) { if (e.ref) ra.push_back(*e.ref); });
      });
      for_each_statement(b.body, [&](const Statement& s) {
        if (s.expr) for_each_expr(*s.expr, [&](const Expr& e) { if (e.ref) rb.push_back(*e.ref); });
      });
      CHECK(ra == rb);
    }
  }

  TEST_CASE("receiver variables have a type compatible with the signature") {
    std::vector<std::string> sources = testing::method_templates();
    sources.push_back("void f(FileWriter w, ArrayList<String> xs) { w.write(\"x\"); xs.add(\"y\"); xs.size(); }");
    for (const auto& src : sources) {
      const auto m = resolve_apis(parse_method(src), cat);
      std::map<std::string, std::string> declared;
      for (const auto& p : m.parameters) declared[p.name] = p.resolved_type;
      for_each_statement(m.body, [&](const Statement& s) {
        if (!s.var.empty() && !s.resolved_type.empty()) declared[s.var] = s.resolved_type;
        for (const auto& b : s.blocks)
          if (!b.catch_var.empty()) declared[b.catch_var] = qualify_type(b.catch_type, cat);
      });
      auto visit = [&](const Expr& root) {
        for_each_expr(root, [&](const Expr& e) {
          if (!e.ref || !e.ref->receiver_var) return;
          const auto it = declared.find(*e.ref->receiver_var);
          if (it == declared.end()) return;
          const std::string& t = it->second;
          INFO(src);
          CHECK((t == e.ref->signature.fq_class || cat.is_subtype(t, e.ref->signature.fq_class)));
        });
      };
      for_each_statement(m.body, [&](const Statement& s) {
        if (s.expr) visit(*s.expr);
        for (const auto& u : s.update) visit(u);
        for (const auto& b : s.blocks)
          if (b.cond) visit(*b.cond);
      });
    }
  }
}
