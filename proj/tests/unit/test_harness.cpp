#include <algorithm>

#include "doctest.h"
#include "util.hpp"

using namespace provlog;

TEST_CASE("necessary facts") {
  auto p = parse_program("goal :- A(X), B(X).\ngoal :- A(X), C(X).");
  Database d{parse_fact("A(a)"), parse_fact("B(a)"), parse_fact("C(a)")};
  CHECK(necessary_facts(p, d, parse_fact("goal")) == std::set<Fact>{parse_fact("A(a)")});
  auto q = parse_program("goal :- A(X).\ngoal :- B(X).");
  Database e{parse_fact("A(a)"), parse_fact("B(a)")};
  CHECK(necessary_facts(q, e, parse_fact("goal")).empty());
  CHECK(necessary_facts(q, {parse_fact("A(a)")}, parse_fact("goal")) == std::set<Fact>{parse_fact("A(a)")});
  CHECK_THROWS_AS(necessary_facts(q, {}, parse_fact("goal")), NotEntailed);
}

TEST_CASE("usable facts by adornment") {
  auto L = testutil::example("depth_kinds.dl", "depth_kinds_x.facts", "poly-nat");
  Database d = L.db.facts();
  d.insert(parse_fact("G(a)"));
  auto u = usable_facts(L.program, d, parse_fact("A(a)"));
  CHECK(u == std::set<Fact>{parse_fact("C(a)"), parse_fact("D(a)"), parse_fact("E(a)"), parse_fact("F(a)")});
  CHECK(usable_facts(L.program, d, parse_fact("B(a)")) == std::set<Fact>{parse_fact("D(a)")});
}

namespace {
// Database facts reachable from the target through ground rule firings over the entailed facts.
std::set<Fact> reachable_leaves(const Program& p, const Database& d, const Fact& target) {
  Database all = saturate(p, d);
  std::map<Fact, std::set<Fact>> edges;
  for (const auto& r : p.rules)
    for (const auto& h : homomorphisms(r.body, all))
      for (const auto& a : r.body) edges[apply_hom(h, r.head)].insert(apply_hom(h, a));
  std::set<Fact> seen{target}, out;
  std::vector<Fact> stack{target};
  while (!stack.empty()) {
    Fact f = stack.back();
    stack.pop_back();
    if (d.count(f)) out.insert(f);
    for (const auto& g : edges[f])
      if (seen.insert(g).second) stack.push_back(g);
  }
  return out;
}
}  // namespace

TEST_CASE("usable facts match firing-graph reachability") {
  InstanceGenerator gen(11);
  int strict = 0;
  for (int i = 0; i < 60; ++i) {
    auto ri = gen.next();
    for (const auto& f : ri.entailed) {
      auto u = usable_facts(ri.program, ri.db, f);
      CHECK(u == reachable_leaves(ri.program, ri.db, f));
      std::set<Fact> leaves;
      for (const auto& t : collect_trees(ri.program, ri.db, f, TreeKind::NonRecursive, std::nullopt))
        for (const auto& l : tree_leaves(t)) leaves.insert(l);
      CHECK(std::includes(u.begin(), u.end(), leaves.begin(), leaves.end()));
      strict += u != leaves;
    }
  }
  MESSAGE("instances where recursive trees add usable facts: " << strict);
}

TEST_CASE("a fact only reachable through a repeated fact is usable") {
  auto p = parse_program("P(Z) :- Q(Y,Z), S.\nP(b) :- S.\nS :- P(Y), R(Z).");
  Database d{parse_fact("P(c)"), parse_fact("Q(d,c)"), parse_fact("R(a)"), parse_fact("S")};
  CHECK(usable_facts(p, d, parse_fact("P(b)")).count(parse_fact("Q(d,c)")) == 1);
  bool in_nrt = false;
  for (const auto& t : collect_trees(p, d, parse_fact("P(b)"), TreeKind::NonRecursive, std::nullopt))
    for (const auto& l : tree_leaves(t)) in_nrt = in_nrt || l == parse_fact("Q(d,c)");
  CHECK_FALSE(in_nrt);
}

TEST_CASE("conditions of a provenance semantics") {
  auto L = testutil::example("running.dl", "running_tropical.facts", "tropical");
  PropertyInstance in;
  in.program = L.program;
  in.db = L.db;
  in.targets = {parse_fact("A(a)"), parse_fact("A(c)")};
  for (auto s : all_semantics()) {
    auto c = check_definition3(s, in);
    // Cost sets grow around the cycle without bound.
    auto want = s == SemanticsId::SAM ? Verdict::Inapplicable : Verdict::Satisfied;
    CHECK_MESSAGE(c.verdict == want, to_string(s) << ": " << c.detail);
  }
  CHECK(testutil::show(L.db, evaluate(SemanticsId::AT, L.program, L.db, parse_fact("A(a)"))) == "3");

  auto pb = variable_annotation(L.db.facts(), make_semiring("posbool-free"));
  in.db = pb;
  for (auto s : all_semantics()) {
    auto c = check_definition3(s, in);
    CHECK_MESSAGE(c.verdict == Verdict::Satisfied, to_string(s) << ": " << c.detail);
  }
}

TEST_CASE("regression counterexamples are violated and replay") {
  int n = 0;
  for (auto p : all_properties())
    for (auto s : all_semantics()) {
      auto ce = counterexample(p, s);
      if (!ce) continue;
      ++n;
      auto c = check_property(p, s, *ce);
      CHECK_MESSAGE(c.verdict == Verdict::Violated, to_string(p) << "/" << to_string(s) << ": " << c.detail);
      CHECK(replay(c));
    }
  CHECK(n >= 30);
}

TEST_CASE("named witnesses") {
  auto c = check_property(PropertyId::BooleanCompat, SemanticsId::MDT,
                          *counterexample(PropertyId::BooleanCompat, SemanticsId::MDT));
  CHECK(c.detail.find("Boolean provenance a + c, semantics a") != std::string::npos);
  auto j = check_property(PropertyId::JointUse, SemanticsId::MDT, *counterexample(PropertyId::JointUse, SemanticsId::MDT));
  CHECK(j.detail.find("b*d + c*d") != std::string::npos);
  auto g = check_property(PropertyId::JointUse, SemanticsId::SAM, *counterexample(PropertyId::JointUse, SemanticsId::SAM));
  CHECK(g.detail.find("x^2 + x*y + y^2") != std::string::npos);
  CHECK(g.detail.find("x^2 + 2*x*y + y^2") != std::string::npos);
  auto h = check_property(PropertyId::HomCommutation, SemanticsId::AT,
                          *counterexample(PropertyId::HomCommutation, SemanticsId::AT));
  CHECK(h.verdict == Verdict::Violated);
}

TEST_CASE("alternative use over counting on a small instance") {
  auto L = testutil::example("two_alternatives.dl", "two_alternatives_nat.facts", "nat");
  PropertyInstance in;
  in.program = Program{};
  in.db = L.db;
  in.groups = {{parse_fact("A(a)")}, {parse_fact("B(a)")}};
  CHECK(check_property(PropertyId::AltUse, SemanticsId::AT, in).verdict == Verdict::Satisfied);
  CHECK(check_property(PropertyId::AltUse, SemanticsId::MDT, in).verdict == Verdict::Satisfied);
  CHECK(check_property(PropertyId::AltUse, SemanticsId::AM, in).verdict == Verdict::Violated);
}

TEST_CASE("generator is deterministic and bounded") {
  InstanceGenerator a(5), b(5);
  for (int i = 0; i < 20; ++i) {
    auto x = a.next(), y = b.next();
    CHECK(print_program(x.program) == print_program(y.program));
    CHECK(x.db == y.db);
    CHECK(x.program.rules.size() <= 6);
    CHECK(x.db.size() <= 6);
    CHECK(x.entailed.size() <= 20);
  }
}

TEST_CASE("caps") {
  Caps c = parse_caps("iter=7,sam=10,series=50");
  CHECK(c.iter == 7);
  CHECK(c.sam == 10);
  CHECK(c.series == 50);
  CHECK(c.depth == 5);
  CHECK_THROWS(parse_caps("speed=3"));
  CHECK_THROWS(parse_caps("iter=x"));
}

TEST_CASE("a small matrix run matches") {
  MatrixOptions o;
  o.trials = 10;
  o.seed = 3;
  auto r = run_table1(o);
  CHECK(r.ok());
  CHECK(r.cells.size() == 90);
  CHECK(r.to_json()["ok"] == true);
}
