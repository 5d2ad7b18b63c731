#include "doctest.h"
#include "util.hpp"

using namespace provlog;

TEST_CASE("minimal cost of A(a) is 3") {
  auto L = testutil::example("running.dl", "running_tropical.facts", "tropical");
  CHECK(testutil::show(L.db, at_eval(L.program, L.db, parse_fact("A(a)"))) == "3");
}

TEST_CASE("union of conjunctive queries: bag multiplicity and cost") {
  auto q = parse_program(testutil::slurp(testutil::data("examples/running_query.dl")));
  UCQ u;
  for (const auto& r : q.rules) u.push_back(ConjunctiveQuery{r.body, r.head.args});
  auto n = testutil::example("running.dl", "running_nat.facts", "nat");
  CHECK(testutil::show(n.db, ucq_provenance(u, {}, n.db)) == "5");
  auto t = testutil::example("running.dl", "running_tropical.facts", "tropical");
  CHECK(testutil::show(t.db, ucq_provenance(u, {}, t.db)) == "6");
}

TEST_CASE("immediate consequence on the running data") {
  auto L = testutil::inline_instance("B(X) :- R(X,Y), A(Y).", "R(a,b) @ 2.\nR(b,a) @ 1.\nA(a) @ 3.\nA(b) @ 1.\n",
                                     "nat");
  auto out = immediate_consequence(L.program, AnnotatedInterpretation::from(L.db));
  CHECK(testutil::show(L.db, out.value(parse_fact("B(a)"))) == "2");
  CHECK(testutil::show(L.db, out.value(parse_fact("B(b)"))) == "3");
  auto other = AnnotatedInterpretation{make_semiring("tropical"), {}};
  CHECK_THROWS_AS(annotated_union(AnnotatedInterpretation::from(L.db), other), SemiringMismatch);
}

TEST_CASE("naive rounds equal depth-bounded tree sums") {
  auto L = testutil::example("running.dl", "running_nat.facts", "nat");
  NaiveOptions o;
  o.cap = 5;
  auto tr = naive_eval(L.program, L.db, o);
  CHECK(tr.status == FixpointTrace::Status::Capped);
  for (int i = 0; i <= 5; ++i)
    for (const auto& f : saturate(L.program, L.db.facts())) {
      Value s = L.db.semiring->zero();
      for (const auto& t : collect_trees(L.program, L.db.facts(), f, TreeKind::All, i))
        s = L.db.semiring->add(s, tree_annotation(t, *L.db.semiring, L.db.lambda));
      CHECK(tr.snapshots[i].value(f) == s);
    }
}

TEST_CASE("mutual recursion converges to an infinite coefficient") {
  auto L = testutil::example("mutual.dl", "mutual_x.facts", "series-trunc:3");
  CHECK(testutil::show(L.db, at_eval(L.program, L.db, parse_fact("A(a)"))) == "inf*x");
  auto n = testutil::inline_instance(testutil::slurp(testutil::data("examples/mutual.dl")), "A(a) @ 1.", "nat-inf");
  CHECK(testutil::show(n.db, at_eval(n.program, n.db, parse_fact("A(a)"))) == "inf");
  auto c = testutil::inline_instance(testutil::slurp(testutil::data("examples/mutual.dl")), "A(a) @ 1.", "nat");
  auto tr = naive_eval(c.program, c.db);
  CHECK(tr.status == FixpointTrace::Status::Diverged);
  CHECK_FALSE(tr.warnings.empty());
}

TEST_CASE("depth-restricted semantics on the depth example") {
  auto L = testutil::example("depth_kinds.dl", "depth_kinds_x.facts", "poly-nat");
  Fact a = parse_fact("A(a)");
  CHECK(testutil::show(L.db, nrt_eval(L.program, L.db, a)) == "c*d + d*e + d*f");
  CHECK(testutil::show(L.db, optimized_eval(L.program, L.db, a)) == "c*d + d*e");
  int rounds = 0;
  CHECK(testutil::show(L.db, seminaive_eval(L.program, L.db, &rounds).value(a)) == "c*d");
  CHECK(rounds == 3);
  CHECK(testutil::show(L.db, optimized_eval(L.program, L.db, parse_fact("A(b)"))) == "0");
}

TEST_CASE("self-loop: non-recursive trees drop the loop") {
  auto w = testutil::example("self_loop.dl", "self_loop_x.facts", "why");
  Fact a = parse_fact("A(a)");
  CHECK(testutil::show(w.db, at_eval(w.program, w.db, a)) == "x*y + x");
  CHECK(testutil::show(w.db, nrt_eval(w.program, w.db, a)) == "x");
  auto s = testutil::example("self_loop.dl", "self_loop_x.facts", "series-trunc:3");
  CHECK(testutil::show(s.db, at_eval(s.program, s.db, a)) == "x*y^2 + x*y + x");
  CHECK(testutil::show(s.db, nrt_eval(s.program, s.db, a)) == "x");
}

TEST_CASE("trace serialization") {
  auto L = testutil::example("running.dl", "running_tropical.facts", "tropical");
  auto j = naive_eval(L.program, L.db).to_json();
  CHECK(j["status"] == "converged");
  CHECK(j["trace"][0]["changed"].contains("B(a)"));
}
