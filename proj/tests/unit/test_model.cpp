#include "doctest.h"
#include "util.hpp"

using namespace provlog;

namespace {
ModelOptions genuine() {
  ModelOptions o;
  o.delegate = false;
  return o;
}
}  // namespace

TEST_CASE("annotated models on two alternatives and a projection") {
  auto alt = testutil::example("two_alternatives.dl", "two_alternatives_nat.facts", "nat");
  Fact g = parse_fact("goal");
  CHECK(testutil::show(alt.db, am_provenance(alt.program, alt.db, g)) == "3");
  CHECK(testutil::show(alt.db, sam_provenance(alt.program, alt.db, g)) == "5");
  auto proj = testutil::example("projection.dl", "projection_nat.facts", "nat");
  CHECK(testutil::show(proj.db, am_provenance(proj.program, proj.db, g)) == "4");
  CHECK(testutil::show(proj.db, sam_provenance(proj.program, proj.db, g)) == "2");
}

TEST_CASE("mutual recursion: the models give x") {
  auto L = testutil::example("mutual.dl", "mutual_x.facts", "series-trunc:3");
  Fact a = parse_fact("A(a)");
  CHECK(testutil::show(L.db, am_provenance(L.program, L.db, a, genuine())) == "x");
  CHECK(testutil::show(L.db, sam_provenance(L.program, L.db, a, genuine())) == "x");
  CHECK(testutil::show(L.db, sam_monomial_oracle(L.program, L.db, a)) == "x");
}

TEST_CASE("set-annotated provenance is the clamped all-trees value") {
  auto L = testutil::example("self_loop.dl", "self_loop_x.facts", "series-trunc:3");
  Fact a = parse_fact("A(a)");
  CHECK(sam_provenance(L.program, L.db, a, genuine()) == sam_monomial_oracle(L.program, L.db, a));
}

TEST_CASE("coincidence on idempotent omega-continuous semirings") {
  auto L = testutil::example("running.dl", "running_nat.facts", "nat");
  auto pb = variable_annotation(L.db.facts(), make_semiring("posbool-free"));
  for (const auto& f : saturate(L.program, pb.facts())) {
    Value at = at_eval(L.program, pb, f);
    CHECK(am_provenance(L.program, pb, f, genuine()) == at);
    CHECK(sam_provenance(L.program, pb, f, genuine()) == at);
  }
}

TEST_CASE("unsupported and divergent models") {
  auto gf = load_table_semiring_file(testutil::data("semirings/glb_failure.json"));
  auto L = parse_database("A(a) @ c.", gf);
  CHECK_FALSE(am_supported(*gf));
  CHECK_THROWS_AS(am_provenance(parse_program("goal :- A(X)."), L, parse_fact("goal")), UnsupportedSemiring);
  auto s = testutil::inline_instance("A(X) :- A(X), B(X).", "A(a) @ 2.\nB(a) @ 2.", "nat");
  ModelOptions o;
  o.set_cap = 50;
  CHECK_THROWS_AS(sam_provenance(s.program, s.db, parse_fact("A(a)"), o), DivergenceError);
}

TEST_CASE("table semiring model is a") {
  auto nf = load_table_semiring_file(testutil::data("semirings/necessary_facts.json"));
  auto p = parse_program("goal :- A(X), B(X).\ngoal :- A(X), C(X).");
  auto d = parse_database("A(a) @ d.\nB(a) @ e.\nC(a) @ f.", nf);
  CHECK(nf->print(am_provenance(p, d, parse_fact("goal"))) == "a");
}
