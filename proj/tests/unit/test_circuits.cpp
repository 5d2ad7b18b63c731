#include "doctest.h"
#include "util.hpp"

using namespace provlog;

TEST_CASE("circuits on the depth example") {
  auto L = testutil::example("depth_kinds.dl", "depth_kinds_x.facts", "poly-nat");
  Fact a = parse_fact("A(a)");
  auto md = build_circuits(L.program, L.db, CircuitSemantics::MinDepth);
  CHECK(poly_to_string(expand_circuit(md.circuit(a), 10, 100)) == "c*d + d*e");
  auto hmd = build_circuits(L.program, L.db, CircuitSemantics::HereditaryMinDepth);
  CHECK(poly_to_string(expand_circuit(hmd.circuit(a), 10, 100)) == "c*d");
  auto at3 = build_circuits(L.program, L.db, CircuitSemantics::AtDepth, 3);
  CHECK(poly_to_string(expand_circuit(at3.circuit(a), 10, 100)) == "c*d + d*e + d*f");

  auto nat = make_semiring("nat");
  std::map<std::string, Value> ones;
  for (const auto& [v, f] : md.bindings) ones[v] = nat->one();
  CHECK(nat->print(evaluate_circuit(md.circuit(a), *nat, ones)) == "2");
  CHECK_THROWS_AS(evaluate_circuit(md.circuit(a), *nat, {}), UnboundVariable);
  CHECK_THROWS_AS(expand_circuit(at3.circuit(a), 10, 1), TermExplosion);
}

TEST_CASE("circuit JSON") {
  auto L = testutil::example("depth_kinds.dl", "depth_kinds_x.facts", "poly-nat");
  auto b = build_circuits(L.program, L.db, CircuitSemantics::HereditaryMinDepth);
  auto j = circuit_to_json(b.circuit(parse_fact("A(a)")), b.bindings);
  CHECK(j["bindings"]["c"] == "C(a)");
  CHECK(j["nodes"][j["root"].get<int>()]["op"] == "prod");
}

TEST_CASE("circuits need variable annotations") {
  auto L = testutil::example("running.dl", "running_nat.facts", "nat");
  CHECK_THROWS_AS(build_circuits(L.program, L.db, CircuitSemantics::MinDepth), InapplicableSemiring);
}
