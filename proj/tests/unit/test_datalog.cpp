#include "doctest.h"
#include "util.hpp"

using namespace provlog;

TEST_CASE("parsing rules and facts") {
  auto p = parse_program("A(X) :- B(X), R(X, Y).\nH(X,X) :- R(X,Y).\n");
  REQUIRE(p.rules.size() == 2);
  CHECK(to_string(p.rules[0]) == "A(X) :- B(X), R(X,Y).");
  auto db = parse_database("B(a) @ 3.\nR(a,b).\n", make_semiring("nat"));
  CHECK(db.semiring->print(db.lambda.at(parse_fact("R(a,b)"))) == "1");
}

TEST_CASE("parse errors carry their kind") {
  CHECK_THROWS_AS(parse_program("A(X) :- B(X)"), SyntaxError);
  CHECK_THROWS_AS(parse_program("A(X) :- B(Y)."), HeadVariableError);
  CHECK_THROWS_AS(parse_program("A(X) :- B(X).\nC(X) :- B(X, X)."), ArityError);
  auto nat = make_semiring("nat");
  CHECK_THROWS_AS(parse_database("B(a) @ 0.", nat), ZeroAnnotationError);
  CHECK_THROWS_AS(parse_database("B(a).\nB(a) @ 2.", nat), DuplicateFactError);
  try {
    parse_program("A(X) :- B(X).\nA(X) :- ,B(X).");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("duplicate body atoms are removed at load") {
  auto p = parse_program("A(X) :- B(X), B(X), C(X).");
  CHECK(p.rules[0].body.size() == 2);
}

TEST_CASE("homomorphisms match a brute-force enumeration") {
  auto p = parse_program("H(X,Y) :- R(X,Z), R(Z,Y).");
  Database d{parse_fact("R(a,b)"), parse_fact("R(b,c)"), parse_fact("R(b,a)"), parse_fact("R(c,c)")};
  auto homs = homomorphisms(p.rules[0].body, d);
  std::set<Homomorphism> brute;
  const char* cs[] = {"a", "b", "c"};
  for (auto x : cs)
    for (auto y : cs)
      for (auto z : cs) {
        Homomorphism h{{"X", x}, {"Y", y}, {"Z", z}};
        bool ok = true;
        for (const auto& a : p.rules[0].body) ok = ok && d.count(apply_hom(h, a));
        if (ok) brute.insert(h);
      }
  CHECK(std::set<Homomorphism>(homs.begin(), homs.end()) == brute);
  CHECK(homs.size() == brute.size());
  CHECK(std::is_sorted(homs.begin(), homs.end()));
}

TEST_CASE("entailment is preserved by grounding") {
  auto L = testutil::example("running.dl", "running_nat.facts", "nat");
  Database d = L.db.facts();
  Program g = ground(L.program, d);
  for (const auto& f : {"A(a)", "A(b)", "B(a)", "R(b,a)", "H(a,a)", "A(c)"})
    CHECK(entails(L.program, d, parse_fact(f)) == entails(g, d, parse_fact(f)));
  CHECK(entails(L.program, d, parse_fact("A(b)")));
}

TEST_CASE("grounding includes constants named by the program") {
  auto p = parse_program("Q(c) :- R.\nP(X) :- Q(X).");
  Database d{parse_fact("R")};
  CHECK(entails(ground(p, d), d, parse_fact("P(c)")));
  CHECK_THROWS_AS(ground(parse_program("A(X) :- B(X,Y,Z)."), {parse_fact("B(a,b,c)")}, 5), SizeLimitError);
}

TEST_CASE("recursion detection") {
  CHECK(is_recursive(parse_program("A(X) :- B(X).\nB(X) :- A(X).")));
  CHECK_FALSE(is_recursive(parse_program("A(X) :- B(X).\nC(X) :- A(X).")));
}
