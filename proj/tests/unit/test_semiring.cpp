#include "doctest.h"
#include "util.hpp"

using namespace provlog;

namespace {
Value P(const Semiring& s, const char* t) { return s.parse(t); }
std::string sum(const Semiring& s, const char* a, const char* b) { return s.print(s.add(P(s, a), P(s, b))); }
std::string prod(const Semiring& s, const char* a, const char* b) { return s.print(s.mul(P(s, a), P(s, b))); }
}  // namespace

TEST_CASE("counting and extended naturals") {
  auto nat = make_semiring("nat");
  CHECK(sum(*nat, "2", "3") == "5");
  CHECK(prod(*nat, "2", "3") == "6");
  CHECK_FALSE(nat->flags().omega_continuous);

  auto ni = make_semiring("nat-inf");
  CHECK(sum(*ni, "inf", "3") == "inf");
  CHECK(prod(*ni, "inf", "0") == "0");
  CHECK(prod(*ni, "inf", "2") == "inf");
  CHECK(ni->flags().omega_continuous);
  CHECK(ni->print(*ni->omega_sum(P(*ni, "1"))) == "inf");
  CHECK(ni->print(*ni->omega_sum(P(*ni, "0"))) == "0");
}

TEST_CASE("tropical is min-plus with infinity as zero") {
  auto t = make_semiring("tropical");
  CHECK(sum(*t, "5", "2") == "2");
  CHECK(prod(*t, "5", "2") == "7");
  CHECK(t->is_zero(P(*t, "inf")));
  CHECK(t->print(t->one()) == "0");
  CHECK(t->flags().absorptive);
  CHECK(natural_order_leq(*t, P(*t, "5"), P(*t, "2")) == Tri::True);
  CHECK(natural_order_leq(*t, P(*t, "2"), P(*t, "5")) == Tri::False);
}

TEST_CASE("positive Boolean formulas absorb") {
  auto b = make_semiring("posbool-free");
  CHECK(b->print(b->add(P(*b, "x"), P(*b, "x*y"))) == "x");
  CHECK(b->print(b->mul(P(*b, "x + y"), P(*b, "x"))) == "x");
  CHECK(b->flags().absorptive);
  CHECK(b->flags().positive);
}

TEST_CASE("why-provenance keeps non-minimal witnesses") {
  auto w = make_semiring("why");
  CHECK(w->print(w->add(P(*w, "x"), P(*w, "x*y"))) == "x*y + x");
  CHECK(w->print(w->mul(P(*w, "x"), P(*w, "x"))) == "x");
  CHECK_FALSE(w->flags().absorptive);
  CHECK(w->flags().plus_idempotent);
}

TEST_CASE("polynomials and series") {
  auto p = make_semiring("poly-nat");
  CHECK(prod(*p, "x + y", "x + y") == "x^2 + 2*x*y + y^2");
  CHECK(natural_order_leq(*p, P(*p, "x"), P(*p, "x + y")) == Tri::True);
  CHECK(natural_order_leq(*p, P(*p, "2*x"), P(*p, "x + y")) == Tri::False);

  auto pb = make_semiring("poly-bool");
  CHECK(sum(*pb, "x", "x") == "x");

  auto tr = make_semiring("series-trunc:2");
  CHECK(prod(*tr, "x + y", "x*y + x") == "x^2 + x*y");
  CHECK(sum(*tr, "inf*x", "x") == "inf*x");
  CHECK(tr->print(*tr->omega_sum(P(*tr, "x"))) == "inf*x");
}

TEST_CASE("valuations are homomorphisms") {
  auto p = make_semiring("poly-nat");
  auto nat = make_semiring("nat");
  auto trop = make_semiring("tropical");
  Poly a = std::get<Poly>(P(*p, "x^2 + 3*x*y"));
  std::map<std::string, Value> nu{{"x", P(*nat, "2")}, {"y", P(*nat, "5")}};
  CHECK(nat->print(eval_valuation(a, *nat, nu)) == "34");
  std::map<std::string, Value> nt{{"x", P(*trop, "2")}, {"y", P(*trop, "5")}};
  CHECK(trop->print(eval_valuation(a, *trop, nt)) == "4");
}

TEST_CASE("table semirings from the counterexamples") {
  auto nf = load_table_semiring_file(testutil::data("semirings/necessary_facts.json"));
  auto r1 = validate_semiring(*nf, 0);
  CHECK(r1.exhaustive);
  CHECK(r1.ok());
  CHECK(r1.observed.has_glb);

  auto gf = load_table_semiring_file(testutil::data("semirings/glb_failure.json"));
  auto r2 = validate_semiring(*gf, 0);
  CHECK(r2.ok());
  CHECK(r2.observed.omega_continuous);
  CHECK_FALSE(r2.observed.has_glb);
  REQUIRE(r2.glb_witness.has_value());
  std::set<std::string> pair{r2.glb_witness->first, r2.glb_witness->second};
  CHECK(pair == std::set<std::string>{"a", "b"});
}

TEST_CASE("a corrupted table is rejected with a witness triple") {
  auto j = nlohmann::json::parse(testutil::slurp(testutil::data("semirings/necessary_facts.json")));
  j["mul"]["d,e"] = "c";  // breaks associativity/distributivity somewhere
  j["add"]["b,c"] = "d";
  try {
    load_table_semiring(j, "broken");
    FAIL("corrupted table accepted");
  } catch (const AxiomViolation& e) {
    std::string msg = e.what();
    CHECK(msg.find("violated at (") != std::string::npos);
    CHECK(std::count(msg.begin(), msg.end(), ',') >= 2);
  }
}

TEST_CASE("validation samples infinite carriers") {
  auto r = validate_semiring(*make_semiring("nat"), 500, 3);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.ok());
  CHECK_FALSE(r.observed.absorptive);
  CHECK_FALSE(r.flag_refutations.empty());
}
