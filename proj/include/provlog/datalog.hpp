#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "provlog/semiring.hpp"

namespace provlog {

struct Term {
  bool is_var = false;
  std::string name;

  static Term var(std::string n) { return Term{true, std::move(n)}; }
  static Term constant(std::string n) { return Term{false, std::move(n)}; }
  friend bool operator==(const Term& a, const Term& b) {
    return a.is_var == b.is_var && a.name == b.name;
  }
  friend bool operator<(const Term& a, const Term& b) {
    if (a.is_var != b.is_var) return a.is_var < b.is_var;
    return a.name < b.name;
  }
};

struct Atom {
  std::string pred;
  std::vector<Term> args;

  friend bool operator==(const Atom& a, const Atom& b) { return a.pred == b.pred && a.args == b.args; }
  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.pred != b.pred) return a.pred < b.pred;
    return a.args < b.args;
  }
};

struct Fact {
  std::string pred;
  std::vector<std::string> args;

  friend bool operator==(const Fact& a, const Fact& b) { return a.pred == b.pred && a.args == b.args; }
  friend bool operator!=(const Fact& a, const Fact& b) { return !(a == b); }
  friend bool operator<(const Fact& a, const Fact& b) {
    if (a.pred != b.pred) return a.pred < b.pred;
    return a.args < b.args;
  }
};

// Variable name -> constant. Ordered, so comparison is the canonical order.
using Homomorphism = std::map<std::string, std::string>;

struct Rule {
  Atom head;
  std::vector<Atom> body;  // duplicates removed at load

  std::vector<std::string> variables() const;
};

struct Program {
  std::vector<Rule> rules;
};

using Database = std::set<Fact>;

struct AnnotatedDatabase {
  SemiringPtr semiring;
  std::map<Fact, Value> lambda;

  Database facts() const;
  bool contains(const Fact& f) const { return lambda.count(f) > 0; }
};

// Text format.
Program parse_program(std::string_view text);
AnnotatedDatabase parse_database(std::string_view text, SemiringPtr semiring);
Fact parse_fact(std::string_view text);
Rule parse_rule(std::string_view text);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Fact& f);
std::string to_string(const Rule& r);
std::string to_string(const Homomorphism& h);
std::string print_program(const Program& p);
std::string print_database(const AnnotatedDatabase& db);

Atom to_atom(const Fact& f);
// Image of an atom; throws UnboundVariable if some variable is unmapped.
Fact apply_hom(const Homomorphism& h, const Atom& a);

// Throws ArityError on a predicate used with two arities.
void check_arity(const Program& p, const Database& d);
void dedupe_body(Rule& r);
// Throws HeadVariableError when a head variable is absent from the body.
void check_rule(const Rule& r);

// Facts grouped by predicate for matching.
class FactIndex {
 public:
  FactIndex() = default;
  explicit FactIndex(const Database& d);
  void insert(const Fact& f);
  const std::vector<Fact>& of(const std::string& pred) const;
  bool contains(const Fact& f) const { return all_.count(f) > 0; }
  const Database& all() const { return all_; }

 private:
  std::map<std::string, std::vector<Fact>> by_pred_;
  Database all_;
};

// All h extending `seed` with h(body) contained in the facts, canonical order.
std::vector<Homomorphism> homomorphisms(const std::vector<Atom>& body, const FactIndex& facts,
                                        const Homomorphism& seed = {});
std::vector<Homomorphism> homomorphisms(const std::vector<Atom>& body, const Database& facts);
// Extensions of `seed` unifying `head` with the fact `target`; false if impossible.
bool unify_head(const Atom& head, const Fact& target, Homomorphism& seed);

std::set<std::string> domain(const Database& d);
// Instantiations over the constants of d and of p.
Program ground(const Program& p, const Database& d, size_t cap = 1000000);
// Least fixpoint containing d (seminaive).
Database saturate(const Program& p, const Database& d);
bool entails(const Program& p, const Database& d, const Fact& f);
bool is_recursive(const Program& p);

}  // namespace provlog
