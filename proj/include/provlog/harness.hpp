#pragma once

#include <cstdint>
#include <random>
#include <set>

#include "json.hpp"
#include "provlog/caps.hpp"
#include "provlog/datalog.hpp"

namespace provlog {

enum class SemanticsId { AT, NRT, MDT, HMDT, AM, SAM };

enum class PropertyId {
  AlgebraConsistency,
  BooleanCompat,
  HomCommutation,
  OmegaHomCommutation,
  AnySemiring,
  AnyOmegaSemiring,
  JointAltUse,
  JointUse,
  AltUse,
  Self,
  Parsimony,
  NecessaryFacts,
  NonUsableFacts,
  Insertion,
  Deletion,
};

const std::vector<SemanticsId>& all_semantics();
const std::vector<PropertyId>& all_properties();
std::string to_string(SemanticsId s);  // at, nrt, mdt, hmdt, am, sam
std::string to_string(PropertyId p);   // kebab-case id, e.g. joint-use
std::string property_title(PropertyId p);
SemanticsId parse_semantics(const std::string& s);
PropertyId parse_property(const std::string& s);

// Whether the property is expected to hold under the semantics.
bool expected_to_hold(PropertyId p, SemanticsId s);

// Provenance of `target` under one semantics. AM and SAM never use the
// all-trees shortcut here. Throws DivergenceError when no value is reached.
Value evaluate(SemanticsId sem, const Program& p, const AnnotatedDatabase& adb, const Fact& target,
               const Caps& caps = {});

// Everything a check needs, so a verdict can be replayed.
struct PropertyInstance {
  Program program;
  AnnotatedDatabase db;
  std::vector<Fact> targets;                // facts compared (each one in turn)
  std::vector<std::vector<Fact>> groups;    // conjunctions for the use properties
  std::optional<AnnotatedDatabase> other;   // D' for insertion, lambda' for non-usable facts
  std::vector<Fact> removed;                // deleted facts
  std::string hom;                          // "valuation" or "inf-to-inf2"
  SemiringPtr image;                        // codomain of the homomorphism
  std::map<std::string, Value> valuation;
  std::string label;                        // provenance of the instance (random/regression)

  nlohmann::json to_json() const;
};

enum class Verdict { Satisfied, Violated, Inapplicable };
std::string to_string(Verdict v);

struct PropertyCheck {
  PropertyId property;
  SemanticsId semantics;
  PropertyInstance instance;
  Verdict verdict = Verdict::Inapplicable;
  std::string detail;  // witness for violations, reason for inapplicable

  nlohmann::json to_json() const;
};

PropertyCheck check_property(PropertyId prop, SemanticsId sem, const PropertyInstance& inst, const Caps& caps = {});
// Re-runs the check; true when it reproduces the recorded verdict.
bool replay(const PropertyCheck& c, const Caps& caps = {});

// Zero on non-entailed facts; non-zero on entailed ones when the semiring is positive.
PropertyCheck check_definition3(SemanticsId sem, const PropertyInstance& inst, const Caps& caps = {});

// Database facts whose removal breaks entailment. Throws NotEntailed.
std::set<Fact> necessary_facts(const Program& p, const Database& d, const Fact& target);
// Database facts occurring in some derivation tree of `target`, by adornment.
std::set<Fact> usable_facts(const Program& p, const Database& d, const Fact& target);

// Same value on the program and on its grounding over the database.
bool grounding_invariant(SemanticsId sem, const Program& p, const AnnotatedDatabase& adb, const Fact& target,
                         const Caps& caps = {});

struct GeneratorBounds {
  int predicates = 4;
  int max_arity = 2;
  int constants = 4;
  int rules = 6;
  int facts = 6;
  int body_atoms = 3;
  size_t max_entailed = 20;
};

struct RandomInstance {
  Program program;
  Database db;
  Database entailed;
};

// Deterministic stream of small random instances.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed, GeneratorBounds bounds = {});
  RandomInstance next();
  std::mt19937_64& rng() { return rng_; }
  const GeneratorBounds& bounds() const { return bounds_; }

 private:
  std::optional<RandomInstance> attempt();
  std::mt19937_64 rng_;
  GeneratorBounds bounds_;
};

// Random check instance for a (property, semantics) cell; nullopt when the
// random instance offers nothing to compare.
std::optional<PropertyInstance> make_trial(PropertyId prop, SemanticsId sem, const RandomInstance& ri,
                                           std::mt19937_64& rng);
// The hard-coded counterexample for a cell, if one exists.
std::optional<PropertyInstance> counterexample(PropertyId prop, SemanticsId sem);

struct CellReport {
  PropertyId property;
  SemanticsId semantics;
  bool expected = false;
  bool is_static = false;   // declared rather than tested
  int satisfied = 0;
  int violated = 0;
  int inapplicable = 0;
  std::optional<PropertyCheck> witness;  // first violation, or the counterexample check
  bool matches() const;
  std::string symbol() const;
};

struct MatrixReport {
  std::vector<CellReport> cells;
  int trials = 0;
  std::uint64_t seed = 0;
  double seconds = 0;
  int grounding_checked = 0;   // corpus instances compared against their grounding
  int grounding_failures = 0;

  bool ok() const;
  std::string to_text() const;
  nlohmann::json to_json() const;
  const CellReport* find(PropertyId p, SemanticsId s) const;
};

struct MatrixOptions {
  int trials = 200;            // applicable trials per checkmarked cell
  std::uint64_t seed = 1;
  int max_attempts = 20;       // attempts per requested trial before giving up
  std::vector<PropertyId> properties;   // empty = all
  std::vector<SemanticsId> semantics;   // empty = all
  Caps caps;
};

// Fills the matrix; never throws on mismatches (see MatrixReport::ok).
MatrixReport run_table1(const MatrixOptions& opts);

}  // namespace provlog
