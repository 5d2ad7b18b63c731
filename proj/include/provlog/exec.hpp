#pragma once

#include <optional>

#include "json.hpp"
#include "provlog/datalog.hpp"

namespace provlog {

// Annotated interpretation; absent facts have value 0.
struct AnnotatedInterpretation {
  SemiringPtr semiring;
  std::map<Fact, Value> mu;

  Database facts() const;
  Value value(const Fact& f) const;
  static AnnotatedInterpretation from(const AnnotatedDatabase& adb);
};

struct FixpointTrace {
  enum class Status { Converged, Capped, Diverged };

  std::vector<AnnotatedInterpretation> snapshots;  // round 0 is the database
  Status status = Status::Capped;
  int rounds = 0;  // index of the last snapshot
  int cap = 0;
  std::vector<std::string> warnings;
  std::vector<std::pair<Fact, std::string>> promoted;  // entries forced to infinity

  const AnnotatedInterpretation& final() const { return snapshots.back(); }
  // Value at convergence; throws DivergenceError otherwise.
  Value converged_value(const Fact& f) const;
  nlohmann::json to_json() const;
};
std::string to_string(FixpointTrace::Status s);

struct NaiveOptions {
  // Explicit round budget. When set, reaching it ends the run as Capped.
  std::optional<int> cap;
  // Infinity promotion on semirings with infinite coefficients.
  bool promote = true;
  // Largest polynomial (terms) any fact may carry; 0 = unbounded. Exceeding
  // it ends the run as Diverged.
  size_t term_cap = 0;
};

AnnotatedInterpretation immediate_consequence(const Program& p, const AnnotatedInterpretation& interp);
AnnotatedInterpretation annotated_union(const AnnotatedInterpretation& a, const AnnotatedInterpretation& b);

FixpointTrace naive_eval(const Program& p, const AnnotatedDatabase& adb, NaiveOptions opts = {});
int default_iteration_cap(const Program& p, const AnnotatedDatabase& adb);
// Convenience: converged naive value of one fact (all-trees semantics).
Value at_eval(const Program& p, const AnnotatedDatabase& adb, const Fact& target,
              std::optional<int> cap = std::nullopt, size_t term_cap = 0);

Value optimized_eval(const Program& p, const AnnotatedDatabase& adb, const Fact& target,
                     std::optional<int> cap = std::nullopt);
// Rounds until no new fact; also returns the number of rounds when asked.
AnnotatedInterpretation seminaive_eval(const Program& p, const AnnotatedDatabase& adb, int* rounds = nullptr);
Value nrt_eval(const Program& p, const AnnotatedDatabase& adb, const Fact& target);

struct ConjunctiveQuery {
  std::vector<Atom> body;
  std::vector<Term> answer;  // answer variables (or constants)
};
using UCQ = std::vector<ConjunctiveQuery>;
// Sum over disjuncts and distinct homomorphisms of the body-image product.
Value ucq_provenance(const UCQ& q, const std::vector<std::string>& tuple, const AnnotatedDatabase& adb);

}  // namespace provlog
