#pragma once

#include <optional>
#include <set>

#include "provlog/datalog.hpp"

namespace provlog {

struct ModelOptions {
  std::optional<int> cap;       // round cap (default: as for naive evaluation)
  bool delegate = true;         // use the all-trees value on +-idempotent omega-continuous semirings
  size_t set_cap = 4096;        // per-fact member cap for the set-annotated fixpoint
};

// Least annotated model, by a join fixpoint over per-rule constraint sums.
Value am_provenance(const Program& p, const AnnotatedDatabase& adb, const Fact& target, ModelOptions opts = {});
// All least-model annotations at once.
std::map<Fact, Value> am_model(const Program& p, const AnnotatedDatabase& adb, ModelOptions opts = {});
bool am_supported(const Semiring& s);

struct SetAnnotatedInterpretation {
  std::map<Fact, std::set<Value>> mu_set;
  size_t cap = 0;
};
SetAnnotatedInterpretation sam_model(const Program& p, const AnnotatedDatabase& adb, ModelOptions opts = {});
// Sum over the least value set of the target.
Value sam_provenance(const Program& p, const AnnotatedDatabase& adb, const Fact& target, ModelOptions opts = {});

// All-trees value with every non-zero coefficient set to 1.
Value sam_monomial_oracle(const Program& p, const AnnotatedDatabase& adb, const Fact& target,
                          std::optional<int> depth_cap = std::nullopt);

}  // namespace provlog
