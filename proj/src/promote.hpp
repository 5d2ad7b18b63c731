#pragma once
// Infinity promotion for fixpoints over semirings with infinite
// coefficients (extended naturals, power series). An entry is a fact, or a
// (fact, monomial) pair for series. Once the fact set is stable, an entry
// whose value exceeds its value `window` rounds earlier, for `window`
// consecutive rounds, is forced to infinity for the rest of the run.

#include <functional>
#include <map>
#include <set>

#include "provlog/datalog.hpp"

namespace provlog::detail {

class Promoter {
 public:
  using Snapshot = std::map<Fact, Value>;

  Promoter(const Semiring& s, int derivable_facts, bool enabled);

  bool active() const { return kind_ != Kind::None; }
  int window() const { return window_; }
  // Round cap large enough for a promotion to happen and propagate.
  int suggested_cap(int base) const;

  // Re-apply earlier promotions, then look for new ones. `next` becomes
  // round t; `round(i)` returns the snapshot of an earlier round i.
  void step(int t, const std::function<const Snapshot&(int)>& round, Snapshot& next);

  const std::vector<std::pair<Fact, std::string>>& promoted() const { return promoted_; }

 private:
  enum class Kind { None, ExtNatValue, Series };
  Kind kind_ = Kind::None;
  int n_ = 0;
  int window_ = 0;
  int stable_from_ = -1;
  std::map<std::pair<Fact, Monomial>, int> streak_;
  std::set<std::pair<Fact, Monomial>> forced_;
  std::vector<std::pair<Fact, std::string>> promoted_;
};

}  // namespace provlog::detail
