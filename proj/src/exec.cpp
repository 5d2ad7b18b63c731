#include "provlog/exec.hpp"

#include "provlog/errors.hpp"
#include "provlog/trees.hpp"
#include "promote.hpp"

namespace provlog {

Database AnnotatedInterpretation::facts() const {
  Database d;
  for (const auto& [f, v] : mu) d.insert(f);
  return d;
}

Value AnnotatedInterpretation::value(const Fact& f) const {
  auto it = mu.find(f);
  return it == mu.end() ? semiring->zero() : it->second;
}

AnnotatedInterpretation AnnotatedInterpretation::from(const AnnotatedDatabase& adb) {
  return AnnotatedInterpretation{adb.semiring, adb.lambda};
}

std::string to_string(FixpointTrace::Status s) {
  switch (s) {
    case FixpointTrace::Status::Converged: return "converged";
    case FixpointTrace::Status::Capped: return "capped";
    default: return "diverged";
  }
}

Value FixpointTrace::converged_value(const Fact& f) const {
  if (status != Status::Converged)
    throw DivergenceError("naive evaluation " + to_string(status) + " after " + std::to_string(rounds) +
                          " rounds (cap " + std::to_string(cap) + ")");
  return final().value(f);
}

nlohmann::json FixpointTrace::to_json() const {
  nlohmann::json j;
  j["status"] = to_string(status);
  j["rounds"] = rounds;
  j["cap"] = cap;
  j["warnings"] = warnings;
  nlohmann::json pr = nlohmann::json::array();
  for (const auto& [f, m] : promoted) pr.push_back({{"fact", to_string(f)}, {"monomial", m}});
  j["promoted"] = pr;
  nlohmann::json rs = nlohmann::json::array();
  for (size_t i = 0; i < snapshots.size(); ++i) {
    const auto& cur = snapshots[i];
    nlohmann::json delta = nlohmann::json::object();
    for (const auto& [f, v] : cur.mu) {
      if (i > 0) {
        auto it = snapshots[i - 1].mu.find(f);
        if (it != snapshots[i - 1].mu.end() && it->second == v) continue;
      }
      delta[to_string(f)] = cur.semiring->print(v);
    }
    rs.push_back({{"round", i}, {"changed", delta}});
  }
  j["trace"] = rs;
  return j;
}

namespace {

// Homomorphisms of every rule over a fixed fact set.
struct Matches {
  size_t fact_count = static_cast<size_t>(-1);
  std::vector<std::vector<Homomorphism>> per_rule;
};

void refresh(Matches& m, const Program& p, const AnnotatedInterpretation& interp) {
  if (m.fact_count == interp.mu.size()) return;
  FactIndex idx(interp.facts());
  m.per_rule.clear();
  for (const auto& r : p.rules) m.per_rule.push_back(homomorphisms(r.body, idx));
  m.fact_count = interp.mu.size();
}

AnnotatedInterpretation consequence(const Program& p, const AnnotatedInterpretation& in, const Matches& m) {
  const Semiring& s = *in.semiring;
  AnnotatedInterpretation out{in.semiring, {}};
  for (size_t r = 0; r < p.rules.size(); ++r) {
    const Rule& rule = p.rules[r];
    for (const auto& h : m.per_rule[r]) {
      Value prod = s.one();
      for (const auto& a : rule.body) prod = s.mul(prod, in.mu.at(apply_hom(h, a)));
      Fact head = apply_hom(h, rule.head);
      auto it = out.mu.find(head);
      if (it == out.mu.end())
        out.mu.emplace(std::move(head), std::move(prod));
      else
        it->second = s.add(it->second, prod);
    }
  }
  return out;
}

AnnotatedInterpretation union_with(AnnotatedInterpretation a, const AnnotatedInterpretation& b) {
  const Semiring& s = *a.semiring;
  for (const auto& [f, v] : b.mu) {
    auto it = a.mu.find(f);
    if (it == a.mu.end())
      a.mu.emplace(f, v);
    else
      it->second = s.add(it->second, v);
  }
  return a;
}

}  // namespace

AnnotatedInterpretation immediate_consequence(const Program& p, const AnnotatedInterpretation& interp) {
  Matches m;
  refresh(m, p, interp);
  return consequence(p, interp, m);
}

AnnotatedInterpretation annotated_union(const AnnotatedInterpretation& a, const AnnotatedInterpretation& b) {
  if (a.semiring != b.semiring && (!a.semiring || !b.semiring || a.semiring->id() != b.semiring->id()))
    throw SemiringMismatch("annotated union of interpretations over different semirings");
  return union_with(a, b);
}

int default_iteration_cap(const Program& p, const AnnotatedDatabase& adb) {
  return 2 * static_cast<int>(saturate(p, adb.facts()).size()) + 64;
}

FixpointTrace naive_eval(const Program& p, const AnnotatedDatabase& adb, NaiveOptions opts) {
  const Semiring& s = *adb.semiring;
  FixpointTrace tr;
  if (!s.flags().omega_continuous)
    tr.warnings.push_back("NotOmegaContinuous: semiring " + s.id() +
                          " is not omega-continuous, convergence is not guaranteed");

  const int n = static_cast<int>(saturate(p, adb.facts()).size());
  detail::Promoter promoter(s, n, opts.promote);
  tr.cap = opts.cap ? *opts.cap : promoter.suggested_cap(default_iteration_cap(p, adb));

  AnnotatedInterpretation base = AnnotatedInterpretation::from(adb);
  tr.snapshots.push_back(base);
  Matches m;
  auto round = [&tr](int i) -> const std::map<Fact, Value>& { return tr.snapshots[i].mu; };

  for (int t = 1; t <= tr.cap; ++t) {
    const auto& prev = tr.snapshots.back();
    refresh(m, p, prev);
    AnnotatedInterpretation next = union_with(consequence(p, prev, m), base);
    promoter.step(t, round, next.mu);
    tr.promoted = promoter.promoted();

    bool same = next.mu == prev.mu;
    bool too_big = false;
    if (opts.term_cap)
      for (const auto& [f, v] : next.mu)
        if (const auto* poly = std::get_if<Poly>(&v); poly && poly->terms.size() > opts.term_cap) too_big = true;
    tr.snapshots.push_back(std::move(next));
    tr.rounds = t;
    if (too_big) {
      tr.warnings.push_back("TermCap: a value exceeded " + std::to_string(opts.term_cap) + " terms");
      tr.status = FixpointTrace::Status::Diverged;
      return tr;
    }
    if (same) {
      tr.status = FixpointTrace::Status::Converged;
      return tr;
    }
  }
  tr.status = opts.cap ? FixpointTrace::Status::Capped : FixpointTrace::Status::Diverged;
  return tr;
}

Value at_eval(const Program& p, const AnnotatedDatabase& adb, const Fact& target, std::optional<int> cap,
              size_t term_cap) {
  NaiveOptions o;
  if (cap) o.cap = cap;
  o.term_cap = term_cap;
  return naive_eval(p, adb, o).converged_value(target);
}

Value optimized_eval(const Program& p, const AnnotatedDatabase& adb, const Fact& target, std::optional<int> cap) {
  AnnotatedInterpretation base = AnnotatedInterpretation::from(adb);
  AnnotatedInterpretation cur = base;
  Matches m;
  int limit = cap ? *cap : default_iteration_cap(p, adb);
  for (int t = 0;; ++t) {
    auto it = cur.mu.find(target);
    if (it != cur.mu.end()) return it->second;
    if (t >= limit) throw DivergenceError("optimized evaluation hit its round cap");
    refresh(m, p, cur);
    AnnotatedInterpretation next = union_with(consequence(p, cur, m), base);
    // The target never appears once the fact set stops growing.
    if (next.mu.size() == cur.mu.size()) return adb.semiring->zero();
    cur = std::move(next);
  }
}

AnnotatedInterpretation seminaive_eval(const Program& p, const AnnotatedDatabase& adb, int* rounds) {
  AnnotatedInterpretation cur = AnnotatedInterpretation::from(adb);
  Matches m;
  int t = 0;
  while (true) {
    refresh(m, p, cur);
    AnnotatedInterpretation derived = consequence(p, cur, m);
    bool fresh = false;
    for (auto& [f, v] : derived.mu) {
      if (cur.mu.count(f)) continue;
      cur.mu.emplace(f, std::move(v));
      fresh = true;
    }
    ++t;
    if (!fresh) break;
  }
  if (rounds) *rounds = t;
  return cur;
}

Value nrt_eval(const Program& p, const AnnotatedDatabase& adb, const Fact& target) {
  const Flags& fl = adb.semiring->flags();
  if (fl.absorptive && fl.omega_continuous) return at_eval(p, adb, target);
  return nonrecursive_tree_sum(p, adb, target);
}

Value ucq_provenance(const UCQ& q, const std::vector<std::string>& tuple, const AnnotatedDatabase& adb) {
  const Semiring& s = *adb.semiring;
  FactIndex idx(adb.facts());
  Value total = s.zero();
  for (const auto& cq : q) {
    if (cq.answer.size() != tuple.size()) throw ArityError("answer tuple arity differs from the query");
    Homomorphism seed;
    Atom ans{"", cq.answer};
    if (!unify_head(ans, Fact{"", tuple}, seed)) continue;
    Rule tmp{ans, cq.body};
    dedupe_body(tmp);
    for (const auto& h : homomorphisms(tmp.body, idx, seed)) {
      Value prod = s.one();
      for (const auto& a : tmp.body) prod = s.mul(prod, adb.lambda.at(apply_hom(h, a)));
      total = s.add(total, prod);
    }
  }
  return total;
}

}  // namespace provlog
