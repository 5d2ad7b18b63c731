#include "provlog/model.hpp"

#include "promote.hpp"
#include "provlog/errors.hpp"
#include "provlog/exec.hpp"

namespace provlog {

namespace {

struct Firing {
  int rule;
  Fact head;
  std::vector<Fact> body;  // one entry per body atom
};

std::vector<Firing> firings(const Program& p, const Database& entailed) {
  FactIndex idx(entailed);
  std::vector<Firing> out;
  for (size_t r = 0; r < p.rules.size(); ++r) {
    const Rule& rule = p.rules[r];
    for (const auto& h : homomorphisms(rule.body, idx)) {
      Firing f{static_cast<int>(r), apply_hom(h, rule.head), {}};
      for (const auto& a : rule.body) f.body.push_back(apply_hom(h, a));
      out.push_back(std::move(f));
    }
  }
  return out;
}

bool idempotent_continuous(const Semiring& s) {
  return s.flags().plus_idempotent && s.flags().omega_continuous;
}

}  // namespace

bool am_supported(const Semiring& s) {
  if (idempotent_continuous(s)) return true;
  return s.flags().has_glb && s.join(s.zero(), s.one()).has_value();
}

std::map<Fact, Value> am_model(const Program& p, const AnnotatedDatabase& adb, ModelOptions opts) {
  const Semiring& s = *adb.semiring;
  if (!am_supported(s))
    throw UnsupportedSemiring("annotated-model semantics needs greatest lower bounds and a join on " + s.id());
  if (opts.delegate && idempotent_continuous(s)) {
    NaiveOptions o;
    o.cap = opts.cap;
    auto tr = naive_eval(p, adb, o);
    if (tr.status != FixpointTrace::Status::Converged)
      throw DivergenceError("all-trees evaluation did not converge within " + std::to_string(tr.cap) + " rounds");
    return tr.final().mu;
  }
  if (!s.join(s.zero(), s.one()))
    throw UnsupportedSemiring("no join oracle for " + s.id());

  Database entailed = saturate(p, adb.facts());
  auto fire = firings(p, entailed);
  const int n = static_cast<int>(entailed.size());
  detail::Promoter promoter(s, n, true);
  int cap = opts.cap ? *opts.cap : promoter.suggested_cap(2 * n + 64);

  std::vector<std::map<Fact, Value>> hist;
  std::map<Fact, Value> mu;
  for (const auto& f : entailed) mu[f] = s.zero();
  for (const auto& [f, v] : adb.lambda) mu[f] = v;
  hist.push_back(mu);
  auto round = [&hist](int i) -> const std::map<Fact, Value>& { return hist[i]; };

  for (int t = 1; t <= cap; ++t) {
    const auto& cur = hist.back();
    // Constraint sums grouped per (rule, head fact).
    std::map<std::pair<int, Fact>, Value> sums;
    for (const auto& f : fire) {
      Value prod = s.one();
      for (const auto& b : f.body) prod = s.mul(prod, cur.at(b));
      auto key = std::make_pair(f.rule, f.head);
      auto it = sums.find(key);
      if (it == sums.end())
        sums.emplace(key, std::move(prod));
      else
        it->second = s.add(it->second, prod);
    }
    std::map<Fact, Value> next;
    for (const auto& f : entailed) {
      auto l = adb.lambda.find(f);
      next[f] = l == adb.lambda.end() ? s.zero() : l->second;
    }
    for (const auto& [key, v] : sums) next[key.second] = *s.join(next[key.second], v);
    promoter.step(t, round, next);
    bool same = next == cur;
    hist.push_back(std::move(next));
    if (same) return hist.back();
  }
  throw DivergenceError("annotated-model fixpoint did not stabilize within " + std::to_string(cap) + " rounds");
}

Value am_provenance(const Program& p, const AnnotatedDatabase& adb, const Fact& target, ModelOptions opts) {
  auto mu = am_model(p, adb, opts);
  auto it = mu.find(target);
  return it == mu.end() ? adb.semiring->zero() : it->second;
}

SetAnnotatedInterpretation sam_model(const Program& p, const AnnotatedDatabase& adb, ModelOptions opts) {
  const Semiring& s = *adb.semiring;
  SetAnnotatedInterpretation out;
  out.cap = opts.set_cap;
  Database entailed = saturate(p, adb.facts());
  auto fire = firings(p, entailed);
  for (const auto& [f, v] : adb.lambda) out.mu_set[f].insert(v);

  int cap = opts.cap ? *opts.cap : 2 * static_cast<int>(entailed.size()) + 64;
  // Semi-naive: each round only forms products that use a member added last round.
  std::map<Fact, std::set<Value>> delta = out.mu_set, old;
  static const std::set<Value> none;
  auto lookup = [](const std::map<Fact, std::set<Value>>& m, const Fact& f) -> const std::set<Value>& {
    auto it = m.find(f);
    return it == m.end() ? none : it->second;
  };
  for (int t = 1; t <= cap; ++t) {
    std::map<Fact, std::set<Value>> fresh;
    for (const auto& f : fire) {
      for (size_t j = 0; j < f.body.size(); ++j) {
        if (lookup(delta, f.body[j]).empty()) continue;
        std::vector<const std::set<Value>*> sets;
        bool empty = false;
        for (size_t i = 0; i < f.body.size() && !empty; ++i) {
          const auto& st = i < j ? lookup(old, f.body[i]) : i == j ? lookup(delta, f.body[i]) : lookup(out.mu_set, f.body[i]);
          empty = st.empty();
          sets.push_back(&st);
        }
        if (empty) continue;
        const auto& have = lookup(out.mu_set, f.head);
        auto& add = fresh[f.head];
        std::vector<std::set<Value>::const_iterator> pos;
        for (const auto* st : sets) pos.push_back(st->begin());
        while (true) {
          Value prod = s.one();
          for (const auto& it : pos) prod = s.mul(prod, *it);
          if (!have.count(prod) && add.insert(std::move(prod)).second && have.size() + add.size() > opts.set_cap)
            throw DivergenceError("value set of " + to_string(f.head) + " exceeds " +
                                  std::to_string(opts.set_cap) + " members");
          size_t k = pos.size();
          while (k > 0) {
            if (++pos[k - 1] != sets[k - 1]->end()) break;
            pos[k - 1] = sets[k - 1]->begin();
            --k;
          }
          if (k == 0) break;
        }
      }
    }
    old = out.mu_set;
    delta.clear();
    for (auto& [f, vs] : fresh)
      if (!vs.empty()) {
        out.mu_set[f].insert(vs.begin(), vs.end());
        delta[f] = std::move(vs);
      }
    if (delta.empty()) return out;
  }
  throw DivergenceError("set-annotated fixpoint did not stabilize within " + std::to_string(cap) + " rounds");
}

Value sam_provenance(const Program& p, const AnnotatedDatabase& adb, const Fact& target, ModelOptions opts) {
  const Semiring& s = *adb.semiring;
  if (opts.delegate && idempotent_continuous(s)) {
    NaiveOptions o;
    o.cap = opts.cap;
    return naive_eval(p, adb, o).converged_value(target);
  }
  auto m = sam_model(p, adb, opts);
  auto it = m.mu_set.find(target);
  if (it == m.mu_set.end()) return s.zero();
  Value total = s.zero();
  for (const auto& v : it->second) total = s.add(total, v);
  return total;
}

Value sam_monomial_oracle(const Program& p, const AnnotatedDatabase& adb, const Fact& target,
                          std::optional<int> depth_cap) {
  if (!adb.semiring->poly_ring())
    throw InapplicableSemiring("the monomial oracle needs a polynomial or series semiring");
  Value at;
  if (depth_cap) {
    NaiveOptions o;
    o.cap = depth_cap;
    at = naive_eval(p, adb, o).final().value(target);
  } else {
    at = at_eval(p, adb, target);
  }
  return poly_clamp(std::get<Poly>(at));
}

}  // namespace provlog
