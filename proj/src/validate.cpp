#include <cmath>

#include "provlog/errors.hpp"
#include "provlog/semiring.hpp"

namespace provlog {

namespace {

struct Recorder {
  const Semiring& s;
  std::vector<LawViolation>& out;
  std::vector<std::string> seen;

  void fail(const std::string& law, std::initializer_list<const Value*> wit) {
    for (const auto& l : seen)
      if (l == law) return;
    seen.push_back(law);
    LawViolation v{law, {}};
    for (const Value* w : wit) v.witness.push_back(s.print(*w));
    out.push_back(std::move(v));
  }
};

}  // namespace

ValidationReport validate_semiring(const Semiring& s, size_t sample_budget, std::uint64_t seed) {
  ValidationReport rep;
  std::vector<Value> pool = s.carrier();
  rep.exhaustive = !pool.empty();
  if (!rep.exhaustive) {
    size_t m = std::max<size_t>(4, static_cast<size_t>(std::cbrt(static_cast<double>(sample_budget))));
    pool = s.samples(seed, m);
  }
  const Value zero = s.zero(), one = s.one();
  Recorder ax{s, rep.violations, {}};
  Recorder fl{s, rep.flag_refutations, {}};

  bool plus_idem = true, times_idem = true, absorptive = true, positive = true;
  for (const auto& a : pool) {
    ++rep.checked;
    if (s.add(a, zero) != a || s.add(zero, a) != a) ax.fail("add_identity", {&a});
    if (s.mul(a, one) != a || s.mul(one, a) != a) ax.fail("mul_identity", {&a});
    if (s.mul(a, zero) != zero || s.mul(zero, a) != zero) ax.fail("annihilation", {&a});
    if (s.add(a, a) != a) {
      plus_idem = false;
      fl.fail("plus_idempotent", {&a});
    }
    if (s.mul(a, a) != a) {
      times_idem = false;
      fl.fail("times_idempotent", {&a});
    }
    for (const auto& b : pool) {
      Value ab = s.add(a, b), ma = s.mul(a, b);
      if (ab != s.add(b, a)) ax.fail("add_comm", {&a, &b});
      if (ma != s.mul(b, a)) ax.fail("mul_comm", {&a, &b});
      if (s.add(ma, a) != a) {
        absorptive = false;
        fl.fail("absorptive", {&a, &b});
      }
      if ((ab == zero && !(a == zero && b == zero)) ||
          (ma == zero && !(a == zero || b == zero))) {
        positive = false;
        fl.fail("positive", {&a, &b});
      }
      for (const auto& c : pool) {
        ++rep.checked;
        if (s.add(ab, c) != s.add(a, s.add(b, c))) ax.fail("add_assoc", {&a, &b, &c});
        if (s.mul(ma, c) != s.mul(a, s.mul(b, c))) ax.fail("mul_assoc", {&a, &b, &c});
        if (s.mul(a, s.add(b, c)) != s.add(ma, s.mul(a, c)))
          ax.fail("distributivity", {&a, &b, &c});
      }
    }
  }
  rep.observed = s.flags();
  rep.observed.plus_idempotent = plus_idem;
  rep.observed.times_idempotent = times_idem;
  rep.observed.absorptive = absorptive;
  rep.observed.positive = positive;

  if (rep.exhaustive) {
    const size_t n = pool.size();
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        le[i][j] = natural_order_leq(s, pool[i], pool[j]) == Tri::True;
    bool antisym = true;
    for (size_t i = 0; i < n && antisym; ++i)
      for (size_t j = 0; j < n; ++j)
        if (i != j && le[i][j] && le[j][i]) {
          antisym = false;
          fl.fail("omega_continuous", {&pool[i], &pool[j]});
          break;
        }
    auto extremal = [&](size_t i, size_t j, bool upper) -> bool {
      std::vector<size_t> bounds;
      for (size_t k = 0; k < n; ++k)
        if (upper ? (le[i][k] && le[j][k]) : (le[k][i] && le[k][j])) bounds.push_back(k);
      for (size_t k : bounds) {
        bool best = true;
        for (size_t o : bounds)
          if (upper ? !le[k][o] : !le[o][k]) best = false;
        if (best) return true;
      }
      return false;
    };
    bool joins = true, glbs = true;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        if (joins && !extremal(i, j, true)) {
          joins = false;
          fl.fail("has_finite_joins", {&pool[i], &pool[j]});
        }
        if (glbs && !extremal(i, j, false)) {
          glbs = false;
          rep.glb_witness = std::make_pair(s.print(pool[i]), s.print(pool[j]));
          fl.fail("has_glb", {&pool[i], &pool[j]});
        }
      }
    rep.observed.omega_continuous = antisym;
    rep.observed.has_finite_joins = joins;
    rep.observed.has_glb = glbs;
  }

  // A declared flag that the check refutes is itself a violation.
  const Flags& d = s.flags();
  const Flags& o = rep.observed;
  auto refuted = [&](bool declared, bool observed, const std::string& name) {
    if (declared && !observed) {
      for (const auto& r : rep.flag_refutations)
        if (r.law == name) rep.violations.push_back({"declared_" + name, r.witness});
    }
  };
  refuted(d.plus_idempotent, o.plus_idempotent, "plus_idempotent");
  refuted(d.times_idempotent, o.times_idempotent, "times_idempotent");
  refuted(d.absorptive, o.absorptive, "absorptive");
  refuted(d.positive, o.positive, "positive");
  return rep;
}

}  // namespace provlog
