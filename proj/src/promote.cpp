#include "promote.hpp"

namespace provlog::detail {

namespace {

std::optional<BigInt> entry_value(const Value& v, const Monomial* mono) {
  if (!mono) {
    const auto& e = std::get<ExtNat>(v);
    if (!e.is_finite()) return std::nullopt;
    return e.n;
  }
  const auto& p = std::get<Poly>(v);
  auto it = p.terms.find(*mono);
  if (it == p.terms.end()) return BigInt(0);
  if (it->second.inf) return std::nullopt;
  return it->second.n;
}

void force_infinite(Value& v, const Monomial* mono) {
  if (!mono) {
    v = ExtNat::infinity(1);
    return;
  }
  std::get<Poly>(v).terms[*mono] = Coef{0, true};
}

}  // namespace

Promoter::Promoter(const Semiring& s, int derivable_facts, bool enabled) : n_(derivable_facts) {
  if (!enabled || !s.flags().omega_continuous) return;
  window_ = n_ + 1;
  if (std::holds_alternative<ExtNat>(s.zero())) {
    kind_ = Kind::ExtNatValue;
  } else if (const PolyRing* r = s.poly_ring(); r && r->allow_inf) {
    kind_ = Kind::Series;
    // A truncated monomial may take up to degree+1 passes around a cycle.
    if (r->degree_cap) window_ = (static_cast<int>(*r->degree_cap) + 1) * (n_ + 1);
  }
}

int Promoter::suggested_cap(int base) const {
  if (!active()) return base;
  return std::max(base, 2 * n_ + 2 * window_ + 4);
}

void Promoter::step(int t, const std::function<const Snapshot&(int)>& round, Snapshot& next) {
  if (!active()) return;
  const bool series = kind_ == Kind::Series;
  for (const auto& [f, mono] : forced_) {
    auto it = next.find(f);
    if (it != next.end()) force_infinite(it->second, series ? &mono : nullptr);
  }
  if (next.size() != round(t - 1).size()) {
    stable_from_ = -1;
    return;
  }
  if (stable_from_ < 0) stable_from_ = t - 1;
  if (t - window_ < stable_from_) return;

  const Snapshot& old = round(t - window_);
  for (auto& [f, v] : next) {
    std::vector<Monomial> monos;
    if (series)
      for (const auto& [mo, c] : std::get<Poly>(v).terms) monos.push_back(mo);
    else
      monos.push_back({});
    auto oit = old.find(f);
    if (oit == old.end()) continue;
    for (const auto& mo : monos) {
      const Monomial* mp = series ? &mo : nullptr;
      auto key = std::make_pair(f, mo);
      if (forced_.count(key)) continue;
      auto now = entry_value(v, mp);
      auto then = entry_value(oit->second, mp);
      if (now && then && *now > *then) {
        if (++streak_[key] >= window_) {
          force_infinite(v, mp);
          forced_.insert(key);
          promoted_.emplace_back(f, mp ? mono_to_string(mo) : "");
        }
      } else {
        streak_[key] = 0;
      }
    }
  }
}

}  // namespace provlog::detail
