#include <algorithm>
#include <functional>

#include "provlog/datalog.hpp"
#include "provlog/errors.hpp"

namespace provlog {

std::vector<std::string> Rule::variables() const {
  std::set<std::string> vs;
  for (const auto& t : head.args)
    if (t.is_var) vs.insert(t.name);
  for (const auto& a : body)
    for (const auto& t : a.args)
      if (t.is_var) vs.insert(t.name);
  return {vs.begin(), vs.end()};
}

Database AnnotatedDatabase::facts() const {
  Database d;
  for (const auto& [f, v] : lambda) d.insert(f);
  return d;
}

FactIndex::FactIndex(const Database& d) {
  for (const auto& f : d) insert(f);
}

void FactIndex::insert(const Fact& f) {
  if (all_.insert(f).second) by_pred_[f.pred].push_back(f);
}

const std::vector<Fact>& FactIndex::of(const std::string& pred) const {
  static const std::vector<Fact> empty;
  auto it = by_pred_.find(pred);
  return it == by_pred_.end() ? empty : it->second;
}

Atom to_atom(const Fact& f) {
  Atom a{f.pred, {}};
  for (const auto& c : f.args) a.args.push_back(Term::constant(c));
  return a;
}

Fact apply_hom(const Homomorphism& h, const Atom& a) {
  Fact f{a.pred, {}};
  f.args.reserve(a.args.size());
  for (const auto& t : a.args) {
    if (!t.is_var) {
      f.args.push_back(t.name);
      continue;
    }
    auto it = h.find(t.name);
    if (it == h.end()) throw UnboundVariable("variable " + t.name + " is unmapped in " + to_string(a));
    f.args.push_back(it->second);
  }
  return f;
}

namespace {

// Extend h so that h(a) == f. Returns false on clash; h is left extended
// only on success (caller passes a copy).
bool match_atom(const Atom& a, const Fact& f, Homomorphism& h) {
  if (a.pred != f.pred || a.args.size() != f.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i) {
    const Term& t = a.args[i];
    if (!t.is_var) {
      if (t.name != f.args[i]) return false;
      continue;
    }
    auto [it, ins] = h.emplace(t.name, f.args[i]);
    if (!ins && it->second != f.args[i]) return false;
  }
  return true;
}

void search(const std::vector<Atom>& body, size_t i, const FactIndex& idx, Homomorphism& h,
            std::vector<Homomorphism>& out) {
  if (i == body.size()) {
    out.push_back(h);
    return;
  }
  for (const Fact& f : idx.of(body[i].pred)) {
    Homomorphism ext = h;
    if (match_atom(body[i], f, ext)) search(body, i + 1, idx, ext, out);
  }
}

}  // namespace

bool unify_head(const Atom& head, const Fact& target, Homomorphism& seed) {
  return match_atom(head, target, seed);
}

std::vector<Homomorphism> homomorphisms(const std::vector<Atom>& body, const FactIndex& facts,
                                        const Homomorphism& seed) {
  std::vector<Homomorphism> out;
  Homomorphism h = seed;
  search(body, 0, facts, h, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Homomorphism> homomorphisms(const std::vector<Atom>& body, const Database& facts) {
  return homomorphisms(body, FactIndex(facts));
}

std::set<std::string> domain(const Database& d) {
  std::set<std::string> out;
  for (const auto& f : d)
    for (const auto& c : f.args) out.insert(c);
  return out;
}

Program ground(const Program& p, const Database& d, size_t cap) {
  // Program constants join the database domain; otherwise rules naming a
  // constant absent from D would lose instantiations the program uses.
  auto consts = domain(d);
  for (const auto& r : p.rules) {
    for (const auto& t : r.head.args)
      if (!t.is_var) consts.insert(t.name);
    for (const auto& a : r.body)
      for (const auto& t : a.args)
        if (!t.is_var) consts.insert(t.name);
  }
  std::vector<std::string> dom(consts.begin(), consts.end());
  // Count first so that oversized groundings fail before allocation.
  BigInt total = 0;
  for (const auto& r : p.rules) {
    BigInt k = 1;
    for (size_t i = 0; i < r.variables().size(); ++i) k *= dom.size();
    total += k;
  }
  if (total > cap)
    throw SizeLimitError("grounding has " + total.str() + " instantiations, cap is " + std::to_string(cap));
  Program g;
  for (const auto& r : p.rules) {
    auto vars = r.variables();
    if (!vars.empty() && dom.empty()) continue;
    std::vector<size_t> pos(vars.size(), 0);
    while (true) {
      Homomorphism h;
      for (size_t i = 0; i < vars.size(); ++i) h[vars[i]] = dom[pos[i]];
      Rule gr;
      gr.head = to_atom(apply_hom(h, r.head));
      // Atoms that collapse under h stay separate, one per body occurrence.
      for (const auto& a : r.body) gr.body.push_back(to_atom(apply_hom(h, a)));
      g.rules.push_back(std::move(gr));
      size_t k = vars.size();
      while (k > 0) {
        if (++pos[k - 1] < dom.size()) break;
        pos[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
  }
  return g;
}

Database saturate(const Program& p, const Database& d) {
  FactIndex all(d);
  FactIndex delta(d);
  while (!delta.all().empty()) {
    FactIndex next;
    for (const auto& r : p.rules) {
      // Seminaive: one body atom is matched against the delta, the others
      // against everything known.
      for (size_t j = 0; j < r.body.size(); ++j) {
        std::vector<Homomorphism> out;
        std::function<void(size_t, Homomorphism&)> go = [&](size_t i, Homomorphism& h) {
          if (i == r.body.size()) {
            Fact f = apply_hom(h, r.head);
            if (!all.contains(f)) next.insert(f);
            return;
          }
          const FactIndex& src = (i == j) ? delta : all;
          for (const Fact& f : src.of(r.body[i].pred)) {
            Homomorphism ext = h;
            if (match_atom(r.body[i], f, ext)) go(i + 1, ext);
          }
        };
        Homomorphism h;
        go(0, h);
      }
    }
    for (const auto& f : next.all()) all.insert(f);
    delta = std::move(next);
  }
  return all.all();
}

bool entails(const Program& p, const Database& d, const Fact& f) {
  if (d.count(f)) return true;
  return saturate(p, d).count(f) > 0;
}

bool is_recursive(const Program& p) {
  std::map<std::string, std::set<std::string>> edges;
  for (const auto& r : p.rules)
    for (const auto& a : r.body) edges[a.pred].insert(r.head.pred);
  std::map<std::string, int> state;
  std::function<bool(const std::string&)> cyc = [&](const std::string& u) {
    state[u] = 1;
    for (const auto& v : edges[u]) {
      if (state[v] == 1) return true;
      if (state[v] == 0 && cyc(v)) return true;
    }
    state[u] = 2;
    return false;
  };
  for (const auto& [u, _] : edges)
    if (state[u] == 0 && cyc(u)) return true;
  return false;
}

}  // namespace provlog
