#include "provlog/circuits.hpp"

#include <algorithm>

#include "provlog/errors.hpp"
#include "provlog/trees.hpp"

namespace provlog {

CircuitSemantics parse_circuit_semantics(const std::string& s) {
  if (s == "at-depth" || s == "at") return CircuitSemantics::AtDepth;
  if (s == "mdt") return CircuitSemantics::MinDepth;
  if (s == "hmdt") return CircuitSemantics::HereditaryMinDepth;
  throw Error("UsageError", "no circuit construction for semantics '" + s + "'");
}

std::optional<std::string> annotation_variable(const Value& v) {
  if (const auto* p = std::get_if<Poly>(&v)) {
    if (p->terms.size() != 1) return std::nullopt;
    const auto& [m, c] = *p->terms.begin();
    if (c.inf || c.n != 1 || m.size() != 1 || m[0].second != 1) return std::nullopt;
    return m[0].first;
  }
  if (const auto* b = std::get_if<PosBool>(&v)) {
    if (b->clauses.size() != 1 || b->clauses[0].size() != 1) return std::nullopt;
    return b->clauses[0][0];
  }
  return std::nullopt;
}

AnnotatedDatabase variable_annotation(const Database& d, SemiringPtr s, const std::string& prefix) {
  AnnotatedDatabase adb;
  adb.semiring = s;
  int i = 0;
  for (const auto& f : d) {
    auto v = s->variable(prefix + std::to_string(i++));
    if (!v) throw InapplicableSemiring("semiring " + s->id() + " has no variables");
    adb.lambda.emplace(f, *v);
  }
  return adb;
}

namespace {

class Builder {
 public:
  explicit Builder(CircuitBundle& b) : b_(b) {}

  int leaf(const std::string& var) {
    CircuitNode n;
    n.op = CircuitNode::Op::Var;
    n.var = var;
    return push(std::move(n));
  }
  int constant(int c) {
    int& slot = c ? one_ : zero_;
    if (slot < 0) {
      CircuitNode n;
      n.constant = c;
      slot = push(std::move(n));
    }
    return slot;
  }
  int gate(CircuitNode::Op op, std::vector<int> ch) {
    if (op == CircuitNode::Op::Prod) {
      for (int c : ch)
        if (c == zero_) return constant(0);
      ch.erase(std::remove(ch.begin(), ch.end(), one_), ch.end());
      if (ch.empty()) return constant(1);
    } else {
      ch.erase(std::remove(ch.begin(), ch.end(), zero_), ch.end());
      if (ch.empty()) return constant(0);
    }
    if (ch.size() == 1) return ch[0];
    CircuitNode n;
    n.op = op;
    n.children = std::move(ch);
    return push(std::move(n));
  }

 private:
  int push(CircuitNode n) {
    b_.nodes.push_back(std::move(n));
    return static_cast<int>(b_.nodes.size()) - 1;
  }
  CircuitBundle& b_;
  int zero_ = -1, one_ = -1;
};

// Sum gate for `head` over the firings in `rules`, reading children from `node`.
int fact_gate(Builder& bld, const Program& p, const std::vector<std::vector<Homomorphism>>& homs,
              const std::map<Fact, int>& node, const std::map<Fact, int>& leaves, const Fact& head,
              const std::map<Fact, std::vector<std::pair<int, size_t>>>& by_head) {
  std::vector<int> terms;
  auto l = leaves.find(head);
  if (l != leaves.end()) terms.push_back(l->second);
  auto it = by_head.find(head);
  if (it != by_head.end()) {
    for (const auto& [r, hi] : it->second) {
      std::vector<int> ch;
      for (const auto& a : p.rules[r].body) ch.push_back(node.at(apply_hom(homs[r][hi], a)));
      terms.push_back(bld.gate(CircuitNode::Op::Prod, std::move(ch)));
    }
  }
  return bld.gate(CircuitNode::Op::Sum, std::move(terms));
}

struct Round {
  std::vector<std::vector<Homomorphism>> homs;
  std::map<Fact, std::vector<std::pair<int, size_t>>> by_head;
  size_t count = 0;
};

Round match(const Program& p, const Database& facts) {
  Round r;
  FactIndex idx(facts);
  for (size_t i = 0; i < p.rules.size(); ++i) {
    r.homs.push_back(homomorphisms(p.rules[i].body, idx));
    for (size_t j = 0; j < r.homs.back().size(); ++j) {
      r.by_head[apply_hom(r.homs.back()[j], p.rules[i].head)].emplace_back(static_cast<int>(i), j);
      ++r.count;
    }
  }
  return r;
}

}  // namespace

CircuitBundle build_circuits(const Program& p, const AnnotatedDatabase& adb, CircuitSemantics sem, int depth) {
  CircuitBundle b;
  Builder bld(b);
  std::map<Fact, int> leaves;
  std::set<std::string> seen;
  for (const auto& [f, v] : adb.lambda) {
    auto var = annotation_variable(v);
    if (!var) throw InapplicableSemiring("circuits need a single-variable annotation, found " +
                                         adb.semiring->print(v) + " on " + to_string(f));
    if (!seen.insert(*var).second)
      throw InapplicableSemiring("variable " + *var + " annotates two facts");
    b.bindings[*var] = f;
    leaves[f] = bld.leaf(*var);
  }

  if (sem == CircuitSemantics::HereditaryMinDepth) {
    std::map<Fact, int> node = leaves;
    while (true) {
      Database cur;
      for (const auto& [f, n] : node) cur.insert(f);
      Round r = match(p, cur);
      b.instantiations = std::max(b.instantiations, r.count);
      std::map<Fact, int> fresh;
      for (const auto& [head, _] : r.by_head)
        if (!node.count(head)) fresh[head] = fact_gate(bld, p, r.homs, node, {}, head, r.by_head);
      ++b.iterations;
      if (fresh.empty()) break;
      node.insert(fresh.begin(), fresh.end());
    }
    b.roots = node;
    return b;
  }

  // Naive rounds; round t gates read round t-1 gates.
  std::map<Fact, int> node = leaves;
  std::map<Fact, int> md_root = leaves;
  for (int t = 1;; ++t) {
    if (sem == CircuitSemantics::AtDepth && t > depth) break;
    Database cur;
    for (const auto& [f, n] : node) cur.insert(f);
    Round r = match(p, cur);
    b.instantiations = std::max(b.instantiations, r.count);
    std::set<Fact> heads;
    for (const auto& [f, n] : leaves) heads.insert(f);
    for (const auto& [f, _] : r.by_head) heads.insert(f);
    if (sem == CircuitSemantics::MinDepth && heads.size() == node.size()) break;
    std::map<Fact, int> next;
    for (const auto& f : heads) {
      // Every fact keeps evolving; a minimal-depth root is the gate of the
      // round where its fact first appears.
      next[f] = fact_gate(bld, p, r.homs, node, leaves, f, r.by_head);
      if (!md_root.count(f)) md_root[f] = next[f];
    }
    node = std::move(next);
    b.iterations = t;
  }
  b.roots = sem == CircuitSemantics::MinDepth ? md_root : node;
  return b;
}

ArithmeticCircuit CircuitBundle::circuit(const Fact& f) const {
  auto it = roots.find(f);
  if (it == roots.end()) {
    ArithmeticCircuit c;
    c.nodes.push_back(CircuitNode{});
    return c;
  }
  std::vector<char> keep(nodes.size(), 0);
  std::vector<int> stack{it->second};
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    if (keep[n]) continue;
    keep[n] = 1;
    for (int c : nodes[n].children) stack.push_back(c);
  }
  std::vector<int> remap(nodes.size(), -1);
  ArithmeticCircuit c;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!keep[i]) continue;
    remap[i] = static_cast<int>(c.nodes.size());
    CircuitNode n = nodes[i];
    for (int& ch : n.children) ch = remap[ch];
    c.nodes.push_back(std::move(n));
  }
  c.root = remap[it->second];
  return c;
}

namespace {

nlohmann::json node_json(const CircuitNode& n) {
  switch (n.op) {
    case CircuitNode::Op::Sum: return {{"op", "sum"}, {"children", n.children}};
    case CircuitNode::Op::Prod: return {{"op", "prod"}, {"children", n.children}};
    case CircuitNode::Op::Var: return {{"op", "leaf"}, {"var", n.var}};
    default: return {{"op", "leaf"}, {"const", n.constant}};
  }
}

nlohmann::json bindings_json(const std::map<std::string, Fact>& b) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [v, f] : b) j[v] = to_string(f);
  return j;
}

}  // namespace

nlohmann::json CircuitBundle::to_json() const {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const auto& n : nodes) j["nodes"].push_back(node_json(n));
  j["roots"] = nlohmann::json::object();
  for (const auto& [f, r] : roots) j["roots"][to_string(f)] = r;
  j["bindings"] = bindings_json(bindings);
  j["iterations"] = iterations;
  return j;
}

nlohmann::json circuit_to_json(const ArithmeticCircuit& c, const std::map<std::string, Fact>& bindings) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const auto& n : c.nodes) j["nodes"].push_back(node_json(n));
  j["root"] = c.root;
  j["bindings"] = bindings_json(bindings);
  return j;
}

namespace {

template <class T, class Leaf, class Add, class Mul>
T fold(const ArithmeticCircuit& c, Leaf leaf, Add add, Mul mul) {
  std::vector<char> need(c.nodes.size(), 0);
  need[c.root] = 1;
  for (int i = c.root; i >= 0; --i)
    if (need[i])
      for (int ch : c.nodes[i].children) need[ch] = 1;
  std::vector<std::optional<T>> memo(c.nodes.size());
  for (int i = 0; i <= c.root; ++i) {
    if (!need[i]) continue;
    const auto& n = c.nodes[i];
    if (n.op == CircuitNode::Op::Var || n.op == CircuitNode::Op::Const) {
      memo[i] = leaf(n);
      continue;
    }
    T acc = *memo[n.children[0]];
    for (size_t k = 1; k < n.children.size(); ++k)
      acc = n.op == CircuitNode::Op::Sum ? add(acc, *memo[n.children[k]]) : mul(acc, *memo[n.children[k]]);
    memo[i] = std::move(acc);
  }
  return *memo[c.root];
}

}  // namespace

Value evaluate_circuit(const ArithmeticCircuit& c, const Semiring& s, const std::map<std::string, Value>& nu) {
  return fold<Value>(
      c,
      [&](const CircuitNode& n) -> Value {
        if (n.op == CircuitNode::Op::Const) return n.constant ? s.one() : s.zero();
        auto it = nu.find(n.var);
        if (it == nu.end()) throw UnboundVariable("circuit variable " + n.var + " has no value");
        return it->second;
      },
      [&](const Value& a, const Value& b) { return s.add(a, b); },
      [&](const Value& a, const Value& b) { return s.mul(a, b); });
}

Poly expand_circuit(const ArithmeticCircuit& c, unsigned degree_cap, size_t term_cap) {
  const PolyRing ring{};
  auto check = [&](Poly p) {
    if (p.terms.size() > term_cap)
      throw TermExplosion("expansion exceeds " + std::to_string(term_cap) + " terms");
    for (const auto& [m, co] : p.terms)
      if (degree(m) > degree_cap)
        throw TermExplosion("expansion exceeds degree " + std::to_string(degree_cap));
    return p;
  };
  return fold<Poly>(
      c,
      [&](const CircuitNode& n) {
        if (n.op == CircuitNode::Op::Const) return Poly::constant(n.constant);
        return Poly::variable(n.var);
      },
      [&](const Poly& a, const Poly& b) { return check(poly_add(a, b, ring)); },
      [&](const Poly& a, const Poly& b) { return check(poly_mul(a, b, ring)); });
}

}  // namespace provlog
