#include "provlog/trees.hpp"

#include <algorithm>

#include "provlog/errors.hpp"

namespace provlog {

Tree make_leaf(const Fact& f) {
  auto n = std::make_shared<TreeNode>();
  n->fact = f;
  return n;
}

Tree make_node(const Fact& f, int rule, Homomorphism h, std::vector<Tree> children) {
  auto n = std::make_shared<TreeNode>();
  n->fact = f;
  n->rule = rule;
  n->hom = std::move(h);
  int d = 0;
  for (const auto& c : children) d = std::max(d, c->depth);
  n->depth = d + 1;
  n->children = std::move(children);
  return n;
}

TreeKind parse_tree_kind(const std::string& s) {
  if (s == "all") return TreeKind::All;
  if (s == "nonrecursive" || s == "non_recursive") return TreeKind::NonRecursive;
  if (s == "md" || s == "min_depth") return TreeKind::MinDepth;
  if (s == "hmd" || s == "hereditary_min_depth") return TreeKind::HereditaryMinDepth;
  throw Error("UsageError", "unknown tree kind '" + s + "'");
}

std::string to_string(TreeKind k) {
  switch (k) {
    case TreeKind::All: return "all";
    case TreeKind::NonRecursive: return "nonrecursive";
    case TreeKind::MinDepth: return "md";
    default: return "hmd";
  }
}

namespace {

int structural_compare(const TreeNode& a, const TreeNode& b) {
  if (a.fact != b.fact) return a.fact < b.fact ? -1 : 1;
  if (a.rule != b.rule) return a.rule < b.rule ? -1 : 1;
  if (a.hom != b.hom) return a.hom < b.hom ? -1 : 1;
  size_t n = std::min(a.children.size(), b.children.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare_trees(a.children[i], b.children[i]);
    if (c) return c;
  }
  if (a.children.size() != b.children.size()) return a.children.size() < b.children.size() ? -1 : 1;
  return 0;
}

void sort_canonical(std::vector<Tree>& ts) {
  std::sort(ts.begin(), ts.end(), [](const Tree& a, const Tree& b) { return compare_trees(a, b) < 0; });
}

// Cartesian product of child alternatives.
void combine(const Fact& f, const RuleInstance& inst, const std::vector<const std::vector<Tree>*>& alts,
             std::vector<Tree>& out, size_t limit) {
  for (const auto* a : alts)
    if (a->empty()) return;
  std::vector<size_t> pos(alts.size(), 0);
  while (true) {
    std::vector<Tree> ch;
    ch.reserve(alts.size());
    for (size_t i = 0; i < alts.size(); ++i) ch.push_back((*alts[i])[pos[i]]);
    out.push_back(make_node(f, inst.rule, inst.hom, std::move(ch)));
    if (out.size() > limit) throw SizeLimitError("derivation tree enumeration exceeds its limit");
    size_t k = alts.size();
    while (k > 0) {
      if (++pos[k - 1] < alts[k - 1]->size()) break;
      pos[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
}

class Enumerator {
 public:
  Enumerator(const Program& p, const Database& d, TreeLimits lim)
      : p_(p), d_(d), lim_(lim), entailed_(saturate(p, d)) {}

  const std::vector<RuleInstance>& insts(const Fact& f) {
    auto it = inst_.find(f);
    if (it != inst_.end()) return it->second;
    return inst_[f] = instances_for(p_, entailed_, f);
  }

  const std::vector<Tree>& upto(const Fact& f, int depth) {
    auto key = std::make_pair(f, depth);
    auto it = all_.find(key);
    if (it != all_.end()) return it->second;
    std::vector<Tree> out;
    if (d_.count(f)) out.push_back(make_leaf(f));
    if (depth > 0) {
      for (const auto& inst : insts(f)) {
        std::vector<const std::vector<Tree>*> alts;
        for (const auto& b : inst.body) alts.push_back(&upto(b, depth - 1));
        combine(f, inst, alts, out, lim_.max_trees);
      }
    }
    return all_[key] = std::move(out);
  }

  const std::vector<Tree>& nonrec(const Fact& f, const std::vector<Fact>& anc) {
    auto key = std::make_pair(f, anc);
    auto it = nr_.find(key);
    if (it != nr_.end()) return it->second;
    std::vector<Tree> out;
    if (d_.count(f)) out.push_back(make_leaf(f));
    std::vector<Fact> anc2 = anc;
    anc2.insert(std::upper_bound(anc2.begin(), anc2.end(), f), f);
    for (const auto& inst : insts(f)) {
      bool ok = true;
      for (const auto& b : inst.body)
        if (std::binary_search(anc2.begin(), anc2.end(), b)) ok = false;
      if (!ok) continue;
      std::vector<const std::vector<Tree>*> alts;
      for (const auto& b : inst.body) alts.push_back(&nonrec(b, anc2));
      combine(f, inst, alts, out, lim_.max_trees);
    }
    return nr_[key] = std::move(out);
  }

  const std::vector<Tree>& hmd(const Fact& f, const std::map<Fact, int>& md) {
    auto it = hmd_.find(f);
    if (it != hmd_.end()) return it->second;
    std::vector<Tree> out;
    auto m = md.find(f);
    if (m != md.end()) {
      if (m->second == 0) {
        out.push_back(make_leaf(f));
      } else {
        for (const auto& inst : insts(f)) {
          bool ok = true;
          for (const auto& b : inst.body) {
            auto mb = md.find(b);
            if (mb == md.end() || mb->second > m->second - 1) ok = false;
          }
          if (!ok) continue;
          std::vector<const std::vector<Tree>*> alts;
          for (const auto& b : inst.body) alts.push_back(&hmd(b, md));
          combine(f, inst, alts, out, lim_.max_trees);
        }
      }
    }
    return hmd_[f] = std::move(out);
  }

  const Database& entailed() const { return entailed_.all(); }

 private:
  const Program& p_;
  const Database& d_;
  TreeLimits lim_;
  FactIndex entailed_;
  std::map<Fact, std::vector<RuleInstance>> inst_;
  std::map<std::pair<Fact, int>, std::vector<Tree>> all_;
  std::map<std::pair<Fact, std::vector<Fact>>, std::vector<Tree>> nr_;
  std::map<Fact, std::vector<Tree>> hmd_;
};

}  // namespace

int compare_trees(const Tree& a, const Tree& b) {
  if (a.get() == b.get()) return 0;
  if (a->depth != b->depth) return a->depth < b->depth ? -1 : 1;
  return structural_compare(*a, *b);
}

std::vector<RuleInstance> instances_for(const Program& p, const FactIndex& facts, const Fact& head) {
  std::vector<RuleInstance> out;
  for (size_t r = 0; r < p.rules.size(); ++r) {
    const Rule& rule = p.rules[r];
    Homomorphism seed;
    if (!unify_head(rule.head, head, seed)) continue;
    for (auto& h : homomorphisms(rule.body, facts, seed)) {
      RuleInstance inst{static_cast<int>(r), h, {}};
      for (const auto& a : rule.body) inst.body.push_back(apply_hom(h, a));
      out.push_back(std::move(inst));
    }
  }
  return out;
}

std::optional<Tree> TreeStream::next() {
  while (pos_ >= buf_.size()) {
    if (done_) return std::nullopt;
    auto lvl = next_level_();
    if (!lvl) {
      done_ = true;
      return std::nullopt;
    }
    buf_ = std::move(*lvl);
    pos_ = 0;
  }
  return buf_[pos_++];
}

TreeStream enumerate_trees(const Program& p, const Database& d, const Fact& target, TreeKind kind,
                           std::optional<int> depth_cap, TreeLimits limits) {
  // Copies keep the stream independent of the caller's lifetime.
  auto prog = std::make_shared<Program>(p);
  auto db = std::make_shared<Database>(d);
  auto en = std::make_shared<Enumerator>(*prog, *db, limits);

  if (kind == TreeKind::All) {
    int cap;
    if (depth_cap) {
      cap = *depth_cap;
    } else {
      if (is_recursive(p))
        throw DepthCapRequired("kind=all on a recursive program needs a depth cap");
      // Paths of a non-recursive program never repeat a fact.
      cap = static_cast<int>(en->entailed().size());
    }
    auto level = std::make_shared<int>(0);
    return TreeStream([prog, db, en, target, cap, level]() -> std::optional<std::vector<Tree>> {
      if (*level > cap) return std::nullopt;
      int k = (*level)++;
      std::vector<Tree> out;
      for (const auto& t : en->upto(target, k))
        if (t->depth == k) out.push_back(t);
      sort_canonical(out);
      return out;
    });
  }

  std::vector<Tree> all;
  if (kind == TreeKind::NonRecursive) {
    all = en->nonrec(target, {});
  } else {
    auto md = minimal_depths(p, d);
    auto it = md.find(target);
    if (it != md.end()) {
      if (kind == TreeKind::MinDepth)
        all = en->upto(target, it->second);
      else
        all = en->hmd(target, md);
    }
  }
  if (depth_cap) {
    std::vector<Tree> kept;
    for (const auto& t : all)
      if (t->depth <= *depth_cap) kept.push_back(t);
    all.swap(kept);
  }
  sort_canonical(all);
  auto holder = std::make_shared<std::vector<Tree>>(std::move(all));
  auto served = std::make_shared<bool>(false);
  return TreeStream([prog, db, en, holder, served]() -> std::optional<std::vector<Tree>> {
    if (*served) return std::nullopt;
    *served = true;
    return *holder;
  });
}

std::vector<Tree> collect_trees(const Program& p, const Database& d, const Fact& target, TreeKind kind,
                                std::optional<int> depth_cap, TreeLimits limits) {
  auto s = enumerate_trees(p, d, target, kind, depth_cap, limits);
  std::vector<Tree> out;
  while (auto t = s.next()) out.push_back(*t);
  return out;
}

Value tree_annotation(const Tree& t, const Semiring& s, const std::map<Fact, Value>& lambda) {
  if (t->is_leaf()) {
    auto it = lambda.find(t->fact);
    if (it == lambda.end()) throw UnannotatedLeaf("leaf " + to_string(t->fact) + " has no annotation");
    return it->second;
  }
  Value acc = s.one();
  for (const auto& c : t->children) acc = s.mul(acc, tree_annotation(c, s, lambda));
  return acc;
}

std::map<Fact, int> minimal_depths(const Program& p, const Database& d) {
  std::map<Fact, int> md;
  FactIndex known(d);
  for (const auto& f : d) md[f] = 0;
  for (int round = 1;; ++round) {
    std::vector<Fact> fresh;
    for (const auto& r : p.rules)
      for (const auto& h : homomorphisms(r.body, known)) {
        Fact f = apply_hom(h, r.head);
        if (!md.count(f)) fresh.push_back(f);
      }
    if (fresh.empty()) break;
    for (const auto& f : fresh) {
      if (md.emplace(f, round).second) known.insert(f);
    }
  }
  return md;
}

std::optional<int> minimal_depth(const Program& p, const Database& d, const Fact& f) {
  auto md = minimal_depths(p, d);
  auto it = md.find(f);
  if (it == md.end()) return std::nullopt;
  return it->second;
}

BigInt count_trees(const Program& p, const Database& d, const Fact& f, int depth) {
  FactIndex ent(saturate(p, d));
  std::map<Fact, std::vector<RuleInstance>> insts;
  std::map<std::pair<Fact, int>, BigInt> memo;
  std::function<BigInt(const Fact&, int)> go = [&](const Fact& x, int k) -> BigInt {
    auto key = std::make_pair(x, k);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    BigInt n = d.count(x) ? 1 : 0;
    if (k > 0) {
      auto ii = insts.find(x);
      if (ii == insts.end()) ii = insts.emplace(x, instances_for(p, ent, x)).first;
      for (const auto& inst : ii->second) {
        BigInt prod = 1;
        for (const auto& b : inst.body) {
          prod *= go(b, k - 1);
          if (prod == 0) break;
        }
        n += prod;
      }
    }
    return memo[key] = n;
  };
  return go(f, depth);
}

Value nonrecursive_tree_sum(const Program& p, const AnnotatedDatabase& adb, const Fact& f) {
  const Semiring& s = *adb.semiring;
  Database d = adb.facts();
  FactIndex ent(saturate(p, d));
  std::map<Fact, std::vector<RuleInstance>> insts;
  std::map<std::pair<Fact, std::vector<Fact>>, Value> memo;
  std::function<Value(const Fact&, const std::vector<Fact>&)> go =
      [&](const Fact& x, const std::vector<Fact>& anc) -> Value {
    auto key = std::make_pair(x, anc);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Value total = s.zero();
    auto l = adb.lambda.find(x);
    if (l != adb.lambda.end()) total = l->second;
    std::vector<Fact> anc2 = anc;
    anc2.insert(std::upper_bound(anc2.begin(), anc2.end(), x), x);
    auto ii = insts.find(x);
    if (ii == insts.end()) ii = insts.emplace(x, instances_for(p, ent, x)).first;
    for (const auto& inst : ii->second) {
      bool ok = true;
      for (const auto& b : inst.body)
        if (std::binary_search(anc2.begin(), anc2.end(), b)) ok = false;
      if (!ok) continue;
      Value prod = s.one();
      for (const auto& b : inst.body) prod = s.mul(prod, go(b, anc2));
      total = s.add(total, prod);
    }
    return memo[key] = total;
  };
  if (!ent.contains(f)) return s.zero();
  return go(f, {});
}

bool validate_tree(const Tree& t, const Program& p, const Database& d, std::string* why) {
  auto bad = [&](const std::string& m) {
    if (why) *why = m + " at " + to_string(t->fact);
    return false;
  };
  if (t->is_leaf()) {
    if (!d.count(t->fact)) return bad("leaf is not a database fact");
    if (t->depth != 0) return bad("leaf depth is not 0");
    return true;
  }
  if (t->rule >= static_cast<int>(p.rules.size())) return bad("rule index out of range");
  const Rule& r = p.rules[t->rule];
  auto vars = r.variables();
  if (t->hom.size() != vars.size()) return bad("homomorphism is not total on the rule variables");
  for (const auto& v : vars)
    if (!t->hom.count(v)) return bad("homomorphism misses variable " + v);
  if (apply_hom(t->hom, r.head) != t->fact) return bad("head condition fails");
  if (t->children.size() != r.body.size()) return bad("child count differs from body size");
  int depth = 0;
  for (size_t i = 0; i < r.body.size(); ++i) {
    if (apply_hom(t->hom, r.body[i]) != t->children[i]->fact) return bad("child does not match body atom");
    if (!validate_tree(t->children[i], p, d, why)) return false;
    depth = std::max(depth, t->children[i]->depth);
  }
  if (t->depth != depth + 1) return bad("stored depth is wrong");
  return true;
}

bool is_non_recursive(const Tree& t) {
  std::vector<Fact> path;
  std::function<bool(const Tree&)> go = [&](const Tree& n) {
    for (const auto& f : path)
      if (f == n->fact) return false;
    path.push_back(n->fact);
    for (const auto& c : n->children)
      if (!go(c)) return false;
    path.pop_back();
    return true;
  };
  return go(t);
}

std::string tree_to_text(const Tree& t) {
  std::string out;
  std::function<void(const Tree&, int)> go = [&](const Tree& n, int ind) {
    out += std::string(2 * ind, ' ') + to_string(n->fact);
    if (!n->is_leaf()) out += "  <- r" + std::to_string(n->rule) + " " + to_string(n->hom);
    out += "\n";
    for (const auto& c : n->children) go(c, ind + 1);
  };
  go(t, 0);
  return out;
}

nlohmann::json tree_to_json(const Tree& t) {
  nlohmann::json j;
  j["fact"] = to_string(t->fact);
  if (!t->is_leaf()) {
    j["rule"] = t->rule;
    nlohmann::json h = nlohmann::json::object();
    for (const auto& [v, c] : t->hom) h[v] = c;
    j["hom"] = h;
    j["children"] = nlohmann::json::array();
    for (const auto& c : t->children) j["children"].push_back(tree_to_json(c));
  }
  return j;
}

std::vector<Fact> tree_leaves(const Tree& t) {
  if (t->is_leaf()) return {t->fact};
  std::vector<Fact> out;
  for (const auto& c : t->children) {
    auto l = tree_leaves(c);
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

}  // namespace provlog
