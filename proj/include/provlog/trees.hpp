#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "json.hpp"
#include "provlog/datalog.hpp"

namespace provlog {

struct TreeNode;
using Tree = std::shared_ptr<const TreeNode>;

struct TreeNode {
  Fact fact;
  int rule = -1;  // -1 marks a leaf
  Homomorphism hom;
  std::vector<Tree> children;
  int depth = 0;

  bool is_leaf() const { return rule < 0; }
};

Tree make_leaf(const Fact& f);
Tree make_node(const Fact& f, int rule, Homomorphism h, std::vector<Tree> children);

enum class TreeKind { All, NonRecursive, MinDepth, HereditaryMinDepth };
TreeKind parse_tree_kind(const std::string& s);  // all, nonrecursive, md, hmd
std::string to_string(TreeKind k);

// Canonical order: depth, then structure.
int compare_trees(const Tree& a, const Tree& b);

// Single-consumer lazy stream of trees in canonical order.
class TreeStream {
 public:
  using LevelFn = std::function<std::optional<std::vector<Tree>>()>;
  explicit TreeStream(LevelFn fn) : next_level_(std::move(fn)) {}
  std::optional<Tree> next();

 private:
  LevelFn next_level_;
  std::vector<Tree> buf_;
  size_t pos_ = 0;
  bool done_ = false;
};

struct TreeLimits {
  size_t max_trees = 2000000;  // per memoized table, guards memory
};

TreeStream enumerate_trees(const Program& p, const Database& d, const Fact& target, TreeKind kind,
                           std::optional<int> depth_cap, TreeLimits limits = {});
std::vector<Tree> collect_trees(const Program& p, const Database& d, const Fact& target, TreeKind kind,
                                std::optional<int> depth_cap, TreeLimits limits = {});

Value tree_annotation(const Tree& t, const Semiring& s, const std::map<Fact, Value>& lambda);

// Minimal derivation depth of every entailed fact (breadth-first saturation).
std::map<Fact, int> minimal_depths(const Program& p, const Database& d);
std::optional<int> minimal_depth(const Program& p, const Database& d, const Fact& f);

// Number of derivation trees of depth <= depth (no enumeration).
BigInt count_trees(const Program& p, const Database& d, const Fact& f, int depth);

// Sum of the tree annotations over all non-recursive trees, by memoized
// recursion on (fact, ancestors).
Value nonrecursive_tree_sum(const Program& p, const AnnotatedDatabase& adb, const Fact& f);

// Independent structural check of the derivation-tree conditions.
bool validate_tree(const Tree& t, const Program& p, const Database& d, std::string* why = nullptr);
bool is_non_recursive(const Tree& t);

std::string tree_to_text(const Tree& t);
nlohmann::json tree_to_json(const Tree& t);
std::vector<Fact> tree_leaves(const Tree& t);

// A rule instance (r, h) deriving a fact from facts of an entailed set.
struct RuleInstance {
  int rule = 0;
  Homomorphism hom;
  std::vector<Fact> body;  // h applied to each (deduplicated) body atom
};
std::vector<RuleInstance> instances_for(const Program& p, const FactIndex& facts, const Fact& head);

}  // namespace provlog
