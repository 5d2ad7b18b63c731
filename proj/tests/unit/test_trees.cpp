#include "doctest.h"
#include "util.hpp"

using namespace provlog;

TEST_CASE("four derivation trees for H(a,a)") {
  auto L = testutil::example("three_rules.dl", "three_rules.facts", "nat");
  auto trees = collect_trees(L.program, L.db.facts(), parse_fact("H(a,a)"), TreeKind::All, 1);
  CHECK(trees.size() == 4);
  for (const auto& t : trees) CHECK(validate_tree(t, L.program, L.db.facts()));
  CHECK(count_trees(L.program, L.db.facts(), parse_fact("H(a,a)"), 1) == 4);
  // Depth 0 only has leaves, and H(a,a) is not a database fact.
  CHECK(collect_trees(L.program, L.db.facts(), parse_fact("H(a,a)"), TreeKind::All, 0).empty());
}

TEST_CASE("tree kinds on the depth example") {
  auto L = testutil::example("depth_kinds.dl", "depth_kinds_x.facts", "poly-nat");
  Database d = L.db.facts();
  Fact a = parse_fact("A(a)");
  auto sum = [&](TreeKind k) {
    Value v = L.db.semiring->zero();
    for (const auto& t : collect_trees(L.program, d, a, k, std::nullopt))
      v = L.db.semiring->add(v, tree_annotation(t, *L.db.semiring, L.db.lambda));
    return L.db.semiring->print(v);
  };
  CHECK(sum(TreeKind::NonRecursive) == "c*d + d*e + d*f");
  CHECK(sum(TreeKind::MinDepth) == "c*d + d*e");
  CHECK(sum(TreeKind::HereditaryMinDepth) == "c*d");
  CHECK(collect_trees(L.program, d, a, TreeKind::NonRecursive, std::nullopt).size() == 3);
  CHECK(minimal_depth(L.program, d, a) == 2);
  CHECK(L.db.semiring->print(nonrecursive_tree_sum(L.program, L.db, a)) == "c*d + d*e + d*f");
}

TEST_CASE("hereditary minimal-depth trees are minimal-depth and non-recursive") {
  auto L = testutil::example("running.dl", "running_nat.facts", "nat");
  Database d = L.db.facts();
  for (const auto& f : saturate(L.program, d)) {
    auto hmd = collect_trees(L.program, d, f, TreeKind::HereditaryMinDepth, std::nullopt);
    auto md = collect_trees(L.program, d, f, TreeKind::MinDepth, std::nullopt);
    for (const auto& t : hmd) {
      CHECK(is_non_recursive(t));
      bool found = false;
      for (const auto& u : md) found = found || compare_trees(t, u) == 0;
      CHECK(found);
    }
  }
}

TEST_CASE("all trees of a recursive program need a cap") {
  auto L = testutil::example("running.dl", "running_nat.facts", "nat");
  CHECK_THROWS_AS(enumerate_trees(L.program, L.db.facts(), parse_fact("A(a)"), TreeKind::All, std::nullopt),
                  DepthCapRequired);
  auto s = enumerate_trees(L.program, L.db.facts(), parse_fact("A(a)"), TreeKind::All, 4);
  int n = 0, last = -1;
  while (auto t = s.next()) {
    CHECK((*t)->depth >= last);
    last = (*t)->depth;
    ++n;
  }
  CHECK(BigInt(n) == count_trees(L.program, L.db.facts(), parse_fact("A(a)"), 4));
}

TEST_CASE("tree serialization") {
  auto L = testutil::example("three_rules.dl", "three_rules.facts", "nat");
  auto trees = collect_trees(L.program, L.db.facts(), parse_fact("H(a,a)"), TreeKind::All, 1);
  auto j = tree_to_json(trees[0]);
  CHECK(j["fact"] == "H(a,a)");
  CHECK(tree_to_text(trees[0]).find("H(a,a)") == 0);
}
