#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brw/comb.hpp"
#include "brw/named_set.hpp"
#include "brw/projection.hpp"
#include "brw/tree.hpp"

using namespace brw;

TEST_CASE("tree to comb passes the rate-sum identity") {
  auto tree = std::make_shared<TreeGraph>(3, 0.35);
  const auto rep = check_projection(tree_to_comb(tree), 8);
  CHECK(rep.exact_pass);
  CHECK(rep.surjective);
  CHECK_FALSE(rep.violation.has_value());
  CHECK(rep.rows_checked == 3 * 256 - 2);
}

TEST_CASE("quotient tree to comb passes too") {
  auto tree = std::make_shared<TreeGraph>(4, 0.3, 2);
  CHECK(check_projection(tree_to_comb(tree), 12).exact_pass);
}

TEST_CASE("comb to singleton and the gadget pass") {
  auto comb = std::make_shared<CombGraph>(1, 0.35);
  CHECK(check_projection(comb_to_singleton(comb), 10).exact_pass);
  auto comb3 = std::make_shared<CombGraph>(3, 0.2);
  CHECK(check_projection(comb_to_singleton(comb3), 6).exact_pass);
  for (int alpha : {1, 2}) {
    auto prime = std::make_shared<CombPrimeGraph>(alpha, 0.35, 2);
    CAPTURE(alpha);
    CHECK(check_projection(gadget_to_comb(prime), 10).exact_pass);
  }
}

TEST_CASE("mismatched alpha yields a witness") {
  auto tree = std::make_shared<TreeGraph>(3, 0.35);
  const auto rep = check_projection(tree_to_comb_with_alpha(tree, 2), 6);
  CHECK_FALSE(rep.exact_pass);
  REQUIRE(rep.violation.has_value());
  CHECK(rep.violation->lhs != rep.violation->rhs);
  CHECK_FALSE(rep.violation->describe.empty());
}

TEST_CASE("project_config sums over fibres") {
  auto tree = std::make_shared<TreeGraph>(3, 0.35);
  const auto map = tree_to_comb(tree);
  CHECK(project_config({}, map).empty());

  const auto single = project_config({{TreeGraph::spine(3), 1}}, map);
  REQUIRE(single.size() == 1);
  CHECK(single.begin()->first == CombGraph::at(3, 0));

  const auto pair = project_config({{tree->branch_root(2), 2}}, map);
  REQUIRE(pair.size() == 1);
  CHECK(pair.begin()->first == CombGraph::at(1, 1));
  CHECK(pair.begin()->second == 2);

  const auto merged = project_config({{tree->vertex(0, {0, 0}), 1}, {tree->vertex(0, {0, 1}), 3}}, map);
  REQUIRE(merged.size() == 1);
  CHECK(merged.begin()->first == CombGraph::at(0, 2));
  CHECK(merged.begin()->second == 4);
}

TEST_CASE("pushed-forward offspring law matches the target law") {
  auto tree = std::make_shared<TreeGraph>(3, 0.35);
  const auto map = tree_to_comb(tree);
  CHECK(fibre_law_tv(map, tree->root(), 100'000, 7) < 0.01);
  CHECK(fibre_law_tv(map, tree->branch_root(2), 100'000, 8) < 0.01);
  auto comb = std::make_shared<CombGraph>(1, 0.35);
  CHECK(fibre_law_tv(comb_to_singleton(comb), comb->root(), 100'000, 7) < 0.01);
}

TEST_CASE("q transports along the tree-to-comb map") {
  auto fast = std::make_shared<TreeGraph>(3, 0.4, 2);
  const auto map = tree_to_comb(fast);
  const auto full = check_q_transport(map, TargetSet::full(), TargetSet::full(), fast->root(), 20, 20);
  CHECK(full.overlap);
  CHECK(full.source.contains(full.source_vertex, 1.0 / 1.2, 1e-6));

  const auto none = check_q_transport(map, TargetSet::none(), TargetSet::none(), fast->root(), 10, 10);
  CHECK(none.overlap);
  CHECK(none.source.lower_at(none.source_vertex) == 1.0);

  auto tree = std::make_shared<TreeGraph>(3, 0.35, 2);
  const auto tmap = tree_to_comb(tree);
  const auto* comb = as_comb(*tmap.target);
  REQUIRE(comb != nullptr);
  const auto teeth = check_q_transport(tmap, tree_fibres(*tree, {1}), comb_teeth(*comb, {1}), tree->root(), 20, 20);
  CHECK(teeth.conclusive);
  CHECK(teeth.overlap);
}
