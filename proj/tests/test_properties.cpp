#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "brw/comb.hpp"
#include "brw/experiments.hpp"
#include "brw/finite.hpp"
#include "brw/genfun.hpp"
#include "brw/named_set.hpp"
#include "brw/solver.hpp"
#include "brw/tree.hpp"
#include "property_checks.hpp"

using namespace brw;

namespace {

constexpr int kRadius = 16;

}  // namespace

TEST_CASE("G is monotone on random ordered pairs") {
  auto comb = std::make_shared<CombGraph>(1, 0.35);
  CHECK(checks::g_monotonicity(*compile(*comb, 10), 1000, 404) == 0);
  auto tree = std::make_shared<TreeGraph>(4, 0.3, 2);
  CHECK(checks::g_monotonicity(*compile(*tree, 10), 1000, 405) == 0);
}

TEST_CASE("set monotonicity on random nested pairs") {
  auto tree = std::make_shared<TreeGraph>(3, 0.35, 2);
  const Solver s(tree, kRadius);
  CHECK(checks::set_monotonicity(s, 20, 101) == 0);
  // Subtrees along the spine nest away from o: T_{y_{n+1}} inside T_{y_n}
  // for n >= 0, T_{y_{n-1}} inside T_{y_n} for n <= 0.
  int violations = 0;
  for (std::int64_t n = -3; n < 3; ++n) {
    const auto inner = s.q(tree_Ty(*tree, n >= 0 ? n + 1 : n));
    const auto outer = s.q(tree_Ty(*tree, n >= 0 ? n : n + 1));
    for (const auto& v : s.truncation()->vertices()) {
      violations += inner.lower_at(v) < outer.lower_at(v) - checks::kOrderSlack;
      violations += inner.upper_at(v) < outer.upper_at(v) - checks::kOrderSlack;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("finite-union bound on random finite sets") {
  auto tree = std::make_shared<TreeGraph>(3, 0.35, 2);
  CHECK(checks::finite_union_bound(Solver(tree, kRadius), 20, 202) == 0);
  auto comb = std::make_shared<CombGraph>(1, 0.35);
  CHECK(checks::finite_union_bound(Solver(comb, kRadius), 20, 203) == 0);
}

TEST_CASE("q-bar sits below every q") {
  auto tree = std::make_shared<TreeGraph>(3, 0.35, 2);
  const Solver s(tree, kRadius);
  const auto qbar = s.qbar();
  int violations = 0;
  for (const auto& tag : {"point:o", "Ty:0", "Ty:2", "Tx:1", "union-Tx:1,3", "spine"}) {
    const auto b = s.q(named_set(*tree, tag));
    for (const auto& v : s.truncation()->vertices()) {
      violations += qbar.lower_at(v) > b.lower_at(v) + checks::kOrderSlack;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("upward q iterates stay in L_G") {
  auto tree = std::make_shared<TreeGraph>(3, 0.35, 2);
  const Solver s(tree, kRadius);
  for (const auto& tag : {"point:o", "Ty:1", "Tx:2"}) {
    CAPTURE(tag);
    auto z = s.q0(named_set(*tree, tag)).lower;
    for (int step = 0; step < 30; ++step) {
      REQUIRE(classify_point(s.system(), z).in_lower);
      IterationTrace trace;
      z = iterate_map(s.system(), z, 1, &trace);
      REQUIRE(trace.nondecreasing);
    }
  }
}

TEST_CASE("brackets are sandwiched on every family") {
  std::vector<std::pair<ModelPtr, std::string>> cases;
  auto tree = std::make_shared<TreeGraph>(3, 0.35, 2);
  auto comb = std::make_shared<CombGraph>(1, 0.35);
  cases.emplace_back(tree, "Ty:1");
  cases.emplace_back(tree, "union-Tx:2..5");
  cases.emplace_back(comb, "V:1");
  cases.emplace_back(comb, "union-V:1,2");
  for (const auto& [model, tag] : cases) {
    CAPTURE(tag);
    for (int r : {8, 16}) {
      const auto b = compute_q(model, named_set(*model, tag), r);
      CHECK(sandwiched(b));
      CHECK(sandwiched(compute_q0(model, named_set(*model, tag), r)));
    }
  }
}

TEST_CASE("random irreducible finite systems have at most two fixed points") {
  std::mt19937_64 gen(303);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 10; ++trial) {
    const int size = 2 + trial % 2;
    std::vector<ExplicitLaw> laws;
    for (int v = 0; v < size; ++v) {
      std::vector<LawOutcome> outs(2);
      outs[0].probability = u(gen);
      outs[1].probability = 1.0 - outs[0].probability;
      // v -> v+1 closes a cycle through every site.
      outs[1].config.entries = {{FiniteModel::vertex((v + 1) % size), 1}, {FiniteModel::vertex(v), 1}};
      outs[1].config.normalize();
      laws.emplace_back(std::move(outs));
    }
    const FiniteModel model(std::move(laws));
    REQUIRE(model.irreducible());
    CAPTURE(trial);
    const auto rep = enumerate_fixed_points_finite(model, 40, static_cast<std::uint64_t>(trial));
    CHECK(rep.clusters.size() >= 1);
    CHECK(rep.clusters.size() <= 2);
  }
}

TEST_CASE("distance decrements along an edge") {
  auto tree = std::make_shared<TreeGraph>(3, 0.35, 2);
  const Solver s(tree, 10);
  const auto a = tree_Tx(*tree, 2);
  const auto d = s.distances(a);
  const auto& stencil = s.system().stencil();
  int violations = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto& v = s.truncation()->vertices()[i];
    violations += (d[i] == 0) != a.contains(v);
    if (d[i] <= 0) continue;
    bool step = false;
    for (auto j : stencil[i]) step = step || d[static_cast<std::size_t>(j)] == d[i] - 1;
    violations += !step;
  }
  CHECK(violations == 0);
}
