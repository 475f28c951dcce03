#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "brw/comb.hpp"
#include "brw/finite.hpp"
#include "brw/model_io.hpp"
#include "brw/named_set.hpp"
#include "brw/solver.hpp"
#include "brw/tree.hpp"

using namespace brw;

namespace {

// Never-hit frequency of T_{y_1} from o on T_3 at lambda 0.35: independent
// competing-exponentials simulation on the exact tree (std::mt19937_64, seed
// 20240611, 10^5 trials, 60 generations, no censoring).
constexpr double kNeverHitTy1 = 0.6922;
constexpr double kNeverHitSigma = 0.00146;

std::shared_ptr<TreeGraph> tree3(double lambda) { return std::make_shared<TreeGraph>(3, lambda, 2); }

ModelPtr shipped(const std::string& name) {
  return build_model(load_model_spec(std::string(BRW_MODELS_DIR) + "/" + name));
}

}  // namespace

TEST_CASE("q0 is zero on A and on a set covering the ball") {
  auto tree = tree3(0.35);
  Solver s(tree, 12);
  const auto b = s.q0(tree_Ty(*tree, 1));
  CHECK(b.upper_at(tree->spine(1)) == 0.0);
  CHECK(b.upper_at(tree->spine(4)) == 0.0);
  const auto all = s.q0(TargetSet::full());
  for (const auto& v : s.truncation()->vertices()) REQUIRE(all.upper_at(v) == 0.0);
}

TEST_CASE("q0 of T_y1 matches the simulation oracle") {
  auto tree = tree3(0.35);
  const auto b = compute_q0(tree, tree_Ty(*tree, 1), 30);
  CHECK(b.converged);
  CHECK(b.width_at(tree->root()) < 1e-5);
  CHECK(b.lower_at(tree->root()) > kNeverHitTy1 - 3 * kNeverHitSigma);
  CHECK(b.upper_at(tree->root()) < kNeverHitTy1 + 3 * kNeverHitSigma);
}

TEST_CASE("empty target gives 1") {
  auto tree = tree3(0.35);
  const auto b = compute_q(tree, TargetSet::none(), 10);
  for (const auto& v : b.lower.truncation()->vertices()) {
    REQUIRE(b.lower_at(v) == 1.0);
    REQUIRE(b.upper_at(v) == 1.0);
  }
}

TEST_CASE("q-bar from the quadratic") {
  auto fast = tree3(0.4);
  const auto b = compute_qbar(fast, 30);
  CHECK(b.converged);
  CHECK(b.contains(fast->root(), 1.0 / 1.2));
  CHECK(b.width_at(fast->root()) < 1e-4);

  auto slow = tree3(0.3);
  CHECK(compute_qbar(slow, 20).upper_at(slow->root()) == doctest::Approx(1.0).epsilon(1e-9));

  auto comb = std::make_shared<CombGraph>(1, 0.5);
  const auto c = compute_qbar(comb, 30);
  CHECK(c.contains(comb->root(), 1.0 / 1.5));
}

TEST_CASE("a point set above lambda_s has the global value") {
  auto tree = tree3(0.4);
  const auto b = compute_q(tree, point_set(*tree, {tree->root()}), 30);
  CHECK(b.contains(tree->root(), 1.0 / 1.2, 1e-9));
}

TEST_CASE("a point set in the intermediate regime is locally extinct") {
  auto tree = tree3(0.35);
  double previous = 0.0;
  for (int r : {10, 20, 40}) {
    const auto b = compute_q(tree, point_set(*tree, {tree->root()}), r);
    CHECK(b.lower_at(tree->root()) >= previous - 1e-12);
    previous = b.lower_at(tree->root());
  }
  CHECK(previous > 0.999);
}

TEST_CASE("widths shrink as R grows") {
  auto tree = tree3(0.35);
  double last = 1.0;
  for (int r : {10, 20, 30}) {
    const auto b = compute_q(tree, tree_Ty(*tree, 1), r);
    CHECK(b.width_at(tree->root()) < last);
    last = b.width_at(tree->root());
  }
}

TEST_CASE("locality of the clamped iterates") {
  auto tree = tree3(0.35);
  for (std::int64_t n = 0; n <= 5; ++n) {
    CHECK(check_qn_locality(tree, point_set(*tree, {tree->root()}), n, 12));
    CHECK(check_qn_locality(tree, tree_Ty(*tree, 1), n, 12));
  }
  CHECK_THROWS_AS(check_qn_locality(tree, tree_Ty(*tree, 1), 12, 12), InvalidArgument);
}

TEST_CASE("no-hit iterates count generations 0..n") {
  auto tree = tree3(0.35);
  Solver s(tree, 20);
  const auto a = point_set(*tree, {tree->root()});
  const auto z0 = s.no_hit_iterate(a, 0);
  const auto root = *s.truncation()->index_of(tree->root());
  const auto x3 = *s.truncation()->index_of(tree->branch_root(3));
  CHECK(z0[root] == 0.0);
  CHECK(z0[x3] == 1.0);
  // x_3 sits at distance 3 from o, so two steps cannot reach it.
  CHECK(s.no_hit_iterate(a, 2)[x3] == 1.0);
  CHECK(s.no_hit_iterate(a, 3)[x3] < 1.0);
}

TEST_CASE("fixed points of the shipped finite models") {
  const auto quad = enumerate_fixed_points_finite(*shipped("finite_quadratic.json"), 100);
  REQUIRE(quad.clusters.size() == 2);
  CHECK(quad.clusters[0].centroid[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  CHECK(quad.clusters[1].centroid[0] == doctest::Approx(1.0).epsilon(1e-8));

  const auto sub = enumerate_fixed_points_finite(*shipped("finite_subcritical.json"), 100);
  REQUIRE(sub.clusters.size() == 1);
  CHECK(sub.clusters[0].centroid[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("two-site system against its cubic") {
  // z0 = 0.3 + 0.7 z0 z1, z1 = 0.4 + 0.6 z0^2 reduce to
  // (z0 - 1)(0.42 z0^2 + 0.42 z0 - 0.3) = 0.
  const double z0 = (-0.42 + std::sqrt(0.42 * 0.42 + 4 * 0.42 * 0.3)) / (2 * 0.42);
  const double z1 = 0.4 + 0.6 * z0 * z0;
  const auto rep = enumerate_fixed_points_finite(*shipped("finite_two_site.json"), 100, 9);
  REQUIRE(rep.clusters.size() == 2);
  CHECK(rep.clusters[0].centroid[0] == doctest::Approx(z0).epsilon(1e-8));
  CHECK(rep.clusters[0].centroid[1] == doctest::Approx(z1).epsilon(1e-8));
  CHECK(rep.clusters[1].centroid[0] == doctest::Approx(1.0));
}

TEST_CASE("reducible systems are refused") {
  std::vector<LawOutcome> a(2), b(1);
  a[0].probability = 0.5;
  a[1].probability = 0.5;
  a[1].config.entries = {{FiniteModel::vertex(1), 2}};
  b[0].probability = 1.0;
  b[0].config.entries = {{FiniteModel::vertex(1), 1}};
  FiniteModel model({ExplicitLaw(a), ExplicitLaw(b)});
  CHECK_FALSE(model.irreducible());
  CHECK_THROWS_AS(enumerate_fixed_points_finite(model, 10), ReducibleSystem);
}

TEST_CASE("plain clamps still bracket the refined result") {
  auto tree = tree3(0.35);
  SolverOptions plain;
  plain.tails = TailMode::Plain;
  const auto p = compute_q(tree, tree_Ty(*tree, 1), 20, plain);
  const auto r = compute_q(tree, tree_Ty(*tree, 1), 20);
  CHECK(p.lower_at(tree->root()) <= r.lower_at(tree->root()) + 1e-12);
  CHECK(r.upper_at(tree->root()) <= p.upper_at(tree->root()) + 1e-12);
}

TEST_CASE("iteration cap is reported") {
  auto tree = tree3(0.35);
  SolverOptions opts;
  opts.max_sweeps = 5;
  const auto b = compute_q(tree, tree_Ty(*tree, 1), 20, opts);
  CHECK_FALSE(b.converged);
  CHECK(b.lower_at(tree->root()) <= b.upper_at(tree->root()));
}
