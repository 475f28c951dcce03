#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "brw/comb.hpp"
#include "brw/critical.hpp"
#include "brw/loop.hpp"
#include "brw/named_set.hpp"
#include "brw/solver.hpp"
#include "brw/tree.hpp"

using namespace brw;

namespace {

ModelFactory tree_factory(int m) {
  return [m](double lambda) -> ModelPtr { return std::make_shared<TreeGraph>(m, lambda, 2); };
}

ModelFactory comb_factory(int alpha) {
  return [alpha](double lambda) -> ModelPtr { return std::make_shared<CombGraph>(alpha, lambda); };
}

}  // namespace

TEST_CASE("closed forms") {
  const auto t3 = closed_form_tree(3);
  CHECK(t3.lambda_w == doctest::Approx(1.0 / 3.0));
  CHECK(t3.lambda_s == doctest::Approx(0.5 / std::sqrt(2.0)));
  CHECK(t3.source == "closed-form");
  const auto t4 = closed_form_tree(4);
  CHECK(t4.lambda_w == doctest::Approx(0.25));
  CHECK(t4.lambda_s == doctest::Approx(0.5 / std::sqrt(3.0)));
  const auto c1 = closed_form_comb(1);
  CHECK(c1.lambda_w == doctest::Approx(1.0 / 3.0));
  CHECK(c1.lambda_s == doctest::Approx(0.5 / std::sqrt(2.0)));
  CHECK(closed_form(TreeGraph(5, 0.1)).lambda_w == doctest::Approx(0.2));
  CHECK(closed_form(CombGraph(2, 0.1)).lambda_s == doctest::Approx(0.5 / std::sqrt(3.0)));
  CHECK_THROWS_AS(closed_form_tree(2), InvalidArgument);
}

TEST_CASE("bisection lands near lambda_s") {
  struct Case {
    const char* name;
    ModelFactory make;
    double lambda_s;
    double lo;
    double hi;
  };
  const Case cases[] = {
      {"tree3", tree_factory(3), closed_form_tree(3).lambda_s, 0.30, 0.45},
      {"tree4", tree_factory(4), closed_form_tree(4).lambda_s, 0.25, 0.40},
      {"comb1", comb_factory(1), closed_form_comb(1).lambda_s, 0.30, 0.45},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const auto r = bisect_local_survival(c.make, c.lo, c.hi, 25, 0.02);
    CHECK(r.conclusive);
    CHECK(r.half_width() <= 0.02);
    CHECK(r.lo <= r.hi);
    CHECK(r.lo <= c.lambda_s);
    CHECK(c.lambda_s <= r.hi);
  }
}

TEST_CASE("bisection argument checks") {
  CHECK_THROWS_AS(bisect_local_survival(tree_factory(3), 0.4, 0.3, 25, 0.02), InvalidArgument);
  CHECK_THROWS_AS(bisect_local_survival(tree_factory(3), 0.3, 0.3, 25, 0.02), InvalidArgument);
}

TEST_CASE("global survival flips at lambda_w") {
  const auto w = closed_form_tree(3).lambda_w;
  auto below = std::make_shared<TreeGraph>(3, w - 0.02, 2);
  CHECK(compute_qbar(below, 20).upper_at(below->root()) == doctest::Approx(1.0).epsilon(1e-9));
  auto above = std::make_shared<TreeGraph>(3, w + 0.05, 2);
  CHECK(compute_qbar(above, 20).upper_at(above->root()) < 1.0 - 1e-3);
}

TEST_CASE("local survival flips at lambda_s") {
  const auto s = closed_form_tree(3).lambda_s;
  auto below = std::make_shared<TreeGraph>(3, s - 0.02, 2);
  const auto q = compute_q(below, point_set(*below, {below->root()}), 40);
  CHECK(q.lower_at(below->root()) > 0.99);
  auto above = std::make_shared<TreeGraph>(3, s + 0.05, 2);
  const auto r = compute_q(above, point_set(*above, {above->root()}), 30);
  CHECK(r.upper_at(above->root()) < 1.0 - 1e-3);
}
