#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "brw/finite.hpp"
#include "brw/genfun.hpp"
#include "brw/tree.hpp"

using namespace brw;

namespace {

std::shared_ptr<FiniteModel> single_site(double p_empty, std::int64_t kids) {
  std::vector<LawOutcome> outs(2);
  outs[0].probability = p_empty;
  outs[1].probability = 1.0 - p_empty;
  outs[1].config.entries = {{FiniteModel::vertex(0), kids}};
  return std::make_shared<FiniteModel>(std::vector<ExplicitLaw>{ExplicitLaw(std::move(outs))});
}

}  // namespace

TEST_CASE("classify_point on the constant vectors") {
  auto tree = std::make_shared<TreeGraph>(3, 0.4, 2);
  const auto sys = compile(*tree, 8);
  const auto t = sys->truncation();
  const auto one = classify_point(*sys, ProbVector::constant(t, 1.0, Boundary::one()));
  CHECK(one.fixed());
  const auto zero = classify_point(*sys, ProbVector::constant(t, 0.0, Boundary::zero()));
  CHECK(zero.in_lower);
  CHECK_FALSE(zero.in_upper);
}

TEST_CASE("1/(3 lambda) is a fixed point on the tree") {
  // Root of 3 lambda z^2 - (1 + 3 lambda) z + 1 = 0 other than 1.
  const double lambda = 0.4;
  const double a = 3 * lambda;
  const double root = ((1 + a) - std::sqrt((1 + a) * (1 + a) - 4 * a)) / (2 * a);
  CHECK(root == doctest::Approx(1.0 / 1.2).epsilon(1e-14));
  auto tree = std::make_shared<TreeGraph>(3, lambda, 2);
  const auto sys = compile(*tree, 8);
  const auto z = ProbVector::constant(sys->truncation(), root, Boundary::clamp(root));
  CHECK(classify_point(*sys, z).fixed());
  const auto off = ProbVector::constant(sys->truncation(), root + 0.01, Boundary::clamp(root + 0.01));
  CHECK_FALSE(classify_point(*sys, off).fixed());
}

TEST_CASE("iterate_map from 1 stays at 1") {
  auto tree = std::make_shared<TreeGraph>(3, 0.35, 2);
  const auto sys = compile(*tree, 6);
  IterationTrace trace;
  const auto z = iterate_map(*sys, ProbVector::constant(sys->truncation(), 1.0, Boundary::one()), 25, &trace);
  for (double v : z.values()) CHECK(v == 1.0);
  CHECK(trace.steps == 25);
}

TEST_CASE("subcritical single site iterates to 1") {
  auto model = single_site(0.5, 1);
  const auto sys = compile(*model, 1);
  IterationTrace trace;
  const auto z = iterate_map(*sys, ProbVector::constant(sys->truncation(), 0.0, Boundary::one()), 60, &trace);
  CHECK(z[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(trace.nondecreasing);
}

TEST_CASE("supercritical single site iterates to 1/3") {
  // 0.25 + 0.75 z^2 = z has roots 1/3 and 1.
  auto model = single_site(0.25, 2);
  const auto sys = compile(*model, 1);
  IterationTrace trace;
  const auto z = iterate_map(*sys, ProbVector::constant(sys->truncation(), 0.0, Boundary::one()), 200, &trace);
  CHECK(z[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(trace.nondecreasing);
  CHECK_FALSE(trace.nonincreasing);
}

TEST_CASE("iterates from a super-solution decrease") {
  auto tree = std::make_shared<TreeGraph>(3, 0.4, 2);
  const auto sys = compile(*tree, 10);
  const auto start = ProbVector::constant(sys->truncation(), 0.95, Boundary::clamp(0.95));
  REQUIRE(classify_point(*sys, start).in_upper);
  IterationTrace trace;
  iterate_map(*sys, start, 50, &trace);
  CHECK(trace.nonincreasing);
}

TEST_CASE("G is monotone on random ordered pairs") {
  auto tree = std::make_shared<TreeGraph>(3, 0.35, 2);
  const auto sys = compile(*tree, 10);
  const auto t = sys->truncation();
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> z(t->size()), w(t->size()), bz(t->boundary().size()), bw(t->boundary().size());
  std::vector<double> gz(z.size()), gw(z.size());
  int violations = 0;
  for (int pair = 0; pair < 1000; ++pair) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] = u(gen);
      w[i] = z[i] + (1.0 - z[i]) * u(gen);
    }
    for (std::size_t i = 0; i < bz.size(); ++i) {
      bz[i] = u(gen);
      bw[i] = bz[i] + (1.0 - bz[i]) * u(gen);
    }
    sys->apply(z, bz, gz);
    sys->apply(w, bw, gw);
    for (std::size_t i = 0; i < z.size(); ++i) violations += gz[i] > gw[i];
  }
  CHECK(violations == 0);
}
