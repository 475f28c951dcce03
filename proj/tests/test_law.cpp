#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "brw/comb.hpp"
#include "brw/finite.hpp"
#include "brw/genfun.hpp"
#include "brw/law.hpp"
#include "brw/tree.hpp"

using namespace brw;

namespace {

// Competing-exponentials oracle: one particle with a unit death clock and
// birth clocks of total rate 3 * 0.35, 10^6 samples, std::mt19937_64 seed 7.
// P(no births) = 0.487805 and P(exactly one birth) = 0.249851 frozen from it.
constexpr double kOracleZeroBirths = 0.487805;
constexpr double kOracleOneBirth = 0.249851;
constexpr double kOracleSigma = 0.0005;  // binomial standard error at 10^6 samples

struct BirthCounts {
  double zero = 0.0;
  double one = 0.0;
};

BirthCounts competing_exponentials(double birth_rate, int samples, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::exponential_distribution<double> death(1.0);
  std::exponential_distribution<double> birth(birth_rate);
  long zero = 0;
  long one = 0;
  for (int s = 0; s < samples; ++s) {
    const double life = death(gen);
    int births = 0;
    for (double t = birth(gen); t < life && births < 2; t += birth(gen)) ++births;
    zero += births == 0;
    one += births == 1;
  }
  return {static_cast<double>(zero) / samples, static_cast<double>(one) / samples};
}

ExplicitLaw law_of(std::vector<std::pair<double, std::vector<std::pair<VertexId, std::int64_t>>>> outs) {
  std::vector<LawOutcome> v;
  for (auto& [p, kids] : outs) {
    LawOutcome o;
    o.probability = p;
    o.config.entries = std::move(kids);
    v.push_back(std::move(o));
  }
  return ExplicitLaw(std::move(v));
}

const VertexId kSelf = FiniteModel::vertex(0);

}  // namespace

TEST_CASE("competing-exponentials oracle reproduces the frozen constants") {
  const auto c = competing_exponentials(3 * 0.35, 1'000'000, 7);
  CHECK(std::abs(c.zero - kOracleZeroBirths) < 3 * kOracleSigma);
  CHECK(std::abs(c.one - kOracleOneBirth) < 3 * kOracleSigma);
}

TEST_CASE("geometric placement law on an interior tree vertex") {
  TreeGraph tree(3, 0.35);
  const auto law = derive_offspring_law(tree.rate_law(tree.spine(4)));
  CHECK(law.count_probability(0) == doctest::Approx(kOracleZeroBirths).epsilon(1e-6));
  CHECK(law.count_probability(1) == doctest::Approx(kOracleOneBirth).epsilon(1e-5));
  CHECK(law.count_probability(0) == doctest::Approx(1.0 / 2.05).epsilon(1e-14));
  CHECK(law.mean_children() == doctest::Approx(1.05));
  REQUIRE(law.positions().size() == 3);
  for (double p : law.position_probabilities()) CHECK(p == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("zero breeding gives the empty configuration") {
  TreeGraph tree(3, 0.0);
  const auto law = derive_offspring_law(tree.rate_law(tree.root()));
  CHECK(law.degenerate());
  CHECK(law.count_probability(0) == 1.0);
  CHECK(law.count_probability(1) == 0.0);
  CHECK(derive_mean(tree.rate_law(tree.root()), tree.spine(1)).mean == 0.0);
}

TEST_CASE("comb axis vertex at lambda 0.3") {
  CombGraph comb(1, 0.3);
  const auto law = derive_offspring_law(comb.rate_law(comb.root()));
  CHECK(law.count_probability(0) == doctest::Approx(1.0 / 1.9).epsilon(1e-12));
  REQUIRE(law.positions().size() == 3);
  for (double p : law.position_probabilities()) CHECK(p == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("first moments") {
  TreeGraph tree(3, 0.35);
  const auto rl = tree.rate_law(tree.spine(2));
  for (const auto& e : rl.rates) CHECK(derive_mean(rl, e.to).mean == doctest::Approx(0.35));
  CHECK(mean_total(Law(rl)) == doctest::Approx(1.05));
  CHECK(derive_mean(rl, tree.spine(7)).mean == 0.0);

  CombGraph comb(1, 0.5);
  const auto axis = comb.rate_law(CombGraph::at(3, 0));
  CHECK(derive_mean(axis, CombGraph::at(3, 1)).mean == doctest::Approx(0.5));
}

TEST_CASE("explicit law validation") {
  CHECK_THROWS_AS(law_of({{0.5, {}}, {0.4, {{kSelf, 1}}}}), InvalidLaw);
  CHECK_THROWS_AS(law_of({{1.2, {}}, {-0.2, {{kSelf, 1}}}}), InvalidLaw);
  CHECK_THROWS_AS(law_of({{0.5, {{kSelf, 1}}}, {0.5, {{kSelf, 1}}}}), InvalidLaw);
  CHECK_NOTHROW(law_of({{0.5, {}}, {0.5, {{kSelf, 2}}}}));
}

TEST_CASE("explicit law order is by size then vertex") {
  const auto law = law_of({{0.5, {{kSelf, 2}}}, {0.2, {{FiniteModel::vertex(1), 1}}}, {0.3, {}}});
  const auto& o = law.outcomes();
  REQUIRE(o.size() == 3);
  CHECK(o[0].config.total() == 0);
  CHECK(o[1].config.total() == 1);
  CHECK(o[2].config.total() == 2);
  CHECK(law.empty_probability() == doctest::Approx(0.3));
  CHECK(law.mean_total() == doctest::Approx(1.2));
}

TEST_CASE("generating function evaluation") {
  // {empty 0.5, two at y 0.5} at z(y) = 0.5 -> 0.625
  FiniteModel model({law_of({{0.5, {}}, {0.5, {{FiniteModel::vertex(1), 2}}}}), law_of({{1.0, {}}})});
  const auto t = Truncation::ball(model, 2);
  const auto half = ProbVector::constant(t, 0.5, Boundary::one());
  CHECK(eval_genfun(model.law(FiniteModel::vertex(0)), half) == doctest::Approx(0.625));
  const auto ones = ProbVector::constant(t, 1.0, Boundary::one());
  CHECK(eval_genfun(model.law(FiniteModel::vertex(0)), ones) == 1.0);

  auto tree = std::make_shared<TreeGraph>(3, 0.35);
  const auto tt = Truncation::ball(*tree, 3);
  const auto zero = ProbVector::constant(tt, 0.0, Boundary::zero());
  CHECK(eval_genfun(tree->law(tree->root()), zero) == doctest::Approx(kOracleZeroBirths).epsilon(1e-6));
  const auto one = ProbVector::constant(tt, 1.0, Boundary::one());
  CHECK(std::abs(eval_genfun(tree->law(tree->root()), one) - 1.0) <= 1e-15);
}

TEST_CASE("unresolvable vertex raises truncation-incomplete") {
  auto tree = std::make_shared<TreeGraph>(3, 0.35);
  const auto t = Truncation::ball(*tree, 2);
  const auto z = ProbVector::constant(t, 0.5, Boundary::one());
  CHECK_THROWS_AS(eval_genfun(tree->law(tree->spine(5)), z), TruncationIncomplete);
}

TEST_CASE("closed form agrees with enumeration within the tail mass") {
  TreeGraph tree(3, 0.35);
  const auto rl = tree.rate_law(tree.root());
  const GeometricPlacementLaw law(rl);
  auto t = Truncation::ball(tree, 3);
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> vals(t->size());
  for (auto& v : vals) v = u(gen);
  const ProbVector z(t, vals, Boundary::one());
  const double closed = eval_genfun(rl, z);
  for (const std::int64_t cap : {10, 20, 40}) {
    const auto e = law.enumerate(cap);
    double sum = 0.0;
    double mass = 0.0;
    for (const auto& o : e.outcomes) {
      double prod = o.probability;
      for (const auto& [y, c] : o.config.entries) prod *= std::pow(z.at(y), static_cast<double>(c));
      sum += prod;
      mass += o.probability;
    }
    CHECK(mass + e.tail_mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sum <= closed + 1e-12);
    CHECK(closed <= sum + e.tail_mass + 1e-12);
  }
}
