#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "brw/types.hpp"

namespace brw {

struct LawOutcome {
  OffspringConfig config;
  double probability = 0.0;
};

inline constexpr double kLawNormalizationTol = 1e-12;

/// Finite-support reproduction law mu_x. Outcomes are kept sorted by
/// (total children, lexicographic vertex order) so enumeration and inverse-CDF
/// sampling are deterministic.
class ExplicitLaw {
 public:
  ExplicitLaw() = default;
  /// Throws InvalidLaw when probabilities leave [0,1], do not sum to 1 within
  /// kLawNormalizationTol, or two outcomes share a configuration.
  explicit ExplicitLaw(std::vector<LawOutcome> outcomes);

  const std::vector<LawOutcome>& outcomes() const { return outcomes_; }
  double empty_probability() const;
  /// First moment m_xy.
  double mean_to(const VertexId& y) const;
  /// Expected total number of children (rho-bar).
  double mean_total() const;
  /// Vertices receiving children with positive probability, sorted.
  std::vector<VertexId> support() const;

 private:
  std::vector<LawOutcome> outcomes_;
};

/// Continuous-time edge-breeding data at one vertex: birth clocks of rate
/// lambda * k_xy competing with a unit-rate death clock.
struct RateLaw {
  VertexId x;
  std::vector<RateEdge> rates;  // k_xy > 0, sorted by target, self-loops allowed
  double lambda = 0.0;

  double total_rate() const;
};

using Law = std::variant<ExplicitLaw, RateLaw>;

struct MeanMatrixEntry {
  VertexId x;
  VertexId y;
  double mean = 0.0;
};

/// Partial enumeration of a law up to a cap on the number of children.
struct EnumeratedLaw {
  std::vector<LawOutcome> outcomes;
  double tail_mass = 0.0;  // P(N > max_children)
};

/// Discrete-time counterpart of a RateLaw: the number of births before death
/// is geometric, P(N = n) = (1 - r) r^n with r = lambda k / (1 + lambda k),
/// and the children are placed independently with P(y) = k_xy / k.
class GeometricPlacementLaw {
 public:
  explicit GeometricPlacementLaw(const RateLaw& law);

  const VertexId& parent() const { return parent_; }
  double lambda() const { return lambda_; }
  double total_rate() const { return total_rate_; }
  /// r = lambda k / (1 + lambda k); zero for a degenerate law.
  double success_ratio() const { return ratio_; }
  double count_probability(std::int64_t n) const;
  double tail_mass(std::int64_t max_children) const;
  double mean_children() const { return lambda_ * total_rate_; }
  const std::vector<VertexId>& positions() const { return positions_; }
  const std::vector<double>& position_probabilities() const { return position_probs_; }
  bool degenerate() const { return ratio_ == 0.0; }

  /// All configurations with at most max_children children, sorted as in
  /// ExplicitLaw, with the remaining probability reported as tail mass.
  EnumeratedLaw enumerate(std::int64_t max_children) const;

 private:
  VertexId parent_;
  double lambda_ = 0.0;
  double total_rate_ = 0.0;
  double ratio_ = 0.0;
  std::vector<VertexId> positions_;
  std::vector<double> position_probs_;
};

GeometricPlacementLaw derive_offspring_law(const RateLaw& law);

/// m_xy = lambda k_xy (zero when y is not a neighbour).
MeanMatrixEntry derive_mean(const RateLaw& law, const VertexId& y);

double mean_total(const Law& law);
double mean_to(const Law& law, const VertexId& y);

}  // namespace brw
