#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "brw/model.hpp"

namespace brw {

inline constexpr double kInfiniteWeight = std::numeric_limits<double>::infinity();

/// Smallest root of b*lambda*F^2 - F + lambda = 0: the expected number of
/// first arrivals at the parent for a walk that steps to b children and one
/// parent, each at weight lambda. Infinite when the root is complex.
double first_passage_weight(double lambda, double branching);

/// Certified upper bound on q(b, T_b) for a cone in which every vertex has
/// rate 1 towards b and `outward_rate` away from it. Particles leaving the
/// cone are discarded and descendants reaching `depth` restart at depth 0;
/// both only lower survival, so the minimal fixed point of the resulting
/// finite chain dominates q(b, T_b). Returns 1 when nothing better is found.
double cone_renewal_bound(double lambda, double outward_rate, int depth = 256);

/// Family-specific bounds for boundary-layer vertices of a truncation.
class TailModel {
 public:
  virtual ~TailModel() = default;
  /// Upper bound on q(b, T_b), uniform over boundary vertices.
  virtual double cone_upper() const { return 1.0; }
  /// Upper bound on P(some descendant of a particle at `from` visits `to`).
  virtual double hit_weight(const VertexId& from, const VertexId& to) const {
    (void)from;
    (void)to;
    return kInfiniteWeight;
  }
  /// Lower bound on the global extinction probability from b.
  virtual double global_lower(const VertexId& b) const {
    (void)b;
    return 0.0;
  }
  /// Vertices every walk must be checked against in addition to a set's
  /// gates (a loop changes the walk only through its vertex).
  virtual std::vector<VertexId> extra_gates() const { return {}; }
};

using TailModelPtr = std::shared_ptr<const TailModel>;

/// Tail bounds for tree, comb and tree+loop models; trivial bounds otherwise.
TailModelPtr make_tail_model(const BranchingModel& model);

/// min(1, 1/(lambda r)) for the tree (r = m) and comb (r = alpha + 2).
std::optional<double> qbar_closed_form(const BranchingModel& model);

}  // namespace brw
