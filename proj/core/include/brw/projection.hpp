#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "brw/comb.hpp"
#include "brw/loop.hpp"
#include "brw/solver.hpp"
#include "brw/tree.hpp"

namespace brw {

/// Surjective g : X -> Y such that sum_{z in g^-1(y)} k_xz = k~_{g(x) y}.
struct ProjectionMap {
  std::string name;
  RateGraphPtr source;
  RateGraphPtr target;
  std::function<VertexId(const VertexId&)> apply;
};

/// Tree T_m -> comb(m-2): y_j -> (j, 0); a vertex below y_j at depth h -> (j, h).
ProjectionMap tree_to_comb(std::shared_ptr<const TreeGraph> tree);
/// comb(alpha) -> singleton with loop rate alpha + 2.
ProjectionMap comb_to_singleton(std::shared_ptr<const CombGraph> comb);
/// Comb with the gadget B at tooth i -> comb, B(k,h) -> (i, k+h).
ProjectionMap gadget_to_comb(std::shared_ptr<const CombPrimeGraph> prime);
/// Deliberately mismatched map T_m -> comb(alpha) used to exercise witnesses.
ProjectionMap tree_to_comb_with_alpha(std::shared_ptr<const TreeGraph> tree, int alpha);

struct ProjectionViolation {
  VertexId x;
  VertexId y;
  Rate lhs;  // sum over the fibre in the source
  Rate rhs;  // target rate
  std::string describe;
};

struct ProjectionReport {
  std::string map_name;
  int radius = 0;
  bool exact_pass = false;
  bool surjective = false;
  std::int64_t rows_checked = 0;
  std::optional<ProjectionViolation> violation;
  std::optional<double> tv_distance;
};

/// Exact rate-sum identity for every x in the source ball of radius R, plus
/// surjectivity onto the target ball of radius R.
ProjectionReport check_projection(const ProjectionMap& map, int radius);

using Configuration = std::map<VertexId, std::int64_t>;

/// Fibre-summed counts.
Configuration project_config(const Configuration& eta, const ProjectionMap& map);

/// Total-variation distance between the law of g(offspring of x) estimated
/// from `samples` source draws and the exact target law at g(x).
double fibre_law_tv(const ProjectionMap& map, const VertexId& x, std::int64_t samples, std::uint64_t seed);

struct TransportReport {
  std::string set_name;
  Bracket source;  // q(., g^-1(A))
  Bracket target;  // q~(., A)
  VertexId source_vertex;
  VertexId target_vertex;
  bool overlap = false;
  bool conclusive = false;  // both solver runs converged
};

/// Brackets of q(x, g^-1(A)) and q~(g(x), A) on balls of radius R.
TransportReport check_q_transport(const ProjectionMap& map, const TargetSet& source_set,
                                  const TargetSet& target_set, const VertexId& x, int source_radius,
                                  int target_radius);

}  // namespace brw
