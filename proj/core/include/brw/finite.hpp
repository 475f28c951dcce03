#pragma once

#include <string>
#include <vector>

#include "brw/model.hpp"

namespace brw {

/// Finite vertex set {0, ..., n-1} with explicit reproduction laws. Vertex i
/// is labelled (major = i) and printed as "v<i>"; vertex 0 is the root.
class FiniteModel final : public BranchingModel {
 public:
  explicit FiniteModel(std::vector<ExplicitLaw> laws);

  std::string family() const override { return "finite"; }
  VertexId root() const override { return vertex(0); }
  Law law(const VertexId& x) const override;
  std::vector<VertexId> successors(const VertexId& x) const override;
  std::int64_t distance_from_root(const VertexId& x) const override;
  std::int64_t vertex_count() const override { return static_cast<std::int64_t>(laws_.size()); }
  std::string format(const VertexId& v) const override;
  VertexId parse(std::string_view label) const override;

  static VertexId vertex(std::int64_t i) { return VertexId{i, 0, {}}; }
  const std::vector<ExplicitLaw>& laws() const { return laws_; }
  /// Strong connectivity of the mean-transport graph.
  bool irreducible() const;

 private:
  std::size_t index(const VertexId& x) const;

  std::vector<ExplicitLaw> laws_;
  std::vector<std::int64_t> depth_;  // BFS distance from vertex 0, -1 if unreachable
};

}  // namespace brw
