#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "brw/law.hpp"
#include "brw/types.hpp"

namespace brw {

/// A branching random walk (X, mu) over a lazily enumerable vertex set.
/// Implementations are immutable after construction and safe to share
/// between threads.
class BranchingModel {
 public:
  virtual ~BranchingModel() = default;

  virtual std::string family() const = 0;
  virtual VertexId root() const = 0;
  virtual Law law(const VertexId& x) const = 0;
  /// Out-neighbours of x in (X, E_mu), i.e. every y with m_xy > 0, sorted.
  virtual std::vector<VertexId> successors(const VertexId& x) const = 0;
  /// Graph distance from the root; used for radius caps in simulation.
  virtual std::int64_t distance_from_root(const VertexId& x) const = 0;
  /// Finite vertex count, or -1 for an infinite vertex set.
  virtual std::int64_t vertex_count() const { return -1; }

  virtual std::string format(const VertexId& v) const = 0;
  /// Inverse of format. Throws InvalidArgument on malformed labels.
  virtual VertexId parse(std::string_view label) const = 0;
};

/// Continuous-time edge-breeding BRW: rate matrix k_xy plus breeding
/// intensity lambda; laws are the discrete-time counterparts.
class RateGraph : public BranchingModel {
 public:
  explicit RateGraph(double lambda);

  double lambda() const { return lambda_; }
  /// Neighbours with k_xy > 0, sorted by target and merged.
  virtual std::vector<RateEdge> neighbors(const VertexId& x) const = 0;

  Law law(const VertexId& x) const override;
  std::vector<VertexId> successors(const VertexId& x) const override;
  RateLaw rate_law(const VertexId& x) const;

 private:
  double lambda_;
};

using ModelPtr = std::shared_ptr<const BranchingModel>;
using RateGraphPtr = std::shared_ptr<const RateGraph>;

}  // namespace brw
