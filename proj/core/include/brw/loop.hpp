#pragma once

#include <string>

#include "brw/model.hpp"

namespace brw {

/// A rate graph with k_vv raised by `rate` at one vertex; everything else is
/// forwarded to the wrapped graph.
class LoopGraph final : public RateGraph {
 public:
  LoopGraph(RateGraphPtr base, VertexId at, Rate rate);

  std::string family() const override { return base_->family() + "+loop"; }
  VertexId root() const override { return base_->root(); }
  std::vector<RateEdge> neighbors(const VertexId& v) const override;
  std::int64_t distance_from_root(const VertexId& v) const override { return base_->distance_from_root(v); }
  std::int64_t vertex_count() const override { return base_->vertex_count(); }
  std::string format(const VertexId& v) const override { return base_->format(v); }
  VertexId parse(std::string_view label) const override { return base_->parse(label); }

  const RateGraphPtr& base() const { return base_; }
  const VertexId& loop_vertex() const { return at_; }
  const Rate& loop_rate() const { return rate_; }

 private:
  RateGraphPtr base_;
  VertexId at_;
  Rate rate_;
};

RateGraphPtr add_loop(RateGraphPtr graph, const VertexId& v, Rate rate);

/// One vertex with a self-loop: the continuous-time branching process with
/// birth rate lambda * rate.
class SingletonGraph final : public RateGraph {
 public:
  SingletonGraph(Rate rate, double lambda);

  std::string family() const override { return "singleton"; }
  VertexId root() const override { return VertexId{}; }
  std::vector<RateEdge> neighbors(const VertexId& v) const override;
  std::int64_t distance_from_root(const VertexId&) const override { return 0; }
  std::int64_t vertex_count() const override { return 1; }
  std::string format(const VertexId&) const override { return "*"; }
  VertexId parse(std::string_view label) const override;

  const Rate& rate() const { return rate_; }

 private:
  Rate rate_;
};

}  // namespace brw
