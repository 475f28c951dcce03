#include "brw/loop.hpp"

#include <algorithm>

namespace brw {

LoopGraph::LoopGraph(RateGraphPtr base, VertexId at, Rate rate)
    : RateGraph(base ? base->lambda() : 0.0), base_(std::move(base)), at_(std::move(at)), rate_(rate) {
  if (!base_) throw InvalidArgument("add_loop needs a graph");
  if (rate_ < 0) throw InvalidArgument("loop rate must be nonnegative");
}

std::vector<RateEdge> LoopGraph::neighbors(const VertexId& v) const {
  auto out = base_->neighbors(v);
  if (v != at_ || is_zero(rate_)) return out;
  auto it = std::find_if(out.begin(), out.end(), [&](const RateEdge& e) { return e.to == v; });
  if (it != out.end()) {
    it->rate += rate_;
  } else {
    out.push_back({v, rate_});
    std::sort(out.begin(), out.end(), [](const RateEdge& a, const RateEdge& b) { return a.to < b.to; });
  }
  return out;
}

RateGraphPtr add_loop(RateGraphPtr graph, const VertexId& v, Rate rate) {
  if (is_zero(rate)) return graph;
  return std::make_shared<LoopGraph>(std::move(graph), v, rate);
}

SingletonGraph::SingletonGraph(Rate rate, double lambda) : RateGraph(lambda), rate_(rate) {
  if (rate_ <= 0) throw InvalidArgument("singleton loop rate must be positive");
}

std::vector<RateEdge> SingletonGraph::neighbors(const VertexId& v) const {
  if (v != VertexId{}) throw InvalidArgument("singleton graph has one vertex");
  return {{VertexId{}, rate_}};
}

VertexId SingletonGraph::parse(std::string_view label) const {
  if (label != "*" && label != "o") throw InvalidArgument("singleton vertex is '*'");
  return VertexId{};
}

}  // namespace brw
