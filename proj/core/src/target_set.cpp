#include "brw/target_set.hpp"

namespace brw {

TargetSet::TargetSet(std::string name, Predicate contains, ConeFn cone, GateFn gates)
    : name_(std::move(name)), contains_(std::move(contains)), cone_(std::move(cone)), gates_(std::move(gates)) {
  if (!contains_) throw InvalidArgument("target set needs a membership predicate");
}

TargetSet TargetSet::full() {
  TargetSet s("full", [](const VertexId&) { return true; }, [](const VertexId&) { return ConeRelation::Inside; },
              [](const VertexId& b) { return std::optional<std::vector<VertexId>>(std::vector<VertexId>{b}); });
  s.kind_ = Kind::Full;
  return s;
}

TargetSet TargetSet::none() {
  TargetSet s("empty", [](const VertexId&) { return false; }, [](const VertexId&) { return ConeRelation::Disjoint; },
              [](const VertexId&) { return std::optional<std::vector<VertexId>>(std::vector<VertexId>{}); });
  s.kind_ = Kind::Empty;
  return s;
}

std::vector<VertexId> TargetSet::members(const Truncation& t) const {
  std::vector<VertexId> out;
  for (const auto& v : t.vertices()) {
    if (contains_(v)) out.push_back(v);
  }
  return out;
}

std::vector<char> TargetSet::mask(const Truncation& t) const {
  std::vector<char> out(t.size(), 0);
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = contains_(t.vertices()[i]) ? 1 : 0;
  return out;
}

ConeRelation TargetSet::cone_relation(const VertexId& b) const {
  return cone_ ? cone_(b) : ConeRelation::Mixed;
}

std::optional<std::vector<VertexId>> TargetSet::gates(const VertexId& b) const {
  if (!gates_) return std::nullopt;
  return gates_(b);
}

}  // namespace brw
