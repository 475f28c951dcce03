#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "brw/system.hpp"

namespace brw {

/// How the cone T_b beyond a boundary vertex b sits relative to a target set.
enum class ConeRelation { Inside, Disjoint, Mixed };

/// A subset A of X given by a membership predicate. Geometry-aware sets also
/// describe how cones relate to A and which vertices a walk from a disjoint
/// cone must pass to enter A (its gates); both feed the boundary bounds.
class TargetSet {
 public:
  using Predicate = std::function<bool(const VertexId&)>;
  using ConeFn = std::function<ConeRelation(const VertexId&)>;
  using GateFn = std::function<std::optional<std::vector<VertexId>>(const VertexId&)>;

  TargetSet(std::string name, Predicate contains, ConeFn cone = {}, GateFn gates = {});

  static TargetSet full();
  static TargetSet none();

  const std::string& name() const { return name_; }
  bool contains(const VertexId& v) const { return contains_(v); }
  bool is_full() const { return kind_ == Kind::Full; }
  bool is_empty() const { return kind_ == Kind::Empty; }

  /// Members inside a truncation, in truncation order.
  std::vector<VertexId> members(const Truncation& t) const;
  /// Mask over truncation indices.
  std::vector<char> mask(const Truncation& t) const;

  ConeRelation cone_relation(const VertexId& b) const;
  /// Every path from b into A first enters A at one of these vertices.
  /// nullopt when no such finite list is known.
  std::optional<std::vector<VertexId>> gates(const VertexId& b) const;

 private:
  enum class Kind { Full, Empty, General };

  std::string name_;
  Predicate contains_;
  ConeFn cone_;
  GateFn gates_;
  Kind kind_ = Kind::General;
};

}  // namespace brw
