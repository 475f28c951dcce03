#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "brw/model.hpp"

namespace brw {

/// Ball of radius R around the model root in (X, E_mu), plus the boundary
/// layer: every successor of a ball vertex that lies outside the ball.
class Truncation {
 public:
  static std::shared_ptr<const Truncation> ball(const BranchingModel& model, int radius);

  int radius() const { return radius_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<VertexId>& boundary() const { return boundary_; }
  /// BFS distance from the root for each ball vertex.
  const std::vector<int>& depth() const { return depth_; }
  std::optional<std::size_t> index_of(const VertexId& v) const;
  std::optional<std::size_t> boundary_index_of(const VertexId& v) const;
  bool contains(const VertexId& v) const { return index_.count(v) != 0; }
  /// True when the ball already holds every vertex (finite models).
  bool complete() const { return boundary_.empty(); }

 private:
  int radius_ = 0;
  std::vector<VertexId> vertices_;
  std::vector<VertexId> boundary_;
  std::vector<int> depth_;
  std::unordered_map<VertexId, std::uint32_t, VertexIdHash> index_;
  std::unordered_map<VertexId, std::uint32_t, VertexIdHash> boundary_index_;
};

using TruncationPtr = std::shared_ptr<const Truncation>;

/// Values assigned to boundary-layer vertices.
struct Boundary {
  enum class Policy { ClampOne, ClampZero, ClampConst, PerVertex };

  Policy policy = Policy::ClampOne;
  double constant = 1.0;
  std::vector<double> values;  // PerVertex only, indexed like Truncation::boundary()

  static Boundary one() { return {Policy::ClampOne, 1.0, {}}; }
  static Boundary zero() { return {Policy::ClampZero, 0.0, {}}; }
  static Boundary clamp(double c) { return {Policy::ClampConst, c, {}}; }
  static Boundary per_vertex(std::vector<double> v) { return {Policy::PerVertex, 0.0, std::move(v)}; }

  double value(std::size_t boundary_index) const;
  /// Materialises the boundary values for a truncation.
  std::vector<double> realize(const Truncation& t) const;
};

/// z in [0,1]^X restricted to a truncation, with a boundary policy for the
/// layer just outside it.
class ProbVector {
 public:
  ProbVector() = default;
  ProbVector(TruncationPtr truncation, std::vector<double> values, Boundary boundary);
  static ProbVector constant(TruncationPtr truncation, double c, Boundary boundary);

  const TruncationPtr& truncation() const { return truncation_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  const Boundary& boundary() const { return boundary_; }
  std::vector<double> boundary_values() const { return boundary_.realize(*truncation_); }

  /// Value at a ball or boundary vertex. Throws TruncationIncomplete otherwise.
  double at(const VertexId& v) const;
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

 private:
  TruncationPtr truncation_;
  std::vector<double> values_;
  Boundary boundary_;
};

/// The generating function G compiled onto a truncation. Rate laws use the
/// closed form 1 / (1 + lambda sum_y k_xy (1 - z(y))); explicit laws are
/// evaluated as polynomials. Column indices >= 0 refer to ball vertices,
/// negative ones to boundary vertex ~col.
class CompiledSystem {
 public:
  CompiledSystem(const BranchingModel& model, TruncationPtr truncation);

  const TruncationPtr& truncation() const { return truncation_; }
  std::size_t size() const { return kind_.size(); }

  double eval(std::size_t i, std::span<const double> z, std::span<const double> bvals) const;
  /// out = G(z) on every ball vertex; pinned coordinates are set to 0.
  /// Sweeps read z only, so callers must pass distinct buffers.
  void apply(std::span<const double> z, std::span<const double> bvals, std::span<double> out,
             const std::vector<char>* pinned_zero = nullptr) const;

  /// Ball-internal successor lists (for BFS on the truncation).
  const std::vector<std::vector<std::int32_t>>& stencil() const { return stencil_; }
  double mean_offspring(std::size_t i) const { return mean_[i]; }

 private:
  enum class Kind : std::uint8_t { Rate, Explicit };
  struct Term {
    std::int32_t col;
    double coef;  // lambda k_xy for rate rows, child count for explicit rows
  };
  struct Outcome {
    double probability;
    std::uint32_t begin;
    std::uint32_t end;
  };

  double value_of(std::int32_t col, std::span<const double> z, std::span<const double> bvals) const {
    return col >= 0 ? z[static_cast<std::size_t>(col)] : bvals[static_cast<std::size_t>(~col)];
  }

  TruncationPtr truncation_;
  std::vector<Kind> kind_;
  std::vector<std::uint32_t> row_begin_;  // into terms_ (rate) or outcomes_ (explicit)
  std::vector<std::uint32_t> row_end_;
  std::vector<Term> terms_;
  std::vector<Outcome> outcomes_;
  std::vector<Term> outcome_terms_;
  std::vector<std::vector<std::int32_t>> stencil_;
  std::vector<double> mean_;
};

using SystemPtr = std::shared_ptr<const CompiledSystem>;

SystemPtr compile(const BranchingModel& model, int radius);

}  // namespace brw
