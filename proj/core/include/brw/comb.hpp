#pragma once

#include <cstdint>
#include <string>

#include "brw/model.hpp"

namespace brw {

/// The 2-dimensional comb: horizontal axis {(x, 0)} with vertical teeth.
/// Rates: 1 along the axis, alpha from (x,0) up to (x,1), alpha+1 upward
/// above the axis, 1 downward. Labels are (major = x, minor = y).
class CombGraph : public RateGraph {
 public:
  CombGraph(int alpha, double lambda);

  std::string family() const override { return "comb"; }
  VertexId root() const override { return at(0, 0); }
  std::vector<RateEdge> neighbors(const VertexId& v) const override;
  std::int64_t distance_from_root(const VertexId& v) const override;
  std::string format(const VertexId& v) const override;
  VertexId parse(std::string_view label) const override;

  int alpha() const { return alpha_; }
  static VertexId at(std::int64_t x, std::int64_t y) { return VertexId{x, y, {}}; }

  /// v in T_b: the part of the comb beyond b as seen from o (the tooth above
  /// b, or the half-comb past an axis vertex; T_o is everything).
  static bool in_cone(const VertexId& v, const VertexId& b);
  static std::int64_t distance(const VertexId& a, const VertexId& b);

 protected:
  std::vector<RateEdge> comb_neighbors(std::int64_t x, std::int64_t y) const;

 private:
  int alpha_;
};

/// The comb with the tooth V_i replaced by the gadget B: a half-comb whose
/// axis starts at y_i, plus an extra tooth at y_i with entry rate alpha-1
/// (absent when alpha = 1). Gadget vertices carry word {1}; B(k,h) is
/// (major = k, minor = h) with k >= 0, and y_i = (i, 0) is shared.
/// The map B(k,h) -> (i, k+h), identity elsewhere, projects it onto the comb.
class CombPrimeGraph final : public CombGraph {
 public:
  CombPrimeGraph(int alpha, double lambda, std::int64_t tooth);

  std::string family() const override { return "comb-prime"; }
  std::vector<RateEdge> neighbors(const VertexId& v) const override;
  std::int64_t distance_from_root(const VertexId& v) const override;
  std::string format(const VertexId& v) const override;
  VertexId parse(std::string_view label) const override;

  std::int64_t tooth() const { return tooth_; }
  static VertexId gadget(std::int64_t k, std::int64_t h) { return VertexId{k, h, {1}}; }
  static bool is_gadget(const VertexId& v) { return v.word.size() == 1 && v.word[0] == 1; }
  /// Projection onto the plain comb.
  VertexId project(const VertexId& v) const;

 private:
  std::int64_t tooth_;
};

}  // namespace brw
