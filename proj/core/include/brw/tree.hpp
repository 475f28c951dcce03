#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "brw/model.hpp"

namespace brw {

/// Regular tree T_m with a distinguished bi-infinite spine {y_n}.
///
/// Labels: major = spine index j, word = path below y_j. word[0] picks one of
/// the m-2 off-spine neighbours of y_j (so x_{j+1} is (j, [0])), later letters
/// pick one of the m-1 children. The branch root x_i is the third neighbour of
/// y_{i-1} for m = 3.
///
/// With a resolution K the graph is the exact quotient of T_m that forgets
/// path letters past depth K: a label (j, e, w) with |w| = K and e >= 1 stands
/// for every vertex whose path starts with w and has length K + e. Quotient
/// classes keep rate 1 to their parent class and rate m-1 to the child class,
/// so every named set anchored within depth K has the same extinction
/// probabilities as on the full tree, while balls grow linearly in R.
class TreeGraph final : public RateGraph {
 public:
  TreeGraph(int m, double lambda, std::optional<int> resolution = std::nullopt);

  std::string family() const override { return "tree"; }
  VertexId root() const override { return spine(0); }
  std::vector<RateEdge> neighbors(const VertexId& x) const override;
  std::int64_t distance_from_root(const VertexId& x) const override;
  std::string format(const VertexId& v) const override;
  VertexId parse(std::string_view label) const override;

  int degree() const { return m_; }
  std::optional<int> resolution() const { return resolution_; }
  bool exact() const { return !resolution_.has_value(); }

  static VertexId spine(std::int64_t n) { return VertexId{n, 0, {}}; }
  /// x_i, the off-spine neighbour of y_{i-1} with letter 0.
  VertexId branch_root(std::int64_t i) const;
  /// Canonical label of the vertex at path `word` below y_j (collapsed under a
  /// resolution).
  VertexId vertex(std::int64_t j, std::vector<std::uint8_t> word) const;

  /// Depth below the spine (0 on the spine).
  static std::int64_t path_length(const VertexId& v) {
    return static_cast<std::int64_t>(v.word.size()) + v.minor;
  }
  static bool on_spine(const VertexId& v) { return path_length(v) == 0; }

  /// Graph distance; for collapsed labels this is a lower bound over the
  /// members of the classes, exact whenever one side has |word| <= K.
  std::int64_t distance(const VertexId& a, const VertexId& b) const;

  /// v in T_w: the subtree hanging from w away from o (T_o is the whole tree).
  bool in_subtree(const VertexId& v, const VertexId& w) const;

  void validate(const VertexId& v) const;

 private:
  int alphabet(std::int64_t position) const { return position == 0 ? m_ - 2 : m_ - 1; }

  int m_;
  std::optional<int> resolution_;
};

/// Automorphism Psi of the exact tree with Psi(o) = o and Psi(a) = b. Throws
/// InvalidArgument when a and b lie at different distances from o.
std::function<VertexId(const VertexId&)> canonical_automorphism(const TreeGraph& tree, const VertexId& a,
                                                                 const VertexId& b);

}  // namespace brw
