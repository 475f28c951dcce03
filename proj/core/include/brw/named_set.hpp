#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "brw/comb.hpp"
#include "brw/target_set.hpp"
#include "brw/tree.hpp"

namespace brw {

/// Finite index set I within {1, ..., 64}.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::uint64_t mask) : mask_(mask) {}
  static IndexSet of(const std::vector<int>& indices);
  static IndexSet parse(std::string_view text);  // "1,2,5" or "2..7"

  std::uint64_t mask() const { return mask_; }
  bool contains(int i) const { return i >= 1 && i <= 64 && ((mask_ >> (i - 1)) & 1U); }
  bool empty() const { return mask_ == 0; }
  std::vector<int> indices() const;
  /// sum_{i in I} 2^-i scaled by 2^64, exact.
  std::uint64_t dyadic() const;
  std::string to_string() const;

  bool operator==(const IndexSet&) const = default;

 private:
  std::uint64_t mask_ = 0;
};

/// Unwraps loop decorators; nullptr when the model is not a tree.
const TreeGraph* as_tree(const BranchingModel& model);
const CombGraph* as_comb(const BranchingModel& model);

TargetSet point_set(const BranchingModel& model, std::vector<VertexId> points, std::string name = {});

/// Union of subtrees T_w over the given roots.
TargetSet tree_subtrees(const TreeGraph& tree, std::vector<VertexId> roots, std::string name);
TargetSet tree_Ty(const TreeGraph& tree, std::int64_t n);
TargetSet tree_Tx(const TreeGraph& tree, std::int64_t i);
TargetSet tree_union_Tx(const TreeGraph& tree, const IndexSet& indices);
/// Union of T_{x_i} for first <= i <= last.
TargetSet tree_union_Tx_range(const TreeGraph& tree, std::int64_t first, std::int64_t last);
/// The bi-infinite line gamma = {y_n}.
TargetSet tree_spine(const TreeGraph& tree);
TargetSet tree_segment(const TreeGraph& tree, std::int64_t from, std::int64_t to);
/// Preimage of the comb teeth V_i under the tree-to-comb projection:
/// y_i together with every branch hanging from it.
TargetSet tree_fibres(const TreeGraph& tree, std::vector<std::int64_t> teeth);

/// Union of teeth V_i = {(i, y) : y >= 0}.
TargetSet comb_teeth(const CombGraph& comb, std::vector<std::int64_t> teeth);
TargetSet comb_union_V(const CombGraph& comb, const IndexSet& indices);
TargetSet comb_axis(const CombGraph& comb);

/// Builds a set from a textual tag:
///   full | empty | point:<label> | list:<label>;<label>... | subtree:<label>
///   Ty:<n> | Tx:<i> | union-Tx:<I> | V:<i> | union-V:<I> | spine | segment:<a>,<b>
/// where <I> is "1,2,5" or a range "2..30".
TargetSet named_set(const BranchingModel& model, std::string_view tag);

}  // namespace brw
