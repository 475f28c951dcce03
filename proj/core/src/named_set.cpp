#include "brw/named_set.hpp"

#include <algorithm>
#include <charconv>

#include "brw/loop.hpp"

namespace brw {

namespace {

using Gates = std::optional<std::vector<VertexId>>;

std::int64_t to_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidArgument("malformed integer '" + std::string(s) + "' in set tag");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto p = s.find(sep);
    out.push_back(s.substr(0, p));
    if (p == std::string_view::npos) break;
    s = s.substr(p + 1);
  }
  return out;
}

std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

// Shared ownership keeps the graph alive inside the closures.
template <class G>
std::shared_ptr<const G> copy_of(const G& g) {
  return std::make_shared<const G>(g);
}

}  // namespace

IndexSet IndexSet::of(const std::vector<int>& indices) {
  std::uint64_t m = 0;
  for (int i : indices) {
    if (i < 1 || i > 64) throw InvalidArgument("index sets live in {1..64}");
    m |= std::uint64_t{1} << (i - 1);
  }
  return IndexSet(m);
}

IndexSet IndexSet::parse(std::string_view text) {
  std::vector<int> idx;
  const auto dots = text.find("..");
  if (dots != std::string_view::npos) {
    const auto a = to_int(text.substr(0, dots));
    const auto b = to_int(text.substr(dots + 2));
    if (a > b) throw InvalidArgument("empty index range");
    for (auto i = a; i <= b; ++i) idx.push_back(static_cast<int>(i));
  } else {
    for (auto part : split(text, ',')) idx.push_back(static_cast<int>(to_int(part)));
  }
  return of(idx);
}

std::vector<int> IndexSet::indices() const {
  std::vector<int> out;
  for (int i = 1; i <= 64; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::uint64_t IndexSet::dyadic() const {
  std::uint64_t v = 0;
  for (int i : indices()) v |= std::uint64_t{1} << (64 - i);
  return v;
}

std::string IndexSet::to_string() const {
  std::string s;
  for (int i : indices()) s += (s.empty() ? "" : ",") + std::to_string(i);
  return s;
}

const TreeGraph* as_tree(const BranchingModel& model) {
  if (auto t = dynamic_cast<const TreeGraph*>(&model)) return t;
  if (auto l = dynamic_cast<const LoopGraph*>(&model)) return as_tree(*l->base());
  return nullptr;
}

const CombGraph* as_comb(const BranchingModel& model) {
  if (dynamic_cast<const CombPrimeGraph*>(&model)) return nullptr;
  if (auto c = dynamic_cast<const CombGraph*>(&model)) return c;
  if (auto l = dynamic_cast<const LoopGraph*>(&model)) return as_comb(*l->base());
  return nullptr;
}

TargetSet point_set(const BranchingModel& model, std::vector<VertexId> points, std::string name) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (name.empty()) {
    name = "{";
    for (std::size_t k = 0; k < points.size(); ++k) name += (k ? "," : "") + model.format(points[k]);
    name += "}";
  }
  auto pts = std::make_shared<const std::vector<VertexId>>(points);
  auto contains = [pts](const VertexId& v) { return std::binary_search(pts->begin(), pts->end(), v); };

  TargetSet::ConeFn cone;
  if (auto t = as_tree(model)) {
    auto tree = copy_of(*t);
    cone = [tree, pts](const VertexId& b) {
      for (const auto& p : *pts) {
        if (tree->in_subtree(p, b)) return ConeRelation::Mixed;
      }
      return ConeRelation::Disjoint;
    };
  } else if (as_comb(model)) {
    cone = [pts](const VertexId& b) {
      for (const auto& p : *pts) {
        if (CombGraph::in_cone(p, b)) return ConeRelation::Mixed;
      }
      return ConeRelation::Disjoint;
    };
  }
  TargetSet::GateFn gates;
  if (cone) gates = [pts](const VertexId&) -> Gates { return *pts; };
  return TargetSet(std::move(name), std::move(contains), std::move(cone), std::move(gates));
}

TargetSet tree_subtrees(const TreeGraph& tree, std::vector<VertexId> roots, std::string name) {
  for (const auto& r : roots) {
    tree.validate(r);
    // A collapsed root is a single cone only when the forgotten letter had
    // no alternatives (the lone branch of T_3).
    const bool lone_branch = tree.degree() == 3 && r.word.empty() && r.minor == 1;
    if (r.minor > 0 && !lone_branch) {
      throw InvalidArgument("tree resolution too coarse for subtree root " + tree.format(r));
    }
  }
  auto g = copy_of(tree);
  auto rs = std::make_shared<const std::vector<VertexId>>(std::move(roots));
  auto contains = [g, rs](const VertexId& v) {
    return std::any_of(rs->begin(), rs->end(), [&](const VertexId& w) { return g->in_subtree(v, w); });
  };
  auto cone = [g, rs](const VertexId& b) {
    bool touches = false;
    for (const auto& w : *rs) {
      if (g->in_subtree(b, w)) return ConeRelation::Inside;
      if (g->in_subtree(w, b)) touches = true;
    }
    return touches ? ConeRelation::Mixed : ConeRelation::Disjoint;
  };
  auto gates = [rs](const VertexId&) -> Gates { return *rs; };
  return TargetSet(std::move(name), std::move(contains), std::move(cone), std::move(gates));
}

TargetSet tree_Ty(const TreeGraph& tree, std::int64_t n) {
  return tree_subtrees(tree, {TreeGraph::spine(n)}, "T_y" + std::to_string(n));
}

TargetSet tree_Tx(const TreeGraph& tree, std::int64_t i) {
  return tree_subtrees(tree, {tree.branch_root(i)}, "T_x" + std::to_string(i));
}

TargetSet tree_union_Tx(const TreeGraph& tree, const IndexSet& indices) {
  std::vector<VertexId> roots;
  for (int i : indices.indices()) roots.push_back(tree.branch_root(i));
  return tree_subtrees(tree, std::move(roots), "U_T_x{" + indices.to_string() + "}");
}

TargetSet tree_union_Tx_range(const TreeGraph& tree, std::int64_t first, std::int64_t last) {
  if (first > last) throw InvalidArgument("empty index range");
  std::vector<VertexId> roots;
  for (auto i = first; i <= last; ++i) roots.push_back(tree.branch_root(i));
  return tree_subtrees(tree, std::move(roots),
                       "U_T_x{" + std::to_string(first) + ".." + std::to_string(last) + "}");
}

TargetSet tree_spine(const TreeGraph& tree) { return tree_segment(tree, INT64_MIN / 4, INT64_MAX / 4); }

TargetSet tree_segment(const TreeGraph& tree, std::int64_t from, std::int64_t to) {
  if (from > to) std::swap(from, to);
  (void)tree;
  const bool whole = from == INT64_MIN / 4 && to == INT64_MAX / 4;
  std::string name = whole ? "spine" : "y[" + std::to_string(from) + ".." + std::to_string(to) + "]";
  auto contains = [from, to](const VertexId& v) {
    return TreeGraph::on_spine(v) && v.major >= from && v.major <= to;
  };
  auto cone = [from, to](const VertexId& b) {
    if (!TreeGraph::on_spine(b)) return ConeRelation::Disjoint;
    if (b.major == 0) return ConeRelation::Mixed;
    const bool hits = b.major > 0 ? to >= b.major : from <= b.major;
    return hits ? ConeRelation::Mixed : ConeRelation::Disjoint;
  };
  auto gates = [from, to](const VertexId& b) -> Gates {
    return std::vector<VertexId>{TreeGraph::spine(std::clamp(b.major, from, to))};
  };
  return TargetSet(std::move(name), std::move(contains), std::move(cone), std::move(gates));
}

TargetSet tree_fibres(const TreeGraph& tree, std::vector<std::int64_t> teeth) {
  (void)tree;
  std::sort(teeth.begin(), teeth.end());
  teeth.erase(std::unique(teeth.begin(), teeth.end()), teeth.end());
  auto ts = std::make_shared<const std::vector<std::int64_t>>(teeth);
  auto has = [ts](std::int64_t j) { return std::binary_search(ts->begin(), ts->end(), j); };
  auto contains = [has](const VertexId& v) { return has(v.major); };
  auto cone = [ts, has](const VertexId& b) {
    if (!TreeGraph::on_spine(b)) return has(b.major) ? ConeRelation::Inside : ConeRelation::Disjoint;
    if (b.major == 0) return ConeRelation::Mixed;
    for (auto j : *ts) {
      if (b.major > 0 ? j >= b.major : j <= b.major) return ConeRelation::Mixed;
    }
    return ConeRelation::Disjoint;
  };
  auto gates = [ts](const VertexId&) -> Gates {
    std::vector<VertexId> g;
    for (auto j : *ts) g.push_back(TreeGraph::spine(j));
    return g;
  };
  return TargetSet("g^-1(V{" + join_ints(teeth) + "})", std::move(contains), std::move(cone), std::move(gates));
}

TargetSet comb_teeth(const CombGraph& comb, std::vector<std::int64_t> teeth) {
  (void)comb;
  std::sort(teeth.begin(), teeth.end());
  teeth.erase(std::unique(teeth.begin(), teeth.end()), teeth.end());
  auto ts = std::make_shared<const std::vector<std::int64_t>>(teeth);
  auto has = [ts](std::int64_t x) { return std::binary_search(ts->begin(), ts->end(), x); };
  auto contains = [has](const VertexId& v) { return has(v.major); };
  auto cone = [ts, has](const VertexId& b) {
    if (b.minor > 0) return has(b.major) ? ConeRelation::Inside : ConeRelation::Disjoint;
    if (b.major == 0) return ConeRelation::Mixed;
    for (auto x : *ts) {
      if (b.major > 0 ? x >= b.major : x <= b.major) return ConeRelation::Mixed;
    }
    return ConeRelation::Disjoint;
  };
  auto gates = [ts](const VertexId&) -> Gates {
    std::vector<VertexId> g;
    for (auto x : *ts) g.push_back(CombGraph::at(x, 0));
    return g;
  };
  std::string name = teeth.size() == 1 ? "V_" + std::to_string(teeth[0]) : "U_V{" + join_ints(teeth) + "}";
  return TargetSet(std::move(name), std::move(contains), std::move(cone), std::move(gates));
}

TargetSet comb_union_V(const CombGraph& comb, const IndexSet& indices) {
  std::vector<std::int64_t> teeth;
  for (int i : indices.indices()) teeth.push_back(i);
  auto s = comb_teeth(comb, teeth);
  return TargetSet("U_V{" + indices.to_string() + "}", [s](const VertexId& v) { return s.contains(v); },
                   [s](const VertexId& b) { return s.cone_relation(b); },
                   [s](const VertexId& b) { return s.gates(b); });
}

TargetSet comb_axis(const CombGraph& comb) {
  (void)comb;
  auto contains = [](const VertexId& v) { return v.minor == 0; };
  auto cone = [](const VertexId& b) { return b.minor > 0 ? ConeRelation::Disjoint : ConeRelation::Mixed; };
  auto gates = [](const VertexId& b) -> Gates { return std::vector<VertexId>{CombGraph::at(b.major, 0)}; };
  return TargetSet("axis", std::move(contains), std::move(cone), std::move(gates));
}

TargetSet named_set(const BranchingModel& model, std::string_view tag) {
  const auto colon = tag.find(':');
  const std::string_view head = tag.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : tag.substr(colon + 1);
  const TreeGraph* tree = as_tree(model);
  const CombGraph* comb = as_comb(model);
  auto need_tree = [&]() -> const TreeGraph& {
    if (!tree) throw InvalidArgument("set tag '" + std::string(tag) + "' needs a tree model");
    return *tree;
  };
  auto need_arg = [&] {
    if (arg.empty()) throw InvalidArgument("set tag '" + std::string(head) + "' needs an argument");
  };

  if (head == "full") return TargetSet::full();
  if (head == "empty") return TargetSet::none();
  if (head == "point") {
    need_arg();
    return point_set(model, {model.parse(arg)});
  }
  if (head == "list") {
    need_arg();
    std::vector<VertexId> pts;
    for (auto p : split(arg, ';')) pts.push_back(model.parse(p));
    return point_set(model, std::move(pts));
  }
  if (head == "subtree") {
    need_arg();
    const auto& t = need_tree();
    return tree_subtrees(t, {t.parse(arg)}, "T_" + std::string(arg));
  }
  if (head == "Ty") {
    need_arg();
    return tree_Ty(need_tree(), to_int(arg));
  }
  if (head == "Tx") {
    need_arg();
    return tree_Tx(need_tree(), to_int(arg));
  }
  if (head == "union-Tx") {
    need_arg();
    const auto dots = arg.find("..");
    if (dots != std::string_view::npos) {
      return tree_union_Tx_range(need_tree(), to_int(arg.substr(0, dots)), to_int(arg.substr(dots + 2)));
    }
    return tree_union_Tx(need_tree(), IndexSet::parse(arg));
  }
  if (head == "V" || head == "union-V") {
    need_arg();
    std::vector<std::int64_t> teeth;
    const auto dots = arg.find("..");
    if (dots != std::string_view::npos) {
      for (auto i = to_int(arg.substr(0, dots)); i <= to_int(arg.substr(dots + 2)); ++i) teeth.push_back(i);
    } else {
      for (auto p : split(arg, ',')) teeth.push_back(to_int(p));
    }
    if (comb) return comb_teeth(*comb, teeth);
    if (tree) return tree_fibres(*tree, teeth);
    throw InvalidArgument("teeth need a comb (or a tree, as preimages)");
  }
  if (head == "spine") {
    if (comb) return comb_axis(*comb);
    return tree_spine(need_tree());
  }
  if (head == "segment") {
    need_arg();
    const auto parts = split(arg, ',');
    if (parts.size() != 2) throw InvalidArgument("segment tag is segment:<a>,<b>");
    return tree_segment(need_tree(), to_int(parts[0]), to_int(parts[1]));
  }
  throw InvalidArgument("unknown set tag '" + std::string(tag) + "'");
}

}  // namespace brw
