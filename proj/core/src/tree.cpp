#include "brw/tree.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

namespace brw {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw InvalidArgument("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::int64_t common_prefix(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  const auto n = std::min(a.size(), b.size());
  std::size_t k = 0;
  while (k < n && a[k] == b[k]) ++k;
  return static_cast<std::int64_t>(k);
}

}  // namespace

TreeGraph::TreeGraph(int m, double lambda, std::optional<int> resolution)
    : RateGraph(lambda), m_(m), resolution_(resolution) {
  if (m < 3) throw InvalidArgument("tree degree m must be at least 3");
  if (m > 200) throw InvalidArgument("tree degree m must be at most 200");
  if (resolution && *resolution < 0) throw InvalidArgument("tree resolution must be nonnegative");
}

VertexId TreeGraph::branch_root(std::int64_t i) const { return vertex(i - 1, {0}); }

VertexId TreeGraph::vertex(std::int64_t j, std::vector<std::uint8_t> word) const {
  VertexId v{j, 0, std::move(word)};
  for (std::size_t p = 0; p < v.word.size(); ++p) {
    if (v.word[p] >= alphabet(static_cast<std::int64_t>(p))) throw InvalidArgument("tree path letter out of range");
  }
  if (resolution_ && v.word.size() > static_cast<std::size_t>(*resolution_)) {
    v.minor = static_cast<std::int64_t>(v.word.size()) - *resolution_;
    v.word.resize(static_cast<std::size_t>(*resolution_));
  }
  return v;
}

void TreeGraph::validate(const VertexId& v) const {
  if (v.minor < 0) throw InvalidArgument("negative tree depth");
  for (std::size_t p = 0; p < v.word.size(); ++p) {
    if (v.word[p] >= alphabet(static_cast<std::int64_t>(p))) throw InvalidArgument("tree path letter out of range");
  }
  if (v.minor > 0) {
    if (!resolution_ || v.word.size() != static_cast<std::size_t>(*resolution_)) {
      throw InvalidArgument("collapsed tree label does not match the resolution");
    }
  } else if (resolution_ && v.word.size() > static_cast<std::size_t>(*resolution_)) {
    throw InvalidArgument("tree label deeper than the resolution");
  }
}

std::vector<RateEdge> TreeGraph::neighbors(const VertexId& x) const {
  std::vector<RateEdge> out;
  const std::int64_t len = path_length(x);
  if (len == 0) {
    out.push_back({spine(x.major - 1), Rate(1)});
    out.push_back({spine(x.major + 1), Rate(1)});
  } else if (x.minor > 0) {
    out.push_back({VertexId{x.major, x.minor - 1, x.word}, Rate(1)});
  } else {
    VertexId parent{x.major, 0, x.word};
    parent.word.pop_back();
    out.push_back({std::move(parent), Rate(1)});
  }
  const int kids = alphabet(len);
  const bool collapse = resolution_ && (x.minor > 0 || x.word.size() >= static_cast<std::size_t>(*resolution_));
  if (kids > 0) {
    if (collapse) {
      out.push_back({VertexId{x.major, x.minor + 1, x.word}, Rate(kids)});
    } else {
      for (int c = 0; c < kids; ++c) {
        VertexId child{x.major, 0, x.word};
        child.word.push_back(static_cast<std::uint8_t>(c));
        out.push_back({std::move(child), Rate(1)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const RateEdge& a, const RateEdge& b) { return a.to < b.to; });
  return out;
}

std::int64_t TreeGraph::distance_from_root(const VertexId& x) const {
  return std::abs(x.major) + path_length(x);
}

std::int64_t TreeGraph::distance(const VertexId& a, const VertexId& b) const {
  const auto la = path_length(a);
  const auto lb = path_length(b);
  if (a.major != b.major) return la + std::abs(a.major - b.major) + lb;
  std::int64_t common = common_prefix(a.word, b.word);
  // Equal collapsed prefixes: the classes may share deeper letters too.
  if (a.minor > 0 && b.minor > 0 && common == static_cast<std::int64_t>(a.word.size())) {
    common += std::min(a.minor, b.minor);
  }
  return la + lb - 2 * common;
}

bool TreeGraph::in_subtree(const VertexId& v, const VertexId& w) const {
  if (on_spine(w)) {
    if (w.major == 0) return true;
    return w.major > 0 ? v.major >= w.major : v.major <= w.major;
  }
  if (v.major != w.major) return false;
  if (v.word.size() < w.word.size()) return false;
  if (!std::equal(w.word.begin(), w.word.end(), v.word.begin())) return false;
  if (w.minor > 0) return v.word.size() == w.word.size() && v.minor >= w.minor;
  return true;
}

std::string TreeGraph::format(const VertexId& v) const {
  std::string s = "y" + std::to_string(v.major);
  if (path_length(v) == 0) return s;
  s += '|';
  for (std::size_t p = 0; p < v.word.size(); ++p) {
    if (p) s += '.';
    s += std::to_string(v.word[p]);
  }
  if (v.minor > 0) s += "+" + std::to_string(v.minor);
  return s;
}

VertexId TreeGraph::parse(std::string_view label) const {
  if (label == "o") return root();
  if (!label.empty() && label.front() == 'x') return branch_root(parse_int(label.substr(1), "tree label"));
  if (label.empty() || label.front() != 'y') throw InvalidArgument("tree label must start with 'y', 'x' or be 'o'");
  const auto bar = label.find('|');
  VertexId v{parse_int(label.substr(1, bar == std::string_view::npos ? label.npos : bar - 1), "spine index"), 0, {}};
  if (bar == std::string_view::npos) return v;
  std::string_view rest = label.substr(bar + 1);
  const auto plus = rest.find('+');
  std::string_view letters = rest.substr(0, plus);
  if (plus != std::string_view::npos) v.minor = parse_int(rest.substr(plus + 1), "collapsed depth");
  while (!letters.empty()) {
    const auto dot = letters.find('.');
    const auto c = parse_int(letters.substr(0, dot), "path letter");
    if (c < 0 || c > 255) throw InvalidArgument("path letter out of range");
    v.word.push_back(static_cast<std::uint8_t>(c));
    if (dot == std::string_view::npos) break;
    letters = letters.substr(dot + 1);
  }
  if (v.word.empty() && v.minor == 0) throw InvalidArgument("empty path after '|'");
  if (v.minor == 0 && resolution_ && v.word.size() > static_cast<std::size_t>(*resolution_)) {
    return vertex(v.major, std::move(v.word));
  }
  validate(v);
  return v;
}

namespace {

// Child indices from o: o's children are ordered y_1, y_{-1}, then the
// off-spine neighbours; a spine vertex y_j lists y_{j +- 1} (away from o)
// first, then its branches; a branch vertex lists its children by letter.
std::vector<int> rooted_address(const VertexId& v) {
  std::vector<int> p;
  const std::int64_t j = v.major;
  if (j != 0) {
    p.push_back(j > 0 ? 0 : 1);
    for (std::int64_t k = 1; k < std::abs(j); ++k) p.push_back(0);
  }
  if (!v.word.empty()) {
    p.push_back(j == 0 ? 2 + v.word[0] : 1 + v.word[0]);
    for (std::size_t k = 1; k < v.word.size(); ++k) p.push_back(v.word[k]);
  }
  return p;
}

VertexId from_address(const std::vector<int>& p) {
  VertexId v{0, 0, {}};
  if (p.empty()) return v;
  std::size_t k = 0;
  if (p[0] >= 2) {
    v.word.push_back(static_cast<std::uint8_t>(p[0] - 2));
    k = 1;
  } else {
    const std::int64_t dir = p[0] == 0 ? 1 : -1;
    v.major = dir;
    k = 1;
    while (k < p.size() && p[k] == 0) {
      v.major += dir;
      ++k;
    }
    if (k < p.size()) {
      v.word.push_back(static_cast<std::uint8_t>(p[k] - 1));
      ++k;
    }
  }
  for (; k < p.size(); ++k) v.word.push_back(static_cast<std::uint8_t>(p[k]));
  return v;
}

}  // namespace

std::function<VertexId(const VertexId&)> canonical_automorphism(const TreeGraph& tree, const VertexId& a,
                                                                 const VertexId& b) {
  if (!tree.exact()) throw InvalidArgument("automorphisms need exact tree labels");
  tree.validate(a);
  tree.validate(b);
  const auto pa = rooted_address(a);
  const auto pb = rooted_address(b);
  if (pa.size() != pb.size()) {
    throw InvalidArgument("no automorphism fixing o maps a vertex at distance " + std::to_string(pa.size()) +
                          " to one at distance " + std::to_string(pb.size()));
  }
  return [pa, pb](const VertexId& v) {
    auto p = rooted_address(v);
    bool tracking = true;
    for (std::size_t l = 0; l < p.size() && l < pa.size() && tracking; ++l) {
      const int c = p[l];
      if (c == pa[l]) {
        p[l] = pb[l];
      } else {
        if (c == pb[l]) p[l] = pa[l];
        tracking = false;
      }
    }
    return from_address(p);
  };
}

}  // namespace brw
