#include "brw/comb.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

namespace brw {

namespace {

std::int64_t to_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw InvalidArgument("malformed comb coordinate '" + std::string(s) + "'");
  }
  return v;
}

// "(x,y)" or "x,y"
std::pair<std::int64_t, std::int64_t> parse_pair(std::string_view s) {
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw InvalidArgument("unbalanced parentheses in comb label");
    s = s.substr(1, s.size() - 2);
  }
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw InvalidArgument("comb label needs 'x,y'");
  return {to_int(s.substr(0, comma)), to_int(s.substr(comma + 1))};
}

void sort_edges(std::vector<RateEdge>& out) {
  std::sort(out.begin(), out.end(), [](const RateEdge& a, const RateEdge& b) { return a.to < b.to; });
}

}  // namespace

CombGraph::CombGraph(int alpha, double lambda) : RateGraph(lambda), alpha_(alpha) {
  if (alpha < 1) throw InvalidArgument("comb alpha must be at least 1");
}

std::vector<RateEdge> CombGraph::comb_neighbors(std::int64_t x, std::int64_t y) const {
  std::vector<RateEdge> out;
  if (y == 0) {
    out.push_back({at(x - 1, 0), Rate(1)});
    out.push_back({at(x + 1, 0), Rate(1)});
    out.push_back({at(x, 1), Rate(alpha_)});
  } else {
    out.push_back({at(x, y - 1), Rate(1)});
    out.push_back({at(x, y + 1), Rate(alpha_ + 1)});
  }
  sort_edges(out);
  return out;
}

std::vector<RateEdge> CombGraph::neighbors(const VertexId& v) const {
  if (v.minor < 0 || !v.word.empty()) throw InvalidArgument("not a comb vertex");
  return comb_neighbors(v.major, v.minor);
}

std::int64_t CombGraph::distance_from_root(const VertexId& v) const { return std::abs(v.major) + v.minor; }

std::int64_t CombGraph::distance(const VertexId& a, const VertexId& b) {
  if (a.major == b.major) return std::abs(a.minor - b.minor);
  return a.minor + std::abs(a.major - b.major) + b.minor;
}

bool CombGraph::in_cone(const VertexId& v, const VertexId& b) {
  if (b.minor > 0) return v.major == b.major && v.minor >= b.minor;
  if (b.major == 0) return true;
  return b.major > 0 ? v.major >= b.major : v.major <= b.major;
}

std::string CombGraph::format(const VertexId& v) const {
  return "(" + std::to_string(v.major) + "," + std::to_string(v.minor) + ")";
}

VertexId CombGraph::parse(std::string_view label) const {
  if (label == "o") return root();
  auto [x, y] = parse_pair(label);
  if (y < 0) throw InvalidArgument("comb height must be nonnegative");
  return at(x, y);
}

CombPrimeGraph::CombPrimeGraph(int alpha, double lambda, std::int64_t tooth)
    : CombGraph(alpha, lambda), tooth_(tooth) {}

std::vector<RateEdge> CombPrimeGraph::neighbors(const VertexId& v) const {
  const Rate one(1);
  const Rate a(alpha());
  std::vector<RateEdge> out;
  auto shared_or_gadget = [this](std::int64_t k, std::int64_t h) {
    return (k == 0 && h == 0) ? at(tooth_, 0) : gadget(k, h);
  };
  if (is_gadget(v)) {
    const std::int64_t k = v.major;
    const std::int64_t h = v.minor;
    if (k < 0 || h < 0 || (k == 0 && h == 0)) throw InvalidArgument("not a gadget vertex");
    if (h == 0) {
      out.push_back({shared_or_gadget(k - 1, 0), one});
      out.push_back({gadget(k + 1, 0), one});
      out.push_back({gadget(k, 1), a});
    } else {
      out.push_back({shared_or_gadget(k, h - 1), one});
      out.push_back({gadget(k, h + 1), a + one});
    }
  } else if (v.major == tooth_) {
    if (v.minor != 0) throw InvalidArgument("the replaced tooth has no vertices above the axis");
    out.push_back({at(tooth_ - 1, 0), one});
    out.push_back({at(tooth_ + 1, 0), one});
    out.push_back({gadget(1, 0), one});
    if (alpha() > 1) out.push_back({gadget(0, 1), a - one});
  } else {
    return CombGraph::neighbors(v);
  }
  sort_edges(out);
  return out;
}

std::int64_t CombPrimeGraph::distance_from_root(const VertexId& v) const {
  if (is_gadget(v)) return std::abs(tooth_) + v.major + v.minor;
  return CombGraph::distance_from_root(v);
}

VertexId CombPrimeGraph::project(const VertexId& v) const {
  if (is_gadget(v)) return at(tooth_, v.major + v.minor);
  return v;
}

std::string CombPrimeGraph::format(const VertexId& v) const {
  if (is_gadget(v)) return "B(" + std::to_string(v.major) + "," + std::to_string(v.minor) + ")";
  return CombGraph::format(v);
}

VertexId CombPrimeGraph::parse(std::string_view label) const {
  if (!label.empty() && label.front() == 'B') {
    auto [k, h] = parse_pair(label.substr(1));
    if (k < 0 || h < 0 || (k == 0 && h == 0)) throw InvalidArgument("gadget label out of range");
    return gadget(k, h);
  }
  auto v = CombGraph::parse(label);
  if (v.major == tooth_ && v.minor != 0) throw InvalidArgument("the replaced tooth has no vertices above the axis");
  return v;
}

}  // namespace brw
