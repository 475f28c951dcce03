#include "brw/finite.hpp"

#include <charconv>
#include <deque>

namespace brw {

namespace {

std::vector<std::vector<std::size_t>> adjacency(const std::vector<ExplicitLaw>& laws, bool reverse) {
  std::vector<std::vector<std::size_t>> adj(laws.size());
  for (std::size_t i = 0; i < laws.size(); ++i) {
    for (const auto& y : laws[i].support()) {
      const auto j = static_cast<std::size_t>(y.major);
      if (reverse) {
        adj[j].push_back(i);
      } else {
        adj[i].push_back(j);
      }
    }
  }
  return adj;
}

std::vector<std::int64_t> bfs(const std::vector<std::vector<std::size_t>>& adj, std::size_t from) {
  std::vector<std::int64_t> d(adj.size(), -1);
  std::deque<std::size_t> q{from};
  d[from] = 0;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop_front();
    for (auto w : adj[v]) {
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        q.push_back(w);
      }
    }
  }
  return d;
}

}  // namespace

FiniteModel::FiniteModel(std::vector<ExplicitLaw> laws) : laws_(std::move(laws)) {
  if (laws_.empty()) throw InvalidArgument("finite model needs at least one vertex");
  const auto n = static_cast<std::int64_t>(laws_.size());
  for (const auto& law : laws_) {
    for (const auto& y : law.support()) {
      if (y.major < 0 || y.major >= n || y.minor != 0 || !y.word.empty()) {
        throw InvalidLaw("finite law places children outside {0.." + std::to_string(n - 1) + "}");
      }
    }
  }
  depth_ = bfs(adjacency(laws_, false), 0);
}

std::size_t FiniteModel::index(const VertexId& x) const {
  if (x.minor != 0 || !x.word.empty() || x.major < 0 || x.major >= vertex_count()) {
    throw InvalidArgument("not a vertex of this finite model");
  }
  return static_cast<std::size_t>(x.major);
}

Law FiniteModel::law(const VertexId& x) const { return laws_[index(x)]; }

std::vector<VertexId> FiniteModel::successors(const VertexId& x) const { return laws_[index(x)].support(); }

std::int64_t FiniteModel::distance_from_root(const VertexId& x) const { return depth_[index(x)]; }

bool FiniteModel::irreducible() const {
  const auto fwd = bfs(adjacency(laws_, false), 0);
  const auto bwd = bfs(adjacency(laws_, true), 0);
  for (std::size_t i = 0; i < laws_.size(); ++i) {
    if (fwd[i] < 0 || bwd[i] < 0) return false;
  }
  // A single vertex without a self-loop carries no transport at all.
  if (laws_.size() == 1) return laws_[0].mean_to(vertex(0)) > 0.0;
  return true;
}

std::string FiniteModel::format(const VertexId& v) const { return "v" + std::to_string(v.major); }

VertexId FiniteModel::parse(std::string_view label) const {
  if (label == "o") return root();
  if (label.empty() || label.front() != 'v') throw InvalidArgument("finite vertex labels look like 'v0'");
  std::int64_t i = 0;
  auto [ptr, ec] = std::from_chars(label.data() + 1, label.data() + label.size(), i);
  if (ec != std::errc() || ptr != label.data() + label.size()) throw InvalidArgument("malformed finite vertex label");
  return vertex(static_cast<std::int64_t>(index(vertex(i))));
}

}  // namespace brw
