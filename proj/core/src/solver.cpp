#include "brw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "brw/rng.hpp"

namespace brw {

double Bracket::width() const {
  double w = 0.0;
  for (std::size_t i = 0; i < lower.size(); ++i) w = std::max(w, upper[i] - lower[i]);
  return w;
}

Solver::Solver(ModelPtr model, int radius, SolverOptions options)
    : model_(std::move(model)), radius_(radius), options_(options) {
  if (!model_) throw InvalidArgument("solver needs a model");
  if (radius < 1) throw InvalidArgument("truncation radius must be at least 1");
  system_ = compile(*model_, radius);
  tails_ = make_tail_model(*model_);
}

double Solver::hit_bound(const VertexId& b, const TargetSet& a) const {
  const auto gates = a.gates(b);
  if (!gates) return kInfiniteWeight;
  if (gates->empty()) return 0.0;
  double sum = 0.0;
  for (const auto& g : *gates) sum += tails_->hit_weight(b, g);
  for (const auto& g : tails_->extra_gates()) sum += tails_->hit_weight(b, g);
  return sum;
}

Solver::Tails Solver::q0_tails(const TargetSet& a) const {
  const auto& boundary = truncation()->boundary();
  Tails t{std::vector<double>(boundary.size(), 0.0), std::vector<double>(boundary.size(), 1.0)};
  if (options_.tails == TailMode::Plain) return t;
  for (std::size_t k = 0; k < boundary.size(); ++k) {
    const auto& b = boundary[k];
    if (a.contains(b)) {
      t.upper[k] = 0.0;
    } else if (a.cone_relation(b) == ConeRelation::Disjoint) {
      t.lower[k] = std::max(0.0, 1.0 - hit_bound(b, a));
    }
  }
  return t;
}

Solver::Tails Solver::q_tails(const TargetSet& a, bool global) const {
  const auto& boundary = truncation()->boundary();
  Tails t{std::vector<double>(boundary.size(), 0.0), std::vector<double>(boundary.size(), 1.0)};
  if (options_.tails == TailMode::Plain) return t;
  for (std::size_t k = 0; k < boundary.size(); ++k) {
    const auto& b = boundary[k];
    // The global lower bound would be circular when solving for q-bar itself.
    const double floor = global ? 0.0 : tails_->global_lower(b);
    switch (a.cone_relation(b)) {
      case ConeRelation::Inside:
        t.lower[k] = floor;
        t.upper[k] = tails_->cone_upper();
        break;
      case ConeRelation::Disjoint:
        t.lower[k] = std::max(floor, 1.0 - hit_bound(b, a));
        break;
      case ConeRelation::Mixed:
        t.lower[k] = floor;
        break;
    }
  }
  return t;
}

Solver::Run Solver::descend_clamped(std::vector<double> start, const std::vector<double>& bvals,
                                    const std::vector<char>& pinned) const {
  Run r;
  r.z = std::move(start);
  std::vector<double> next(r.z.size());
  double step = 0.0;
  while (r.sweeps < options_.max_sweeps) {
    system_->apply(r.z, bvals, next, &pinned);
    step = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = std::min(next[i], r.z[i]);
      step = std::max(step, r.z[i] - next[i]);
    }
    r.z.swap(next);
    ++r.sweeps;
    if (step == 0.0) break;
  }
  r.converged = step < options_.tolerance;
  return r;
}

Solver::Run Solver::ascend(std::vector<double> start, const std::vector<double>& bvals) const {
  Run r;
  r.z = std::move(start);
  std::vector<double> next(r.z.size());
  double step = 0.0;
  while (r.sweeps < options_.max_sweeps) {
    system_->apply(r.z, bvals, next);
    step = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = std::max(next[i], r.z[i]);
      step = std::max(step, next[i] - r.z[i]);
    }
    r.z.swap(next);
    ++r.sweeps;
    if (step < options_.tolerance) break;
  }
  r.converged = step < options_.tolerance;
  return r;
}

Bracket Solver::q0(const TargetSet& a) const {
  const auto pinned = a.mask(*truncation());
  std::vector<double> start(pinned.size());
  for (std::size_t i = 0; i < start.size(); ++i) start[i] = pinned[i] ? 0.0 : 1.0;
  const auto tails = q0_tails(a);
  auto up = descend_clamped(start, tails.upper, pinned);
  auto lo = descend_clamped(start, tails.lower, pinned);
  Bracket b;
  b.set_name = a.name();
  b.radius = radius_;
  b.iterations = up.sweeps + lo.sweeps;
  b.converged = up.converged && lo.converged;
  b.lower = ProbVector(truncation(), std::move(lo.z), Boundary::per_vertex(tails.lower));
  b.upper = ProbVector(truncation(), std::move(up.z), Boundary::per_vertex(tails.upper));
  return b;
}

Bracket Solver::solve_q(const TargetSet& a, bool global) const {
  Bracket start = q0(a);
  const auto tails = q_tails(a, global);
  auto up = ascend(start.upper.values(), tails.upper);
  auto lo = ascend(start.lower.values(), tails.lower);
  Bracket b;
  b.set_name = global ? "qbar" : a.name();
  b.radius = radius_;
  b.iterations = start.iterations + up.sweeps + lo.sweeps;
  b.converged = start.converged && up.converged && lo.converged;
  b.lower = ProbVector(truncation(), std::move(lo.z), Boundary::per_vertex(tails.lower));
  b.upper = ProbVector(truncation(), std::move(up.z), Boundary::per_vertex(tails.upper));
  return b;
}

Bracket Solver::q(const TargetSet& a) const { return solve_q(a, false); }

Bracket Solver::qbar() const { return solve_q(TargetSet::full(), true); }

std::vector<double> Solver::no_hit_iterate(const TargetSet& a, std::int64_t n) const {
  const auto pinned = a.mask(*truncation());
  std::vector<double> z(pinned.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = pinned[i] ? 0.0 : 1.0;
  const std::vector<double> ones(truncation()->boundary().size(), 1.0);
  std::vector<double> next(z.size());
  for (std::int64_t k = 0; k < n; ++k) {
    system_->apply(z, ones, next, &pinned);
    z.swap(next);
  }
  return z;
}

std::vector<std::int64_t> Solver::distances(const TargetSet& a) const {
  const auto& stencil = system_->stencil();
  const std::size_t n = stencil.size();
  std::vector<std::vector<std::int32_t>> reverse(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : stencil[i]) reverse[static_cast<std::size_t>(j)].push_back(static_cast<std::int32_t>(i));
  }
  std::vector<std::int64_t> d(n, -1);
  std::deque<std::size_t> queue;
  const auto mask = a.mask(*truncation());
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i]) {
      d[i] = 0;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto w : reverse[v]) {
      const auto u = static_cast<std::size_t>(w);
      if (d[u] < 0) {
        d[u] = d[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return d;
}

Distance Solver::distance(const VertexId& x, const TargetSet& a) const {
  const auto idx = truncation()->index_of(x);
  if (!idx) throw TruncationIncomplete("vertex " + model_->format(x) + " outside the truncation");
  const auto d = distances(a);
  Distance out{x, a.name(), d[*idx], false};
  if (out.d < 0) {
    // Nothing reachable inside the ball: every path to A leaves it first.
    out.infinite = true;
    out.d = static_cast<std::int64_t>(radius_) + 1 - static_cast<std::int64_t>(truncation()->depth()[*idx]);
  }
  return out;
}

bool Solver::check_qn_locality(const TargetSet& a, std::int64_t n) const {
  if (n < 0) throw InvalidArgument("locality step must be nonnegative");
  if (radius_ <= n) throw InvalidArgument("locality check needs R > n");
  const auto pinned = a.mask(*truncation());
  std::vector<double> start(pinned.size());
  for (std::size_t i = 0; i < start.size(); ++i) start[i] = pinned[i] ? 0.0 : 1.0;
  const std::vector<double> ones(truncation()->boundary().size(), 1.0);
  const auto q0 = descend_clamped(start, ones, pinned).z;
  std::vector<double> z = q0, next(z.size());
  for (std::int64_t k = 0; k < n; ++k) {
    system_->apply(z, ones, next);
    z.swap(next);
  }
  const auto d = distances(a);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const bool far = d[i] < 0 || d[i] >= n;
    if (far && z[i] != q0[i]) return false;
  }
  return true;
}

Bracket compute_q0(ModelPtr model, const TargetSet& a, int radius, SolverOptions options) {
  return Solver(std::move(model), radius, options).q0(a);
}

Bracket compute_q(ModelPtr model, const TargetSet& a, int radius, SolverOptions options) {
  return Solver(std::move(model), radius, options).q(a);
}

Bracket compute_qbar(ModelPtr model, int radius, SolverOptions options) {
  return Solver(std::move(model), radius, options).qbar();
}

Distance distance(ModelPtr model, const VertexId& x, const TargetSet& a, int radius) {
  return Solver(std::move(model), radius).distance(x, a);
}

bool check_qn_locality(ModelPtr model, const TargetSet& a, std::int64_t n, int radius) {
  return Solver(std::move(model), radius).check_qn_locality(a, n);
}

namespace {

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

FixedPointReport enumerate_fixed_points_finite(const BranchingModel& model, int starts, std::uint64_t seed) {
  const auto count = model.vertex_count();
  if (count < 1) throw InvalidArgument("fixed-point enumeration needs a finite model");
  if (starts < 0) throw InvalidArgument("number of starts must be nonnegative");
  const auto system = compile(model, static_cast<int>(count));
  const auto& trunc = *system->truncation();
  const auto n = trunc.size();
  if (static_cast<std::int64_t>(n) != count || !trunc.complete()) {
    throw ReducibleSystem("not every vertex is reachable from " + model.format(model.root()) +
                          "; the mean-transport graph is not strongly connected");
  }
  {
    // Strong connectivity: everything must also reach the root.
    std::vector<std::vector<std::size_t>> reverse(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto j : system->stencil()[i]) reverse[static_cast<std::size_t>(j)].push_back(i);
    }
    std::vector<char> seen(n, 0);
    const auto root = *trunc.index_of(model.root());
    std::deque<std::size_t> q{root};
    seen[root] = 1;
    while (!q.empty()) {
      const auto v = q.front();
      q.pop_front();
      for (auto w : reverse[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          q.push_back(w);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen[i]) {
        throw ReducibleSystem("vertex " + model.format(trunc.vertices()[i]) + " cannot reach " +
                              model.format(model.root()) + "; the mean-transport graph is not strongly connected");
      }
    }
    if (n == 1 && system->stencil()[0].empty()) {
      throw ReducibleSystem("single vertex without self-transport is not irreducible");
    }
  }

  const std::vector<double> no_boundary;
  auto converge = [&](std::vector<double> z) {
    std::vector<double> next(n);
    for (int it = 0; it < 1'000'000; ++it) {
      system->apply(z, no_boundary, next);
      const double step = sup_distance(z, next);
      z.swap(next);
      if (step <= 1e-15) break;
    }
    return z;
  };

  FixedPointReport report;
  std::vector<std::vector<double>> limits;
  limits.push_back(converge(std::vector<double>(n, 0.0)));
  limits.push_back(converge(std::vector<double>(n, 1.0)));
  CounterRng rng(seed, 0);
  std::vector<double> g(n);
  for (int s = 0; s < starts; ++s) {
    for (int attempt = 0; attempt < 10'000; ++attempt) {
      std::vector<double> z(n);
      for (auto& v : z) v = rng.uniform();
      system->apply(z, no_boundary, g);
      bool in_lower = true;
      for (std::size_t i = 0; i < n && in_lower; ++i) in_lower = g[i] >= z[i] - kFixedPointTol;
      if (in_lower) {
        limits.push_back(converge(std::move(z)));
        ++report.starts_used;
        break;
      }
      ++report.rejected_samples;
    }
  }

  struct Work {
    std::vector<double> sum;
    std::vector<std::vector<double>> members;
  };
  std::vector<Work> work;
  for (auto& z : limits) {
    Work* home = nullptr;
    for (auto& w : work) {
      std::vector<double> centroid(n);
      for (std::size_t i = 0; i < n; ++i) centroid[i] = w.sum[i] / static_cast<double>(w.members.size());
      if (sup_distance(centroid, z) <= kClusterRadius) {
        home = &w;
        break;
      }
    }
    if (!home) {
      work.push_back({std::vector<double>(n, 0.0), {}});
      home = &work.back();
    }
    for (std::size_t i = 0; i < n; ++i) home->sum[i] += z[i];
    home->members.push_back(z);
  }
  for (auto& w : work) {
    FixedPointCluster c;
    c.members = static_cast<std::int64_t>(w.members.size());
    c.centroid.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.centroid[i] = w.sum[i] / static_cast<double>(c.members);
    for (const auto& a : w.members) {
      for (const auto& b : w.members) c.diameter = std::max(c.diameter, sup_distance(a, b));
    }
    report.clusters.push_back(std::move(c));
  }
  std::sort(report.clusters.begin(), report.clusters.end(),
            [](const FixedPointCluster& a, const FixedPointCluster& b) { return a.centroid < b.centroid; });
  return report;
}

}  // namespace brw
