#include "brw/genfun.hpp"

#include <algorithm>
#include <cmath>

namespace brw {

double eval_genfun(const ExplicitLaw& law, const ProbVector& z) {
  double g = 0.0;
  for (const auto& o : law.outcomes()) {
    double p = o.probability;
    for (const auto& [v, c] : o.config.entries) {
      p *= std::pow(z.at(v), static_cast<double>(c));
    }
    g += p;
  }
  return std::clamp(g, 0.0, 1.0);
}

double eval_genfun(const RateLaw& law, const ProbVector& z) {
  double s = 0.0;
  for (const auto& e : law.rates) {
    s += law.lambda * to_double(e.rate) * (1.0 - z.at(e.to));
  }
  return 1.0 / (1.0 + s);
}

double eval_genfun(const Law& law, const ProbVector& z) {
  return std::visit([&z](const auto& l) { return eval_genfun(l, z); }, law);
}

PointClass classify_point(const CompiledSystem& system, const ProbVector& z, double tol) {
  const auto bvals = z.boundary_values();
  std::vector<double> g(system.size());
  system.apply(z.values(), bvals, g);
  PointClass pc{true, true};
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] > z[i] + tol) pc.in_upper = false;
    if (g[i] < z[i] - tol) pc.in_lower = false;
  }
  return pc;
}

ProbVector iterate_map(const CompiledSystem& system, const ProbVector& z0, std::int64_t steps,
                       IterationTrace* trace) {
  if (z0.truncation() != system.truncation()) {
    throw InvalidArgument("iterate_map: vector and system use different truncations");
  }
  const auto bvals = z0.boundary_values();
  std::vector<double> cur = z0.values();
  std::vector<double> next(cur.size());
  IterationTrace local;
  for (std::int64_t k = 0; k < steps; ++k) {
    system.apply(cur, bvals, next);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (next[i] < cur[i]) local.nondecreasing = false;
      if (next[i] > cur[i]) local.nonincreasing = false;
    }
    cur.swap(next);
    ++local.steps;
  }
  if (trace) *trace = local;
  return ProbVector(system.truncation(), std::move(cur), z0.boundary());
}

}  // namespace brw
