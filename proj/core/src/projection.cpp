#include "brw/projection.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "brw/montecarlo.hpp"

namespace brw {

namespace {

std::string rate_str(const Rate& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

}  // namespace

ProjectionMap tree_to_comb(std::shared_ptr<const TreeGraph> tree) {
  auto comb = std::make_shared<CombGraph>(tree->degree() - 2, tree->lambda());
  return {"tree(" + std::to_string(tree->degree()) + ")->comb(" + std::to_string(comb->alpha()) + ")", tree, comb,
          [](const VertexId& v) { return CombGraph::at(v.major, TreeGraph::path_length(v)); }};
}

ProjectionMap tree_to_comb_with_alpha(std::shared_ptr<const TreeGraph> tree, int alpha) {
  auto comb = std::make_shared<CombGraph>(alpha, tree->lambda());
  return {"tree(" + std::to_string(tree->degree()) + ")->comb(" + std::to_string(alpha) + ")", tree, comb,
          [](const VertexId& v) { return CombGraph::at(v.major, TreeGraph::path_length(v)); }};
}

ProjectionMap comb_to_singleton(std::shared_ptr<const CombGraph> comb) {
  auto single = std::make_shared<SingletonGraph>(Rate(comb->alpha() + 2), comb->lambda());
  return {"comb(" + std::to_string(comb->alpha()) + ")->singleton(" + std::to_string(comb->alpha() + 2) + ")", comb,
          single, [](const VertexId&) { return VertexId{}; }};
}

ProjectionMap gadget_to_comb(std::shared_ptr<const CombPrimeGraph> prime) {
  auto comb = std::make_shared<CombGraph>(prime->alpha(), prime->lambda());
  const auto* p = prime.get();
  return {"B->V_" + std::to_string(prime->tooth()), prime, comb, [p](const VertexId& v) { return p->project(v); }};
}

ProjectionReport check_projection(const ProjectionMap& map, int radius) {
  ProjectionReport rep;
  rep.map_name = map.name;
  rep.radius = radius;
  const auto src = Truncation::ball(*map.source, radius);
  std::set<VertexId> image;
  for (const auto& x : src->vertices()) {
    const VertexId gx = map.apply(x);
    image.insert(gx);
    std::map<VertexId, Rate> lhs;
    for (const auto& e : map.source->neighbors(x)) lhs[map.apply(e.to)] += e.rate;
    std::map<VertexId, Rate> rhs;
    for (const auto& e : map.target->neighbors(gx)) rhs[e.to] += e.rate;
    ++rep.rows_checked;
    auto report = [&](const VertexId& y, const Rate& l, const Rate& r) {
      rep.violation = ProjectionViolation{
          x, y, l, r,
          "x=" + map.source->format(x) + " g(x)=" + map.target->format(gx) + " y=" + map.target->format(y) +
              ": fibre sum " + rate_str(l) + " != target rate " + rate_str(r)};
    };
    for (const auto& [y, l] : lhs) {
      auto it = rhs.find(y);
      const Rate r = it == rhs.end() ? Rate(0) : it->second;
      if (l != r) {
        report(y, l, r);
        return rep;
      }
    }
    for (const auto& [y, r] : rhs) {
      if (!lhs.count(y) && !is_zero(r)) {
        report(y, Rate(0), r);
        return rep;
      }
    }
  }
  const auto tgt = Truncation::ball(*map.target, radius);
  rep.surjective = true;
  for (const auto& y : tgt->vertices()) {
    if (!image.count(y)) {
      rep.surjective = false;
      rep.violation = ProjectionViolation{VertexId{}, y, Rate(0), Rate(0),
                                          "target vertex " + map.target->format(y) + " has an empty fibre"};
      return rep;
    }
  }
  rep.exact_pass = true;
  return rep;
}

Configuration project_config(const Configuration& eta, const ProjectionMap& map) {
  Configuration out;
  for (const auto& [v, c] : eta) {
    if (c > 0) out[map.apply(v)] += c;
  }
  return out;
}

double fibre_law_tv(const ProjectionMap& map, const VertexId& x, std::int64_t samples, std::uint64_t seed) {
  const GeometricPlacementLaw src(map.source->rate_law(x));
  const GeometricPlacementLaw tgt(map.target->rate_law(map.apply(x)));
  std::map<OffspringConfig, double> empirical;
  CounterRng rng(seed, 0);
  for (std::int64_t s = 0; s < samples; ++s) {
    const auto kids = sample_offspring(src, rng);
    OffspringConfig projected;
    for (const auto& [v, c] : kids.entries) projected.entries.emplace_back(map.apply(v), c);
    projected.normalize();
    empirical[projected] += 1.0 / static_cast<double>(samples);
  }
  std::int64_t cap = 1;
  while (tgt.tail_mass(cap) > 1e-9 && cap < 200) ++cap;
  const auto exact = tgt.enumerate(cap);
  double tv = exact.tail_mass;
  for (const auto& o : exact.outcomes) {
    auto it = empirical.find(o.config);
    const double p = it == empirical.end() ? 0.0 : it->second;
    tv += std::abs(p - o.probability);
    if (it != empirical.end()) empirical.erase(it);
  }
  for (const auto& [cfg, p] : empirical) tv += p;
  return 0.5 * tv;
}

TransportReport check_q_transport(const ProjectionMap& map, const TargetSet& source_set,
                                  const TargetSet& target_set, const VertexId& x, int source_radius,
                                  int target_radius) {
  TransportReport rep;
  rep.set_name = target_set.name();
  rep.source_vertex = x;
  rep.target_vertex = map.apply(x);
  Solver src(map.source, source_radius);
  Solver tgt(map.target, target_radius);
  rep.source = source_set.is_full() ? src.qbar() : src.q(source_set);
  rep.target = target_set.is_full() ? tgt.qbar() : tgt.q(target_set);
  const double lo = std::max(rep.source.lower_at(x), rep.target.lower_at(rep.target_vertex));
  const double hi = std::min(rep.source.upper_at(x), rep.target.upper_at(rep.target_vertex));
  rep.overlap = lo <= hi + 1e-9;
  rep.conclusive = rep.source.converged && rep.target.converged;
  return rep;
}

}  // namespace brw
