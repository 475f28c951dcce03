#include "brw/system.hpp"

#include <algorithm>
#include <deque>
#include <type_traits>

namespace brw {

RateGraph::RateGraph(double lambda) : lambda_(lambda) {
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be nonnegative");
}

RateLaw RateGraph::rate_law(const VertexId& x) const {
  return RateLaw{x, neighbors(x), lambda_};
}

Law RateGraph::law(const VertexId& x) const { return rate_law(x); }

std::vector<VertexId> RateGraph::successors(const VertexId& x) const {
  std::vector<VertexId> out;
  if (lambda_ == 0.0) return out;
  for (auto& e : neighbors(x)) {
    if (e.rate > 0) out.push_back(std::move(e.to));
  }
  return out;
}

std::shared_ptr<const Truncation> Truncation::ball(const BranchingModel& model, int radius) {
  if (radius < 0) throw InvalidArgument("truncation radius must be nonnegative");
  auto t = std::make_shared<Truncation>();
  t->radius_ = radius;

  std::unordered_map<VertexId, int, VertexIdHash> dist;
  std::deque<VertexId> queue;
  const VertexId root = model.root();
  dist.emplace(root, 0);
  queue.push_back(root);
  std::vector<VertexId> boundary;
  while (!queue.empty()) {
    VertexId v = std::move(queue.front());
    queue.pop_front();
    const int d = dist.at(v);
    for (auto& w : model.successors(v)) {
      if (dist.count(w)) continue;
      if (d == radius) {
        boundary.push_back(w);
        dist.emplace(std::move(w), radius + 1);
      } else {
        dist.emplace(w, d + 1);
        queue.push_back(std::move(w));
      }
    }
  }
  for (const auto& [v, d] : dist) {
    if (d <= radius) t->vertices_.push_back(v);
  }
  std::sort(t->vertices_.begin(), t->vertices_.end());
  std::sort(boundary.begin(), boundary.end());
  t->boundary_ = std::move(boundary);
  t->depth_.reserve(t->vertices_.size());
  for (std::size_t i = 0; i < t->vertices_.size(); ++i) {
    t->index_.emplace(t->vertices_[i], static_cast<std::uint32_t>(i));
    t->depth_.push_back(dist.at(t->vertices_[i]));
  }
  for (std::size_t i = 0; i < t->boundary_.size(); ++i) {
    t->boundary_index_.emplace(t->boundary_[i], static_cast<std::uint32_t>(i));
  }
  return t;
}

std::optional<std::size_t> Truncation::index_of(const VertexId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Truncation::boundary_index_of(const VertexId& v) const {
  auto it = boundary_index_.find(v);
  if (it == boundary_index_.end()) return std::nullopt;
  return it->second;
}

double Boundary::value(std::size_t boundary_index) const {
  switch (policy) {
    case Policy::ClampOne: return 1.0;
    case Policy::ClampZero: return 0.0;
    case Policy::ClampConst: return constant;
    case Policy::PerVertex: return values.at(boundary_index);
  }
  return 1.0;
}

std::vector<double> Boundary::realize(const Truncation& t) const {
  std::vector<double> out(t.boundary().size());
  for (std::size_t b = 0; b < out.size(); ++b) out[b] = value(b);
  return out;
}

ProbVector::ProbVector(TruncationPtr truncation, std::vector<double> values, Boundary boundary)
    : truncation_(std::move(truncation)), values_(std::move(values)), boundary_(std::move(boundary)) {
  if (!truncation_) throw InvalidArgument("ProbVector needs a truncation");
  if (values_.size() != truncation_->size()) throw InvalidArgument("ProbVector size mismatch");
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("ProbVector value outside [0,1]");
  }
  if (boundary_.policy == Boundary::Policy::PerVertex &&
      boundary_.values.size() != truncation_->boundary().size()) {
    throw InvalidArgument("per-vertex boundary size mismatch");
  }
}

ProbVector ProbVector::constant(TruncationPtr truncation, double c, Boundary boundary) {
  const auto n = truncation->size();
  return ProbVector(std::move(truncation), std::vector<double>(n, c), std::move(boundary));
}

double ProbVector::at(const VertexId& v) const {
  if (auto i = truncation_->index_of(v)) return values_[*i];
  if (auto b = truncation_->boundary_index_of(v)) return boundary_.value(*b);
  throw TruncationIncomplete("vertex not resolvable in truncation of radius " +
                             std::to_string(truncation_->radius()));
}

CompiledSystem::CompiledSystem(const BranchingModel& model, TruncationPtr truncation)
    : truncation_(std::move(truncation)) {
  const auto& verts = truncation_->vertices();
  const std::size_t n = verts.size();
  kind_.resize(n);
  row_begin_.resize(n, 0);
  row_end_.resize(n, 0);
  stencil_.resize(n);
  mean_.resize(n, 0.0);

  auto column = [this](const VertexId& v) -> std::int32_t {
    if (auto i = truncation_->index_of(v)) return static_cast<std::int32_t>(*i);
    if (auto b = truncation_->boundary_index_of(v)) return ~static_cast<std::int32_t>(*b);
    throw TruncationIncomplete("law references a vertex outside the truncation and its boundary");
  };

  for (std::size_t i = 0; i < n; ++i) {
    Law law = model.law(verts[i]);
    mean_[i] = mean_total(law);
    std::visit(
        [&](const auto& l) {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, RateLaw>) {
            kind_[i] = Kind::Rate;
            row_begin_[i] = static_cast<std::uint32_t>(terms_.size());
            if (l.lambda > 0.0) {
              for (const auto& e : l.rates) {
                const double coef = l.lambda * to_double(e.rate);
                if (coef <= 0.0) continue;
                const auto col = column(e.to);
                terms_.push_back({col, coef});
                if (col >= 0) stencil_[i].push_back(col);
              }
            }
            row_end_[i] = static_cast<std::uint32_t>(terms_.size());
          } else {
            kind_[i] = Kind::Explicit;
            row_begin_[i] = static_cast<std::uint32_t>(outcomes_.size());
            for (const auto& o : l.outcomes()) {
              Outcome out{o.probability, static_cast<std::uint32_t>(outcome_terms_.size()), 0};
              for (const auto& [v, c] : o.config.entries) {
                const auto col = column(v);
                outcome_terms_.push_back({col, static_cast<double>(c)});
                if (col >= 0 && o.probability > 0.0) stencil_[i].push_back(col);
              }
              out.end = static_cast<std::uint32_t>(outcome_terms_.size());
              outcomes_.push_back(out);
            }
            row_end_[i] = static_cast<std::uint32_t>(outcomes_.size());
          }
        },
        law);
    auto& s = stencil_[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
}

double CompiledSystem::eval(std::size_t i, std::span<const double> z, std::span<const double> bvals) const {
  if (kind_[i] == Kind::Rate) {
    double s = 0.0;
    for (std::uint32_t t = row_begin_[i]; t < row_end_[i]; ++t) {
      s += terms_[t].coef * (1.0 - value_of(terms_[t].col, z, bvals));
    }
    return 1.0 / (1.0 + s);
  }
  double g = 0.0;
  for (std::uint32_t o = row_begin_[i]; o < row_end_[i]; ++o) {
    double p = outcomes_[o].probability;
    for (std::uint32_t t = outcomes_[o].begin; t < outcomes_[o].end && p > 0.0; ++t) {
      const double zv = value_of(outcome_terms_[t].col, z, bvals);
      for (int c = 0; c < static_cast<int>(outcome_terms_[t].coef); ++c) p *= zv;
    }
    g += p;
  }
  return std::min(g, 1.0);
}

void CompiledSystem::apply(std::span<const double> z, std::span<const double> bvals, std::span<double> out,
                           const std::vector<char>* pinned_zero) const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (pinned_zero && (*pinned_zero)[i]) ? 0.0 : eval(i, z, bvals);
  }
}

SystemPtr compile(const BranchingModel& model, int radius) {
  return std::make_shared<CompiledSystem>(model, Truncation::ball(model, radius));
}

}  // namespace brw
