#include "brw/tails.hpp"

#include <algorithm>
#include <cmath>

#include "brw/comb.hpp"
#include "brw/loop.hpp"
#include "brw/tree.hpp"

namespace brw {

double first_passage_weight(double lambda, double branching) {
  if (lambda <= 0.0) return 0.0;
  if (branching <= 0.0) return lambda;
  const double disc = 1.0 - 4.0 * branching * lambda * lambda;
  if (disc < 0.0) return kInfiniteWeight;
  // Rationalised form avoids cancellation for small lambda.
  return 2.0 * lambda / (1.0 + std::sqrt(disc));
}

double cone_renewal_bound(double lambda, double outward_rate, int depth) {
  if (lambda <= 0.0 || depth < 1) return 1.0;
  const std::size_t n = static_cast<std::size_t>(depth) + 1;
  auto sweep = [&](const std::vector<double>& z, std::vector<double>& out) {
    for (std::size_t d = 0; d < n; ++d) {
      const double inward = d == 0 ? 1.0 : z[d - 1];
      const double outward = d + 1 == n ? z[0] : z[d + 1];
      out[d] = 1.0 / (1.0 + lambda * (outward_rate * (1.0 - outward) + (1.0 - inward)));
    }
  };
  std::vector<double> z(n, 0.0), next(n);
  for (int it = 0; it < 1'000'000; ++it) {
    sweep(z, next);
    double step = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      next[d] = std::max(next[d], z[d]);
      step = std::max(step, next[d] - z[d]);
    }
    z.swap(next);
    if (step == 0.0) break;
  }
  // Certify: w = z + eps must be a super-solution, which caps the minimal
  // fixed point reached from 0.
  for (double eps = 1e-13; eps <= 1e-4; eps *= 10.0) {
    std::vector<double> w(n);
    for (std::size_t d = 0; d < n; ++d) w[d] = std::min(1.0, z[d] + eps);
    sweep(w, next);
    bool super = true;
    for (std::size_t d = 0; d < n && super; ++d) super = next[d] <= w[d];
    if (super) return w[0];
  }
  return 1.0;
}

namespace {

class TreeTails : public TailModel {
 public:
  explicit TreeTails(const TreeGraph& tree)
      : tree_(tree),
        weight_(first_passage_weight(tree.lambda(), tree.degree() - 1)),
        cone_(cone_renewal_bound(tree.lambda(), tree.degree() - 1)),
        qbar_(std::min(1.0, 1.0 / (tree.lambda() * tree.degree()))) {}

  double cone_upper() const override { return cone_; }
  double hit_weight(const VertexId& from, const VertexId& to) const override {
    if (!std::isfinite(weight_)) return kInfiniteWeight;
    return std::pow(weight_, static_cast<double>(tree_.distance(from, to)));
  }
  double global_lower(const VertexId&) const override { return qbar_; }

 protected:
  TreeGraph tree_;
  double weight_;
  double cone_;
  double qbar_;
};

class LoopTreeTails final : public TreeTails {
 public:
  LoopTreeTails(const TreeGraph& tree, VertexId loop) : TreeTails(tree), loop_(std::move(loop)) {}

  double global_lower(const VertexId& b) const override {
    return std::max(0.0, qbar_ - hit_weight(b, loop_));
  }
  std::vector<VertexId> extra_gates() const override { return {loop_}; }

 private:
  VertexId loop_;
};

class CombTails final : public TailModel {
 public:
  explicit CombTails(const CombGraph& comb)
      : lambda_(comb.lambda()),
        alpha_(comb.alpha()),
        cone_(cone_renewal_bound(comb.lambda(), comb.alpha() + 1)),
        qbar_(std::min(1.0, 1.0 / (comb.lambda() * (comb.alpha() + 2)))) {
    down_ = first_passage_weight(lambda_, alpha_ + 1);
    if (std::isfinite(down_)) {
      const double c = 1.0 - lambda_ * alpha_ * down_;
      const double disc = c * c - 4.0 * lambda_ * lambda_;
      along_ = (c > 0.0 && disc >= 0.0) ? 2.0 * lambda_ / (c + std::sqrt(disc)) : kInfiniteWeight;
    } else {
      along_ = kInfiniteWeight;
    }
  }

  double cone_upper() const override { return cone_; }
  double global_lower(const VertexId&) const override { return qbar_; }
  double hit_weight(const VertexId& from, const VertexId& to) const override {
    if (!std::isfinite(down_) || !std::isfinite(along_)) return kInfiniteWeight;
    if (from.major == to.major) {
      // Upward first passage is not tracked; only descents are bounded.
      if (to.minor > from.minor) return 1.0;
      return std::pow(down_, static_cast<double>(from.minor - to.minor));
    }
    // Any walk to another tooth passes that tooth's axis vertex first.
    return std::pow(down_, static_cast<double>(from.minor)) *
           std::pow(along_, static_cast<double>(std::abs(from.major - to.major)));
  }

 private:
  double lambda_;
  int alpha_;
  double cone_;
  double qbar_;
  double down_ = 0.0;
  double along_ = 0.0;
};

}  // namespace

TailModelPtr make_tail_model(const BranchingModel& model) {
  if (auto t = dynamic_cast<const TreeGraph*>(&model)) return std::make_shared<TreeTails>(*t);
  if (auto l = dynamic_cast<const LoopGraph*>(&model)) {
    if (auto t = dynamic_cast<const TreeGraph*>(l->base().get())) {
      return std::make_shared<LoopTreeTails>(*t, l->loop_vertex());
    }
    return std::make_shared<TailModel>();
  }
  if (dynamic_cast<const CombPrimeGraph*>(&model)) return std::make_shared<TailModel>();
  if (auto c = dynamic_cast<const CombGraph*>(&model)) return std::make_shared<CombTails>(*c);
  return std::make_shared<TailModel>();
}

std::optional<double> qbar_closed_form(const BranchingModel& model) {
  if (auto t = dynamic_cast<const TreeGraph*>(&model)) return std::min(1.0, 1.0 / (t->lambda() * t->degree()));
  if (dynamic_cast<const CombPrimeGraph*>(&model)) return std::nullopt;
  if (auto c = dynamic_cast<const CombGraph*>(&model)) return std::min(1.0, 1.0 / (c->lambda() * (c->alpha() + 2)));
  return std::nullopt;
}

}  // namespace brw
