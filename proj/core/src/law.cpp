#include "brw/law.hpp"

#include <algorithm>
#include <type_traits>
#include <cmath>

namespace brw {

namespace {

bool outcome_less(const LawOutcome& a, const LawOutcome& b) {
  const auto ta = a.config.total();
  const auto tb = b.config.total();
  if (ta != tb) return ta < tb;
  return a.config.entries < b.config.entries;
}

}  // namespace

ExplicitLaw::ExplicitLaw(std::vector<LawOutcome> outcomes) : outcomes_(std::move(outcomes)) {
  double sum = 0.0;
  for (auto& o : outcomes_) {
    if (!(o.probability >= 0.0 && o.probability <= 1.0)) {
      throw InvalidLaw("outcome probability outside [0,1]");
    }
    o.config.normalize();
    sum += o.probability;
  }
  if (std::abs(sum - 1.0) > kLawNormalizationTol) {
    throw InvalidLaw("law probabilities sum to " + std::to_string(sum) + ", expected 1");
  }
  std::sort(outcomes_.begin(), outcomes_.end(), outcome_less);
  for (std::size_t i = 1; i < outcomes_.size(); ++i) {
    if (outcomes_[i].config == outcomes_[i - 1].config) {
      throw InvalidLaw("duplicate offspring configuration in law");
    }
  }
}

double ExplicitLaw::empty_probability() const {
  double p = 0.0;
  for (const auto& o : outcomes_) {
    if (o.config.entries.empty()) p += o.probability;
  }
  return p;
}

double ExplicitLaw::mean_to(const VertexId& y) const {
  double m = 0.0;
  for (const auto& o : outcomes_) {
    for (const auto& [v, c] : o.config.entries) {
      if (v == y) m += o.probability * static_cast<double>(c);
    }
  }
  return m;
}

double ExplicitLaw::mean_total() const {
  double m = 0.0;
  for (const auto& o : outcomes_) m += o.probability * static_cast<double>(o.config.total());
  return m;
}

std::vector<VertexId> ExplicitLaw::support() const {
  std::vector<VertexId> out;
  for (const auto& o : outcomes_) {
    if (o.probability <= 0.0) continue;
    for (const auto& e : o.config.entries) out.push_back(e.first);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double RateLaw::total_rate() const {
  double k = 0.0;
  for (const auto& e : rates) k += to_double(e.rate);
  return k;
}

GeometricPlacementLaw::GeometricPlacementLaw(const RateLaw& law)
    : parent_(law.x), lambda_(law.lambda), total_rate_(law.total_rate()) {
  if (lambda_ < 0.0) throw InvalidLaw("negative breeding parameter");
  const double a = lambda_ * total_rate_;
  ratio_ = a > 0.0 ? a / (1.0 + a) : 0.0;
  if (total_rate_ > 0.0) {
    for (const auto& e : law.rates) {
      positions_.push_back(e.to);
      position_probs_.push_back(to_double(e.rate) / total_rate_);
    }
  }
}

double GeometricPlacementLaw::count_probability(std::int64_t n) const {
  if (n < 0) return 0.0;
  if (ratio_ == 0.0) return n == 0 ? 1.0 : 0.0;
  return (1.0 - ratio_) * std::pow(ratio_, static_cast<double>(n));
}

double GeometricPlacementLaw::tail_mass(std::int64_t max_children) const {
  if (ratio_ == 0.0) return 0.0;
  return std::pow(ratio_, static_cast<double>(max_children + 1));
}

EnumeratedLaw GeometricPlacementLaw::enumerate(std::int64_t max_children) const {
  EnumeratedLaw out;
  const std::size_t d = positions_.size();
  out.outcomes.push_back({OffspringConfig{}, count_probability(0)});
  if (d == 0) {
    out.tail_mass = 0.0;
    return out;
  }
  // Multinomial expansion level by level; counts[i] children at positions_[i].
  std::vector<double> log_p(d);
  for (std::size_t i = 0; i < d; ++i) log_p[i] = std::log(position_probs_[i]);
  std::vector<std::int64_t> counts(d, 0);
  for (std::int64_t n = 1; n <= max_children; ++n) {
    const double pn = count_probability(n);
    const double log_nfact = std::lgamma(static_cast<double>(n) + 1.0);
    // Visit every composition of n into d nonnegative parts.
    auto visit = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
      if (i + 1 == d) {
        counts[i] = left;
        double lp = log_nfact;
        OffspringConfig cfg;
        for (std::size_t k = 0; k < d; ++k) {
          if (counts[k] == 0) continue;
          lp += static_cast<double>(counts[k]) * log_p[k] -
                std::lgamma(static_cast<double>(counts[k]) + 1.0);
          cfg.entries.emplace_back(positions_[k], counts[k]);
        }
        out.outcomes.push_back({std::move(cfg), pn * std::exp(lp)});
        return;
      }
      for (std::int64_t c = left; c >= 0; --c) {
        counts[i] = c;
        self(self, i + 1, left - c);
      }
    };
    visit(visit, 0, n);
  }
  std::sort(out.outcomes.begin(), out.outcomes.end(), outcome_less);
  out.tail_mass = tail_mass(max_children);
  return out;
}

GeometricPlacementLaw derive_offspring_law(const RateLaw& law) { return GeometricPlacementLaw(law); }

MeanMatrixEntry derive_mean(const RateLaw& law, const VertexId& y) {
  MeanMatrixEntry e{law.x, y, 0.0};
  for (const auto& r : law.rates) {
    if (r.to == y) e.mean += law.lambda * to_double(r.rate);
  }
  return e;
}

double mean_total(const Law& law) {
  return std::visit(
      [](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ExplicitLaw>) {
          return l.mean_total();
        } else {
          return l.lambda * l.total_rate();
        }
      },
      law);
}

double mean_to(const Law& law, const VertexId& y) {
  return std::visit(
      [&y](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ExplicitLaw>) {
          return l.mean_to(y);
        } else {
          return derive_mean(l, y).mean;
        }
      },
      law);
}

}  // namespace brw
