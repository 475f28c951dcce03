#include "brw/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <thread>
#include <unordered_map>

namespace brw {

OffspringConfig sample_offspring(const GeometricPlacementLaw& law, CounterRng& rng) {
  OffspringConfig cfg;
  if (law.degenerate()) return cfg;
  const double u = rng.uniform_open_left();
  const auto n = static_cast<std::int64_t>(std::floor(std::log(u) / std::log(law.success_ratio())));
  const auto& probs = law.position_probabilities();
  const auto& pos = law.positions();
  std::vector<std::int64_t> counts(pos.size(), 0);
  for (std::int64_t c = 0; c < n; ++c) {
    double v = rng.uniform();
    std::size_t k = 0;
    while (k + 1 < probs.size() && v >= probs[k]) {
      v -= probs[k];
      ++k;
    }
    ++counts[k];
  }
  for (std::size_t k = 0; k < pos.size(); ++k) {
    if (counts[k] > 0) cfg.entries.emplace_back(pos[k], counts[k]);
  }
  return cfg;
}

OffspringConfig sample_offspring(const ExplicitLaw& law, CounterRng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  const auto& outs = law.outcomes();
  for (const auto& o : outs) {
    acc += o.probability;
    if (u < acc) return o.config;
  }
  // Rounding slack: fall back to the last outcome with positive mass.
  for (auto it = outs.rbegin(); it != outs.rend(); ++it) {
    if (it->probability > 0.0) return it->config;
  }
  return {};
}

OffspringConfig sample_offspring(const Law& law, CounterRng& rng) {
  return std::visit(
      [&rng](const auto& l) -> OffspringConfig {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, RateLaw>) {
          return sample_offspring(GeometricPlacementLaw(l), rng);
        } else {
          return sample_offspring(l, rng);
        }
      },
      law);
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Extinct: return "extinct";
    case Outcome::SurvivedHorizon: return "survived_horizon";
    case Outcome::Censored: return "censored";
  }
  return "censored";
}

namespace {

// Per-trial law cache; laws are pure functions of the vertex.
class LawCache {
 public:
  explicit LawCache(const BranchingModel& model) : model_(model) {}

  OffspringConfig sample(const VertexId& v, CounterRng& rng) {
    auto it = cache_.find(v);
    if (it == cache_.end()) {
      Law law = model_.law(v);
      Entry e;
      if (auto* r = std::get_if<RateLaw>(&law)) {
        e.geometric.emplace(*r);
      } else {
        e.explicit_law = std::get<ExplicitLaw>(law);
      }
      it = cache_.emplace(v, std::move(e)).first;
    }
    if (it->second.geometric) return sample_offspring(*it->second.geometric, rng);
    return sample_offspring(it->second.explicit_law, rng);
  }

 private:
  struct Entry {
    std::optional<GeometricPlacementLaw> geometric;
    ExplicitLaw explicit_law;
  };
  const BranchingModel& model_;
  std::unordered_map<VertexId, Entry, VertexIdHash> cache_;
};

bool any_in(const Generation& g, const TargetSet* watch) {
  if (!watch) return false;
  return std::any_of(g.begin(), g.end(), [watch](const auto& kv) { return watch->contains(kv.first); });
}

}  // namespace

Trajectory run_trial(const BranchingModel& model, const VertexId& x0, const SimConfig& cfg,
                     std::int64_t trial_index, const TrialOptions& options) {
  CounterRng rng(cfg.seed, static_cast<std::uint64_t>(trial_index));
  LawCache laws(model);
  Trajectory t;
  Generation current{{x0, 1}};
  if (options.record) t.generations.push_back(current);
  t.hit = any_in(current, options.watch);
  if (t.hit && options.stop_on_hit) return t;
  for (std::int64_t gen = 1; gen <= cfg.max_generations; ++gen) {
    Generation next;
    std::int64_t population = 0;
    for (const auto& [v, count] : current) {
      for (std::int64_t p = 0; p < count; ++p) {
        auto kids = laws.sample(v, rng);
        for (auto& [w, c] : kids.entries) {
          next[w] += c;
          population += c;
        }
      }
      if (population > cfg.particle_cap) break;
    }
    t.generations_run = gen;
    if (population == 0) {
      t.outcome = Outcome::Extinct;
      if (options.record) t.generations.push_back(next);
      return t;
    }
    bool too_far = population > cfg.particle_cap;
    for (const auto& kv : next) {
      if (too_far) break;
      too_far = model.distance_from_root(kv.first) > cfg.radius_cap;
    }
    if (too_far) {
      t.outcome = Outcome::Censored;
      t.censored = true;
      return t;
    }
    if (!t.hit && any_in(next, options.watch)) {
      t.hit = true;
      if (options.stop_on_hit) {
        if (options.record) t.generations.push_back(next);
        return t;
      }
    }
    if (options.record) t.generations.push_back(next);
    current = std::move(next);
  }
  t.outcome = Outcome::SurvivedHorizon;
  return t;
}

double Estimate::std_error() const {
  const double p = mean();
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(trials));
}

namespace {

void run_parallel(std::int64_t trials, int threads, const std::function<void(std::int64_t)>& body) {
  int workers = threads > 0 ? threads : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<std::int64_t>(workers, std::max<std::int64_t>(trials, 1)));
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([=, &body] {
      for (std::int64_t t = w; t < trials; t += workers) body(t);
    });
  }
}

}  // namespace

Estimate estimate_no_hit(const BranchingModel& model, const VertexId& x0, const TargetSet& a,
                         std::int64_t horizon, SimConfig cfg, std::vector<TrialRecord>* records) {
  cfg.max_generations = horizon;
  std::vector<TrialRecord> recs(static_cast<std::size_t>(cfg.trials));
  TrialOptions opt;
  opt.watch = &a;
  opt.stop_on_hit = true;
  run_parallel(cfg.trials, cfg.threads, [&](std::int64_t t) {
    const auto tr = run_trial(model, x0, cfg, t, opt);
    recs[static_cast<std::size_t>(t)] = {t, tr.outcome, tr.hit, tr.generations_run};
  });
  Estimate e;
  e.trials = cfg.trials;
  for (const auto& r : recs) {
    if (r.hit) continue;
    if (r.outcome == Outcome::Censored) {
      ++e.censored;
    } else {
      ++e.successes;
    }
  }
  if (records) *records = std::move(recs);
  return e;
}

Estimate estimate_extinction(const BranchingModel& model, const VertexId& x0, const SimConfig& cfg,
                             std::vector<TrialRecord>* records) {
  std::vector<TrialRecord> recs(static_cast<std::size_t>(cfg.trials));
  run_parallel(cfg.trials, cfg.threads, [&](std::int64_t t) {
    const auto tr = run_trial(model, x0, cfg, t);
    recs[static_cast<std::size_t>(t)] = {t, tr.outcome, tr.hit, tr.generations_run};
  });
  Estimate e;
  e.trials = cfg.trials;
  for (const auto& r : recs) {
    if (r.outcome == Outcome::Extinct) ++e.successes;
    if (r.outcome == Outcome::Censored) ++e.censored;
  }
  if (records) *records = std::move(recs);
  return e;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "trial_id,outcome,hit_A,generations_run\n";
  for (const auto& r : records) {
    out << r.trial_id << ',' << to_string(r.outcome) << ',' << (r.hit ? 1 : 0) << ',' << r.generations_run << '\n';
  }
}

}  // namespace brw
