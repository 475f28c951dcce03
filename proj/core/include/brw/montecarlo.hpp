#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "brw/law.hpp"
#include "brw/model.hpp"
#include "brw/rng.hpp"
#include "brw/target_set.hpp"

namespace brw {

struct SimConfig {
  std::uint64_t seed = 1;
  std::int64_t trials = 100'000;
  std::int64_t max_generations = 30;
  std::int64_t particle_cap = 1'000'000;
  std::int64_t radius_cap = 1'000'000;
  /// Worker threads; 0 picks the hardware concurrency. Results do not depend
  /// on it.
  int threads = 0;
};

OffspringConfig sample_offspring(const Law& law, CounterRng& rng);
OffspringConfig sample_offspring(const GeometricPlacementLaw& law, CounterRng& rng);
OffspringConfig sample_offspring(const ExplicitLaw& law, CounterRng& rng);

enum class Outcome { Extinct, SurvivedHorizon, Censored };
std::string to_string(Outcome o);

using Generation = std::map<VertexId, std::int64_t>;

struct Trajectory {
  std::vector<Generation> generations;  // only filled when recording
  Outcome outcome = Outcome::SurvivedHorizon;
  bool censored = false;
  bool hit = false;  // some particle in the watched set
  std::int64_t generations_run = 0;
};

struct TrialOptions {
  const TargetSet* watch = nullptr;
  bool stop_on_hit = false;
  bool record = false;
};

/// One trial started from a single particle at x0. Particles are processed
/// in sorted vertex order and the RNG stream is (seed, trial index).
Trajectory run_trial(const BranchingModel& model, const VertexId& x0, const SimConfig& cfg,
                     std::int64_t trial_index, const TrialOptions& options = {});

struct TrialRecord {
  std::int64_t trial_id = 0;
  Outcome outcome = Outcome::SurvivedHorizon;
  bool hit = false;
  std::int64_t generations_run = 0;
};

/// Frequency of an event with censored trials counted both ways.
struct Estimate {
  std::int64_t trials = 0;
  std::int64_t successes = 0;  // uncensored trials with the event
  std::int64_t censored = 0;   // trials whose event status is unknown
  double low() const { return static_cast<double>(successes) / static_cast<double>(trials); }
  double high() const { return static_cast<double>(successes + censored) / static_cast<double>(trials); }
  double mean() const { return 0.5 * (low() + high()); }
  /// Binomial standard error at the midpoint.
  double std_error() const;
};

/// P(no particle in A during generations 0..horizon).
Estimate estimate_no_hit(const BranchingModel& model, const VertexId& x0, const TargetSet& a,
                         std::int64_t horizon, SimConfig cfg, std::vector<TrialRecord>* records = nullptr);

/// P(extinct by generation cfg.max_generations).
Estimate estimate_extinction(const BranchingModel& model, const VertexId& x0, const SimConfig& cfg,
                             std::vector<TrialRecord>* records = nullptr);

/// trial_id,outcome,hit_A,generations_run
void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);

}  // namespace brw
