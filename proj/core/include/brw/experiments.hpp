#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "brw/model_io.hpp"
#include "brw/named_set.hpp"
#include "brw/records.hpp"
#include "brw/solver.hpp"

namespace brw {

enum class Verdict { CertifiedDistinct, CertifiedEqualWithin, Unresolved };
std::string_view to_string(Verdict v);
/// 0 on a certified verdict, 2 when unresolved.
int exit_code(Verdict v);

/// Disjoint intervals certify a strict order; intervals that meet with both
/// widths within `equal_tolerance` are equal within that tolerance.
Verdict compare_intervals(double lo1, double hi1, double lo2, double hi2, double equal_tolerance);

struct ExperimentSpec {
  std::string name;
  ModelSpec model;
  std::vector<int> radii;  // strictly increasing; stops at the first certified verdict
  SolverOptions solver;
  std::int64_t n_max = 2;
  IndexSet first{1};   // I1 as a bitmask, bit i-1 for index i
  IndexSet second{2};  // I2
  int starts = 100;
  std::uint64_t seed = 1;
  double equal_tolerance = 1e-4;
};

/// Defaults for a named experiment (tree(3) or comb(1) at lambda 0.35).
ExperimentSpec default_spec(std::string_view name);
const std::vector<std::string>& experiment_names();
/// Throws InvalidArgument on a malformed spec.
void validate(const ExperimentSpec& spec);

struct ExperimentResult {
  std::string name;
  Verdict verdict = Verdict::Unresolved;
  int radius = 0;  // last radius tried
  std::vector<QRow> table;
  /// Brackets from the last radius tried, kept for sandwich checks.
  std::vector<Bracket> brackets;
  nlohmann::json report;
  std::string hint;  // what to raise when unresolved
};

ExperimentResult exp_lemma_countable(const ExperimentSpec& spec);
ExperimentResult exp_uncountable(const ExperimentSpec& spec);
ExperimentResult exp_line_extinction(const ExperimentSpec& spec);
ExperimentResult exp_loop(const ExperimentSpec& spec);
ExperimentResult exp_comb(const ExperimentSpec& spec);
ExperimentResult exp_boundary_counterexample(const ExperimentSpec& spec);
ExperimentResult exp_finite_two_points(const ExperimentSpec& spec);

ExperimentResult run_experiment(const ExperimentSpec& spec);

/// lower <= upper inside [0, 1] at every ball vertex.
bool sandwiched(const Bracket& b);

}  // namespace brw
