#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "brw/genfun.hpp"
#include "brw/tails.hpp"
#include "brw/target_set.hpp"

namespace brw {

/// Boundary treatment for brackets.
///  Plain:   ClampZero below, ClampOne above.
///  Refined: per-vertex certified bounds from the family's TailModel.
enum class TailMode { Plain, Refined };

struct SolverOptions {
  double tolerance = 1e-12;  // sup-norm step for convergence
  std::int64_t max_sweeps = 200'000;
  TailMode tails = TailMode::Refined;
};

/// Certified pair lower <= q <= upper on a truncation of radius R.
struct Bracket {
  std::string set_name;
  ProbVector lower;
  ProbVector upper;
  int radius = 0;
  std::int64_t iterations = 0;
  bool converged = false;

  double width() const;
  double lower_at(const VertexId& v) const { return lower.at(v); }
  double upper_at(const VertexId& v) const { return upper.at(v); }
  double width_at(const VertexId& v) const { return upper_at(v) - lower_at(v); }
  bool contains(const VertexId& v, double value, double slack = 0.0) const {
    return lower_at(v) - slack <= value && value <= upper_at(v) + slack;
  }
};

struct Distance {
  VertexId x;
  std::string set_name;
  std::int64_t d = 0;
  /// No member of A within the truncation: d is only a lower bound.
  bool infinite = false;
};

/// Monotone iteration engine on one truncation.
class Solver {
 public:
  Solver(ModelPtr model, int radius, SolverOptions options = {});

  const BranchingModel& model() const { return *model_; }
  const ModelPtr& model_ptr() const { return model_; }
  const CompiledSystem& system() const { return *system_; }
  const TruncationPtr& truncation() const { return system_->truncation(); }
  int radius() const { return radius_; }
  const SolverOptions& options() const { return options_; }

  /// q_0(., A): never-hit probabilities, by downward iteration of the
  /// A-clamped map.
  Bracket q0(const TargetSet& a) const;
  /// q(., A): upward iteration of G from q_0.
  Bracket q(const TargetSet& a) const;
  /// q(., X), the minimal fixed point.
  Bracket qbar() const;

  /// n-th iterate of the A-clamped map started from the indicator of A^c:
  /// P(no particle in A during generations 0..n) wherever the truncation
  /// holds every vertex within distance n. Boundary clamped to 1.
  std::vector<double> no_hit_iterate(const TargetSet& a, std::int64_t n) const;

  /// BFS distance to A inside the truncation for every ball vertex;
  /// -1 where A is not reached.
  std::vector<std::int64_t> distances(const TargetSet& a) const;
  Distance distance(const VertexId& x, const TargetSet& a) const;

  /// q_n(x, A) == q_0(x, A) bit for bit wherever d(x, A) >= n.
  bool check_qn_locality(const TargetSet& a, std::int64_t n) const;

 private:
  struct Tails {
    std::vector<double> lower;
    std::vector<double> upper;
  };
  Tails q0_tails(const TargetSet& a) const;
  Tails q_tails(const TargetSet& a, bool global) const;
  double hit_bound(const VertexId& b, const TargetSet& a) const;

  struct Run {
    std::vector<double> z;
    std::int64_t sweeps = 0;
    bool converged = false;
  };
  Run descend_clamped(std::vector<double> start, const std::vector<double>& bvals,
                      const std::vector<char>& pinned) const;
  Run ascend(std::vector<double> start, const std::vector<double>& bvals) const;
  Bracket solve_q(const TargetSet& a, bool global) const;

  ModelPtr model_;
  int radius_;
  SolverOptions options_;
  SystemPtr system_;
  TailModelPtr tails_;
};

Bracket compute_q0(ModelPtr model, const TargetSet& a, int radius, SolverOptions options = {});
Bracket compute_q(ModelPtr model, const TargetSet& a, int radius, SolverOptions options = {});
Bracket compute_qbar(ModelPtr model, int radius, SolverOptions options = {});
Distance distance(ModelPtr model, const VertexId& x, const TargetSet& a, int radius);
bool check_qn_locality(ModelPtr model, const TargetSet& a, std::int64_t n, int radius);

/// Fixed points of G on a finite irreducible model, from `starts` random
/// points of L_G plus 0 and 1, clustered by centroid linkage.
struct FixedPointCluster {
  std::vector<double> centroid;
  double diameter = 0.0;
  std::int64_t members = 0;
};

struct FixedPointReport {
  std::vector<FixedPointCluster> clusters;
  std::int64_t starts_used = 0;
  std::int64_t rejected_samples = 0;
};

inline constexpr double kClusterRadius = 1e-8;

FixedPointReport enumerate_fixed_points_finite(const BranchingModel& model, int starts, std::uint64_t seed = 1);

}  // namespace brw
