#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "brw/model.hpp"

namespace brw {

struct CriticalPair {
  std::string family;
  double lambda_w = 0.0;
  double lambda_s = 0.0;
  std::string source;  // "closed-form" or "empirical-bisection"
  std::optional<std::pair<double, double>> interval;
  std::string caveat;
};

/// Tree T_m: (1/m, 1/(2 sqrt(m-1))). Comb(alpha): (1/(alpha+2), 1/(2 sqrt(alpha+1))).
CriticalPair closed_form_tree(int m);
CriticalPair closed_form_comb(int alpha);
/// Dispatches on tree and comb models (a loop has no closed form).
CriticalPair closed_form(const BranchingModel& model);

using ModelFactory = std::function<ModelPtr(double lambda)>;

struct BisectionResult {
  double lo = 0.0;
  double hi = 0.0;
  int evaluations = 0;
  bool conclusive = true;
  std::string caveat;
  double half_width() const { return 0.5 * (hi - lo); }
  double midpoint() const { return 0.5 * (lo + hi); }
};

inline constexpr double kLocalSurvivalSlack = 1e-4;

/// Bisection on "the upper bracket of q(o,{o}) at radius R is within 1e-4
/// of 1". Truncation hides survival in the far field, so the predicate
/// switches slightly above lambda_s and the interval is biased upward.
BisectionResult bisect_local_survival(const ModelFactory& make_model, double lambda_lo, double lambda_hi,
                                      int radius, double half_width_tol);

}  // namespace brw
