#pragma once

#include <cstdint>

#include "brw/law.hpp"
#include "brw/system.hpp"

namespace brw {

inline constexpr double kFixedPointTol = 1e-9;

/// G(z|x) for a single law. Every vertex the law references must be
/// resolvable in z (ball or boundary layer).
double eval_genfun(const Law& law, const ProbVector& z);
double eval_genfun(const ExplicitLaw& law, const ProbVector& z);
double eval_genfun(const RateLaw& law, const ProbVector& z);

struct PointClass {
  bool in_upper = false;  // G(z) <= z + tol everywhere (U_G)
  bool in_lower = false;  // G(z) >= z - tol everywhere (L_G)
  bool fixed() const { return in_upper && in_lower; }
};

PointClass classify_point(const CompiledSystem& system, const ProbVector& z, double tol = kFixedPointTol);

struct IterationTrace {
  std::int64_t steps = 0;
  bool nondecreasing = true;  // every sweep satisfied z_{k+1} >= z_k
  bool nonincreasing = true;
};

/// z_n = G^n(z_0) with z_0's boundary policy held fixed. Double-buffered.
ProbVector iterate_map(const CompiledSystem& system, const ProbVector& z0, std::int64_t steps,
                       IterationTrace* trace = nullptr);

}  // namespace brw
