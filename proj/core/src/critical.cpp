#include "brw/critical.hpp"

#include <cmath>

#include "brw/comb.hpp"
#include "brw/named_set.hpp"
#include "brw/solver.hpp"
#include "brw/tree.hpp"

namespace brw {

CriticalPair closed_form_tree(int m) {
  if (m < 3) throw InvalidArgument("tree degree m must be at least 3");
  return {"tree(" + std::to_string(m) + ")", 1.0 / m, 1.0 / (2.0 * std::sqrt(static_cast<double>(m - 1))),
          "closed-form", std::nullopt, ""};
}

CriticalPair closed_form_comb(int alpha) {
  if (alpha < 1) throw InvalidArgument("comb alpha must be at least 1");
  return {"comb(" + std::to_string(alpha) + ")", 1.0 / (alpha + 2),
          1.0 / (2.0 * std::sqrt(static_cast<double>(alpha + 1))), "closed-form", std::nullopt, ""};
}

CriticalPair closed_form(const BranchingModel& model) {
  if (auto t = dynamic_cast<const TreeGraph*>(&model)) return closed_form_tree(t->degree());
  if (dynamic_cast<const CombPrimeGraph*>(&model)) throw InvalidArgument("no closed form for the gadget comb");
  if (auto c = dynamic_cast<const CombGraph*>(&model)) return closed_form_comb(c->alpha());
  throw InvalidArgument("no closed-form critical values for family '" + model.family() + "'");
}

BisectionResult bisect_local_survival(const ModelFactory& make_model, double lambda_lo, double lambda_hi,
                                      int radius, double half_width_tol) {
  if (!(lambda_lo < lambda_hi)) throw InvalidArgument("bisection needs lambda_lo < lambda_hi");
  if (!(half_width_tol > 0.0)) throw InvalidArgument("bisection tolerance must be positive");
  BisectionResult r;
  r.lo = lambda_lo;
  r.hi = lambda_hi;
  SolverOptions opts;
  opts.tails = TailMode::Plain;
  auto locally_extinct = [&](double lambda) {
    ++r.evaluations;
    auto model = make_model(lambda);
    Solver solver(model, radius, opts);
    const auto root = model->root();
    const auto b = solver.q(point_set(*model, {root}));
    return b.upper_at(root) >= 1.0 - kLocalSurvivalSlack;
  };
  if (!locally_extinct(r.lo) || locally_extinct(r.hi)) {
    r.conclusive = false;
    r.caveat = "predicate does not change sign on the initial interval";
    return r;
  }
  while (r.half_width() > half_width_tol) {
    const double mid = r.midpoint();
    if (locally_extinct(mid)) {
      r.lo = mid;
    } else {
      r.hi = mid;
    }
  }
  r.caveat = "finite balls are locally subcritical slightly above lambda_s; the switch point is biased upward";
  return r;
}

}  // namespace brw
