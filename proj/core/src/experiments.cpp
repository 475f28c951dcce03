#include "brw/experiments.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <numeric>

#include "brw/critical.hpp"
#include "brw/projection.hpp"
#include "brw/rng.hpp"

namespace brw {

namespace {

constexpr int kDefaultTreeResolution = 2;
constexpr double kStrictSlack = 1e-9;

struct Interval {
  double lo;
  double hi;
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

Interval at(const Bracket& b, const VertexId& v) { return {b.lower_at(v), b.upper_at(v)}; }

bool meet(const Interval& a, const Interval& b) { return std::max(a.lo, b.lo) <= std::min(a.hi, b.hi); }

ModelSpec effective_model(const ExperimentSpec& spec) {
  ModelSpec m = spec.model;
  if ((m.family == "tree" || m.family == "tree+loop") && !m.resolution) m.resolution = kDefaultTreeResolution;
  return m;
}

/// One solver per radius, one thread per target set.
std::vector<Bracket> solve_all(const Solver& solver, const std::vector<TargetSet>& sets) {
  std::vector<std::future<Bracket>> jobs;
  jobs.reserve(sets.size());
  for (const auto& a : sets) {
    jobs.push_back(std::async(std::launch::async, [&solver, &a] { return a.is_full() ? solver.qbar() : solver.q(a); }));
  }
  std::vector<Bracket> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

const TreeGraph& require_tree(const BranchingModel& model, std::string_view experiment) {
  const auto* t = as_tree(model);
  if (!t) throw InvalidArgument(std::string(experiment) + " needs a tree model, got '" + model.family() + "'");
  return *t;
}

const CombGraph& require_comb(const BranchingModel& model, std::string_view experiment) {
  const auto* c = as_comb(model);
  if (!c) throw InvalidArgument(std::string(experiment) + " needs a comb model, got '" + model.family() + "'");
  return *c;
}

std::string regime(const BranchingModel& model, double lambda) {
  try {
    const auto base = as_tree(model) ? closed_form_tree(as_tree(model)->degree())
                                     : closed_form_comb(require_comb(model, "regime").alpha());
    if (lambda <= base.lambda_w) return "below-lambda_w";
    if (lambda <= base.lambda_s) return "intermediate";
    return "above-lambda_s";
  } catch (const InvalidArgument&) {
    return "unknown";
  }
}

nlohmann::json provenance(const ExperimentSpec& spec, const ModelSpec& model) {
  nlohmann::json p;
  p["model"] = to_json(model);
  p["radii"] = spec.radii;
  p["solver"] = to_json(spec.solver);
  p["equal_tolerance"] = spec.equal_tolerance;
  p["n_max"] = spec.n_max;
  p["I1"] = spec.first.to_string();
  p["I2"] = spec.second.to_string();
  p["starts"] = spec.starts;
  p["seed"] = spec.seed;
  p["rng"] = CounterRng::kName;
  p["version"] = std::string(library_version());
  return p;
}

using Step = std::function<Verdict(int radius, ExperimentResult& result, nlohmann::json& run)>;

/// Runs `step` over the radius schedule until a certified verdict.
ExperimentResult escalate(const ExperimentSpec& spec, const std::string& knob, const Step& step) {
  validate(spec);
  const auto model = effective_model(spec);
  ExperimentResult r;
  r.name = spec.name;
  r.report["experiment"] = spec.name;
  r.report["provenance"] = provenance(spec, model);
  r.report["runs"] = nlohmann::json::array();
  for (const int radius : spec.radii) {
    nlohmann::json run;
    run["R"] = radius;
    r.brackets.clear();
    r.radius = radius;
    r.verdict = step(radius, r, run);
    run["verdict"] = std::string(to_string(r.verdict));
    r.report["runs"].push_back(std::move(run));
    if (r.verdict != Verdict::Unresolved) break;
  }
  r.report["verdict"] = std::string(to_string(r.verdict));
  r.report["R"] = r.radius;
  if (r.verdict == Verdict::Unresolved) {
    r.hint = "unresolved up to R=" + std::to_string(r.radius) + "; " + knob;
    r.report["hint"] = r.hint;
  }
  bool ok = true;
  for (const auto& b : r.brackets) ok = ok && sandwiched(b);
  r.report["sandwich"] = ok;
  return r;
}

nlohmann::json records(const std::vector<Bracket>& brackets, const BranchingModel& model, const VertexId& watch) {
  auto out = nlohmann::json::array();
  const VertexId w[] = {watch};
  for (const auto& b : brackets) out.push_back(bracket_record(b, model, w));
  return out;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedDistinct:
      return "certified-distinct";
    case Verdict::CertifiedEqualWithin:
      return "certified-equal-within";
    case Verdict::Unresolved:
      return "unresolved";
  }
  return "unresolved";
}

int exit_code(Verdict v) { return v == Verdict::Unresolved ? 2 : 0; }

Verdict compare_intervals(double lo1, double hi1, double lo2, double hi2, double equal_tolerance) {
  if (hi1 < lo2 || hi2 < lo1) return Verdict::CertifiedDistinct;
  if (hi1 - lo1 <= equal_tolerance && hi2 - lo2 <= equal_tolerance) return Verdict::CertifiedEqualWithin;
  return Verdict::Unresolved;
}

bool sandwiched(const Bracket& b) {
  const auto& lo = b.lower.values();
  const auto& hi = b.upper.values();
  if (lo.size() != hi.size()) return false;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(0.0 <= lo[i] && lo[i] <= hi[i] && hi[i] <= 1.0)) return false;
  }
  return true;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"lemma-countable", "uncountable",  "line-extinction",
                                              "loop",            "comb",         "boundary-counterexample",
                                              "finite-two-points"};
  return names;
}

ExperimentSpec default_spec(std::string_view name) {
  ExperimentSpec s;
  s.name = std::string(name);
  s.model.family = "tree";
  s.model.m = 3;
  s.model.lambda = 0.35;
  s.radii = {20, 30, 40};
  if (name == "lemma-countable") {
    s.radii = {20, 30, 40, 50};
  } else if (name == "line-extinction") {
    s.n_max = 4;
  } else if (name == "loop") {
    s.model.family = "tree+loop";
    s.model.loop_rate = 2.0;
  } else if (name == "comb") {
    s.model.family = "comb";
    s.model.alpha = 1;
  } else if (name == "finite-two-points") {
    s.model.family = "finite";
    s.model.lambda = 0.0;
    s.model.explicit_laws = nlohmann::json::parse(
        R"([{"vertex":0,"outcomes":[{"p":0.25,"children":[]},{"p":0.75,"children":[[0,2]]}]}])");
    s.radii = {};
  } else if (std::find(experiment_names().begin(), experiment_names().end(), name) == experiment_names().end()) {
    throw InvalidArgument("unknown experiment '" + std::string(name) + "'");
  }
  return s;
}

void validate(const ExperimentSpec& spec) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), spec.name) == names.end()) {
    throw InvalidArgument("unknown experiment '" + spec.name + "'");
  }
  if (spec.name != "finite-two-points") {
    if (spec.radii.empty()) throw InvalidArgument("radius schedule is empty");
    if (spec.radii.front() < 1) throw InvalidArgument("radii must be positive");
    if (std::adjacent_find(spec.radii.begin(), spec.radii.end(), std::greater_equal<>()) != spec.radii.end()) {
      throw InvalidArgument("radius schedule must be strictly increasing");
    }
  }
  if (spec.n_max < 0) throw InvalidArgument("n_max must be nonnegative");
  if (!(spec.equal_tolerance > 0.0)) throw InvalidArgument("equal tolerance must be positive");
  if (spec.name == "uncountable" || spec.name == "comb") {
    if (spec.first.empty() || spec.second.empty()) throw InvalidArgument("I1 and I2 must be nonempty");
    if (spec.first.dyadic() == spec.second.dyadic()) {
      throw InvalidArgument("I1 and I2 have equal binary values " + spec.first.to_string());
    }
  }
  if (spec.name == "finite-two-points" && spec.starts < 1) throw InvalidArgument("starts must be positive");
}

ExperimentResult exp_lemma_countable(const ExperimentSpec& spec) {
  const auto model = build_model(effective_model(spec));
  const auto& tree = require_tree(*model, spec.name);
  const auto o = model->root();
  auto r = escalate(spec, "raise the largest radius in --radius", [&](int radius, ExperimentResult& res,
                                                                       nlohmann::json& run) {
    Solver solver(model, radius, spec.solver);
    std::vector<TargetSet> sets;
    for (std::int64_t n = 0; n <= spec.n_max; ++n) sets.push_back(tree_Ty(tree, n));
    sets.push_back(TargetSet::full());
    auto brackets = solve_all(solver, sets);
    const auto& qbar = brackets.back();
    for (std::int64_t n = 0; n <= spec.n_max; ++n) {
      res.table.push_back(q_row(brackets[static_cast<std::size_t>(n)], o, std::to_string(n)));
    }
    res.table.push_back(q_row(qbar, o, "qbar"));

    bool all_strict = spec.n_max > 0;
    auto pairs = nlohmann::json::array();
    for (std::int64_t n = 0; n < spec.n_max; ++n) {
      const auto a = at(brackets[static_cast<std::size_t>(n)], o);
      const auto b = at(brackets[static_cast<std::size_t>(n + 1)], o);
      const bool strict = a.hi < b.lo;
      all_strict = all_strict && strict;
      pairs.push_back({{"n", n}, {"m", n + 1}, {"status", strict ? "strict" : "unresolved"}});
    }
    bool all_meet = true;
    double widest = 0.0;
    for (std::size_t i = 0; i < brackets.size(); ++i) {
      widest = std::max(widest, at(brackets[i], o).width());
      for (std::size_t j = i + 1; j < brackets.size(); ++j) {
        all_meet = all_meet && meet(at(brackets[i], o), at(brackets[j], o));
      }
    }
    run["regime"] = regime(*model, spec.model.lambda);
    run["pairs"] = std::move(pairs);
    run["n0_matches_qbar"] = meet(at(brackets.front(), o), at(qbar, o));
    run["brackets"] = records(brackets, *model, o);
    res.brackets = std::move(brackets);
    if (all_strict) return Verdict::CertifiedDistinct;
    if (all_meet && widest <= spec.equal_tolerance) return Verdict::CertifiedEqualWithin;
    return Verdict::Unresolved;
  });
  return r;
}

ExperimentResult exp_uncountable(const ExperimentSpec& spec) {
  validate(spec);
  const auto model = build_model(effective_model(spec));
  const auto& tree = require_tree(*model, spec.name);
  const auto o = model->root();
  return escalate(spec, "raise the largest radius in --radius", [&](int radius, ExperimentResult& res,
                                                                     nlohmann::json& run) {
    Solver solver(model, radius, spec.solver);
    const std::vector<TargetSet> sets{tree_union_Tx(tree, spec.first), tree_union_Tx(tree, spec.second),
                                      tree_Tx(tree, 1), tree_union_Tx_range(tree, 2, radius)};
    auto brackets = solve_all(solver, sets);
    res.table.push_back(q_row(brackets[0], o, spec.first.to_string()));
    res.table.push_back(q_row(brackets[1], o, spec.second.to_string()));
    res.table.push_back(q_row(brackets[2], o, "1"));
    res.table.push_back(q_row(brackets[3], o, "2.." + std::to_string(radius)));

    const auto a = at(brackets[0], o);
    const auto b = at(brackets[1], o);
    const bool distinct = a.hi < b.lo || b.hi < a.lo;
    const auto t1 = at(brackets[2], o);
    const auto tail = at(brackets[3], o);
    run["dyadic_I1"] = spec.first.dyadic();
    run["dyadic_I2"] = spec.second.dyadic();
    if (distinct) run["smaller"] = a.hi < b.lo ? "I1" : "I2";
    run["identity"] = {{"difference", std::abs(t1.mid() - tail.mid())},
                       {"width_sum", t1.width() + tail.width()},
                       {"holds", std::abs(t1.mid() - tail.mid()) <= t1.width() + tail.width()},
                       {"brackets_meet", meet(t1, tail)},
                       {"truncation_bias", "up: indices above R are dropped, which can only raise q"}};
    run["brackets"] = records(brackets, *model, o);
    res.brackets = std::move(brackets);
    return distinct ? Verdict::CertifiedDistinct : Verdict::Unresolved;
  });
}

ExperimentResult exp_line_extinction(const ExperimentSpec& spec) {
  const auto model = build_model(effective_model(spec));
  const auto& tree = require_tree(*model, spec.name);
  const auto o = model->root();
  return escalate(spec, "raise the largest radius in --radius", [&](int radius, ExperimentResult& res,
                                                                     nlohmann::json& run) {
    Solver solver(model, radius, spec.solver);
    std::vector<TargetSet> sets;
    for (std::int64_t n = 1; n <= std::max<std::int64_t>(spec.n_max, 1); ++n) sets.push_back(tree_Ty(tree, n));
    sets.push_back(tree_spine(tree));
    sets.push_back(TargetSet::full());
    auto brackets = solve_all(solver, sets);
    const std::size_t count = brackets.size() - 2;
    const auto qbar = at(brackets.back(), o);
    auto lowers = nlohmann::json::array();
    bool monotone = true;
    bool flat = true;
    for (std::size_t k = 0; k < count; ++k) {
      const auto iv = at(brackets[k], o);
      res.table.push_back(q_row(brackets[k], o, std::to_string(k + 1)));
      lowers.push_back(iv.lo);
      if (k > 0) monotone = monotone && iv.lo >= at(brackets[k - 1], o).lo - kStrictSlack;
      flat = flat && meet(iv, qbar) && iv.width() <= spec.equal_tolerance;
    }
    res.table.push_back(q_row(brackets[count], o, "spine"));
    res.table.push_back(q_row(brackets.back(), o, "qbar"));
    const bool above = at(brackets.front(), o).lo > qbar.hi;
    run["lower_brackets"] = std::move(lowers);
    run["monotone"] = monotone;
    run["above_qbar"] = above;
    run["gap_to_one"] = 1.0 - at(brackets[count - 1], o).lo;
    run["spine"] = {at(brackets[count], o).lo, at(brackets[count], o).hi};
    run["brackets"] = records(brackets, *model, o);
    res.brackets = std::move(brackets);
    if (monotone && above) return Verdict::CertifiedDistinct;
    if (flat && qbar.width() <= spec.equal_tolerance) return Verdict::CertifiedEqualWithin;
    return Verdict::Unresolved;
  });
}

ExperimentResult exp_loop(const ExperimentSpec& spec) {
  const auto model = build_model(effective_model(spec));
  const auto& tree = require_tree(*model, spec.name);
  const auto o = model->root();
  return escalate(spec, "raise the largest radius in --radius or the loop rate", [&](int radius,
                                                                                      ExperimentResult& res,
                                                                                      nlohmann::json& run) {
    Solver solver(model, radius, spec.solver);
    std::vector<TargetSet> sets{point_set(*model, {o}, "{o}")};
    for (std::int64_t n = 0; n <= 2; ++n) sets.push_back(tree_Ty(tree, n));
    auto brackets = solve_all(solver, sets);
    res.table.push_back(q_row(brackets[0], o, "o"));
    for (std::size_t n = 0; n <= 2; ++n) res.table.push_back(q_row(brackets[n + 1], o, std::to_string(n)));
    const bool local_survival = at(brackets[0], o).hi < 1.0 - kStrictSlack;
    bool ordered = true;
    for (std::size_t n = 1; n < 3; ++n) ordered = ordered && at(brackets[n], o).hi < at(brackets[n + 1], o).lo;
    run["loop_rate"] = spec.model.loop_rate.value_or(0.0);
    run["local_survival"] = local_survival;
    run["ordering_strict"] = ordered;
    run["brackets"] = records(brackets, *model, o);
    res.brackets = std::move(brackets);
    return local_survival && ordered ? Verdict::CertifiedDistinct : Verdict::Unresolved;
  });
}

ExperimentResult exp_comb(const ExperimentSpec& spec) {
  validate(spec);
  const auto model = build_model(effective_model(spec));
  const auto& comb = require_comb(*model, spec.name);
  const auto o = model->root();
  std::vector<std::int64_t> first_teeth;
  for (const int i : spec.first.indices()) first_teeth.push_back(i);
  return escalate(spec, "raise the largest radius in --radius", [&](int radius, ExperimentResult& res,
                                                                     nlohmann::json& run) {
    Solver solver(model, radius, spec.solver);
    std::vector<std::int64_t> tail_teeth;
    for (std::int64_t i = 2; i <= radius; ++i) tail_teeth.push_back(i);
    const std::vector<TargetSet> sets{comb_union_V(comb, spec.first), comb_union_V(comb, spec.second),
                                      comb_teeth(comb, {1}), comb_teeth(comb, tail_teeth)};
    auto brackets = solve_all(solver, sets);
    res.table.push_back(q_row(brackets[0], o, spec.first.to_string()));
    res.table.push_back(q_row(brackets[1], o, spec.second.to_string()));
    res.table.push_back(q_row(brackets[2], o, "1"));
    res.table.push_back(q_row(brackets[3], o, "2.." + std::to_string(radius)));
    const auto a = at(brackets[0], o);
    const auto b = at(brackets[1], o);
    const bool distinct = a.hi < b.lo || b.hi < a.lo;
    const auto t1 = at(brackets[2], o);
    const auto tail = at(brackets[3], o);
    if (distinct) run["smaller"] = a.hi < b.lo ? "I1" : "I2";
    run["identity"] = {{"difference", std::abs(t1.mid() - tail.mid())},
                       {"width_sum", t1.width() + tail.width()},
                       {"holds", std::abs(t1.mid() - tail.mid()) <= t1.width() + tail.width()},
                       {"brackets_meet", meet(t1, tail)},
                       {"truncation_bias", "up: teeth above R are dropped, which can only raise q"}};

    auto tree = std::make_shared<TreeGraph>(comb.alpha() + 2, comb.lambda(), kDefaultTreeResolution);
    const auto map = tree_to_comb(tree);
    const auto transport = check_q_transport(map, tree_fibres(*tree, first_teeth),
                                             comb_union_V(*as_comb(*map.target), spec.first), tree->root(), radius,
                                             radius);
    run["transport"] = to_json(transport);
    run["brackets"] = records(brackets, *model, o);
    res.brackets = std::move(brackets);
    res.brackets.push_back(transport.source);
    res.brackets.push_back(transport.target);
    return distinct ? Verdict::CertifiedDistinct : Verdict::Unresolved;
  });
}

ExperimentResult exp_boundary_counterexample(const ExperimentSpec& spec) {
  const auto model = build_model(effective_model(spec));
  const auto& tree = require_tree(*model, spec.name);
  const auto o = model->root();
  const auto s = tree.vertex(0, {0, 0});
  const auto v = tree.vertex(0, {0, 1});
  const auto x2 = tree.branch_root(2);
  return escalate(spec, "raise the largest radius in --radius", [&](int radius, ExperimentResult& res,
                                                                     nlohmann::json& run) {
    Solver solver(model, radius, spec.solver);
    const std::vector<TargetSet> sets{tree_subtrees(tree, {s, v}, "T_s+T_v"), tree_subtrees(tree, {v, x2}, "T_v+T_x2"),
                                      TargetSet::full()};
    auto brackets = solve_all(solver, sets);
    res.table.push_back(q_row(brackets[0], o, "s,v"));
    res.table.push_back(q_row(brackets[1], o, "v,x2"));
    res.table.push_back(q_row(brackets[2], o, "qbar"));
    const auto a = at(brackets[0], o);
    const auto b = at(brackets[1], o);
    const auto qbar = at(brackets[2], o);
    run["s"] = tree.format(s);
    run["v"] = tree.format(v);
    run["at_most_one"] = a.lo <= 1.0 && b.lo <= 1.0;
    run["above_qbar"] = a.hi >= qbar.lo && b.hi >= qbar.lo;
    const bool distinct = a.hi < b.lo || b.hi < a.lo;
    if (distinct) run["smaller"] = a.hi < b.lo ? "T_s+T_v" : "T_v+T_x2";
    run["brackets"] = records(brackets, *model, o);
    res.brackets = std::move(brackets);
    return distinct ? Verdict::CertifiedDistinct : Verdict::Unresolved;
  });
}

ExperimentResult exp_finite_two_points(const ExperimentSpec& spec) {
  validate(spec);
  const auto model_spec = effective_model(spec);
  const auto model = build_model(model_spec);
  ExperimentResult r;
  r.name = spec.name;
  r.report["experiment"] = spec.name;
  r.report["provenance"] = provenance(spec, model_spec);
  const auto rep = enumerate_fixed_points_finite(*model, spec.starts, spec.seed);
  auto clusters = nlohmann::json::array();
  for (std::size_t k = 0; k < rep.clusters.size(); ++k) {
    const auto& c = rep.clusters[k];
    clusters.push_back({{"centroid", c.centroid}, {"diameter", c.diameter}, {"members", c.members}});
    for (std::size_t i = 0; i < c.centroid.size(); ++i) {
      r.table.push_back({"fixed_point_" + std::to_string(k), "v" + std::to_string(i), 0, c.centroid[i],
                         c.centroid[i], true});
    }
  }
  r.report["clusters"] = std::move(clusters);
  r.report["count"] = rep.clusters.size();
  r.report["starts_used"] = rep.starts_used;
  r.report["rejected_samples"] = rep.rejected_samples;
  r.report["cluster_radius"] = kClusterRadius;
  switch (rep.clusters.size()) {
    case 1:
      r.verdict = Verdict::CertifiedEqualWithin;
      break;
    case 2:
      r.verdict = Verdict::CertifiedDistinct;
      break;
    default:
      r.verdict = Verdict::Unresolved;
      r.hint = "more than two clusters; raise the number of starts or check that iterations converged";
      r.report["hint"] = r.hint;
  }
  r.report["verdict"] = std::string(to_string(r.verdict));
  return r;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  if (spec.name == "lemma-countable") return exp_lemma_countable(spec);
  if (spec.name == "uncountable") return exp_uncountable(spec);
  if (spec.name == "line-extinction") return exp_line_extinction(spec);
  if (spec.name == "loop") return exp_loop(spec);
  if (spec.name == "comb") return exp_comb(spec);
  if (spec.name == "boundary-counterexample") return exp_boundary_counterexample(spec);
  return exp_finite_two_points(spec);
}

}  // namespace brw
