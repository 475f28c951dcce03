// brwx: command-line front end for the extinction solver, simulator,
// projection checks and named experiments.
//
// Exit codes: 0 on completion, 2 when a verdict or check is unresolved,
// 1 on errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "brw/critical.hpp"
#include "brw/experiments.hpp"
#include "brw/model_io.hpp"
#include "brw/montecarlo.hpp"
#include "brw/named_set.hpp"
#include "brw/projection.hpp"
#include "brw/records.hpp"

namespace fs = std::filesystem;
using namespace brw;

namespace {

struct ModelFlags {
  std::string file;
  std::string family;
  std::optional<int> m;
  std::optional<int> alpha;
  std::optional<double> lambda;
  std::optional<double> loop_rate;
  std::optional<int> resolution;

  void attach(CLI::App& app) {
    app.add_option("--model", file, "model JSON document")->check(CLI::ExistingFile);
    app.add_option("--family", family, "tree | comb | tree+loop (ignored with --model)");
    app.add_option("--m", m, "tree degree");
    app.add_option("--alpha", alpha, "comb parameter");
    app.add_option("--lambda", lambda, "breeding parameter (overrides the model file)");
    app.add_option("--loop-rate", loop_rate, "extra self rate at o");
    app.add_option("--resolution", resolution, "tree quotient depth K");
  }

  ModelSpec resolve(ModelSpec base) const {
    if (!file.empty()) base = load_model_spec(file);
    if (!family.empty() && file.empty()) base.family = family;
    if (m) base.m = *m;
    if (alpha) base.alpha = *alpha;
    if (lambda) base.lambda = *lambda;
    if (loop_rate) {
      base.loop_rate = *loop_rate;
      if (base.family == "tree") base.family = "tree+loop";
    }
    if (resolution) base.resolution = *resolution;
    return base;
  }
};

struct Output {
  std::string dir;
  std::string format = "json";

  void attach(CLI::App& app) {
    app.add_option("--out", dir, "directory for artifacts; stdout when absent");
    app.add_option("--format", format, "stdout format")->check(CLI::IsMember({"csv", "json"}));
  }

  /// Writes both artifacts to --out when given, and the selected one to stdout.
  void emit(const std::string& stem, const std::string& csv, const nlohmann::json& json) const {
    if (!dir.empty()) {
      fs::create_directories(dir);
      if (!csv.empty()) std::ofstream(fs::path(dir) / (stem + ".csv")) << csv;
      std::ofstream(fs::path(dir) / (stem + ".json")) << json.dump(2) << '\n';
    }
    if (format == "csv" && !csv.empty()) {
      std::cout << csv;
    } else {
      std::cout << json.dump(2) << '\n';
    }
  }
};

std::vector<int> parse_radii(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InvalidArgument("bad radius '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidArgument("empty radius schedule");
  return out;
}

std::string csv_of(std::span<const QRow> rows) {
  std::ostringstream os;
  write_q_table_csv(os, rows);
  return os.str();
}

int run_solve(ModelSpec model_spec, const std::string& radii, const std::string& set_tag,
              const std::vector<std::string>& watch_labels, const std::string& tails, const Output& out) {
  // Balls of the exact tree grow like 2^R; the quotient is exact for every set tag.
  if ((model_spec.family == "tree" || model_spec.family == "tree+loop") && !model_spec.resolution) {
    model_spec.resolution = 2;
  }
  const auto model = build_model(model_spec);
  const auto set = named_set(*model, set_tag);
  std::vector<VertexId> watch;
  for (const auto& l : watch_labels) watch.push_back(model->parse(l));
  if (watch.empty()) watch.push_back(model->root());
  SolverOptions opts;
  opts.tails = tails == "plain" ? TailMode::Plain : TailMode::Refined;

  std::vector<QRow> rows;
  nlohmann::json runs = nlohmann::json::array();
  bool converged = true;
  for (const int r : parse_radii(radii)) {
    Solver solver(model, r, opts);
    const auto b = set.is_full() ? solver.qbar() : solver.q(set);
    converged = converged && b.converged;
    for (const auto& w : watch) rows.push_back(q_row(b, w, model->format(w)));
    runs.push_back(bracket_record(b, *model, watch));
  }
  nlohmann::json doc{{"model", to_json(model_spec)}, {"solver", to_json(opts)},
                     {"version", std::string(library_version())}, {"runs", std::move(runs)}};
  out.emit("solve", csv_of(rows), doc);
  return converged ? 0 : 2;
}

int run_simulate(const ModelSpec& model_spec, SimConfig cfg, const std::string& set_tag, const std::string& start,
                 const Output& out) {
  const auto model = build_model(model_spec);
  const auto x0 = start.empty() ? model->root() : model->parse(start);
  std::vector<TrialRecord> records;
  Estimate est;
  std::string event;
  if (set_tag.empty()) {
    est = estimate_extinction(*model, x0, cfg, &records);
    event = "extinct";
  } else {
    const auto set = named_set(*model, set_tag);
    est = estimate_no_hit(*model, x0, set, cfg.max_generations, cfg, &records);
    event = "no_hit:" + set.name();
  }
  std::ostringstream csv;
  write_trials_csv(csv, records);
  nlohmann::json doc{{"model", to_json(model_spec)},
                     {"start", model->format(x0)},
                     {"event", event},
                     {"trials", est.trials},
                     {"successes", est.successes},
                     {"censored", est.censored},
                     {"low", est.low()},
                     {"high", est.high()},
                     {"std_error", est.std_error()},
                     {"seed", cfg.seed},
                     {"generations", cfg.max_generations},
                     {"particle_cap", cfg.particle_cap},
                     {"rng", CounterRng::kName},
                     {"version", std::string(library_version())}};
  out.emit("simulate", csv.str(), doc);
  return 0;
}

int run_critical(const ModelSpec& model_spec, const std::vector<double>& bracket, int radius, double tol,
                 const Output& out) {
  const auto model = build_model(model_spec);
  nlohmann::json doc;
  std::optional<CriticalPair> exact;
  try {
    exact = closed_form(*model);
    doc["closed_form"] = to_json(*exact);
  } catch (const InvalidArgument& e) {
    doc["closed_form"] = nullptr;
    doc["closed_form_error"] = e.what();
  }
  int code = 0;
  if (!bracket.empty()) {
    if (bracket.size() != 2) throw InvalidArgument("--bisect takes lo,hi");
    auto factory = [model_spec](double lambda) {
      auto s = model_spec;
      s.lambda = lambda;
      if ((s.family == "tree" || s.family == "tree+loop") && !s.resolution) s.resolution = 2;
      return build_model(s);
    };
    const auto res = bisect_local_survival(factory, bracket[0], bracket[1], radius, tol);
    CriticalPair empirical{exact ? exact->family : model->family(),
                           exact ? exact->lambda_w : 0.0,
                           res.midpoint(),
                           "empirical-bisection",
                           std::pair{res.lo, res.hi},
                           res.caveat};
    doc["bisection"] = to_json(empirical);
    doc["bisection"]["R"] = radius;
    doc["bisection"]["evaluations"] = res.evaluations;
    doc["bisection"]["conclusive"] = res.conclusive;
    if (!res.conclusive) code = 2;
  }
  doc["version"] = std::string(library_version());
  out.emit("critical", "", doc);
  return code;
}

int run_project_check(const std::string& map_name, const ModelSpec& model_spec, int radius, std::int64_t samples,
                      std::uint64_t seed, int tooth, bool transport, const Output& out) {
  ProjectionMap map;
  if (map_name == "tree-comb") {
    map = tree_to_comb(std::make_shared<TreeGraph>(model_spec.m, model_spec.lambda, model_spec.resolution));
  } else if (map_name == "comb-singleton") {
    map = comb_to_singleton(std::make_shared<CombGraph>(model_spec.alpha, model_spec.lambda));
  } else {
    map = gadget_to_comb(std::make_shared<CombPrimeGraph>(model_spec.alpha, model_spec.lambda, tooth));
  }
  auto rep = check_projection(map, radius);
  if (samples > 0) rep.tv_distance = fibre_law_tv(map, map.source->root(), samples, seed);
  auto doc = to_json(rep, *map.source, *map.target);
  if (transport) {
    const auto t = check_q_transport(map, TargetSet::full(), TargetSet::full(), map.source->root(), radius, radius);
    doc["q_transport"] = to_json(t);
    doc["q_transport"]["set"] = "X";
  }
  doc["version"] = std::string(library_version());
  out.emit("project-check", "", doc);
  const bool ok = rep.exact_pass && (!transport || doc["q_transport"]["overlap"].get<bool>());
  return ok ? 0 : 2;
}

int run_named_experiment(const std::string& name, const ModelFlags& flags, const std::string& radii,
                         std::optional<std::int64_t> n_max, const std::string& i1, const std::string& i2,
                         std::optional<int> starts, std::uint64_t seed, const std::string& tails, const Output& out) {
  auto spec = default_spec(name);
  spec.model = flags.resolve(spec.model);
  if (!radii.empty()) spec.radii = parse_radii(radii);
  if (n_max) spec.n_max = *n_max;
  if (!i1.empty()) spec.first = IndexSet::parse(i1);
  if (!i2.empty()) spec.second = IndexSet::parse(i2);
  if (starts) spec.starts = *starts;
  spec.seed = seed;
  if (tails == "plain") spec.solver.tails = TailMode::Plain;
  const auto result = run_experiment(spec);
  out.emit(name, csv_of(result.table), result.report);
  if (!result.hint.empty()) std::cerr << name << ": " << result.hint << '\n';
  return exit_code(result.verdict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extinction probabilities of branching random walks"};
  app.require_subcommand(1);
  int code = 0;

  ModelFlags model_flags;
  Output output;
  std::string radii = "30";
  std::uint64_t seed = 1;
  std::string tails = "refined";

  auto* solve = app.add_subcommand("solve", "bracket q(., A) on a ball");
  model_flags.attach(*solve);
  output.attach(*solve);
  std::string set_tag = "full";
  std::vector<std::string> watch;
  solve->add_option("--radius", radii, "radius or comma-separated schedule");
  solve->add_option("--set", set_tag, "target set tag, e.g. full, point:o, Ty:1, union-Tx:2..30, V:1");
  solve->add_option("--watch", watch, "vertex labels to report (default: the root)");
  solve->add_option("--tails", tails, "boundary treatment")->check(CLI::IsMember({"plain", "refined"}));

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo trials");
  model_flags.attach(*simulate);
  output.attach(*simulate);
  SimConfig sim;
  std::string sim_set;
  std::string start;
  simulate->add_option("--seed", seed, "base seed");
  simulate->add_option("--trials", sim.trials, "number of trials")->check(CLI::PositiveNumber);
  simulate->add_option("--generations", sim.max_generations, "horizon")->check(CLI::PositiveNumber);
  simulate->add_option("--particle-cap", sim.particle_cap, "censor trials above this population")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--threads", sim.threads, "worker threads (0: hardware)");
  simulate->add_option("--set", sim_set, "estimate P(no particle in the set) instead of extinction");
  simulate->add_option("--start", start, "starting vertex label (default: the root)");

  auto* critical = app.add_subcommand("critical", "critical parameters");
  model_flags.attach(*critical);
  output.attach(*critical);
  std::vector<double> bisect;
  int crit_radius = 25;
  double crit_tol = 0.02;
  critical->add_option("--bisect", bisect, "lo,hi for the local-survival bisection")->delimiter(',');
  critical->add_option("--radius", crit_radius, "ball radius for the bisection");
  critical->add_option("--tol", crit_tol, "target half-width");

  auto* project = app.add_subcommand("project-check", "verify a projection map");
  model_flags.attach(*project);
  output.attach(*project);
  std::string map_name = "tree-comb";
  int proj_radius = 20;
  std::int64_t samples = 100'000;
  int tooth = 1;
  bool transport = false;
  project->add_option("--map", map_name, "map")->check(CLI::IsMember({"tree-comb", "comb-singleton", "gadget"}));
  project->add_option("--radius", proj_radius, "ball radius");
  project->add_option("--trials", samples, "offspring samples for the fibre-law check (0 skips)");
  project->add_option("--seed", seed, "sampling seed");
  project->add_option("--tooth", tooth, "tooth carrying the gadget");
  project->add_flag("--transport", transport, "also compare q-bar brackets across the map");

  auto* experiment = app.add_subcommand("experiment", "run a named experiment");
  model_flags.attach(*experiment);
  output.attach(*experiment);
  std::string exp_name;
  std::string exp_radii;
  std::optional<std::int64_t> n_max;
  std::string i1;
  std::string i2;
  std::optional<int> starts;
  experiment->add_option("name", exp_name, "experiment name")->required()->check(CLI::IsMember(experiment_names()));
  experiment->add_option("--radius", exp_radii, "R schedule, e.g. 20,30,40,50");
  experiment->add_option("--n-max", n_max, "largest spine index");
  experiment->add_option("--i1", i1, "first index set, e.g. 1 or 2..30");
  experiment->add_option("--i2", i2, "second index set");
  experiment->add_option("--starts", starts, "random starts for finite models");
  experiment->add_option("--seed", seed, "seed");
  experiment->add_option("--tails", tails, "boundary treatment")->check(CLI::IsMember({"plain", "refined"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    ModelSpec base;
    if (solve->parsed()) {
      code = run_solve(model_flags.resolve(base), radii, set_tag, watch, tails, output);
    } else if (simulate->parsed()) {
      sim.seed = seed;
      code = run_simulate(model_flags.resolve(base), sim, sim_set, start, output);
    } else if (critical->parsed()) {
      code = run_critical(model_flags.resolve(base), bisect, crit_radius, crit_tol, output);
    } else if (project->parsed()) {
      auto spec = model_flags.resolve(base);
      if (map_name != "tree-comb" && !model_flags.alpha) spec.alpha = 1;
      code = run_project_check(map_name, spec, proj_radius, samples, seed, tooth, transport, output);
    } else if (experiment->parsed()) {
      code = run_named_experiment(exp_name, model_flags, exp_radii, n_max, i1, i2, starts, seed, tails, output);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return code;
}
