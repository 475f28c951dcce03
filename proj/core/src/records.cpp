#include "brw/records.hpp"

#include <charconv>
#include <ostream>

namespace brw {

std::string_view library_version() { return BRW_VERSION_STRING; }

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return {buf, res.ptr};
}

nlohmann::json bracket_record(const Bracket& b, const BranchingModel& model, std::span<const VertexId> watch) {
  nlohmann::json j;
  j["set_name"] = b.set_name;
  j["R"] = b.radius;
  j["iterations"] = b.iterations;
  j["converged"] = b.converged;
  auto w = nlohmann::json::array();
  double width = 0.0;
  for (const auto& v : watch) {
    w.push_back({{"vertex", model.format(v)}, {"lower", b.lower_at(v)}, {"upper", b.upper_at(v)}});
    width = std::max(width, b.width_at(v));
  }
  j["watch"] = std::move(w);
  j["width"] = width;
  j["width_all"] = b.width();
  return j;
}

QRow q_row(const Bracket& b, const VertexId& at, std::string n_or_index) {
  return {b.set_name, std::move(n_or_index), b.radius, b.lower_at(at), b.upper_at(at), b.converged};
}

void write_q_table_csv(std::ostream& out, std::span<const QRow> rows) {
  out << "set_name,n_or_index,R,lower,upper,width,converged\n";
  for (const auto& r : rows) {
    out << r.set_name << ',' << r.n_or_index << ',' << r.radius << ',' << format_real(r.lower) << ','
        << format_real(r.upper) << ',' << format_real(r.width()) << ',' << (r.converged ? 1 : 0) << '\n';
  }
}

nlohmann::json to_json(const QRow& r) {
  return {{"set_name", r.set_name}, {"n_or_index", r.n_or_index}, {"R", r.radius}, {"lower", r.lower},
          {"upper", r.upper},       {"width", r.width()},          {"converged", r.converged}};
}

nlohmann::json to_json(const ProjectionReport& rep, const BranchingModel& source, const BranchingModel& target) {
  nlohmann::json j;
  j["map_name"] = rep.map_name;
  j["R"] = rep.radius;
  j["exact_pass"] = rep.exact_pass;
  j["surjective"] = rep.surjective;
  j["rows_checked"] = rep.rows_checked;
  j["tv_distance"] = rep.tv_distance ? nlohmann::json(*rep.tv_distance) : nlohmann::json();
  if (rep.violation) {
    const auto& v = *rep.violation;
    j["violation"] = {{"x", source.format(v.x)},
                      {"y", target.format(v.y)},
                      {"fibre_sum", boost::rational_cast<double>(v.lhs)},
                      {"target_rate", boost::rational_cast<double>(v.rhs)},
                      {"describe", v.describe}};
  }
  return j;
}

nlohmann::json to_json(const TransportReport& rep) {
  const auto& s = rep.source;
  const auto& t = rep.target;
  return {{"set", rep.set_name},
          {"overlap", rep.overlap},
          {"converged", rep.conclusive},
          {"source", {s.lower_at(rep.source_vertex), s.upper_at(rep.source_vertex)}},
          {"target", {t.lower_at(rep.target_vertex), t.upper_at(rep.target_vertex)}},
          {"source_R", s.radius},
          {"target_R", t.radius}};
}

nlohmann::json to_json(const CriticalPair& p) {
  nlohmann::json j{{"family", p.family}, {"lambda_w", p.lambda_w}, {"lambda_s", p.lambda_s}, {"source", p.source}};
  if (p.interval) j["interval"] = {p.interval->first, p.interval->second};
  if (!p.caveat.empty()) j["caveat"] = p.caveat;
  return j;
}

nlohmann::json to_json(const BisectionResult& r) {
  return {{"interval", {r.lo, r.hi}},
          {"half_width", r.half_width()},
          {"evaluations", r.evaluations},
          {"conclusive", r.conclusive},
          {"caveat", r.caveat}};
}

nlohmann::json to_json(const SolverOptions& o) {
  return {{"tolerance", o.tolerance},
          {"max_sweeps", o.max_sweeps},
          {"tails", o.tails == TailMode::Plain ? "plain" : "refined"}};
}

}  // namespace brw
