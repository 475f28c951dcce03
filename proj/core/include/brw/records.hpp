#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "brw/critical.hpp"
#include "brw/projection.hpp"
#include "brw/solver.hpp"

namespace brw {

std::string_view library_version();

/// Shortest decimal that round-trips; keeps CSV output byte-stable.
std::string format_real(double value);

/// {set_name, R, iterations, converged, watch: [{vertex, lower, upper}], width}
/// `width` is the widest watched vertex; `width_all` covers the whole ball.
nlohmann::json bracket_record(const Bracket& bracket, const BranchingModel& model, std::span<const VertexId> watch);

struct QRow {
  std::string set_name;
  std::string n_or_index;
  int radius = 0;
  double lower = 0.0;
  double upper = 1.0;
  bool converged = false;
  double width() const { return upper - lower; }
};

QRow q_row(const Bracket& bracket, const VertexId& at, std::string n_or_index);

/// set_name,n_or_index,R,lower,upper,width,converged
void write_q_table_csv(std::ostream& out, std::span<const QRow> rows);
nlohmann::json to_json(const QRow& row);

nlohmann::json to_json(const ProjectionReport& report, const BranchingModel& source, const BranchingModel& target);
/// {set, overlap, source: [lower, upper], target: [lower, upper], converged}
nlohmann::json to_json(const TransportReport& report);
nlohmann::json to_json(const CriticalPair& pair);
nlohmann::json to_json(const BisectionResult& result);
nlohmann::json to_json(const SolverOptions& options);

}  // namespace brw
