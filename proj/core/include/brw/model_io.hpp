#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "brw/model.hpp"

namespace brw {

/// Model document:
///   {"family": "tree"|"comb"|"tree+loop"|"finite", "m"|"alpha": int,
///    "lambda": float, "loop_rate"?: float, "resolution"?: int,
///    "explicit_laws"?: [{"vertex": 0, "outcomes": [{"p": 0.25, "children": [[0, 2]]}]}]}
struct ModelSpec {
  std::string family = "tree";
  int m = 3;
  int alpha = 1;
  double lambda = 0.35;
  std::optional<double> loop_rate;
  std::optional<int> resolution;  // tree quotient depth; exact tree when absent
  nlohmann::json explicit_laws = nlohmann::json::array();
};

ModelSpec parse_model_spec(const nlohmann::json& doc);
nlohmann::json to_json(const ModelSpec& spec);
ModelSpec load_model_spec(const std::string& path);
ModelPtr build_model(const ModelSpec& spec);

}  // namespace brw
