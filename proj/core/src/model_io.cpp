#include "brw/model_io.hpp"

#include <fstream>

#include "brw/comb.hpp"
#include "brw/finite.hpp"
#include "brw/loop.hpp"
#include "brw/tree.hpp"

namespace brw {

namespace {

template <class T>
T required(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidArgument(std::string("model document lacks \"") + key + "\"");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad \"") + key + "\": " + e.what());
  }
}

std::vector<ExplicitLaw> parse_laws(const nlohmann::json& arr) {
  if (!arr.is_array() || arr.empty()) throw InvalidArgument("\"explicit_laws\" must be a nonempty array");
  std::vector<std::optional<ExplicitLaw>> laws(arr.size());
  for (const auto& entry : arr) {
    const auto v = required<std::int64_t>(entry, "vertex");
    if (v < 0 || v >= static_cast<std::int64_t>(arr.size())) {
      throw InvalidArgument("law vertex " + std::to_string(v) + " outside 0.." + std::to_string(arr.size() - 1));
    }
    std::vector<LawOutcome> outs;
    for (const auto& o : required<nlohmann::json>(entry, "outcomes")) {
      LawOutcome lo;
      lo.probability = required<double>(o, "p");
      for (const auto& c : o.value("children", nlohmann::json::array())) {
        if (!c.is_array() || c.size() != 2) throw InvalidArgument("children entries are [vertex, count]");
        const auto count = c[1].get<std::int64_t>();
        if (count < 1) throw InvalidArgument("child counts must be positive");
        lo.config.entries.emplace_back(VertexId{c[0].get<std::int64_t>(), 0, {}}, count);
      }
      outs.push_back(std::move(lo));
    }
    if (laws[static_cast<std::size_t>(v)]) throw InvalidArgument("duplicate law for vertex " + std::to_string(v));
    laws[static_cast<std::size_t>(v)] = ExplicitLaw(std::move(outs));
  }
  std::vector<ExplicitLaw> out;
  for (auto& l : laws) out.push_back(std::move(*l));
  return out;
}

}  // namespace

ModelSpec parse_model_spec(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidArgument("model document must be a JSON object");
  ModelSpec s;
  s.family = required<std::string>(doc, "family");
  if (s.family == "tree" || s.family == "tree+loop") {
    s.m = required<int>(doc, "m");
    s.lambda = required<double>(doc, "lambda");
    if (s.family == "tree+loop") s.loop_rate = required<double>(doc, "loop_rate");
  } else if (s.family == "comb") {
    s.alpha = required<int>(doc, "alpha");
    s.lambda = required<double>(doc, "lambda");
  } else if (s.family == "finite") {
    s.explicit_laws = required<nlohmann::json>(doc, "explicit_laws");
    s.lambda = doc.value("lambda", 0.0);
  } else {
    throw InvalidArgument("unknown model family '" + s.family + "'");
  }
  if (doc.contains("resolution")) s.resolution = required<int>(doc, "resolution");
  return s;
}

nlohmann::json to_json(const ModelSpec& s) {
  nlohmann::json j;
  j["family"] = s.family;
  if (s.family == "tree" || s.family == "tree+loop") j["m"] = s.m;
  if (s.family == "comb") j["alpha"] = s.alpha;
  if (s.family != "finite") j["lambda"] = s.lambda;
  if (s.loop_rate) j["loop_rate"] = *s.loop_rate;
  if (s.resolution) j["resolution"] = *s.resolution;
  if (s.family == "finite") j["explicit_laws"] = s.explicit_laws;
  return j;
}

ModelSpec load_model_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open model file '" + path + "'");
  try {
    return parse_model_spec(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("model file '" + path + "' is not valid JSON: " + e.what());
  }
}

ModelPtr build_model(const ModelSpec& s) {
  if (s.family == "tree" || s.family == "tree+loop") {
    auto tree = std::make_shared<TreeGraph>(s.m, s.lambda, s.resolution);
    if (s.family == "tree") return tree;
    return add_loop(tree, tree->root(), rate_from_double(s.loop_rate.value_or(0.0)));
  }
  if (s.family == "comb") return std::make_shared<CombGraph>(s.alpha, s.lambda);
  if (s.family == "finite") return std::make_shared<FiniteModel>(parse_laws(s.explicit_laws));
  throw InvalidArgument("unknown model family '" + s.family + "'");
}

}  // namespace brw
