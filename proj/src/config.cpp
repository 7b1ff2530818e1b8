#include "ht/config.hpp"

#include <iterator>
#include <set>

#include <json.hpp>

#include "ht/errors.hpp"

namespace ht {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.contains(it.key())) {
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

std::vector<double> number_list(const json& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const json& item : v) out.push_back(number(item, what + " entry"));
  return out;
}

std::vector<std::optional<double>> ft_list(const json& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + " must be an array");
  std::vector<std::optional<double>> out;
  for (const json& item : v) {
    if (item.is_null()) {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(number(item, what + " entry"));
    }
  }
  return out;
}

bool boolean(const json& v, const std::string& what) {
  if (!v.is_boolean()) throw ConfigError(what + " must be true or false");
  return v.get<bool>();
}

XState x_state(const json& v) {
  if (v.is_array()) {
    if (v.size() != 6) throw ConfigError("x_state must have six entries");
    return XState{number(v[0], "x_state"), number(v[1], "x_state"),
                  number(v[2], "x_state"), number(v[3], "x_state"),
                  number(v[4], "x_state"), number(v[5], "x_state")};
  }
  if (v.is_object()) {
    reject_unknown(v, {"r11", "r22", "r33", "r44", "r14", "r23"}, "x_state");
    XState x;
    auto get = [&](const char* key) {
      if (!v.contains(key)) throw ConfigError(std::string("x_state.") + key + " missing");
      return number(v.at(key), std::string("x_state.") + key);
    };
    x.r11 = get("r11");
    x.r22 = get("r22");
    x.r33 = get("r33");
    x.r44 = get("r44");
    x.r14 = get("r14");
    x.r23 = get("r23");
    return x;
  }
  throw ConfigError("x_state must be an array or an object");
}

json ft_json(const std::vector<std::optional<double>>& list) {
  json out = json::array();
  for (const auto& ft : list) out.push_back(ft ? json(*ft) : json(nullptr));
  return out;
}

}  // namespace

SweepSpec parse_sweep_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("sweep config must be a JSON object");
  reject_unknown(doc,
                 {"x_state", "M", "omega", "alpha_grid", "q_R_list", "p_list",
                  "ft_list", "filter_groups", "seed", "restarts",
                  "numeric_fallback", "outputs"},
                 "sweep config");
  if (!doc.contains("x_state")) throw ConfigError("x_state is required");

  SweepSpec spec;
  spec.x_state = x_state(doc.at("x_state"));
  if (doc.contains("M")) spec.mass = number(doc.at("M"), "M");
  if (doc.contains("omega")) spec.frequency = number(doc.at("omega"), "omega");
  if (doc.contains("alpha_grid")) {
    const json& g = doc.at("alpha_grid");
    if (!g.is_object()) throw ConfigError("alpha_grid must be an object");
    reject_unknown(g, {"start", "stop", "steps"}, "alpha_grid");
    if (g.contains("start")) spec.alpha_grid.start = number(g.at("start"), "alpha_grid.start");
    if (g.contains("stop")) spec.alpha_grid.stop = number(g.at("stop"), "alpha_grid.stop");
    if (g.contains("steps")) {
      if (!g.at("steps").is_number_integer()) {
        throw ConfigError("alpha_grid.steps must be an integer");
      }
      spec.alpha_grid.steps = g.at("steps").get<int>();
    }
  }
  if (doc.contains("q_R_list")) spec.q_r_list = number_list(doc.at("q_R_list"), "q_R_list");
  if (doc.contains("p_list")) spec.p_list = number_list(doc.at("p_list"), "p_list");
  if (doc.contains("ft_list")) spec.ft_list = ft_list(doc.at("ft_list"), "ft_list");
  if (doc.contains("filter_groups")) {
    const json& groups = doc.at("filter_groups");
    if (!groups.is_array()) throw ConfigError("filter_groups must be an array");
    for (const json& g : groups) {
      if (!g.is_object()) throw ConfigError("filter_groups entries must be objects");
      reject_unknown(g, {"q_R", "ft_list"}, "filter_groups entry");
      if (!g.contains("q_R") || !g.contains("ft_list")) {
        throw ConfigError("filter_groups entries need q_R and ft_list");
      }
      spec.filter_groups.push_back(FilterGroup{
          number(g.at("q_R"), "filter_groups.q_R"),
          ft_list(g.at("ft_list"), "filter_groups.ft_list")});
    }
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) {
      throw ConfigError("seed must be a nonnegative integer");
    }
    spec.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("restarts")) {
    if (!doc.at("restarts").is_number_integer()) {
      throw ConfigError("restarts must be an integer");
    }
    spec.restarts = doc.at("restarts").get<int>();
  }
  if (doc.contains("numeric_fallback")) {
    spec.numeric_fallback = boolean(doc.at("numeric_fallback"), "numeric_fallback");
  }
  if (doc.contains("outputs")) {
    const json& o = doc.at("outputs");
    if (!o.is_object()) throw ConfigError("outputs must be an object");
    reject_unknown(o, {"csv", "json", "svg"}, "outputs");
    if (o.contains("csv")) spec.outputs.csv = boolean(o.at("csv"), "outputs.csv");
    if (o.contains("json")) spec.outputs.json = boolean(o.at("json"), "outputs.json");
    if (o.contains("svg")) spec.outputs.svg = boolean(o.at("svg"), "outputs.svg");
  }
  return spec;
}

SweepSpec parse_sweep_spec(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("failed reading sweep config");
  return parse_sweep_spec(text);
}

std::string sweep_spec_to_json(const SweepSpec& spec) {
  json doc;
  const XState& x = spec.x_state;
  doc["x_state"] = {x.r11, x.r22, x.r33, x.r44, x.r14, x.r23};
  doc["M"] = spec.mass;
  doc["omega"] = spec.frequency;
  doc["alpha_grid"] = {{"start", spec.alpha_grid.start},
                       {"stop", spec.alpha_grid.stop},
                       {"steps", spec.alpha_grid.steps}};
  doc["q_R_list"] = spec.q_r_list;
  doc["p_list"] = spec.p_list;
  doc["ft_list"] = ft_json(spec.ft_list);
  json groups = json::array();
  for (const FilterGroup& g : spec.filter_groups) {
    groups.push_back({{"q_R", g.q_r}, {"ft_list", ft_json(g.ft_list)}});
  }
  doc["filter_groups"] = groups;
  doc["seed"] = spec.seed;
  doc["restarts"] = spec.restarts;
  doc["numeric_fallback"] = spec.numeric_fallback;
  doc["outputs"] = {{"csv", spec.outputs.csv},
                    {"json", spec.outputs.json},
                    {"svg", spec.outputs.svg}};
  return doc.dump(2);
}

}  // namespace ht
