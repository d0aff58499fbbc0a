#include "splitlab/report.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "splitlab/laws.hpp"

namespace splitlab {

using nlohmann::json;

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> names{
      "verify-characterization", "verify-selfdual", "verify-roundtrip", "verify-jconstruct",
      "split-stats",             "arcsine",         "factorize",        "replay"};
  return names;
}

void validate(const ExperimentConfig& c) {
  const auto& cmds = known_commands();
  if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end())
    throw ConfigError("unknown command '" + c.command + "'");
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  need(c.workers >= 1, "workers must be at least 1");
  need(c.alpha > 0.0 && c.alpha < 1.0, "alpha must lie in (0,1)");
  need(c.ties == "auto" || c.ties == "flag" || c.ties == "earliest",
       "ties must be auto, flag or earliest");
  need(c.max_witnesses >= 1, "max-witnesses must be at least 1");
  if (c.command == "replay") return;
  need(c.trials >= 1, "trials must be at least 1");
  need(c.horizon >= 1 && c.horizon <= 4096, "horizon must lie in [1, 4096]");
  for (double p : c.p) need(p > 0.0 && p < 1.0, "every p must lie in (0,1)");
  for (double v : c.v) need(v > 0.0 && v <= 1.0, "every v must lie in (0,1]");
  if (c.command == "split-stats") {
    need(!c.p.empty(), "split-stats needs at least one p");
    need(c.trials >= 50, "split-stats needs at least 50 trials per KS sample");
    need(c.depth <= c.buffer, "depth must not exceed buffer");
    need(c.perm_b >= 99, "perm-b must be at least 99");
    need(c.perm_sample >= 2, "perm-sample must be at least 2");
  }
  if (c.command == "factorize") {
    need(!c.p.empty() && !c.v.empty(), "factorize needs p and v values");
    need(c.trials >= 2, "factorize needs at least 2 trials");
  }
}

TiePolicy resolve_ties(const ExperimentConfig& c) {
  if (c.ties == "flag") return TiePolicy::flag;
  if (c.ties == "earliest") return TiePolicy::earliest;
  try {
    return parse_law(c.law).diffuse() ? TiePolicy::flag : TiePolicy::earliest;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

int exit_code(const RunReport& r) {
  if (r.checks.empty()) return 2;
  for (const auto& c : r.checks)
    if (c.status == Status::fail) return 1;
  return 0;
}

json config_to_json(const ExperimentConfig& c) {
  // Output paths are left out: they do not influence results.
  json j = {{"law", c.law},         {"family", c.family},         {"rule", c.rule},
            {"p", c.p},             {"v", c.v},                   {"horizon", c.horizon},
            {"n", c.n},             {"trials", c.trials},         {"buffer", c.buffer},
            {"depth", c.depth},     {"alpha", c.alpha},           {"perm_b", c.perm_b},
            {"perm_sample", c.perm_sample}, {"max_witnesses", c.max_witnesses}};
  j["ties"] = c.ties == "auto" && c.command != "replay"
                  ? (resolve_ties(c) == TiePolicy::flag ? "flag" : "earliest")
                  : c.ties;
  if (c.command == "replay") {
    j["report"] = c.report;
    j["check"] = c.check;
    j["window"] = c.window;
    j["start_index"] = c.start_index;
    if (c.m) j["m"] = *c.m;
    if (c.k) j["k"] = *c.k;
    if (c.l) j["l"] = *c.l;
  }
  return j;
}

namespace {

json value_to_json(const WitnessValue& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

WitnessValue value_from_json(const json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_array()) return j.get<std::vector<std::int64_t>>();
  throw std::invalid_argument("witness value must be a boolean, integer or integer list");
}

}  // namespace

json witness_to_json(const ViolationWitness& w) {
  json j = {{"check_name", w.check_name},
            {"start_index", w.window.start_index()},
            {"values", std::vector<double>(w.window.values().begin(), w.window.values().end())},
            {"lhs", value_to_json(w.lhs)},
            {"rhs", value_to_json(w.rhs)}};
  if (w.m) j["m"] = *w.m;
  if (w.n) j["n"] = *w.n;
  if (w.k) j["k"] = *w.k;
  if (w.l) j["l"] = *w.l;
  if (!w.detail.empty()) j["detail"] = w.detail;
  return j;
}

ViolationWitness witness_from_json(const json& j) {
  try {
    ViolationWitness w;
    w.check_name = j.at("check_name").get<std::string>();
    w.window = IncrementWindow(j.at("values").get<std::vector<double>>(),
                               j.at("start_index").get<std::int64_t>());
    auto opt = [&](const char* key) -> std::optional<std::int64_t> {
      if (!j.contains(key)) return std::nullopt;
      return j.at(key).get<std::int64_t>();
    };
    w.m = opt("m");
    w.n = opt("n");
    w.k = opt("k");
    w.l = opt("l");
    if (j.contains("detail")) w.detail = j.at("detail").get<std::string>();
    w.lhs = value_from_json(j.at("lhs"));
    w.rhs = value_from_json(j.at("rhs"));
    return w;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed witness: ") + e.what());
  }
}

json report_to_json(const RunReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj = {{"name", c.name},
               {"status", to_string(c.status)},
               {"n_paths", c.n_paths},
               {"n_ties", c.n_ties},
               {"n_violations", c.n_violations}};
    if (c.statistic) cj["statistic"] = *c.statistic;
    if (c.p_value) cj["p_value"] = *c.p_value;
    if (c.alpha) cj["alpha"] = *c.alpha;
    json ws = json::array();
    for (const auto& w : c.witnesses) ws.push_back(witness_to_json(w));
    cj["witnesses"] = std::move(ws);
    if (!c.details.empty()) cj["details"] = c.details;
    checks.push_back(std::move(cj));
  }
  json j = {{"command", r.config.command},
            {"config", config_to_json(r.config)},
            {"seed", r.config.seed},
            {"workers", r.config.workers},
            {"checks", std::move(checks)},
            {"version", kVersion}};
  j["wall_time_ms"] = r.wall_time_ms ? json(*r.wall_time_ms) : json(nullptr);
  return j;
}

std::string render_report(const RunReport& r) { return report_to_json(r).dump(2) + "\n"; }

void emit_report(const RunReport& r, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << render_report(r);
  f.close();
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace splitlab
