#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "jcfinder/clone_metrics.hpp"
#include "jcfinder/errors.hpp"
#include "jcfinder/metrics.hpp"
#include "jcfinder/parallel.hpp"
#include "jcfinder/refinery.hpp"

namespace jcfinder {

struct ToolConfig {
  double triviality_threshold = 60.0;
  MiForm mi_form = MiForm::Log;
  double percentile_cutoff = 50.0;
  std::vector<std::string> pattern_names = default_pattern_names();
  unsigned worker_count = default_worker_count();
  CloneScope clone_scope = CloneScope::CrossProject;
  AssociatedMode associated_mode = AssociatedMode::MaxPerCounterpart;

  void validate() const {
    if (!(triviality_threshold > 0)) throw InvalidInput("triviality_threshold must be > 0");
    if (!(percentile_cutoff >= 0 && percentile_cutoff <= 100)) throw InvalidInput("percentile_cutoff must be in [0, 100]");
    if (worker_count == 0) throw InvalidInput("workers must be positive");
  }

  MetricsConfig metrics() const { return {triviality_threshold, mi_form}; }
  RefineryConfig refinery() const { return {metrics(), pattern_names, percentile_cutoff}; }
};

inline MiForm parse_mi_form(const std::string& s) {
  if (s == "log") return MiForm::Log;
  if (s == "linear") return MiForm::Linear;
  throw InvalidInput("mi_form must be 'log' or 'linear', got '" + s + "'");
}

inline std::string to_string(MiForm f) { return f == MiForm::Log ? "log" : "linear"; }

// The worker count is omitted: it never influences results.
inline nlohmann::json to_json(const ToolConfig& c) {
  return {{"triviality_threshold", c.triviality_threshold},
          {"mi_form", to_string(c.mi_form)},
          {"percentile_cutoff", c.percentile_cutoff},
          {"pattern_names", c.pattern_names},
          {"clone_scope", c.clone_scope == CloneScope::CrossProject ? "cross-project" : "all"},
          {"associated_mode", c.associated_mode == AssociatedMode::MaxPerCounterpart ? "max" : "any"}};
}

// Applies keys present in a JSON config object; unknown keys are rejected.
inline void apply_config_json(ToolConfig& c, const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "triviality_threshold") c.triviality_threshold = value.get<double>();
      else if (key == "mi_form") c.mi_form = parse_mi_form(value.get<std::string>());
      else if (key == "percentile_cutoff") c.percentile_cutoff = value.get<double>();
      else if (key == "pattern_names") c.pattern_names = value.get<std::vector<std::string>>();
      else if (key == "workers") c.worker_count = value.get<unsigned>();
      else if (key == "clone_scope") {
        const auto s = value.get<std::string>();
        if (s != "cross-project" && s != "all") throw InvalidInput("clone_scope must be 'cross-project' or 'all'");
        c.clone_scope = s == "all" ? CloneScope::All : CloneScope::CrossProject;
      } else if (key == "associated_mode") {
        const auto s = value.get<std::string>();
        if (s != "max" && s != "any") throw InvalidInput("associated_mode must be 'max' or 'any'");
        c.associated_mode = s == "any" ? AssociatedMode::AnyCounterpart : AssociatedMode::MaxPerCounterpart;
      } else throw InvalidInput("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
}

inline void load_config_file(ToolConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("config " + path + ": " + e.what());
  }
  apply_config_json(c, j);
}

// One suffix per line; blank lines and lines starting with '#' are ignored.
inline std::vector<std::string> load_patterns_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read patterns file " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace jcfinder
