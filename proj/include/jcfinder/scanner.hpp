#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <tuple>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "json.hpp"

#include "jcfinder/errors.hpp"
#include "jcfinder/features.hpp"
#include "jcfinder/parallel.hpp"
#include "jcfinder/reference_index.hpp"
#include "jcfinder/source_model.hpp"

namespace jcfinder {

struct ProjectFeatures {
  std::string project;
  std::size_t scanned_files = 0;
  std::size_t parsed_classes = 0;
  std::size_t skipped_files = 0;
  std::vector<ClassFeature> features;
  std::vector<std::string> warnings;
};

// Target-side extraction: C1 and C2 only, so hashes line up with the reference side.
inline ProjectFeatures extract_project_features(const fs::path& project_dir, const MetricsConfig& metrics = {},
                                                unsigned workers = 1) {
  if (!fs::is_directory(project_dir)) throw IoError("project directory not readable: " + project_dir.string());
  ProjectFeatures out;
  out.project = project_dir.filename().string();
  if (out.project.empty()) out.project = project_dir.parent_path().filename().string();
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(project_dir))
    if (entry.is_regular_file() && detail::has_extension(entry.path(), {".java"})) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  out.scanned_files = files.size();
  if (files.empty()) out.warnings.push_back("no .java files found under " + project_dir.string());

  struct FileResult {
    std::size_t classes = 0;
    bool skipped = false;
    std::vector<ClassFeature> features;
    std::vector<std::string> warnings;
  };
  auto results = parallel_map(files.size(), workers, [&](std::size_t i) {
    FileResult r;
    const std::string rel = fs::relative(files[i], project_dir).generic_string();
    std::vector<ClassUnit> units;
    try {
      units = parse_source({rel, detail::read_file(files[i])});
    } catch (const Error& e) {
      r.skipped = true;
      r.warnings.push_back(std::string("ParseError: ") + e.what());
      return r;
    }
    r.classes = units.size();
    for (const auto& cls : units) {
      auto ex = extract_class_feature(cls, metrics);
      for (auto& w : ex.warnings) r.warnings.push_back(std::move(w));
      if (ex.feature) r.features.push_back(std::move(*ex.feature));
    }
    return r;
  });
  for (auto& r : results) {
    out.parsed_classes += r.classes;
    if (r.skipped) ++out.skipped_files;
    for (auto& f : r.features) out.features.push_back(std::move(f));
    for (auto& w : r.warnings) out.warnings.push_back(std::move(w));
  }
  return out;
}

struct Evidence {
  std::string target_class;
  std::string target_path;
  FeatureHash hash;
  std::string origin_group;
  std::vector<std::pair<std::string, std::string>> artifacts;  // (artifact, version)
  std::int64_t origin_timestamp = 0;
  bool co_released = false;  // record spans more than one artifact of the group
};

struct TplArtifact {
  std::string artifact;
  std::vector<std::string> versions;  // candidate versions from matched records
  std::size_t evidence_count = 0;
};

struct TplResult {
  std::string group;
  std::vector<TplArtifact> artifacts;  // sorted by artifact
  std::size_t evidence_count = 0;
};

struct ScanReport {
  std::string project;
  std::size_t scanned_files = 0;
  std::size_t parsed_classes = 0;
  std::size_t extracted_features = 0;
  std::size_t skipped_files = 0;
  std::vector<Evidence> evidences;
  std::vector<TplResult> tpls;
  std::vector<std::string> warnings;

  // group:artifact identities of every reported TPL.
  std::set<std::string> tpl_artifact_ids() const {
    std::set<std::string> out;
    for (const auto& t : tpls)
      for (const auto& a : t.artifacts) out.insert(t.group + ":" + a.artifact);
    return out;
  }
};

// One Evidence per feature hit; no minimum-match threshold.
inline ScanReport recognize(const ProjectFeatures& project, const ReferenceIndex& index) {
  ScanReport rep;
  rep.project = project.project;
  rep.scanned_files = project.scanned_files;
  rep.parsed_classes = project.parsed_classes;
  rep.extracted_features = project.features.size();
  rep.skipped_files = project.skipped_files;
  rep.warnings = project.warnings;
  for (const auto& f : project.features) {
    const auto* rec = index.lookup(f.hash);
    if (rec == nullptr) continue;
    Evidence e{f.qualified_name, f.source_path, f.hash, rec->origin_group, rec->releases, rec->timestamp, false};
    std::set<std::string> arts;
    for (const auto& [a, _] : rec->releases) arts.insert(a);
    e.co_released = arts.size() > 1;
    rep.evidences.push_back(std::move(e));
  }
  std::sort(rep.evidences.begin(), rep.evidences.end(), [](const Evidence& a, const Evidence& b) {
    return std::tie(a.target_path, a.target_class, a.hash) < std::tie(b.target_path, b.target_class, b.hash);
  });
  std::map<std::string, std::map<std::string, std::pair<std::set<std::string>, std::size_t>>> grouped;
  std::map<std::string, std::size_t> group_counts;
  for (const auto& e : rep.evidences) {
    ++group_counts[e.origin_group];
    std::set<std::string> seen;
    for (const auto& [a, v] : e.artifacts) {
      auto& slot = grouped[e.origin_group][a];
      slot.first.insert(v);
      if (seen.insert(a).second) ++slot.second;
    }
  }
  for (const auto& [g, arts] : grouped) {
    TplResult t{g, {}, group_counts[g]};
    for (const auto& [a, slot] : arts)
      t.artifacts.push_back({a, std::vector<std::string>(slot.first.begin(), slot.first.end()), slot.second});
    rep.tpls.push_back(std::move(t));
  }
  return rep;
}

inline json to_json(const ScanReport& r) {
  json ev = json::array();
  for (const auto& e : r.evidences) {
    json arts = json::array();
    for (const auto& [a, v] : e.artifacts) arts.push_back({{"artifact", a}, {"version", v}});
    ev.push_back({{"target_class", e.target_class},
                  {"target_path", e.target_path},
                  {"hash", e.hash.hex()},
                  {"origin_group", e.origin_group},
                  {"artifacts", arts},
                  {"origin_timestamp", e.origin_timestamp},
                  {"co_released_within_group", e.co_released}});
  }
  json tpls = json::array();
  for (const auto& t : r.tpls) {
    json arts = json::array();
    for (const auto& a : t.artifacts)
      arts.push_back({{"artifact", a.artifact}, {"versions", a.versions}, {"evidence_count", a.evidence_count}});
    tpls.push_back({{"group", t.group}, {"artifacts", arts}, {"evidence_count", t.evidence_count}});
  }
  return {{"project", r.project},
          {"scanned_files", r.scanned_files},
          {"parsed_classes", r.parsed_classes},
          {"extracted_features", r.extracted_features},
          {"skipped_files", r.skipped_files},
          {"evidences", ev},
          {"tpls", tpls},
          {"warnings", r.warnings}};
}

// Reads back the TPL list of a saved scan report.
inline ScanReport scan_report_from_json(const json& j) {
  ScanReport r;
  r.project = j.value("project", std::string());
  for (const auto& t : j.at("tpls")) {
    TplResult tr;
    tr.group = t.at("group").get<std::string>();
    tr.evidence_count = t.at("evidence_count").get<std::size_t>();
    for (const auto& a : t.at("artifacts"))
      tr.artifacts.push_back({a.at("artifact").get<std::string>(), a.at("versions").get<std::vector<std::string>>(),
                              a.at("evidence_count").get<std::size_t>()});
    r.tpls.push_back(std::move(tr));
  }
  return r;
}

struct DeclaredDependencies {
  std::set<std::string> coordinates;  // group:artifact
  std::vector<std::string> warnings;
};

namespace detail {

// Replaces ${name} from `props`; nullopt if any placeholder stays unresolved.
inline std::optional<std::string> resolve_placeholders(const std::string& value,
                                                       const std::map<std::string, std::string>& props) {
  std::string out;
  std::size_t i = 0;
  while (i < value.size()) {
    const auto open = value.find("${", i);
    if (open == std::string::npos) {
      out += value.substr(i);
      break;
    }
    const auto close = value.find('}', open + 2);
    if (close == std::string::npos) return std::nullopt;
    out += value.substr(i, open - i);
    auto it = props.find(value.substr(open + 2, close - open - 2));
    if (it == props.end() || it->second.find("${") != std::string::npos) return std::nullopt;
    out += it->second;
    i = close + 1;
  }
  return out;
}

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// Direct <dependencies> of one pom.xml text; ${...} resolved from the same file's <properties>.
inline DeclaredDependencies parse_pom(const std::string& xml, const std::string& label = "pom.xml") {
  namespace pt = boost::property_tree;
  DeclaredDependencies out;
  pt::ptree tree;
  try {
    std::istringstream in(xml);
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    out.warnings.push_back(label + ": malformed XML skipped (" + e.message() + ")");
    return out;
  }
  const auto project = tree.get_child_optional("project");
  if (!project) {
    out.warnings.push_back(label + ": no <project> element");
    return out;
  }
  std::map<std::string, std::string> props;
  if (auto p = project->get_child_optional("properties"))
    for (const auto& [k, v] : *p)
      if (k != "<xmlattr>" && k != "<xmlcomment>") props[k] = detail::trim(v.data());
  if (auto g = project->get_optional<std::string>("groupId")) props.emplace("project.groupId", detail::trim(*g));
  else if (auto pg = project->get_optional<std::string>("parent.groupId")) props.emplace("project.groupId", detail::trim(*pg));
  if (auto v = project->get_optional<std::string>("version")) props.emplace("project.version", detail::trim(*v));
  auto deps = project->get_child_optional("dependencies");
  if (!deps) return out;
  for (const auto& [tag, dep] : *deps) {
    if (tag != "dependency") continue;
    const auto g = dep.get_optional<std::string>("groupId");
    const auto a = dep.get_optional<std::string>("artifactId");
    if (!g || !a) {
      out.warnings.push_back(label + ": dependency without groupId/artifactId skipped");
      continue;
    }
    const auto rg = detail::resolve_placeholders(detail::trim(*g), props);
    const auto ra = detail::resolve_placeholders(detail::trim(*a), props);
    if (!rg || !ra) {
      out.warnings.push_back(label + ": unresolved placeholder in " + detail::trim(*g) + ":" + detail::trim(*a));
      continue;
    }
    out.coordinates.insert(*rg + ":" + *ra);
  }
  return out;
}

// Union over every pom.xml under the project. No transitive resolution.
inline DeclaredDependencies parse_declared_dependencies(const fs::path& project_dir) {
  DeclaredDependencies out;
  if (!fs::is_directory(project_dir)) return out;
  std::vector<fs::path> poms;
  for (const auto& entry : fs::recursive_directory_iterator(project_dir))
    if (entry.is_regular_file() && entry.path().filename() == "pom.xml") poms.push_back(entry.path());
  std::sort(poms.begin(), poms.end());
  for (const auto& p : poms) {
    auto one = parse_pom(detail::read_file(p), fs::relative(p, project_dir).generic_string());
    out.coordinates.insert(one.coordinates.begin(), one.coordinates.end());
    for (auto& w : one.warnings) out.warnings.push_back(std::move(w));
  }
  return out;
}

// 100·|cc \ pm| / |pm|; 100 when pm is empty and cc is not; 0 when both are empty.
inline double improvement_rate(const std::set<std::string>& cc, const std::set<std::string>& pm) {
  if (pm.empty()) return cc.empty() ? 0.0 : 100.0;
  std::size_t only = 0;
  for (const auto& x : cc)
    if (!pm.count(x)) ++only;
  return 100.0 * static_cast<double>(only) / static_cast<double>(pm.size());
}

// 100·|cc ∩ pm| / |pm|; 0 when pm is empty.
inline double duplication_rate(const std::set<std::string>& cc, const std::set<std::string>& pm) {
  if (pm.empty()) return 0.0;
  std::size_t both = 0;
  for (const auto& x : cc)
    if (pm.count(x)) ++both;
  return 100.0 * static_cast<double>(both) / static_cast<double>(pm.size());
}

struct ComparisonReport {
  std::set<std::string> tpl_cc;
  std::set<std::string> tpl_pm;
  double ir = 0.0;
  double dr = 0.0;
  std::vector<std::string> warnings;
};

inline ComparisonReport compare(const std::set<std::string>& cc, const std::set<std::string>& pm) {
  ComparisonReport r{cc, pm, improvement_rate(cc, pm), duplication_rate(cc, pm), {}};
  if (pm.empty()) r.warnings.push_back("no declared dependencies: DR reported as 0");
  return r;
}

inline json to_json(const ComparisonReport& r) {
  std::vector<std::string> cc_only, pm_only, both;
  for (const auto& x : r.tpl_cc) (r.tpl_pm.count(x) ? both : cc_only).push_back(x);
  for (const auto& x : r.tpl_pm)
    if (!r.tpl_cc.count(x)) pm_only.push_back(x);
  return {{"tpl_cc", r.tpl_cc}, {"tpl_pm", r.tpl_pm}, {"ir", r.ir}, {"dr", r.dr}, {"cc_only", cc_only},
          {"pm_only", pm_only}, {"intersection", both}, {"warnings", r.warnings}};
}

}  // namespace jcfinder
