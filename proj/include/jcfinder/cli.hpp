#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jcfinder/clone_metrics.hpp"
#include "jcfinder/config.hpp"
#include "jcfinder/errors.hpp"
#include "jcfinder/reference_index.hpp"
#include "jcfinder/scanner.hpp"
#include "jcfinder/version.hpp"

namespace jcfinder {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kBadProject = 2;
inline constexpr int kBadCorpus = 3;
inline constexpr int kOutputFailure = 4;
}  // namespace exit_code

namespace detail {

// Writes to `path`, or to `out` when path is empty. False on write failure.
inline bool emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return static_cast<bool>(out);
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

inline nlohmann::json report_header(const std::string& command, const ToolConfig& cfg) {
  return {{"command", command}, {"tool_version", std::string(kToolVersion)}, {"config", to_json(cfg)}};
}

inline std::vector<ClassUnit> parse_tree(const fs::path& dir, std::vector<std::string>& warnings) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && has_extension(e.path(), {".java"})) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<ClassUnit> out;
  for (const auto& f : files) {
    try {
      for (auto& u : parse_source({fs::relative(f, dir).generic_string(), read_file(f)})) out.push_back(std::move(u));
    } catch (const Error& e) {
      warnings.push_back(std::string("ParseError: ") + e.what());
    }
  }
  return out;
}

}  // namespace detail

// Entry point shared by the executable and in-process tests. `args` excludes argv[0].
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"jcfinder: class-level clone-based third-party library detection for Java", "jcfinder"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string config_path, patterns_path, mi_form;
  double threshold = 0, cutoff = 0;
  unsigned workers = 0;
  auto* o_config = app.add_option("--config", config_path, "JSON config file; flags override its values");
  auto* o_threshold = app.add_option("--threshold", threshold, "triviality threshold (default 60)");
  auto* o_cutoff = app.add_option("--percentile-cutoff", cutoff, "centrality percentile cutoff (default 50)");
  auto* o_mi = app.add_option("--mi-form", mi_form, "complexity form: log or linear");
  auto* o_workers = app.add_option("--workers", workers, "worker threads (default: logical cores)");
  auto* o_patterns = app.add_option("--patterns-file", patterns_path, "design-pattern suffixes, one per line");

  auto* index_cmd = app.add_subcommand("index", "reference index operations");
  index_cmd->require_subcommand(1);
  auto* build_cmd = index_cmd->add_subcommand("build", "ingest a corpus and write a refined index");
  std::string corpus_dir, manifest_path, out_path, index_path, removal_log_path;
  build_cmd->add_option("--corpus", corpus_dir, "corpus root directory")->required();
  build_cmd->add_option("--manifest", manifest_path, "manifest file (default <corpus>/manifest.json)");
  build_cmd->add_option("--out", out_path, "index file to write")->required();
  build_cmd->add_option("--removal-log", removal_log_path, "write removed classes as JSON lines");

  auto* scan_cmd = app.add_subcommand("scan", "scan a project against an index");
  std::string project_dir;
  scan_cmd->add_option("project", project_dir, "project directory")->required();
  scan_cmd->add_option("--index", index_path, "index file")->required();
  scan_cmd->add_option("--out", out_path, "report file (default stdout)");

  auto* compare_cmd = app.add_subcommand("compare", "compare clone-detected TPLs with declared dependencies");
  std::string report_path;
  compare_cmd->add_option("project", project_dir, "project directory")->required();
  auto* o_report = compare_cmd->add_option("--report", report_path, "scan report produced by `scan`");
  auto* o_cmp_index = compare_cmd->add_option("--index", index_path, "scan in-process against this index");
  o_report->excludes(o_cmp_index);
  compare_cmd->add_option("--out", out_path, "report file (default stdout)");

  auto* metrics_cmd = app.add_subcommand("metrics", "conjugate and associated clone percentages");
  std::string dir_a, dir_b;
  bool intra = false, any_counterpart = false;
  metrics_cmd->add_option("dir_a", dir_a, "first code base")->required();
  metrics_cmd->add_option("dir_b", dir_b, "second code base")->required();
  metrics_cmd->add_option("--out", out_path, "output file (default stdout)");
  metrics_cmd->add_flag("--intra", intra, "also count clones within one code base");
  metrics_cmd->add_flag("--any-counterpart", any_counterpart, "associated percentage over any counterpart class");

  for (auto* sub : {index_cmd, build_cmd, scan_cmd, compare_cmd, metrics_cmd}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? exit_code::kOk : exit_code::kBadProject;
  }

  ToolConfig cfg;
  try {
    if (o_config->count()) load_config_file(cfg, config_path);
    if (o_threshold->count()) cfg.triviality_threshold = threshold;
    if (o_cutoff->count()) cfg.percentile_cutoff = cutoff;
    if (o_mi->count()) cfg.mi_form = parse_mi_form(mi_form);
    if (o_workers->count()) cfg.worker_count = workers;
    if (o_patterns->count()) cfg.pattern_names = load_patterns_file(patterns_path);
    if (intra) cfg.clone_scope = CloneScope::All;
    if (any_counterpart) cfg.associated_mode = AssociatedMode::AnyCounterpart;
    cfg.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kBadProject;
  }

  if (*build_cmd) {
    const fs::path manifest_file = manifest_path.empty() ? fs::path(corpus_dir) / "manifest.json" : fs::path(manifest_path);
    BuildOutcome built;
    try {
      auto manifest = CorpusManifest::load(manifest_file);
      manifest.base_dir = corpus_dir;  // release paths are relative to the corpus root
      if (manifest.libraries.empty()) err << "warning: manifest lists no libraries\n";
      const auto ingest = ingest_corpus(manifest, cfg.metrics(), cfg.worker_count);
      built = build_index(ingest, cfg.refinery());
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_code::kBadCorpus;
    } catch (const fs::filesystem_error& e) {
      err << "error: " << e.what() << "\n";
      return exit_code::kBadCorpus;
    }
    for (const auto& w : built.warnings) err << "warning: " << w << "\n";
    try {
      save_index(built.index, out_path);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_code::kOutputFailure;
    }
    if (!removal_log_path.empty()) {
      std::string log;
      for (const auto& r : built.removal_log)
        log += nlohmann::json{{"class", r.qualified_name}, {"path", r.source_path},
                              {"criterion", std::string(to_string(r.criterion))}, {"value", r.value}}
                   .dump() +
               "\n";
      if (!detail::emit(log, removal_log_path, out)) {
        err << "error: cannot write " << removal_log_path << "\n";
        return exit_code::kOutputFailure;
      }
    }
    const auto& s = built.index.stats;
    err << "libraries=" << s.library_count << " versions=" << s.version_count << " raw=" << s.raw_feature_count
        << " refined=" << s.refined_feature_count << " missing_source=" << s.missing_source_versions
        << " skipped_files=" << s.skipped_files << "\n";
    return exit_code::kOk;
  }

  auto run_scan = [&](const std::string& idx, ScanReport& report) -> int {
    ReferenceIndex index;
    try {
      index = load_index(idx);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_code::kBadCorpus;
    }
    try {
      report = recognize(extract_project_features(project_dir, cfg.metrics(), cfg.worker_count), index);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return exit_code::kBadProject;
    }
    return exit_code::kOk;
  };

  if (*scan_cmd) {
    ScanReport report;
    if (int rc = run_scan(index_path, report); rc != exit_code::kOk) return rc;
    auto j = to_json(report);
    j["header"] = detail::report_header("scan", cfg);
    if (!detail::emit(j.dump(2) + "\n", out_path, out)) {
      err << "error: cannot write " << out_path << "\n";
      return exit_code::kOutputFailure;
    }
    err << report.project << ": " << report.extracted_features << " features, " << report.evidences.size()
        << " evidences, " << report.tpls.size() << " TPL groups\n";
    return exit_code::kOk;
  }

  if (*compare_cmd) {
    if (!fs::is_directory(project_dir)) {
      err << "error: project directory not readable: " << project_dir << "\n";
      return exit_code::kBadProject;
    }
    ScanReport report;
    if (o_cmp_index->count()) {
      if (int rc = run_scan(index_path, report); rc != exit_code::kOk) return rc;
    } else if (o_report->count()) {
      try {
        std::ifstream in(report_path);
        if (!in) throw IoError("cannot read scan report " + report_path);
        report = scan_report_from_json(nlohmann::json::parse(in));
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::kBadCorpus;
      }
    } else {
      err << "error: compare needs --report or --index\n";
      return exit_code::kBadCorpus;
    }
    const auto declared = parse_declared_dependencies(project_dir);
    auto cmp = compare(report.tpl_artifact_ids(), declared.coordinates);
    for (const auto& w : declared.warnings) cmp.warnings.push_back(w);
    auto j = to_json(cmp);
    j["header"] = detail::report_header("compare", cfg);
    if (!detail::emit(j.dump(2) + "\n", out_path, out)) {
      err << "error: cannot write " << out_path << "\n";
      return exit_code::kOutputFailure;
    }
    err << "IR=" << cmp.ir << "% DR=" << cmp.dr << "%\n";
    return exit_code::kOk;
  }

  if (*metrics_cmd) {
    if (!fs::is_directory(dir_a) || !fs::is_directory(dir_b)) {
      err << "error: metrics needs two readable directories\n";
      return exit_code::kBadProject;
    }
    std::vector<std::string> warnings;
    std::vector<CloneClass> classes;
    const MetricsConfig mcfg = cfg.metrics();
    for (const auto& [label, dir] : {std::pair<std::string, std::string>{"a", dir_a}, {"b", dir_b}})
      for (const auto& u : detail::parse_tree(dir, warnings)) classes.push_back(make_clone_class(label, u, mcfg));
    const auto rel = function_clone_pairs(classes, cfg.clone_scope);
    std::set<std::pair<std::size_t, std::size_t>> class_pairs;
    std::set<FunctionRef> participants;
    for (const auto& [x, y] : rel.pairs) {
      class_pairs.emplace(std::min(x.cls, y.cls), std::max(x.cls, y.cls));
      participants.insert(x);
      participants.insert(y);
    }
    std::string text = nlohmann::json{{"type", "header"}, {"header", detail::report_header("metrics", cfg)}}.dump() + "\n";
    std::vector<double> conj_values, assoc_values;
    for (const auto& [a, b] : class_pairs) {
      const auto r = conjugate_percentage(classes, a, b, rel);
      conj_values.push_back(r.percentage);
      text += nlohmann::json{{"type", "conjugate"},     {"class_a", classes[a].project + ":" + r.class_a},
                             {"class_b", classes[b].project + ":" + r.class_b}, {"n", r.n},
                             {"m", r.m},                {"matching_size", r.matching_size},
                             {"percentage", r.percentage}}
                  .dump() +
              "\n";
    }
    for (const auto& caller : participants) {
      const auto r = associated_percentage(classes, caller, rel, cfg.associated_mode);
      if (!r) continue;
      assoc_values.push_back(r->percentage);
      const auto& cls = classes[caller.cls];
      const auto& fn = cls.functions[caller.fn];
      nlohmann::json rec{{"type", "associated"},
                         {"caller", cls.project + ":" + cls.name + "." + fn.name + "/" + std::to_string(fn.arity)},
                         {"callee_total", r->callee_total},
                         {"callee_cloned", r->callee_cloned},
                         {"percentage", r->percentage}};
      if (r->counterpart) rec["counterpart"] = classes[*r->counterpart].project + ":" + classes[*r->counterpart].name;
      text += rec.dump() + "\n";
    }
    text += nlohmann::json{{"type", "summary"},
                           {"bucket_labels", {"0-10", "10-20", "20-30", "30-40", "40-50", "50-60", "60-70", "70-80",
                                              "80-90", "90-100", "100"}},
                           {"conjugate_histogram", percentage_histogram(conj_values)},
                           {"associated_histogram", percentage_histogram(assoc_values)},
                           {"function_clone_pairs", rel.pairs.size()},
                           {"warnings", warnings}}
                .dump() +
            "\n";
    if (!detail::emit(text, out_path, out)) {
      err << "error: cannot write " << out_path << "\n";
      return exit_code::kOutputFailure;
    }
    err << rel.pairs.size() << " function clone pairs, " << class_pairs.size() << " class pairs\n";
    return exit_code::kOk;
  }
  return exit_code::kOk;
}

}  // namespace jcfinder
