#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "jcfinder/errors.hpp"
#include "jcfinder/features.hpp"
#include "jcfinder/hash.hpp"
#include "jcfinder/metrics.hpp"
#include "jcfinder/source_model.hpp"

namespace jcfinder {

struct LibraryCoordinate {
  std::string group;
  std::string artifact;
  std::string version;

  std::string render() const { return group + ":" + artifact + ":" + version; }

  static LibraryCoordinate parse(std::string_view text) {
    const auto a = text.find(':');
    const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
    if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos)
      throw InvalidInput("coordinate must be group:artifact:version: " + std::string(text));
    LibraryCoordinate c{std::string(text.substr(0, a)), std::string(text.substr(a + 1, b - a - 1)),
                        std::string(text.substr(b + 1))};
    if (c.group.empty() || c.artifact.empty() || c.version.empty())
      throw InvalidInput("coordinate components must be non-empty: " + std::string(text));
    return c;
  }

  friend auto operator<=>(const LibraryCoordinate&, const LibraryCoordinate&) = default;
};

struct ReleaseMeta {
  LibraryCoordinate coordinate;
  std::int64_t timestamp = 0;  // ms since epoch, UTC
};

inline const std::vector<std::string>& default_pattern_names() {
  static const std::vector<std::string> kNames = {"Factory", "AbstractFactory", "Builder", "Adapter", "Adaptor",
                                                  "Converter", "Convertor", "Wrapper", "Proxy", "Facade",
                                                  "Decorator", "Delegate", "Registry"};
  return kNames;
}

struct RefineryConfig {
  MetricsConfig metrics;
  std::vector<std::string> pattern_names = default_pattern_names();
  double percentile_cutoff = 50.0;
};

// C3: simple name ends with one of the pattern suffixes (case-sensitive).
inline bool matches_pattern_name(std::string_view simple_name, const std::vector<std::string>& patterns) {
  for (const auto& p : patterns)
    if (!p.empty() && simple_name.ends_with(p)) return true;
  return false;
}

// C4: simple name has prefix/suffix test/tests (any case), or the path lies in a test location.
inline bool matches_test_convention(std::string_view simple_name, std::string_view path) {
  const std::string n = detail::lower(simple_name);
  auto ends = [&](std::string_view s) { return n.size() >= s.size() && n.compare(n.size() - s.size(), s.size(), s) == 0; };
  if (n.rfind("test", 0) == 0 || ends("test") || ends("tests")) return true;
  return is_test_path(path);
}

struct RemovalEntry {
  std::string qualified_name;
  std::string source_path;
  Criterion criterion;
  double value = 0.0;  // max function score (C2) or percentile (centrality)
};

struct SupportingFilterResult {
  std::vector<ClassFeature> retained;
  std::vector<RemovalEntry> removed;
  std::vector<std::string> warnings;
};

// Applies C3 and C4 to already-extracted features (C1/C2 happen during extraction).
inline bool passes_name_filters(const ClassFeature& f, const RefineryConfig& cfg, RemovalEntry* why = nullptr) {
  std::optional<Criterion> c;
  if (matches_pattern_name(f.simple_name, cfg.pattern_names)) c = Criterion::C3_PatternName;
  else if (matches_test_convention(f.simple_name, f.source_path)) c = Criterion::C4_TestName;
  if (!c) return true;
  if (why) *why = RemovalEntry{f.qualified_name, f.source_path, *c, 0.0};
  return false;
}

// C1 -> C2 -> C3 -> C4 over parsed classes.
inline SupportingFilterResult filter_supporting(const std::vector<ClassUnit>& classes, const RefineryConfig& cfg = {}) {
  SupportingFilterResult out;
  for (const auto& cls : classes) {
    auto ex = extract_class_feature(cls, cfg.metrics);
    for (auto& w : ex.warnings) out.warnings.push_back(std::move(w));
    if (!ex.feature) {
      out.removed.push_back({cls.qualified_name, cls.source_path, *ex.removed_by, ex.max_score});
      continue;
    }
    RemovalEntry why;
    if (!passes_name_filters(*ex.feature, cfg, &why)) {
      out.removed.push_back(std::move(why));
      continue;
    }
    out.retained.push_back(std::move(*ex.feature));
  }
  return out;
}

// Minimal per-class data needed for the dependency graph.
struct ClassNodeInfo {
  std::string qualified_name;
  std::string simple_name;
  std::string package_name;
  std::set<std::string> referenced_types;
};

inline ClassNodeInfo node_info(const ClassUnit& c) {
  return {c.qualified_name, c.simple_name, c.package_name, c.referenced_types};
}

// Nodes sorted by qualified name; out[a] lists b for every edge a -> b (a is used in b).
struct ClassGraph {
  std::vector<std::string> nodes;
  std::vector<std::vector<std::size_t>> out;

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& o : out) n += o.size();
    return n;
  }
  bool has_edge(std::size_t a, std::size_t b) const {
    return std::binary_search(out[a].begin(), out[a].end(), b);
  }
};

// Edge A -> B when B references A. A reference that names a qualified class resolves to
// it directly; a simple name shared by several classes resolves to those in B's package
// when any exist, otherwise to all of them.
inline ClassGraph build_class_graph(std::vector<ClassNodeInfo> classes) {
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.qualified_name < b.qualified_name; });
  classes.erase(std::unique(classes.begin(), classes.end(),
                            [](const auto& a, const auto& b) { return a.qualified_name == b.qualified_name; }),
                classes.end());
  ClassGraph g;
  const std::size_t n = classes.size();
  g.out.resize(n);
  std::map<std::string, std::vector<std::size_t>> by_simple;
  std::map<std::string, std::size_t> by_qualified;
  for (std::size_t i = 0; i < n; ++i) {
    g.nodes.push_back(classes[i].qualified_name);
    by_simple[classes[i].simple_name].push_back(i);
    by_qualified[classes[i].qualified_name] = i;
  }
  for (std::size_t b = 0; b < n; ++b) {
    std::set<std::size_t> sources;
    for (const auto& ref : classes[b].referenced_types) {
      if (auto q = by_qualified.find(ref); q != by_qualified.end() && ref.find('.') != std::string::npos) {
        sources.insert(q->second);
        continue;
      }
      auto it = by_simple.find(ref);
      if (it == by_simple.end()) continue;
      std::vector<std::size_t> same_package;
      for (auto a : it->second)
        if (classes[a].package_name == classes[b].package_name) same_package.push_back(a);
      for (auto a : same_package.empty() ? it->second : same_package) sources.insert(a);
    }
    for (auto a : sources)
      if (a != b) g.out[a].push_back(b);
  }
  for (auto& o : g.out) std::sort(o.begin(), o.end());
  return g;
}

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-9;  // L1 change between iterations
  int max_iterations = 200;
};

// Power iteration with uniform teleport; mass of nodes without out-edges is spread uniformly.
inline std::vector<double> pagerank(const ClassGraph& g, const PageRankOptions& opt = {}) {
  const std::size_t n = g.nodes.size();
  if (n == 0) return {};
  std::vector<double> pr(n, 1.0 / static_cast<double>(n)), next(n);
  for (int it = 0; it < opt.max_iterations; ++it) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v)
      if (g.out[v].empty()) dangling += pr[v];
    const double base = (1.0 - opt.damping) / static_cast<double>(n) + opt.damping * dangling / static_cast<double>(n);
    std::fill(next.begin(), next.end(), base);
    for (std::size_t v = 0; v < n; ++v) {
      if (g.out[v].empty()) continue;
      const double share = opt.damping * pr[v] / static_cast<double>(g.out[v].size());
      for (auto w : g.out[v]) next[w] += share;
    }
    double delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) delta += std::abs(next[v] - pr[v]);
    pr.swap(next);
    if (delta < opt.tolerance) break;
  }
  return pr;
}

struct CentralityResult {
  std::vector<double> scores;       // by node index
  std::vector<double> percentiles;  // 0 = most central
  std::set<std::string> retained;   // qualified names with percentile <= cutoff
};

inline CentralityResult centrality_filter(const ClassGraph& g, double cutoff = 50.0, const PageRankOptions& opt = {}) {
  CentralityResult r;
  r.scores = pagerank(g, opt);
  const std::size_t n = g.nodes.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  // Scores are compared at 1e-12 resolution so that symmetric nodes, whose scores differ
  // only by floating-point noise, fall through to the name tie-break.
  std::vector<long long> key(n);
  for (std::size_t i = 0; i < n; ++i) key[i] = std::llround(r.scores[i] * 1e12);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (key[a] != key[b]) return key[a] > key[b];
    return g.nodes[a] < g.nodes[b];
  });
  r.percentiles.assign(n, 0.0);
  for (std::size_t rank = 0; rank < n; ++rank) {
    const double p = n > 1 ? 100.0 * static_cast<double>(rank) / static_cast<double>(n - 1) : 0.0;
    r.percentiles[order[rank]] = p;
    if (p <= cutoff) r.retained.insert(g.nodes[order[rank]]);
  }
  return r;
}

// One raw class feature observed in one library release.
struct RawFeature {
  FeatureHash hash;
  LibraryCoordinate coordinate;
  std::int64_t timestamp = 0;
  std::string qualified_name;
  std::string source_path;
};

struct FeatureRecord {
  FeatureHash hash;
  std::string origin_group;
  std::vector<std::pair<std::string, std::string>> releases;  // (artifact, version), sorted, unique
  std::int64_t timestamp = 0;                                  // earliest release timestamp
  std::string exemplar_class;
  std::string exemplar_path;

  friend bool operator==(const FeatureRecord&, const FeatureRecord&) = default;
};

// Within a group equal hashes merge (release union, earliest timestamp); across groups
// the earliest record wins, ties going to the smaller groupId. Output sorted by hash.
inline std::vector<FeatureRecord> dedup_features(const std::vector<RawFeature>& raw) {
  std::map<std::pair<FeatureHash, std::string>, FeatureRecord> merged;
  std::map<std::pair<FeatureHash, std::string>, std::tuple<std::int64_t, std::string, std::string, std::string, std::string>>
      exemplar_key;
  for (const auto& f : raw) {
    const auto key = std::make_pair(f.hash, f.coordinate.group);
    auto [it, inserted] = merged.try_emplace(key);
    auto& rec = it->second;
    const auto ek = std::make_tuple(f.timestamp, f.coordinate.artifact, f.coordinate.version, f.qualified_name,
                                    f.source_path);
    if (inserted) {
      rec.hash = f.hash;
      rec.origin_group = f.coordinate.group;
      rec.timestamp = f.timestamp;
      exemplar_key[key] = ek;
    } else {
      rec.timestamp = std::min(rec.timestamp, f.timestamp);
      if (ek < exemplar_key[key]) exemplar_key[key] = ek;
    }
    rec.releases.emplace_back(f.coordinate.artifact, f.coordinate.version);
  }
  std::map<FeatureHash, FeatureRecord> winners;
  for (auto& [key, rec] : merged) {
    std::sort(rec.releases.begin(), rec.releases.end());
    rec.releases.erase(std::unique(rec.releases.begin(), rec.releases.end()), rec.releases.end());
    const auto& ek = exemplar_key[key];
    rec.exemplar_class = std::get<3>(ek);
    rec.exemplar_path = std::get<4>(ek);
    auto it = winners.find(rec.hash);
    if (it == winners.end()) {
      winners.emplace(rec.hash, std::move(rec));
    } else if (std::tie(rec.timestamp, rec.origin_group) < std::tie(it->second.timestamp, it->second.origin_group)) {
      it->second = std::move(rec);
    }
  }
  std::vector<FeatureRecord> out;
  out.reserve(winners.size());
  for (auto& [_, rec] : winners) out.push_back(std::move(rec));
  return out;
}

}  // namespace jcfinder
