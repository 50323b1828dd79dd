#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "jcfinder/errors.hpp"
#include "jcfinder/features.hpp"
#include "jcfinder/hash.hpp"
#include "jcfinder/parallel.hpp"
#include "jcfinder/refinery.hpp"
#include "jcfinder/source_model.hpp"
#include "jcfinder/version.hpp"
#include "jcfinder/zip_archive.hpp"

namespace jcfinder {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct ManifestVersion {
  std::string version;
  std::int64_t timestamp = 0;
  std::string path;  // relative to the manifest directory; empty means <group>/<artifact>/<version>
};

struct ManifestLibrary {
  std::string group;
  std::string artifact;
  std::vector<ManifestVersion> versions;
};

struct CorpusManifest {
  std::int64_t created_at = 0;
  std::string tool_version;
  std::vector<ManifestLibrary> libraries;
  fs::path base_dir;  // not serialized

  json to_json() const {
    json libs = json::array();
    for (const auto& l : libraries) {
      json vs = json::array();
      for (const auto& v : l.versions)
        vs.push_back({{"version", v.version}, {"timestamp", v.timestamp}, {"path", v.path}});
      libs.push_back({{"group", l.group}, {"artifact", l.artifact}, {"versions", vs}});
    }
    return {{"created_at", created_at}, {"tool_version", tool_version}, {"libraries", libs}};
  }

  // FNV-1a-64 over the canonical (sorted-key, compact) JSON rendering.
  std::string digest() const { return FeatureHash{fnv1a64(to_json().dump())}.hex(); }

  static CorpusManifest from_json(const json& j) {
    auto fail = [](const std::string& what) -> void { throw InvalidInput("manifest: " + what); };
    if (!j.is_object()) fail("top level must be an object");
    CorpusManifest m;
    m.created_at = j.value("created_at", std::int64_t{0});
    m.tool_version = j.value("tool_version", std::string());
    if (!j.contains("libraries") || !j["libraries"].is_array()) fail("missing 'libraries' array");
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (std::size_t li = 0; li < j["libraries"].size(); ++li) {
      const auto& lj = j["libraries"][li];
      const std::string where = "libraries[" + std::to_string(li) + "]";
      if (!lj.is_object() || !lj.contains("group") || !lj.contains("artifact") || !lj.contains("versions"))
        fail(where + " needs group, artifact and versions");
      ManifestLibrary lib;
      lib.group = lj["group"].get<std::string>();
      lib.artifact = lj["artifact"].get<std::string>();
      if (lib.group.empty() || lib.artifact.empty()) fail(where + " has an empty group or artifact");
      for (std::size_t vi = 0; vi < lj["versions"].size(); ++vi) {
        const auto& vj = lj["versions"][vi];
        const std::string vwhere = where + ".versions[" + std::to_string(vi) + "]";
        if (!vj.is_object() || !vj.contains("version") || !vj.contains("timestamp"))
          fail(vwhere + " needs version and timestamp");
        ManifestVersion v;
        v.version = vj["version"].get<std::string>();
        v.timestamp = vj["timestamp"].get<std::int64_t>();
        v.path = vj.value("path", std::string());
        if (v.version.empty()) fail(vwhere + " has an empty version");
        if (v.timestamp <= 0) fail(vwhere + " timestamp must be positive");
        if (!seen.emplace(lib.group, lib.artifact, v.version).second)
          fail(vwhere + " duplicates " + lib.group + ":" + lib.artifact + ":" + v.version);
        lib.versions.push_back(std::move(v));
      }
      m.libraries.push_back(std::move(lib));
    }
    return m;
  }

  static CorpusManifest load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read manifest " + path.string());
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw InvalidInput("manifest " + path.string() + ": " + e.what());
    }
    try {
      auto m = from_json(j);
      m.base_dir = path.parent_path();
      return m;
    } catch (const json::exception& e) {
      throw InvalidInput("manifest " + path.string() + ": " + e.what());
    }
  }
};

struct VersionIngest {
  ReleaseMeta meta;
  std::vector<ClassNodeInfo> classes;  // every parsed class, for the dependency graph
  std::vector<ClassFeature> features;  // classes surviving C1 and C2
  std::vector<RemovalEntry> removed;
  std::size_t files = 0;
  std::size_t skipped_files = 0;
  bool missing_source = false;
  std::vector<std::string> warnings;
};

struct IngestResult {
  std::vector<VersionIngest> versions;
  std::size_t library_count = 0;
  std::string manifest_digest;
};

namespace detail {

inline bool has_extension(const fs::path& p, std::initializer_list<const char*> exts) {
  const auto e = lower(p.extension().string());
  for (auto x : exts)
    if (e == x) return true;
  return false;
}

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// Source files of one release: expanded `.java` files under the directory, otherwise
// the `.java` entries of source archives found there. Sorted by path.
inline std::vector<SourceFile> release_sources(const fs::path& root) {
  std::vector<SourceFile> out;
  auto from_archive = [&](const fs::path& archive) {
    for (auto& e : zip::read_archive_file(archive.string()))
      if (has_extension(e.name, {".java"})) out.push_back({e.name, std::move(e.data)});
  };
  if (fs::is_regular_file(root)) {
    from_archive(root);
  } else {
    std::vector<fs::path> archives;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (!entry.is_regular_file()) continue;
      const auto& p = entry.path();
      if (has_extension(p, {".java"})) out.push_back({fs::relative(p, root).generic_string(), read_file(p)});
      else if (has_extension(p, {".jar", ".zip"})) archives.push_back(p);
    }
    if (out.empty()) {
      std::sort(archives.begin(), archives.end());
      for (const auto& a : archives) from_archive(a);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  return out;
}

}  // namespace detail

// Parses and extracts every release of the manifest. Unparseable files are skipped and
// counted; releases without any `.java` source are flagged missing_source.
// A '-', '.', '_' or ':' separated token naming an OS or CPU, e.g. "natives-linux-x86_64".
// Curation is left to the operator; ingestion only warns.
inline std::optional<std::string> platform_variant_token(std::string_view name) {
  static const std::set<std::string, std::less<>> kTokens = {"aarch64", "amd64", "arm64", "armv7", "darwin", "i386",
                                                             "linux",   "macos", "osx",   "win32", "win64",  "windows",
                                                             "x64",     "x86",   "x86_64"};
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (auto pos = lower.find("x86_64"); pos != std::string::npos) return std::string("x86_64");
  std::size_t start = 0;
  while (start <= lower.size()) {
    const auto end = lower.find_first_of("-._:", start);
    const auto token = lower.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (kTokens.count(token)) return token;
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return std::nullopt;
}

inline IngestResult ingest_corpus(const CorpusManifest& manifest, const MetricsConfig& metrics = {},
                                  unsigned workers = 1) {
  struct Job {
    ReleaseMeta meta;
    fs::path root;
  };
  std::vector<Job> jobs;
  std::set<std::pair<std::string, std::string>> libraries;
  for (const auto& lib : manifest.libraries) {
    libraries.emplace(lib.group, lib.artifact);
    for (const auto& v : lib.versions) {
      const fs::path rel = v.path.empty() ? fs::path(lib.group) / lib.artifact / v.version : fs::path(v.path);
      const fs::path root = rel.is_absolute() ? rel : manifest.base_dir / rel;
      if (!fs::exists(root))
        throw IoError("corpus path for " + lib.group + ":" + lib.artifact + ":" + v.version + " not found: " +
                      root.string());
      jobs.push_back({{{lib.group, lib.artifact, v.version}, v.timestamp}, root});
    }
  }
  IngestResult result;
  result.library_count = libraries.size();
  result.manifest_digest = manifest.digest();
  result.versions = parallel_map(jobs.size(), workers, [&](std::size_t i) {
    const auto& job = jobs[i];
    VersionIngest vi;
    vi.meta = job.meta;
    if (auto token = platform_variant_token(job.meta.coordinate.artifact + "-" + job.meta.coordinate.version))
      vi.warnings.push_back("PlatformVariant: " + job.meta.coordinate.render() + " looks platform-specific (" +
                            *token + ")");
    const auto sources = detail::release_sources(job.root);
    vi.files = sources.size();
    if (sources.empty()) {
      vi.missing_source = true;
      vi.warnings.push_back("MissingSource: " + job.meta.coordinate.render() + " has no .java sources");
      return vi;
    }
    for (const auto& src : sources) {
      std::vector<ClassUnit> units;
      try {
        units = parse_source(src);
      } catch (const Error& e) {
        ++vi.skipped_files;
        vi.warnings.push_back("ParseError: " + job.meta.coordinate.render() + ": " + e.what());
        continue;
      }
      for (const auto& cls : units) {
        vi.classes.push_back(node_info(cls));
        auto ex = extract_class_feature(cls, metrics);
        for (auto& w : ex.warnings) vi.warnings.push_back(std::move(w));
        if (ex.feature) vi.features.push_back(std::move(*ex.feature));
        else vi.removed.push_back({cls.qualified_name, cls.source_path, *ex.removed_by, ex.max_score});
      }
    }
    return vi;
  });
  return result;
}

struct IndexStats {
  std::size_t library_count = 0;
  std::size_t version_count = 0;
  std::size_t raw_feature_count = 0;
  std::size_t refined_feature_count = 0;
  std::size_t missing_source_versions = 0;
  std::size_t skipped_files = 0;

  friend bool operator==(const IndexStats&, const IndexStats&) = default;
};

struct ReferenceIndex {
  std::unordered_map<FeatureHash, FeatureRecord> records;
  IndexStats stats;
  std::string manifest_digest;

  const FeatureRecord* lookup(FeatureHash h) const {
    auto it = records.find(h);
    return it == records.end() ? nullptr : &it->second;
  }

  std::vector<const FeatureRecord*> sorted_records() const {
    std::vector<const FeatureRecord*> out;
    out.reserve(records.size());
    for (const auto& [_, r] : records) out.push_back(&r);
    std::sort(out.begin(), out.end(), [](const auto* a, const auto* b) { return a->hash < b->hash; });
    return out;
  }

  friend bool operator==(const ReferenceIndex&, const ReferenceIndex&) = default;
};

struct BuildOutcome {
  ReferenceIndex index;
  std::vector<RemovalEntry> removal_log;  // all criteria, in release order
  std::vector<std::string> warnings;
};

// Refines ingested releases: C3/C4 name filters, per-release centrality, then dedup.
inline BuildOutcome build_index(const IngestResult& ingest, const RefineryConfig& cfg = {}) {
  BuildOutcome out;
  std::vector<RawFeature> raw;
  auto& stats = out.index.stats;
  stats.library_count = ingest.library_count;
  stats.version_count = ingest.versions.size();
  for (const auto& v : ingest.versions) {
    stats.raw_feature_count += v.features.size();
    stats.skipped_files += v.skipped_files;
    if (v.missing_source) ++stats.missing_source_versions;
    for (const auto& w : v.warnings) out.warnings.push_back(w);
    for (const auto& r : v.removed) out.removal_log.push_back(r);
    if (v.features.empty()) continue;
    std::vector<const ClassFeature*> named;
    for (const auto& f : v.features) {
      RemovalEntry why;
      if (passes_name_filters(f, cfg, &why)) named.push_back(&f);
      else out.removal_log.push_back(std::move(why));
    }
    if (named.empty()) continue;
    const auto graph = build_class_graph(v.classes);
    const auto central = centrality_filter(graph, cfg.percentile_cutoff);
    std::map<std::string, double> percentile;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) percentile[graph.nodes[i]] = central.percentiles[i];
    for (const auto* f : named) {
      if (!central.retained.count(f->qualified_name)) {
        out.removal_log.push_back({f->qualified_name, f->source_path, Criterion::Centrality, percentile[f->qualified_name]});
        continue;
      }
      raw.push_back({f->hash, v.meta.coordinate, v.meta.timestamp, f->qualified_name, f->source_path});
    }
  }
  for (auto& rec : dedup_features(raw)) {
    const auto h = rec.hash;
    out.index.records.emplace(h, std::move(rec));
  }
  stats.refined_feature_count = out.index.records.size();
  out.index.manifest_digest = ingest.manifest_digest;
  if (out.index.records.empty()) out.warnings.push_back("EmptyIndex: no features survived refinement");
  return out;
}

inline constexpr int kIndexFormatVersion = 1;
inline constexpr const char* kIndexFormatName = "jcfinder-index";

namespace detail {

inline json record_to_json(const FeatureRecord& r) {
  json releases = json::array();
  for (const auto& [a, v] : r.releases) releases.push_back({{"artifact", a}, {"version", v}});
  return {{"hash", r.hash.hex()},
          {"origin_group", r.origin_group},
          {"releases", releases},
          {"timestamp", r.timestamp},
          {"exemplar", {{"class", r.exemplar_class}, {"path", r.exemplar_path}}}};
}

inline FeatureRecord record_from_json(const json& j) {
  FeatureRecord r;
  auto h = FeatureHash::from_hex(j.at("hash").get<std::string>());
  if (!h) throw IoError("index: malformed hash");
  r.hash = *h;
  r.origin_group = j.at("origin_group").get<std::string>();
  for (const auto& rel : j.at("releases"))
    r.releases.emplace_back(rel.at("artifact").get<std::string>(), rel.at("version").get<std::string>());
  if (r.releases.empty()) throw IoError("index: record without releases");
  r.timestamp = j.at("timestamp").get<std::int64_t>();
  r.exemplar_class = j.at("exemplar").at("class").get<std::string>();
  r.exemplar_path = j.at("exemplar").at("path").get<std::string>();
  return r;
}

inline json stats_to_json(const IndexStats& s) {
  return {{"library_count", s.library_count},
          {"version_count", s.version_count},
          {"raw_feature_count", s.raw_feature_count},
          {"refined_feature_count", s.refined_feature_count},
          {"missing_source_versions", s.missing_source_versions},
          {"skipped_files", s.skipped_files}};
}

inline IndexStats stats_from_json(const json& j) {
  IndexStats s;
  s.library_count = j.at("library_count").get<std::size_t>();
  s.version_count = j.at("version_count").get<std::size_t>();
  s.raw_feature_count = j.at("raw_feature_count").get<std::size_t>();
  s.refined_feature_count = j.at("refined_feature_count").get<std::size_t>();
  s.missing_source_versions = j.at("missing_source_versions").get<std::size_t>();
  s.skipped_files = j.at("skipped_files").get<std::size_t>();
  return s;
}

}  // namespace detail

// Header line, one record per line sorted by hash, trailer line. Keys are sorted.
inline std::string serialize_index(const ReferenceIndex& index) {
  std::string out;
  const auto sorted = index.sorted_records();
  json header = {{"format", kIndexFormatName},
                 {"format_version", kIndexFormatVersion},
                 {"tool_version", std::string(kToolVersion)},
                 {"manifest_digest", index.manifest_digest},
                 {"records", sorted.size()},
                 {"stats", detail::stats_to_json(index.stats)}};
  out += header.dump() + "\n";
  for (const auto* r : sorted) out += detail::record_to_json(*r).dump() + "\n";
  out += json{{"end", kIndexFormatName}, {"records", sorted.size()}}.dump() + "\n";
  return out;
}

inline ReferenceIndex parse_index(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("index: empty file");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception&) {
    throw FormatVersionMismatch("index: unrecognized header");
  }
  if (!header.is_object() || !header.contains("format") || header["format"] != kIndexFormatName)
    throw FormatVersionMismatch("index: not a jcfinder index");
  if (!header.contains("format_version") || header["format_version"] != kIndexFormatVersion)
    throw FormatVersionMismatch("index: unsupported format version " + header.value("format_version", json()).dump());
  ReferenceIndex index;
  std::size_t expected = 0;
  try {
    expected = header.at("records").get<std::size_t>();
    index.manifest_digest = header.at("manifest_digest").get<std::string>();
    index.stats = detail::stats_from_json(header.at("stats"));
  } catch (const json::exception& e) {
    throw IoError(std::string("index: malformed header: ") + e.what());
  }
  std::optional<FeatureHash> previous;
  for (std::size_t i = 0; i < expected; ++i) {
    if (!std::getline(in, line)) throw IoError("index: truncated after " + std::to_string(i) + " records");
    FeatureRecord r;
    try {
      r = detail::record_from_json(json::parse(line));
    } catch (const json::exception& e) {
      throw IoError("index: malformed record " + std::to_string(i + 1) + ": " + e.what());
    }
    if (previous && !(*previous < r.hash)) throw IoError("index: records out of order or duplicated");
    previous = r.hash;
    index.records.emplace(r.hash, std::move(r));
  }
  if (!std::getline(in, line)) throw IoError("index: missing trailer (truncated file)");
  try {
    const auto trailer = json::parse(line);
    if (trailer.value("end", std::string()) != kIndexFormatName || trailer.value("records", std::size_t{0}) != expected)
      throw IoError("index: trailer mismatch");
  } catch (const json::exception&) {
    throw IoError("index: malformed trailer");
  }
  if (std::getline(in, line) && !line.empty()) throw IoError("index: trailing data after trailer");
  return index;
}

inline void save_index(const ReferenceIndex& index, const fs::path& path) {
  const auto text = serialize_index(index);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write index " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for index " + path.string());
}

inline ReferenceIndex load_index(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read index " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_index(text);
}

inline const FeatureRecord* lookup(const ReferenceIndex& index, FeatureHash h) { return index.lookup(h); }

}  // namespace jcfinder
