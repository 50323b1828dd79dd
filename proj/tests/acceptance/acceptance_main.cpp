// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jcfinder/jcfinder.hpp"
#include "support/corpus_fixture.hpp"
#include "support/fs_utils.hpp"
#include "support/java_model.hpp"
#include "support/listings.hpp"
#include "support/mutations.hpp"
#include "support/oracles.hpp"

using namespace jcfinder;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::optional<FeatureHash> class_feature_hash(const std::string& src) {
  const auto units = parse_source({"G.java", src});
  if (units.empty()) return std::nullopt;
  const auto ex = extract_class_feature(units.front());
  if (!ex.feature) return std::nullopt;
  return ex.feature->hash;
}

// 1. Hash invariance under non-semantic edits; sensitivity to semantic edits.
Outcome hash_invariance() {
  const auto t0 = Clock::now();
  std::size_t inv_total = 0, inv_same = 0, sem_total = 0, sem_diff = 0, seeds_used = 0;
  std::string first_failure;
  for (std::uint64_t seed = 1; seeds_used < 20; ++seed) {
    jcf_test::JavaGenerator gen(seed * 7919);
    jcf_test::Mutator mut(seed * 104729);
    const auto base = gen.make_class("seed.pkg" + std::to_string(seed), "Seed" + std::to_string(seed));
    const auto h = class_feature_hash(base.render());
    if (!h) continue;
    ++seeds_used;
    for (int round = 0; round < 2; ++round) {
      for (int k = 0; k < 6; ++k) {
        const auto kind = static_cast<jcf_test::InvariantKind>(k);
        if (kind == jcf_test::InvariantKind::StatementReorder && !mut.has_swappable(base)) continue;
        ++inv_total;
        if (class_feature_hash(mut.invariant(base, kind).render()) == h) ++inv_same;
        else if (first_failure.empty()) first_failure = std::string("invariant ") + jcf_test::name_of(kind);
      }
    }
    for (int round = 0; round < 4; ++round) {
      for (int k = 0; k < 3; ++k) {
        const auto kind = static_cast<jcf_test::SemanticKind>(k);
        ++sem_total;
        if (class_feature_hash(mut.semantic(base, kind).render()) != h) ++sem_diff;
        else if (first_failure.empty()) first_failure = std::string("semantic ") + jcf_test::name_of(kind);
      }
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = inv_total >= 200 && inv_same == inv_total && sem_total >= 200 && sem_diff == sem_total && secs < 30;
  o.detail = "seeds=20 invariant " + std::to_string(inv_same) + "/" + std::to_string(inv_total) + " unchanged, semantic " +
             std::to_string(sem_diff) + "/" + std::to_string(sem_total) + " changed, " + fmt("%.2fs", secs);
  if (!first_failure.empty()) o.detail += ", first failure: " + first_failure;
  return o;
}

CloneClass synthetic_class(const std::string& project, const std::string& name, const std::vector<std::uint64_t>& h) {
  CloneClass c{project, name, {}};
  for (std::size_t k = 0; k < h.size(); ++k) c.functions.push_back({"f" + std::to_string(k), 0, FeatureHash{h[k]}, false, {}});
  return c;
}

// 2. Conjugate clone percentage example and matching optimality.
Outcome conjugate_clone() {
  std::vector<std::uint64_t> ha, hb;
  for (std::uint64_t k = 0; k < 10; ++k) {
    ha.push_back(1000 + k);
    hb.push_back(2000 + k);
  }
  hb[4] = ha[2];
  hb[8] = ha[5];
  const std::vector<CloneClass> classes = {synthetic_class("A", "ClassA", ha), synthetic_class("B", "ClassB", hb)};
  const auto r = conjugate_percentage(classes, 0, 1, function_clone_pairs(classes));

  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> side(0, 8), density(1, 4);
  std::size_t agree = 0;
  const std::size_t instances = 500;
  for (std::size_t t = 0; t < instances; ++t) {
    const int n = side(rng), m = side(rng);
    std::bernoulli_distribution edge(density(rng) / 8.0);
    std::vector<std::vector<std::size_t>> adj(static_cast<std::size_t>(n));
    std::vector<std::vector<bool>> dense(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(m)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j)
        if (edge(rng)) {
          adj[static_cast<std::size_t>(i)].push_back(static_cast<std::size_t>(j));
          dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
        }
    if (maximum_matching(adj, static_cast<std::size_t>(m)) == jcf_test::exhaustive_matching(dense)) ++agree;
  }
  Outcome o;
  o.pass = r.percentage == 0.2 && r.matching_size == 2 && agree == instances;
  o.detail = "10+10 with 2 pairs -> " + fmt("%.17g", r.percentage) + ", matching agrees with exhaustive oracle on " +
             std::to_string(agree) + "/" + std::to_string(instances);
  return o;
}

// 3. IR and DR against set arithmetic.
Outcome rates() {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> size(0, 10), elem(0, 15);
  std::size_t agree = 0, empty_pm = 0;
  const std::size_t pairs = 1000;
  for (std::size_t t = 0; t < pairs; ++t) {
    std::set<std::string> cc, pm;
    const int nc = t % 10 == 0 ? 1 + size(rng) : size(rng);
    const int np = t % 10 == 0 ? 0 : size(rng);
    for (int k = 0; k < nc; ++k) cc.insert("g" + std::to_string(elem(rng)) + ":a");
    for (int k = 0; k < np; ++k) pm.insert("g" + std::to_string(elem(rng)) + ":a");
    if (pm.empty()) ++empty_pm;
    const bool ok = improvement_rate(cc, pm) == jcf_test::ir_oracle(cc, pm) &&
                    duplication_rate(cc, pm) == jcf_test::dr_oracle(cc, pm) &&
                    (!pm.empty() || cc.empty() || improvement_rate(cc, pm) == 100.0);
    if (ok) ++agree;
  }
  Outcome o;
  o.pass = agree == pairs && empty_pm > 0;
  o.detail = std::to_string(agree) + "/" + std::to_string(pairs) + " exact (" + std::to_string(empty_pm) +
             " with empty declared set)";
  return o;
}

// 4. Triviality classification.
Outcome triviality() {
  std::mt19937_64 rng(404);
  std::size_t getters = 0, getters_trivial = 0;
  double getter_max = 0;
  for (int c = 0; c < 15; ++c) {
    const auto units = parse_source({"B.java", jcf_test::getter_setter_class(rng, "Bean" + std::to_string(c), 2)});
    for (const auto& fn : units[0].functions) {
      const double s = complexity(compute_metrics(fn)).value;
      getter_max = std::max(getter_max, s);
      ++getters;
      if (s < 60.0) ++getters_trivial;
    }
  }
  std::size_t algos = 0, algos_heavy = 0;
  double algo_min = 1e9;
  for (int i = 0; i < 20; ++i) {
    const auto units = parse_source({"A.java", "class A {\n" + jcf_test::algorithmic_method(rng, "algo", 4 + i % 5) + "}\n"});
    const double s = complexity(compute_metrics(units[0].functions[0])).value;
    algo_min = std::min(algo_min, s);
    ++algos;
    if (s > 60.0) ++algos_heavy;
  }
  const auto score = [](const std::string& cls) {
    return complexity(compute_metrics(parse_source({"L.java", cls})[0].functions[0])).value;
  };
  const double copy = score(jcf_test::kCopyAllJarsClass);
  const double param = score(jcf_test::kNewParamClass);
  Outcome o;
  o.pass = getters >= 50 && getters_trivial == getters && algos >= 20 && algos_heavy == algos && copy >= 60.0 &&
           param < 60.0 && std::fabs(copy - jcf_test::kCopyAllJarsReference) <= 20.0 &&
           std::fabs(param - jcf_test::kNewParamReference) <= 20.0;
  o.detail = std::to_string(getters_trivial) + "/" + std::to_string(getters) + " accessors trivial (max " +
             fmt("%.2f", getter_max) + "), " + std::to_string(algos_heavy) + "/" + std::to_string(algos) +
             " algorithmic non-trivial (min " + fmt("%.2f", algo_min) + "), listings " + fmt("%.2f", copy) +
             " (reference 63) and " + fmt("%.2f", param) + " (reference 52)";
  return o;
}

// 5. PageRank against a dense power iteration; retained set at cutoff 50.
Outcome pagerank_oracle() {
  std::mt19937_64 rng(505);
  const std::size_t n = 20;
  double worst = 0;
  std::size_t set_agree = 0;
  const std::size_t graphs = 50;
  for (std::size_t t = 0; t < graphs; ++t) {
    std::bernoulli_distribution coin(0.05 + 0.01 * static_cast<double>(t % 15));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<ClassNodeInfo> nodes;
    auto name = [](std::size_t i) { return "p.N" + std::string(i < 10 ? "0" : "") + std::to_string(i); };
    for (std::size_t i = 0; i < n; ++i) nodes.push_back({name(i), name(i).substr(2), "p", {}});
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && coin(rng)) {
          edges.emplace_back(a, b);
          nodes[b].referenced_types.insert(name(a).substr(2));
        }
    const auto g = build_class_graph(nodes);
    const auto r = centrality_filter(g, 50.0);
    const auto oracle = jcf_test::dense_pagerank(n, edges);
    double l1 = 0;
    for (std::size_t i = 0; i < n; ++i) l1 += std::fabs(r.scores[i] - oracle[i]);
    worst = std::max(worst, l1);
    // Oracle ranking: score descending at 1e-9 resolution, then name.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) {
      if (std::fabs(oracle[a] - oracle[b]) > 1e-9) return oracle[a] > oracle[b];
      return name(a) < name(b);
    });
    std::set<std::string> expected;
    for (std::size_t k = 0; k < n; ++k)
      if (100.0 * static_cast<double>(k) / static_cast<double>(n - 1) <= 50.0) expected.insert(name(idx[k]));
    if (r.retained == expected) ++set_agree;
  }
  Outcome o;
  o.pass = worst < 1e-6 && set_agree == graphs;
  o.detail = "max L1 " + fmt("%.3g", worst) + " over " + std::to_string(graphs) + " graphs, retained set matches " +
             std::to_string(set_agree) + "/" + std::to_string(graphs);
  return o;
}

// 6. Dedup attribution against the earliest-occurrence oracle, plus the misattribution scenario.
Outcome attribution() {
  std::mt19937_64 rng(606);
  std::size_t corpora_ok = 0;
  const std::size_t corpora = 100;
  for (std::size_t t = 0; t < corpora; ++t) {
    const int groups = std::uniform_int_distribution<int>(3, 6)(rng);
    std::uniform_int_distribution<int> grp(0, groups - 1), art(0, 2), ver(0, 3), hash(1, 40), count(50, 150);
    // Distinct timestamps per (group, artifact, version), shuffled.
    std::vector<std::int64_t> stamps(static_cast<std::size_t>(groups * 3 * 4));
    std::iota(stamps.begin(), stamps.end(), 1000);
    std::shuffle(stamps.begin(), stamps.end(), rng);
    std::vector<RawFeature> raw;
    std::vector<jcf_test::Occurrence> occ;
    for (int i = count(rng); i > 0; --i) {
      const int g = grp(rng), a = art(rng), v = ver(rng);
      const std::int64_t ts = stamps[static_cast<std::size_t>((g * 3 + a) * 4 + v)];
      const auto h = static_cast<std::uint64_t>(hash(rng));
      const std::string gs = "org.g" + std::to_string(g), as = "a" + std::to_string(a), vs = "1." + std::to_string(v);
      raw.push_back({FeatureHash{h}, {gs, as, vs}, ts, gs + ".C", "C.java"});
      occ.push_back({h, gs, as, vs, ts});
    }
    std::shuffle(raw.begin(), raw.end(), rng);
    const auto out = dedup_features(raw);
    const auto oracle = jcf_test::attribution_oracle(occ);
    bool ok = out.size() == oracle.size();
    for (const auto& rec : out) {
      const auto it = oracle.find(rec.hash.value);
      ok = ok && it != oracle.end() && it->second.group == rec.origin_group && it->second.timestamp == rec.timestamp &&
           it->second.releases == std::set<std::pair<std::string, std::string>>(rec.releases.begin(), rec.releases.end());
    }
    if (ok) ++corpora_ok;
  }

  // A's first release has no sources; B releases ClassC at t1; A releases ClassC at t2 > t1.
  // Expected outcome: ClassC is attributed to B, the earliest release that carries it.
  jcf_test::TempDir tmp("jcf-acc6");
  jcf_test::JavaGenerator gen(66);
  const auto class_c = gen.make_class("org.a", "ClassC");
  fs::create_directories(tmp / "org.a/a/1.0");
  jcf_test::write_file(tmp / "org.b/b/1.0/ClassC.java", class_c.render());
  jcf_test::write_file(tmp / "org.a/a/2.0/ClassC.java", class_c.render());
  CorpusManifest m;
  m.created_at = 1;
  m.tool_version = "acceptance";
  m.base_dir = tmp.path();
  m.libraries = {{"org.a", "a", {{"1.0", 1000, ""}, {"2.0", 3000, ""}}}, {"org.b", "b", {{"1.0", 2000, ""}}}};
  const auto built = build_index(ingest_corpus(m));
  const bool scenario = built.index.records.size() == 1 && built.index.records.begin()->second.origin_group == "org.b" &&
                        built.index.stats.missing_source_versions == 1;
  Outcome o;
  o.pass = corpora_ok == corpora && scenario;
  o.detail = std::to_string(corpora_ok) + "/" + std::to_string(corpora) + " corpora match oracle; missing-source scenario " +
             (scenario ? "attributes ClassC to org.b as expected" : "MISATTRIBUTED");
  return o;
}

// 7. End-to-end recognition on the fixture corpus, with a file-hash baseline.
Outcome end_to_end() {
  const auto t0 = Clock::now();
  jcf_test::TempDir tmp("jcf-acc7");
  const auto fx = jcf_test::build_e2e_fixture(tmp.path());
  const auto index = build_index(ingest_corpus(CorpusManifest::load(fx.manifest))).index;
  std::size_t tp = 0, fp = 0, fn = 0;
  std::string misses;
  for (const auto& p : fx.projects) {
    const auto found = recognize(extract_project_features(fx.projects_dir / p.name), index).tpl_artifact_ids();
    for (const auto& f : found) (p.truth.count(f) ? tp : fp) += 1;
    for (const auto& t : p.truth)
      if (!found.count(t)) ++fn;
    if (found != p.truth) misses += " " + p.name;
  }
  // Baseline: whole-file normalized text hashes.
  std::map<FeatureHash, std::set<std::string>> file_index;
  for (const auto& lib : fx.libraries)
    for (const auto& v : lib.versions)
      for (const auto& [path, content] : v.files)
        if (path.ends_with(".java")) file_index[file_hash({path, content})].insert(lib.ga());
  std::set<std::string> baseline_missed;
  for (const auto& p : fx.projects) {
    std::set<std::string> found;
    for (const auto& [path, content] : p.files) {
      if (!path.ends_with(".java")) continue;
      if (auto it = file_index.find(file_hash({path, content})); it != file_index.end())
        found.insert(it->second.begin(), it->second.end());
    }
    for (const auto& t : p.truth)
      if (!found.count(t)) baseline_missed.insert(p.name);
  }
  const double precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  const double recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = precision == 1.0 && recall == 1.0 && baseline_missed.count("gif") && secs < 60;
  std::string missed_list;
  for (const auto& b : baseline_missed) missed_list += (missed_list.empty() ? "" : ",") + b;
  o.detail = "precision " + fmt("%.3f", precision) + " recall " + fmt("%.3f", recall) + " over " +
             std::to_string(fx.projects.size()) + " projects; file-hash baseline misses {" + missed_list + "}, " +
             fmt("%.2fs", secs);
  if (!misses.empty()) o.detail += "; mismatched:" + misses;
  return o;
}

// 8. Deterministic build, round-trip, and scan speed against a 10,000-record index.
Outcome determinism() {
  jcf_test::TempDir tmp("jcf-acc8");
  const auto fx = jcf_test::build_e2e_fixture(tmp.path());
  const auto manifest = CorpusManifest::load(fx.manifest);
  save_index(build_index(ingest_corpus(manifest, {}, 1)).index, tmp / "a.idx");
  save_index(build_index(ingest_corpus(manifest, {}, 4)).index, tmp / "b.idx");
  const bool identical = jcf_test::read_text(tmp / "a.idx") == jcf_test::read_text(tmp / "b.idx");

  auto index = load_index(tmp / "a.idx");
  save_index(index, tmp / "c.idx");
  const bool round_trip = load_index(tmp / "c.idx") == index &&
                          jcf_test::read_text(tmp / "c.idx") == jcf_test::read_text(tmp / "a.idx");

  std::mt19937_64 rng(808);
  while (index.records.size() < 10000) {
    FeatureRecord r;
    r.hash = FeatureHash{rng()};
    r.origin_group = "org.synthetic" + std::to_string(index.records.size() % 97);
    r.releases = {{"lib", "1.0"}};
    r.timestamp = 1;
    r.exemplar_class = "org.synthetic.C" + std::to_string(index.records.size());
    r.exemplar_path = "C.java";
    index.records.emplace(r.hash, r);
  }
  index.stats.refined_feature_count = index.records.size();
  save_index(index, tmp / "big.idx");

  jcf_test::JavaGenerator gen(88);
  for (int i = 0; i < 200; ++i) {
    const auto c = gen.make_class("com.big.m" + std::to_string(i % 10), "Part" + std::to_string(i));
    jcf_test::write_file(tmp / ("bigproject/src/m" + std::to_string(i % 10) + "/" + c.name + ".java"), c.render());
  }
  jcf_test::write_file(tmp / "bigproject/src/vendor/AlphaEngine.java",
                       fx.library("alpha").classes.at("AlphaEngine").render());
  const auto t0 = Clock::now();
  const auto loaded = load_index(tmp / "big.idx");
  const auto rep = recognize(extract_project_features(tmp / "bigproject"), loaded);
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = identical && round_trip && loaded.records.size() == 10000 && rep.scanned_files == 201 &&
           rep.tpl_artifact_ids() == std::set<std::string>{"org.alpha:alpha-core"} && secs < 5.0;
  o.detail = std::string("rebuild byte-identical=") + (identical ? "yes" : "no") +
             ", round-trip equal=" + (round_trip ? "yes" : "no") + ", scan of " + std::to_string(rep.scanned_files) +
             " files against " + std::to_string(loaded.records.size()) + " records in " + fmt("%.2fs", secs);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 hash invariance", hash_invariance},  {"2 conjugate clone", conjugate_clone},
      {"3 IR/DR formulas", rates},              {"4 triviality classification", triviality},
      {"5 PageRank oracle", pagerank_oracle},   {"6 dedup attribution", attribution},
      {"7 end-to-end SCA", end_to_end},         {"8 determinism and round-trip", determinism}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
