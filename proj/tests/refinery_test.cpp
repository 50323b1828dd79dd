#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "jcfinder/refinery.hpp"
#include "support/java_model.hpp"
#include "support/oracles.hpp"

using namespace jcfinder;

namespace {

ClassNodeInfo info(const std::string& qname, std::set<std::string> refs) {
  const auto dot = qname.rfind('.');
  return {qname, dot == std::string::npos ? qname : qname.substr(dot + 1),
          dot == std::string::npos ? "" : qname.substr(0, dot), std::move(refs)};
}

// Graph with nodes named n00..n(k-1) so that node index equals sorted position.
ClassGraph graph_from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<ClassNodeInfo> nodes;
  auto name = [](std::size_t i) { return std::string(i < 10 ? "n0" : "n") + std::to_string(i); };
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(info(name(i), {}));
  for (const auto& [a, b] : edges) nodes[b].referenced_types.insert(name(a));
  return build_class_graph(nodes);
}

std::vector<std::pair<std::size_t, std::size_t>> random_edges(std::mt19937_64& rng, std::size_t n, double p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::bernoulli_distribution coin(p);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && coin(rng)) out.emplace_back(a, b);
  return out;
}

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

RawFeature raw(std::uint64_t h, const std::string& g, const std::string& a, const std::string& v, std::int64_t ts) {
  return {FeatureHash{h}, {g, a, v}, ts, g + ".C" + std::to_string(h), "C.java"};
}

ClassUnit parse_one(const std::string& src, const std::string& path = "src/main/java/X.java") {
  return parse_source({path, src}).at(0);
}

}  // namespace

TEST(SupportingFilters, EachCriterionRemovesItsExample) {
  jcf_test::JavaGenerator gen(1);
  std::vector<ClassUnit> classes;
  classes.push_back(parse_one("interface Shape { void draw(); }"));
  classes.push_back(parse_one(
      "class Holder { int a; int b; int c;"
      " int getA() { return a; } void setA(int v) { a = v; } int getB() { return b; }"
      " void setB(int v) { b = v; } int getC() { return c; } void setC(int v) { c = v; } }"));
  classes.push_back(parse_one(gen.make_class("", "WidgetFactory").render()));
  classes.push_back(parse_one(gen.make_class("", "Foo").render(), "src/test/java/FooTest.java"));
  classes.push_back(parse_one(gen.make_class("", "Kernel").render()));
  const auto r = filter_supporting(classes);
  ASSERT_EQ(r.removed.size(), 4u);
  EXPECT_EQ(r.removed[0].criterion, Criterion::C1_NoConcreteFunction);
  EXPECT_EQ(r.removed[1].criterion, Criterion::C2_OnlyTrivialFunctions);
  EXPECT_LT(r.removed[1].value, 60.0);
  EXPECT_EQ(r.removed[2].criterion, Criterion::C3_PatternName);
  EXPECT_EQ(r.removed[3].criterion, Criterion::C4_TestName);
  ASSERT_EQ(r.retained.size(), 1u);
  EXPECT_EQ(r.retained[0].qualified_name, "Kernel");
}

TEST(SupportingFilters, PatternSuffixIsCaseSensitive) {
  const auto& p = default_pattern_names();
  EXPECT_TRUE(matches_pattern_name("WidgetFactory", p));
  EXPECT_TRUE(matches_pattern_name("JsonAdaptor", p));
  EXPECT_TRUE(matches_pattern_name("Builder", p));
  EXPECT_FALSE(matches_pattern_name("Widgetfactory", p));
  EXPECT_FALSE(matches_pattern_name("FactoryMethodSolver", p));
  EXPECT_TRUE(matches_pattern_name("Thing", {"Thing"}));
}

TEST(SupportingFilters, TestConventionIgnoresCase) {
  EXPECT_TRUE(matches_test_convention("FooTest", "src/main/java/FooTest.java"));
  EXPECT_TRUE(matches_test_convention("TestFoo", "a/TestFoo.java"));
  EXPECT_TRUE(matches_test_convention("FooTESTS", "a/FooTESTS.java"));
  EXPECT_TRUE(matches_test_convention("Helper", "src/test/java/Helper.java"));
  EXPECT_FALSE(matches_test_convention("Helper", "src/main/java/Helper.java"));
}

TEST(ClassGraph, FieldTypeCreatesEdgeToUser) {
  const auto g = build_class_graph({info("p.A", {}), info("p.B", {"A"})});
  EXPECT_EQ(g.nodes, (std::vector<std::string>{"p.A", "p.B"}));
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_FALSE(g.has_edge(1, 0));
}

TEST(ClassGraph, NoReferencesNoEdges) {
  const auto g = build_class_graph({info("p.A", {"String"}), info("p.B", {"List"}), info("p.C", {})});
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(ClassGraph, HandEnumeratedThreeClassOracle) {
  // A uses B, B uses A, C uses A and itself.
  const auto g = build_class_graph({info("p.A", {"B"}), info("p.B", {"A"}), info("p.C", {"A", "C"})});
  const std::set<std::pair<std::size_t, std::size_t>> expected = {{1, 0}, {0, 1}, {0, 2}};
  std::set<std::pair<std::size_t, std::size_t>> got;
  for (std::size_t a = 0; a < 3; ++a)
    for (auto b : g.out[a]) got.emplace(a, b);
  EXPECT_EQ(got, expected);
}

TEST(ClassGraph, SameSimpleNamePrefersSamePackage) {
  const auto g = build_class_graph(
      {info("p.Node", {}), info("q.Node", {}), info("p.Tree", {"Node"}), info("r.Walker", {"Node"}),
       info("r.Other", {"q.Node"})});
  // nodes sorted: p.Node(0) p.Tree(1) q.Node(2) r.Other(3) r.Walker(4)
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_FALSE(g.has_edge(2, 1));
  EXPECT_TRUE(g.has_edge(0, 4));
  EXPECT_TRUE(g.has_edge(2, 4));
  EXPECT_TRUE(g.has_edge(2, 3));
  EXPECT_FALSE(g.has_edge(0, 3));
}

TEST(PageRank, SingleNodeIsRetainedAtPercentileZero) {
  const auto g = graph_from_edges(1, {});
  const auto r = centrality_filter(g);
  EXPECT_DOUBLE_EQ(r.scores[0], 1.0);
  EXPECT_DOUBLE_EQ(r.percentiles[0], 0.0);
  EXPECT_EQ(r.retained.size(), 1u);
}

TEST(PageRank, ChainMatchesOracleAndSinkRanksFirst) {
  const auto g = graph_from_edges(3, {{0, 1}, {1, 2}});
  const auto r = centrality_filter(g);
  EXPECT_LT(l1(r.scores, jcf_test::dense_pagerank(3, {{0, 1}, {1, 2}})), 1e-6);
  EXPECT_DOUBLE_EQ(r.percentiles[2], 0.0);
  EXPECT_GT(r.scores[2], r.scores[1]);
  EXPECT_GT(r.scores[1], r.scores[0]);
}

TEST(PageRank, RandomGraphsMatchDenseOracle) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 19;
    const auto edges = random_edges(rng, n, 0.15);
    const auto scores = pagerank(graph_from_edges(n, edges));
    EXPECT_LT(l1(scores, jcf_test::dense_pagerank(n, edges)), 1e-6);
    EXPECT_NEAR(std::accumulate(scores.begin(), scores.end(), 0.0), 1.0, 1e-9);
  }
}

TEST(PageRank, HalfOfTenNodesRetainedAtCutoffFifty) {
  std::mt19937_64 rng(7);
  const auto edges = random_edges(rng, 10, 0.2);
  const auto r = centrality_filter(graph_from_edges(10, edges), 50.0);
  EXPECT_EQ(r.retained.size(), 5u);
  // Oracle: the five best oracle scores, names breaking ties.
  const auto oracle = jcf_test::dense_pagerank(10, edges);
  std::vector<std::size_t> idx(10);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) {
    if (std::fabs(oracle[a] - oracle[b]) > 1e-9) return oracle[a] > oracle[b];
    return a < b;
  });
  const auto g = graph_from_edges(10, edges);
  std::set<std::string> expected;
  for (int i = 0; i < 5; ++i) expected.insert(g.nodes[idx[static_cast<std::size_t>(i)]]);
  EXPECT_EQ(r.retained, expected);
}

TEST(PageRank, SymmetricNodesTieBreakByName) {
  // Two leaves feeding one hub: the leaves have equal scores up to rounding.
  const auto r = centrality_filter(graph_from_edges(3, {{0, 2}, {1, 2}}), 50.0);
  EXPECT_DOUBLE_EQ(r.percentiles[2], 0.0);
  EXPECT_DOUBLE_EQ(r.percentiles[0], 50.0);
  EXPECT_DOUBLE_EQ(r.percentiles[1], 100.0);
}

TEST(PageRank, EmptyGraph) {
  const auto r = centrality_filter(graph_from_edges(0, {}));
  EXPECT_TRUE(r.scores.empty());
  EXPECT_TRUE(r.retained.empty());
}

TEST(Dedup, WithinGroupMergesReleases) {
  const auto out = dedup_features({raw(7, "G", "a2", "1.0", 200), raw(7, "G", "a1", "1.0", 100)});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].origin_group, "G");
  EXPECT_EQ(out[0].timestamp, 100);
  EXPECT_EQ(out[0].releases, (std::vector<std::pair<std::string, std::string>>{{"a1", "1.0"}, {"a2", "1.0"}}));
}

TEST(Dedup, EarliestGroupWins) {
  const auto out = dedup_features({raw(7, "G2", "b", "1", 300), raw(7, "G1", "a", "1", 100)});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].origin_group, "G1");
  EXPECT_EQ(out[0].releases.size(), 1u);
}

TEST(Dedup, TimestampTieGoesToSmallerGroup) {
  const auto out = dedup_features({raw(7, "zeta", "b", "1", 100), raw(7, "alpha", "a", "1", 100)});
  EXPECT_EQ(out.at(0).origin_group, "alpha");
}

TEST(Dedup, RandomCorporaMatchAttributionOracle) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    std::vector<RawFeature> feats;
    std::vector<jcf_test::Occurrence> occ;
    std::uniform_int_distribution<int> hash(1, 15), grp(0, 3), art(0, 2), ver(0, 2), ts(1, 40);
    for (int i = 0; i < 60; ++i) {
      const auto h = static_cast<std::uint64_t>(hash(rng));
      const std::string g = "g" + std::to_string(grp(rng));
      const std::string a = "a" + std::to_string(art(rng));
      const std::string v = "1." + std::to_string(ver(rng));
      const std::int64_t s = ts(rng);
      feats.push_back(raw(h, g, a, v, s));
      occ.push_back({h, g, a, v, s});
    }
    std::shuffle(feats.begin(), feats.end(), rng);
    const auto out = dedup_features(feats);
    const auto oracle = jcf_test::attribution_oracle(occ);
    ASSERT_EQ(out.size(), oracle.size());
    for (const auto& rec : out) {
      const auto& o = oracle.at(rec.hash.value);
      EXPECT_EQ(rec.origin_group, o.group);
      EXPECT_EQ(rec.timestamp, o.timestamp);
      const std::set<std::pair<std::string, std::string>> releases(rec.releases.begin(), rec.releases.end());
      EXPECT_EQ(releases, o.releases);
    }
    EXPECT_TRUE(std::is_sorted(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.hash < b.hash; }));
  }
}

TEST(Dedup, InputOrderDoesNotMatter) {
  std::mt19937_64 rng(5);
  std::vector<RawFeature> feats;
  for (int i = 0; i < 40; ++i)
    feats.push_back(raw(static_cast<std::uint64_t>(i % 9), "g" + std::to_string(i % 3), "a" + std::to_string(i % 2),
                        "v" + std::to_string(i % 4), 1000 - i * 7 % 50));
  const auto first = dedup_features(feats);
  for (int k = 0; k < 10; ++k) {
    std::shuffle(feats.begin(), feats.end(), rng);
    EXPECT_EQ(dedup_features(feats), first);
  }
}

TEST(Coordinates, RenderAndParse) {
  const auto c = LibraryCoordinate::parse("com.lmax:disruptor:3.4.2");
  EXPECT_EQ(c.group, "com.lmax");
  EXPECT_EQ(c.artifact, "disruptor");
  EXPECT_EQ(c.version, "3.4.2");
  EXPECT_EQ(c.render(), "com.lmax:disruptor:3.4.2");
}
