#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "jcfinder/fingerprint.hpp"
#include "jcfinder/hash.hpp"
#include "jcfinder/metrics.hpp"
#include "jcfinder/source_model.hpp"

namespace jcfinder {

// Supporting-class criteria, in application order.
enum class Criterion { C1_NoConcreteFunction, C2_OnlyTrivialFunctions, C3_PatternName, C4_TestName, Centrality };

inline std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::C1_NoConcreteFunction: return "C1";
    case Criterion::C2_OnlyTrivialFunctions: return "C2";
    case Criterion::C3_PatternName: return "C3";
    case Criterion::C4_TestName: return "C4";
    case Criterion::Centrality: return "centrality";
  }
  return "?";
}

struct ClassFeature {
  std::string qualified_name;
  std::string simple_name;
  std::string source_path;
  FeatureHash hash;
  std::size_t retained_functions = 0;
};

struct ExtractionOutcome {
  std::optional<ClassFeature> feature;
  std::optional<Criterion> removed_by;  // C1 or C2 when no feature was produced
  double max_score = 0.0;               // highest function complexity score seen
  std::vector<std::string> warnings;
};

// Canonical feature extraction shared by reference ingestion and target scanning:
// link calls over all functions, then keep only non-trivial functions as roots.
// Classes without concrete functions (C1) or without non-trivial ones (C2) yield nothing.
inline ExtractionOutcome extract_class_feature(const ClassUnit& cls, const MetricsConfig& metrics = {},
                                               const LinkOptions& link = {}) {
  ExtractionOutcome out;
  std::set<std::size_t> retained;
  bool any_body = false;
  for (std::size_t i = 0; i < cls.functions.size(); ++i) {
    const auto& fn = cls.functions[i];
    if (!fn.has_body()) continue;
    any_body = true;
    const double score = complexity(compute_metrics(fn), metrics.mi_form).value;
    out.max_score = std::max(out.max_score, score);
    if (!is_trivial(ComplexityScore{score}, metrics.triviality_threshold)) retained.insert(i);
  }
  if (!any_body) {
    out.removed_by = Criterion::C1_NoConcreteFunction;
    return out;
  }
  if (retained.empty()) {
    out.removed_by = Criterion::C2_OnlyTrivialFunctions;
    return out;
  }
  auto linked = link_internal_calls(cls, link);
  out.warnings = std::move(linked.warnings);
  auto ast = build_class_ast(cls.qualified_name, linked.functions, retained);
  if (!ast) {
    out.removed_by = Criterion::C2_OnlyTrivialFunctions;
    return out;
  }
  ClassFeature f;
  f.qualified_name = cls.qualified_name;
  f.simple_name = cls.simple_name;
  f.source_path = cls.source_path;
  f.hash = hash_tree(*ast->root);
  f.retained_functions = retained.size();
  out.feature = std::move(f);
  return out;
}

}  // namespace jcfinder
