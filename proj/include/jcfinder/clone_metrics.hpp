#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jcfinder/errors.hpp"
#include "jcfinder/fingerprint.hpp"
#include "jcfinder/metrics.hpp"
#include "jcfinder/source_model.hpp"

namespace jcfinder {

struct CloneFunction {
  std::string name;
  std::size_t arity = 0;
  FeatureHash hash;                  // linked function tree hash
  bool trivial = false;
  std::vector<std::size_t> callees;  // direct same-class callees (indices), self excluded
};

struct CloneClass {
  std::string project;
  std::string name;
  std::vector<CloneFunction> functions;

  std::size_t nontrivial_count() const {
    return static_cast<std::size_t>(
        std::count_if(functions.begin(), functions.end(), [](const auto& f) { return !f.trivial; }));
  }
};

inline CloneClass make_clone_class(const std::string& project, const ClassUnit& cls, const MetricsConfig& cfg = {}) {
  CloneClass out{project, cls.qualified_name, {}};
  const auto linked = link_internal_calls(cls);
  for (const auto& lf : linked.functions) {
    const auto& fn = cls.functions[lf.function_index];
    out.functions.push_back({fn.name, fn.arity(), hash_tree(*lf.root), is_trivial(fn, cfg), {}});
  }
  // Map ClassUnit function indices to positions among functions with bodies.
  std::map<std::size_t, std::size_t> position;
  for (std::size_t k = 0; k < linked.functions.size(); ++k) position[linked.functions[k].function_index] = k;
  for (std::size_t k = 0; k < linked.functions.size(); ++k)
    for (auto j : linked.functions[k].callees) out.functions[k].callees.push_back(position.at(j));
  return out;
}

struct FunctionRef {
  std::size_t cls = 0;
  std::size_t fn = 0;
  friend auto operator<=>(const FunctionRef&, const FunctionRef&) = default;
};

enum class CloneScope { CrossProject, All };

// Symmetric relation stored once per unordered pair (first < second).
struct FunctionCloneRelation {
  std::set<std::pair<FunctionRef, FunctionRef>> pairs;

  bool related(FunctionRef a, FunctionRef b) const {
    if (b < a) std::swap(a, b);
    return pairs.count({a, b}) > 0;
  }

  std::vector<FunctionRef> partners(FunctionRef a) const {
    std::vector<FunctionRef> out;
    for (const auto& [x, y] : pairs) {
      if (x == a) out.push_back(y);
      else if (y == a) out.push_back(x);
    }
    return out;
  }
};

// Pairs of non-trivial functions in different classes with equal linked hashes.
// CrossProject also drops pairs whose classes share a project.
inline FunctionCloneRelation function_clone_pairs(const std::vector<CloneClass>& classes,
                                                  CloneScope scope = CloneScope::CrossProject) {
  std::map<FeatureHash, std::vector<FunctionRef>> by_hash;
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (std::size_t f = 0; f < classes[c].functions.size(); ++f)
      if (!classes[c].functions[f].trivial) by_hash[classes[c].functions[f].hash].push_back({c, f});
  FunctionCloneRelation rel;
  for (const auto& [_, refs] : by_hash)
    for (std::size_t i = 0; i < refs.size(); ++i)
      for (std::size_t j = i + 1; j < refs.size(); ++j) {
        const auto& a = refs[i];
        const auto& b = refs[j];
        if (a.cls == b.cls) continue;
        if (scope == CloneScope::CrossProject && classes[a.cls].project == classes[b.cls].project) continue;
        rel.pairs.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
      }
  return rel;
}

// Maximum bipartite matching by augmenting paths; adj[l] lists right vertices.
inline std::size_t maximum_matching(const std::vector<std::vector<std::size_t>>& adj, std::size_t right_size) {
  std::vector<long> match_right(right_size, -1);
  std::size_t size = 0;
  for (std::size_t l = 0; l < adj.size(); ++l) {
    std::vector<bool> visited(right_size, false);
    auto augment = [&](auto&& self, std::size_t u) -> bool {
      for (auto r : adj[u]) {
        if (visited[r]) continue;
        visited[r] = true;
        if (match_right[r] < 0 || self(self, static_cast<std::size_t>(match_right[r]))) {
          match_right[r] = static_cast<long>(u);
          return true;
        }
      }
      return false;
    };
    if (augment(augment, l)) ++size;
  }
  return size;
}

struct ConjugateReport {
  std::string class_a;
  std::string class_b;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t matching_size = 0;
  double percentage = 0.0;
};

// P = 2·|maximum one-to-one clone matching| / (n + m), n and m counting non-trivial functions.
inline ConjugateReport conjugate_percentage(const std::vector<CloneClass>& classes, std::size_t a, std::size_t b,
                                            const FunctionCloneRelation& rel) {
  const auto& A = classes[a];
  const auto& B = classes[b];
  std::vector<std::size_t> left, right;
  for (std::size_t i = 0; i < A.functions.size(); ++i)
    if (!A.functions[i].trivial) left.push_back(i);
  for (std::size_t j = 0; j < B.functions.size(); ++j)
    if (!B.functions[j].trivial) right.push_back(j);
  if (left.empty() && right.empty()) throw DegenerateClassPair(A.name + " / " + B.name + " have no non-trivial functions");
  std::vector<std::vector<std::size_t>> adj(left.size());
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j)
      if (rel.related({a, left[i]}, {b, right[j]})) adj[i].push_back(j);
  ConjugateReport r{A.name, B.name, left.size(), right.size(), maximum_matching(adj, right.size()), 0.0};
  r.percentage = 2.0 * static_cast<double>(r.matching_size) / static_cast<double>(r.n + r.m);
  return r;
}

enum class AssociatedMode { MaxPerCounterpart, AnyCounterpart };

struct AssociatedReport {
  FunctionRef caller;
  std::size_t callee_total = 0;
  std::size_t callee_cloned = 0;
  double percentage = 0.0;
  std::optional<std::size_t> counterpart;  // class scored against (MaxPerCounterpart)
};

// Share of the caller's non-trivial same-class callees cloned into the same counterpart
// class as the caller. nullopt when the caller has no clone partner or no such callees.
inline std::optional<AssociatedReport> associated_percentage(const std::vector<CloneClass>& classes, FunctionRef caller,
                                                             const FunctionCloneRelation& rel,
                                                             AssociatedMode mode = AssociatedMode::MaxPerCounterpart) {
  const auto& fn = classes[caller.cls].functions[caller.fn];
  std::vector<std::size_t> callees;
  for (auto c : fn.callees)
    if (!classes[caller.cls].functions[c].trivial) callees.push_back(c);
  if (callees.empty()) return std::nullopt;
  std::set<std::size_t> counterparts;
  for (const auto& p : rel.partners(caller)) counterparts.insert(p.cls);
  if (counterparts.empty()) return std::nullopt;
  auto cloned_into = [&](std::size_t callee, const std::set<std::size_t>& targets) {
    for (const auto& p : rel.partners({caller.cls, callee}))
      if (targets.count(p.cls)) return true;
    return false;
  };
  AssociatedReport best{caller, callees.size(), 0, 0.0, std::nullopt};
  if (mode == AssociatedMode::AnyCounterpart) {
    for (auto c : callees)
      if (cloned_into(c, counterparts)) ++best.callee_cloned;
  } else {
    bool first = true;
    for (auto cp : counterparts) {
      std::size_t cloned = 0;
      for (auto c : callees)
        if (cloned_into(c, {cp})) ++cloned;
      if (first || cloned > best.callee_cloned) {
        best.callee_cloned = cloned;
        best.counterpart = cp;
        first = false;
      }
    }
  }
  best.percentage = static_cast<double>(best.callee_cloned) / static_cast<double>(best.callee_total);
  return best;
}

// Ten buckets [0,10), ..., [80,90), [90,100) plus an exact-100 bucket; input in [0, 1].
inline std::vector<std::size_t> percentage_histogram(const std::vector<double>& values) {
  std::vector<std::size_t> buckets(11, 0);
  for (double v : values) {
    if (v >= 1.0) ++buckets[10];
    else ++buckets[static_cast<std::size_t>(std::clamp(v, 0.0, 0.999999) * 10.0)];
  }
  return buckets;
}

}  // namespace jcfinder
