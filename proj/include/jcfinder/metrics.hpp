#pragma once

#include <cmath>
#include <map>
#include <string>
#include <string_view>

#include "jcfinder/java_lexer.hpp"
#include "jcfinder/java_syntax.hpp"
#include "jcfinder/source_model.hpp"

namespace jcfinder {

struct FunctionMetrics {
  int loc = 0;
  int cc = 1;
  double hv = 0.0;  // Halstead volume in bits
};

struct ComplexityScore {
  double value = 0.0;
};

enum class MiForm { Log, Linear };

struct MetricsConfig {
  double triviality_threshold = 60.0;
  MiForm mi_form = MiForm::Log;
};

// Raw Halstead counts; exposed so the counting convention can be inspected in tests.
struct HalsteadCounts {
  std::map<std::string, int> operators;
  std::map<std::string, int> operands;

  int total() const {
    int n = 0;
    for (const auto& [_, c] : operators) n += c;
    for (const auto& [_, c] : operands) n += c;
    return n;
  }
  int vocabulary() const { return static_cast<int>(operators.size() + operands.size()); }
  double volume() const {
    const int n = total();
    const int eta = vocabulary();
    if (n == 0 || eta <= 1) return 0.0;
    return n * std::log2(static_cast<double>(eta));
  }
};

// Halstead counting convention, applied to the tokens of the function body:
//  - operands: identifiers, literals (incl. true/false/null), primitive type keywords,
//    `void`, `this` and `super`; keyed by spelling.
//  - operators: every other keyword, every operator/separator token; bracket pairs
//    count once per construct as "()", "[]", "{}" (closers are not counted); an
//    identifier directly followed by '(' (not after `new` or '@') adds a "call" operator.
inline HalsteadCounts halstead_counts(const FunctionUnit& fn) {
  HalsteadCounts counts;
  const auto* body = fn.body();
  if (body == nullptr) return counts;
  const auto& toks = fn.file->tokens;
  using java::TokenKind;
  for (std::uint32_t i = body->first_token; i <= body->last_token; ++i) {
    const auto& t = toks[i];
    switch (t.kind) {
      case TokenKind::Identifier: {
        ++counts.operands[t.text];
        const bool call = i + 1 < toks.size() && toks[i + 1].is_op("(") &&
                          !(i > 0 && (toks[i - 1].is_kw("new") || toks[i - 1].is_op("@")));
        if (call) ++counts.operators["call"];
        break;
      }
      case TokenKind::Keyword:
        if (java::is_primitive_type_name(t.text) || t.text == "void" || t.text == "this" || t.text == "super")
          ++counts.operands[t.text];
        else
          ++counts.operators[t.text];
        break;
      case TokenKind::Operator:
        if (t.text == "(") ++counts.operators["()"];
        else if (t.text == "[") ++counts.operators["[]"];
        else if (t.text == "{") ++counts.operators["{}"];
        else if (t.text != ")" && t.text != "]" && t.text != "}") ++counts.operators[t.text];
        break;
      case TokenKind::End:
        break;
      default:  // literals
        ++counts.operands[t.text];
        break;
    }
  }
  return counts;
}

namespace detail {

inline int decision_points(const java::SyntaxNode& node) {
  using java::Syntax;
  int n = 0;
  switch (node.kind) {
    case Syntax::If:
    case Syntax::For:
    case Syntax::ForEach:
    case Syntax::While:
    case Syntax::Do:
    case Syntax::CaseLabel:
    case Syntax::Catch:
    case Syntax::Conditional:
      n = 1;
      break;
    case Syntax::Binary:
      n = (node.text == "&&" || node.text == "||") ? 1 : 0;
      break;
    default:
      break;
  }
  for (const auto& c : node.children) n += decision_points(*c);
  return n;
}

}  // namespace detail

inline FunctionMetrics compute_metrics(const FunctionUnit& fn) {
  FunctionMetrics m;
  m.loc = fn.loc;
  if (const auto* body = fn.body()) {
    m.cc = 1 + detail::decision_points(*body);
    m.hv = halstead_counts(fn).volume();
  }
  return m;
}

inline ComplexityScore complexity(const FunctionMetrics& m, MiForm form = MiForm::Log) {
  if (form == MiForm::Linear) return {5.2 * m.hv + 0.23 * m.cc + 16.2 * m.loc};
  return {5.2 * std::log(std::max(m.hv, 1.0)) + 0.23 * m.cc + 16.2 * std::log(std::max(m.loc, 1))};
}

inline bool is_trivial(ComplexityScore score, double threshold = 60.0) { return score.value < threshold; }

inline bool is_trivial(const FunctionUnit& fn, const MetricsConfig& cfg = {}) {
  return is_trivial(complexity(compute_metrics(fn), cfg.mi_form), cfg.triviality_threshold);
}

}  // namespace jcfinder
