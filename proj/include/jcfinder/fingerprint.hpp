#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jcfinder/hash.hpp"
#include "jcfinder/java_lexer.hpp"
#include "jcfinder/java_syntax.hpp"
#include "jcfinder/source_model.hpp"

namespace jcfinder {

namespace labels {
inline constexpr std::string_view kSimpleName = "SimpleName";
inline constexpr std::string_view kPrimitiveType = "PrimitiveType";
inline constexpr std::string_view kLiteral = "Literal";
inline constexpr std::string_view kTypeNamePrefix = "TypeName:";
inline constexpr std::string_view kDummyExternal = "DummyExternalNode";
inline constexpr std::string_view kDummyRecursive = "DummyRecursiveNode";
inline constexpr std::string_view kFunctionRoot = "FunctionRoot";
inline constexpr std::string_view kClassRoot = "ClassRoot";
// Pending same-class call; replaced during linking. Suffix is the callee index.
inline constexpr std::string_view kInternalCallPrefix = "InternalCall#";
}  // namespace labels

struct NormalizedNode;
using NodePtr = std::shared_ptr<const NormalizedNode>;

// Skeleton tree node. Subtrees are immutable and may be shared between trees.
struct NormalizedNode {
  std::string label;
  std::vector<NodePtr> children;

  bool is_leaf() const { return children.empty(); }
};

inline NodePtr make_node(std::string label, std::vector<NodePtr> children = {}) {
  auto n = std::make_shared<NormalizedNode>();
  n->label = std::move(label);
  n->children = std::move(children);
  return n;
}

// leaf = FNV-1a-64(label); internal = FNV-1a-64(label || u64le(sum of child hashes mod 2^64)).
// Child order does not affect the result.
class TreeHasher {
 public:
  std::uint64_t operator()(const NormalizedNode& node) {
    if (auto it = memo_.find(&node); it != memo_.end()) return it->second;
    std::uint64_t h = fnv1a64(node.label);
    if (!node.children.empty()) {
      std::uint64_t sum = 0;
      for (const auto& c : node.children) sum += (*this)(*c);
      h = fnv1a64_u64le(sum, h);
    }
    memo_.emplace(&node, h);
    return h;
  }

 private:
  std::unordered_map<const NormalizedNode*, std::uint64_t> memo_;
};

inline FeatureHash hash_tree(const NormalizedNode& node) {
  TreeHasher hasher;
  return FeatureHash{hasher(node)};
}

// Logical node count (shared subtrees counted once per occurrence).
class NodeCounter {
 public:
  std::size_t operator()(const NormalizedNode& node) {
    if (auto it = memo_.find(&node); it != memo_.end()) return it->second;
    std::size_t n = 1;
    for (const auto& c : node.children) n += (*this)(*c);
    memo_.emplace(&node, n);
    return n;
  }

 private:
  std::unordered_map<const NormalizedNode*, std::size_t> memo_;
};

// Renders a tree as an indented outline; used for diagnostics and tests.
inline std::string dump_tree(const NormalizedNode& node, int indent = 0) {
  std::string out(static_cast<size_t>(indent) * 2, ' ');
  out += node.label + "\n";
  for (const auto& c : node.children) out += dump_tree(*c, indent + 1);
  return out;
}

namespace detail {

class FunctionNormalizer {
 public:
  FunctionNormalizer(const ClassUnit* owner, const FunctionUnit& fn) : owner_(owner), fn_(fn) {
    if (owner_ != nullptr)
      for (const auto& [name, type] : owner_->fields) scope_[name] = type;
  }

  NodePtr build() {
    using java::Syntax;
    std::vector<NodePtr> kids;
    const auto& decl = *fn_.decl;
    for (const auto& c : decl.children) {
      if (c->kind == Syntax::Parameter) {
        kids.push_back(parameter(*c));
      } else if (c.get() == fn_.body()) {
        kids.push_back(node(*c));
      } else if (c->kind == Syntax::PrimitiveType || c->kind == Syntax::ClassType || c->kind == Syntax::ArrayType) {
        kids.push_back(type(*c));  // return type
      }
    }
    return make_node(std::string(labels::kFunctionRoot), std::move(kids));
  }

  const std::set<std::size_t>& internal_callees() const { return callees_; }

 private:
  const ClassUnit* owner_;
  const FunctionUnit& fn_;
  std::map<std::string, std::string> scope_;
  std::set<std::size_t> callees_;

  static NodePtr leaf(std::string_view label) { return make_node(std::string(label)); }

  NodePtr type(const java::SyntaxNode& t) {
    using java::Syntax;
    switch (t.kind) {
      case Syntax::PrimitiveType:
        return leaf(labels::kPrimitiveType);
      case Syntax::ClassType: {
        auto name = leaf(std::string(labels::kTypeNamePrefix) + t.text);
        if (t.children.empty()) return name;
        std::vector<NodePtr> kids{name};
        for (const auto& a : t.children) kids.push_back(type(*a));
        return make_node("ParameterizedType", std::move(kids));
      }
      case Syntax::ArrayType:
        return make_node("ArrayType", {type(*t.children.front())});
      case Syntax::Wildcard: {
        std::vector<NodePtr> kids;
        for (const auto& b : t.children) kids.push_back(type(*b));
        return make_node("Wildcard" + (t.text.empty() ? std::string() : ":" + t.text), std::move(kids));
      }
      case Syntax::UnionType: {
        std::vector<NodePtr> kids;
        for (const auto& b : t.children) kids.push_back(type(*b));
        return make_node("UnionType", std::move(kids));
      }
      default:
        return leaf("Type");
    }
  }

  NodePtr parameter(const java::SyntaxNode& p) {
    std::vector<NodePtr> kids;
    if (!p.children.empty()) {
      kids.push_back(type(*p.children.front()));
      scope_[p.text] = param_type_name(p);
    }
    kids.push_back(leaf(labels::kSimpleName));
    return make_node(p.has(java::flags::kVarargs) ? "Parameter:varargs" : "Parameter", std::move(kids));
  }

  static std::string param_type_name(const java::SyntaxNode& p) {
    return p.children.empty() ? std::string() : jcfinder::detail::type_simple_name(*p.children.front());
  }

  std::vector<NodePtr> all(const java::SyntaxNode& n, size_t from = 0) {
    std::vector<NodePtr> kids;
    for (size_t i = from; i < n.children.size(); ++i) kids.push_back(node(*n.children[i]));
    return kids;
  }

  std::string static_type(const java::SyntaxNode& e) const {
    using java::Syntax;
    using java::TokenKind;
    switch (e.kind) {
      case Syntax::Literal: {
        const auto k = static_cast<TokenKind>(e.literal_kind);
        if (k == TokenKind::IntLiteral) {
          const char last = e.text.back();
          return (last == 'l' || last == 'L') ? "long" : "int";
        }
        if (k == TokenKind::FloatLiteral) {
          const char last = e.text.back();
          return (last == 'f' || last == 'F') ? "float" : "double";
        }
        if (k == TokenKind::CharLiteral) return "char";
        if (k == TokenKind::StringLiteral || k == TokenKind::TextBlock) return "String";
        if (k == TokenKind::BoolLiteral) return "boolean";
        return {};
      }
      case Syntax::New:
        return jcfinder::detail::type_simple_name(*e.children.front());
      case Syntax::Cast:
        return jcfinder::detail::type_simple_name(*e.children.front());
      case Syntax::Name: {
        auto it = scope_.find(e.text);
        return it == scope_.end() ? std::string() : it->second;
      }
      case Syntax::This:
        return owner_ ? owner_->simple_name : std::string();
      default:
        return {};
    }
  }

  // Resolves a same-class call by (name, arity), disambiguating overloads by the
  // statically visible argument types. Returns the callee index or nullopt.
  std::optional<std::size_t> resolve(const std::string& name, const std::vector<const java::SyntaxNode*>& args) const {
    if (owner_ == nullptr) return std::nullopt;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < owner_->functions.size(); ++i) {
      const auto& f = owner_->functions[i];
      if (f.is_initializer || !f.has_body()) continue;
      if (f.name == name && f.arity() == args.size()) candidates.push_back(i);
    }
    if (candidates.size() == 1) return candidates.front();
    if (candidates.empty()) return std::nullopt;
    std::vector<std::size_t> matching;
    for (auto i : candidates) {
      const auto& params = owner_->functions[i].param_type_names;
      bool ok = true;
      for (std::size_t a = 0; a < args.size() && ok; ++a) {
        const std::string t = static_type(*args[a]);
        if (!t.empty() && t != params[a]) ok = false;
      }
      if (ok) matching.push_back(i);
    }
    if (matching.size() == 1) return matching.front();
    return std::nullopt;
  }

  NodePtr call_target(const std::string& name, const std::vector<const java::SyntaxNode*>& args) {
    if (auto idx = resolve(name, args)) {
      callees_.insert(*idx);
      return leaf(std::string(labels::kInternalCallPrefix) + std::to_string(*idx));
    }
    return leaf(labels::kDummyExternal);
  }

  NodePtr class_body(const java::SyntaxNode& body, std::string label) {
    using java::Syntax;
    std::vector<NodePtr> kids;
    for (const auto& m : body.children) {
      if (m->kind == Syntax::Method) {
        std::vector<NodePtr> mk;
        for (const auto& c : m->children) {
          if (c->kind == Syntax::Parameter) mk.push_back(parameter(*c));
          else if (c->kind == Syntax::Block) mk.push_back(node(*c));
          else mk.push_back(type(*c));
        }
        kids.push_back(make_node("Method", std::move(mk)));
      } else if (m->kind == Syntax::Initializer) {
        kids.push_back(make_node("Initializer", all(*m)));
      } else if (m->kind == Syntax::Field) {
        std::vector<NodePtr> fk{type(*m->children.front())};
        for (size_t i = 1; i < m->children.size(); ++i) fk.push_back(node(*m->children[i]));
        kids.push_back(make_node("Field", std::move(fk)));
      } else if (m->kind == Syntax::TypeDecl) {
        kids.push_back(local_type(*m));
      }
    }
    return make_node(std::move(label), std::move(kids));
  }

  NodePtr local_type(const java::SyntaxNode& decl) {
    return class_body(decl, "LocalClass:" + std::string(java::to_string(decl.type_kind)));
  }

  NodePtr node(const java::SyntaxNode& n) {
    using java::Syntax;
    switch (n.kind) {
      case Syntax::Block: return make_node("Block", all(n));
      case Syntax::LocalVar: {
        const std::string t = jcfinder::detail::type_simple_name(*n.children.front());
        for (size_t i = 1; i < n.children.size(); ++i) scope_[n.children[i]->text] = t;
        std::vector<NodePtr> kids{type(*n.children.front())};
        for (size_t i = 1; i < n.children.size(); ++i) kids.push_back(node(*n.children[i]));
        return make_node("VariableDeclaration", std::move(kids));
      }
      case Syntax::Declarator: {
        std::vector<NodePtr> kids{leaf(labels::kSimpleName)};
        for (const auto& c : n.children) kids.push_back(node(*c));
        return make_node("VariableDeclarator", std::move(kids));
      }
      case Syntax::LocalType: return local_type(*n.children.front());
      case Syntax::If: return make_node("If", all(n));
      case Syntax::For: return make_node("For", all(n));
      case Syntax::ForEach: return make_node("ForEach", all(n));
      case Syntax::While: return make_node("While", all(n));
      case Syntax::Do: return make_node("Do", all(n));
      case Syntax::Try: return make_node("Try", all(n));
      case Syntax::Resource: {
        std::vector<NodePtr> kids;
        for (const auto& c : n.children) {
          if (c->kind == Syntax::PrimitiveType || c->kind == Syntax::ClassType || c->kind == Syntax::ArrayType)
            kids.push_back(type(*c));
          else
            kids.push_back(node(*c));
        }
        return make_node("Resource", std::move(kids));
      }
      case Syntax::Catch: return make_node("Catch", all(n));
      case Syntax::Finally: return make_node("Finally", all(n));
      case Syntax::Switch: return make_node("Switch", all(n));
      case Syntax::SwitchExpr: return make_node("SwitchExpr", all(n));
      case Syntax::SwitchCase: return make_node(n.has(java::flags::kArrow) ? "Case:arrow" : "Case", all(n));
      case Syntax::CaseLabel: return make_node("CaseLabel", all(n));
      case Syntax::DefaultLabel: return leaf("DefaultLabel");
      case Syntax::Return: return make_node("Return", all(n));
      case Syntax::Throw: return make_node("Throw", all(n));
      case Syntax::Break: return leaf("Break");
      case Syntax::Continue: return leaf("Continue");
      case Syntax::Yield: return make_node("Yield", all(n));
      case Syntax::Labeled: return make_node("Labeled", all(n));
      case Syntax::ExprStmt: return make_node("ExpressionStatement", all(n));
      case Syntax::Empty: return leaf("Empty");
      case Syntax::Synchronized: return make_node("Synchronized", all(n));
      case Syntax::Assert: return make_node("Assert", all(n));
      case Syntax::CtorCall: {
        std::vector<const java::SyntaxNode*> args;
        for (const auto& c : n.children) args.push_back(c.get());
        auto kids = all(n);
        if (n.text == "this" && owner_ != nullptr) kids.push_back(call_target(owner_->simple_name, args));
        else kids.push_back(leaf(labels::kDummyExternal));
        return make_node("ConstructorCall:" + n.text, std::move(kids));
      }
      case Syntax::Parameter: return parameter(n);
      case Syntax::Name: return leaf(labels::kSimpleName);
      case Syntax::FieldAccess: return make_node("FieldAccess", {node(*n.children.front()), leaf(labels::kSimpleName)});
      case Syntax::MethodCall: {
        const bool qualified = n.has(java::flags::kQualified);
        std::vector<NodePtr> kids;
        std::vector<const java::SyntaxNode*> args;
        size_t first_arg = 0;
        bool local_receiver = !qualified;
        if (qualified) {
          const auto& target = *n.children.front();
          first_arg = 1;
          if (target.kind == Syntax::This) local_receiver = true;
          else kids.push_back(node(target));
        }
        for (size_t i = first_arg; i < n.children.size(); ++i) {
          args.push_back(n.children[i].get());
          kids.push_back(node(*n.children[i]));
        }
        kids.push_back(local_receiver ? call_target(n.text, args) : leaf(labels::kDummyExternal));
        return make_node("MethodCall", std::move(kids));
      }
      case Syntax::New: {
        std::vector<NodePtr> kids{type(*n.children.front())};
        for (size_t i = 1; i < n.children.size(); ++i) {
          const auto& c = *n.children[i];
          kids.push_back(c.kind == Syntax::ClassBody ? class_body(c, "AnonymousClass") : node(c));
        }
        return make_node(n.has(java::flags::kQualified) ? "New:qualified" : "New", std::move(kids));
      }
      case Syntax::NewArray: {
        std::vector<NodePtr> kids{type(*n.children.front())};
        for (size_t i = 1; i < n.children.size(); ++i) kids.push_back(node(*n.children[i]));
        return make_node("NewArray", std::move(kids));
      }
      case Syntax::ArrayInit: return make_node("ArrayInit", all(n));
      case Syntax::ArrayAccess: return make_node("ArrayAccess", all(n));
      case Syntax::Assign: return make_node("Assign:" + n.text, all(n));
      case Syntax::Binary: return make_node("BinaryOp:" + n.text, all(n));
      case Syntax::Unary: return make_node("UnaryOp:" + n.text, all(n));
      case Syntax::Postfix: return make_node("PostfixOp:" + n.text, all(n));
      case Syntax::Conditional: return make_node("Conditional", all(n));
      case Syntax::Cast: return make_node("Cast", {type(*n.children[0]), node(*n.children[1])});
      case Syntax::InstanceOf: {
        std::vector<NodePtr> kids;
        for (const auto& c : n.children) {
          const bool is_type = c->kind == Syntax::PrimitiveType || c->kind == Syntax::ClassType ||
                               c->kind == Syntax::ArrayType;
          kids.push_back(is_type ? type(*c) : node(*c));
        }
        return make_node("InstanceOf", std::move(kids));
      }
      case Syntax::Lambda: return make_node("Lambda", all(n));
      case Syntax::MethodRef: {
        const auto& target = *n.children.front();
        const bool is_type = target.kind == Syntax::PrimitiveType || target.kind == Syntax::ClassType ||
                             target.kind == Syntax::ArrayType;
        return make_node("MethodReference", {is_type ? type(target) : node(target), leaf(labels::kSimpleName)});
      }
      case Syntax::Literal: return leaf(labels::kLiteral);
      case Syntax::This: return leaf("This");
      case Syntax::Super: return leaf("Super");
      case Syntax::ClassLiteral: return make_node("ClassLiteral", {type(*n.children.front())});
      case Syntax::PrimitiveType:
      case Syntax::ClassType:
      case Syntax::ArrayType:
      case Syntax::Wildcard:
      case Syntax::UnionType:
        return type(n);
      case Syntax::ClassBody: return class_body(n, "AnonymousClass");
      case Syntax::TypeDecl: return local_type(n);
      default:
        return make_node("Node", all(n));
    }
  }
};

}  // namespace detail

// Skeleton tree of one function. Without an owning class every call becomes a
// DummyExternalNode; with one, resolvable same-class calls become InternalCall
// placeholders that link_internal_calls replaces.
inline NodePtr build_function_ast(const FunctionUnit& fn, const ClassUnit* owner = nullptr) {
  if (!fn.has_body()) throw InvalidInput("function '" + fn.name + "' has no body");
  detail::FunctionNormalizer normalizer(owner, fn);
  return normalizer.build();
}

struct FunctionIdentity {
  std::string class_name;
  std::string function;
  std::size_t arity = 0;

  friend auto operator<=>(const FunctionIdentity&, const FunctionIdentity&) = default;
};

struct LinkedFunctionAst {
  FunctionIdentity owner;
  std::size_t function_index = 0;  // index into ClassUnit::functions
  NodePtr root;
  std::size_t node_count = 0;
  std::vector<std::size_t> callees;  // direct same-class callees, self excluded
};

struct LinkOptions {
  std::size_t node_cap = 100000;
};

struct LinkResult {
  std::vector<LinkedFunctionAst> functions;
  std::vector<std::string> warnings;  // InliningCapExceeded diagnostics
};

namespace detail {

// Tarjan SCC over a small adjacency list; returns component id per vertex.
inline std::vector<int> strongly_connected(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;
  int comps = 0;
  // Iterative to stay safe on long call chains.
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<std::pair<std::size_t, std::size_t>> work{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!work.empty()) {
      auto& [v, next] = work.back();
      if (next < adj[v].size()) {
        const std::size_t w = adj[v][next++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        while (true) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
          if (w == v) break;
        }
        ++comps;
      }
      const std::size_t done = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
    }
  }
  return comp;
}

}  // namespace detail

// Links same-class call sites into each function's tree. Self calls and call edges
// removed by cycle breaking become DummyRecursiveNode; out-of-class calls stay
// DummyExternalNode. Emits one tree per function that has a body, in declaration order.
inline LinkResult link_internal_calls(const ClassUnit& cls, const LinkOptions& options = {}) {
  const std::size_t n = cls.functions.size();
  std::vector<NodePtr> raw(n);
  std::vector<std::set<std::size_t>> callees(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& fn = cls.functions[i];
    if (!fn.has_body()) continue;
    detail::FunctionNormalizer normalizer(&cls, fn);
    raw[i] = normalizer.build();
    callees[i] = normalizer.internal_callees();
  }

  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : callees[i])
      if (j != i) adj[i].push_back(j);
  const auto comp = detail::strongly_connected(adj);

  // Keeper priority inside each cycle: more distinct callees, then more LOC, then the
  // pre-link structural hash (rename-stable), then signature.
  std::vector<std::uint64_t> shape(n, 0);
  {
    TreeHasher hasher;
    for (std::size_t i = 0; i < n; ++i)
      if (raw[i]) shape[i] = hasher(*raw[i]);
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ka = std::make_tuple(-static_cast<long>(adj[a].size()), -cls.functions[a].loc, shape[a],
                                    cls.functions[a].signature());
    const auto kb = std::make_tuple(-static_cast<long>(adj[b].size()), -cls.functions[b].loc, shape[b],
                                    cls.functions[b].signature());
    return ka < kb;
  });
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;
  auto edge_survives = [&](std::size_t from, std::size_t to) {
    if (from == to) return false;
    if (comp[from] != comp[to]) return true;
    return rank[from] < rank[to];
  };

  LinkResult result;
  std::vector<NodePtr> linked(n);
  std::vector<std::size_t> counts(n, 0);
  NodeCounter counter;

  std::function<void(std::size_t)> link = [&](std::size_t i) {
    if (linked[i]) return;
    for (auto j : callees[i])
      if (edge_survives(i, j)) link(j);
    std::size_t total = counter(*raw[i]);
    bool capped = false;
    std::function<NodePtr(const NodePtr&)> substitute = [&](const NodePtr& node) -> NodePtr {
      const auto& label = node->label;
      if (label.rfind(labels::kInternalCallPrefix, 0) == 0) {
        const std::size_t j = std::stoul(label.substr(labels::kInternalCallPrefix.size()));
        if (!edge_survives(i, j)) return make_node(std::string(labels::kDummyRecursive));
        const auto& body = linked[j]->children.back();
        const std::size_t extra = counter(*body);
        if (total - 1 + extra > options.node_cap) {
          capped = true;
          return make_node(std::string(labels::kDummyExternal));
        }
        total = total - 1 + extra;
        return body;
      }
      bool changed = false;
      std::vector<NodePtr> kids;
      kids.reserve(node->children.size());
      for (const auto& c : node->children) {
        kids.push_back(substitute(c));
        changed |= kids.back() != c;
      }
      if (!changed) return node;
      return make_node(label, std::move(kids));
    };
    linked[i] = callees[i].empty() ? raw[i] : substitute(raw[i]);
    counts[i] = counter(*linked[i]);
    if (capped)
      result.warnings.push_back("InliningCapExceeded: " + cls.qualified_name + "." + cls.functions[i].signature() +
                                " (cap " + std::to_string(options.node_cap) + " nodes)");
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (!raw[i]) continue;
    link(i);
    LinkedFunctionAst lf;
    lf.owner = {cls.qualified_name, cls.functions[i].name, cls.functions[i].arity()};
    lf.function_index = i;
    lf.root = linked[i];
    lf.node_count = counts[i];
    for (auto j : callees[i])
      if (j != i) lf.callees.push_back(j);
    result.functions.push_back(std::move(lf));
  }
  return result;
}

struct ClassAst {
  std::string owner;
  NodePtr root;
};

// ClassRoot over the retained function roots; nullopt when nothing is retained
// (the class yields no feature).
inline std::optional<ClassAst> build_class_ast(const std::string& owner, const std::vector<LinkedFunctionAst>& linked,
                                               const std::set<std::size_t>& retained_indices) {
  std::vector<NodePtr> roots;
  for (const auto& lf : linked)
    if (retained_indices.count(lf.function_index)) roots.push_back(lf.root);
  if (roots.empty()) return std::nullopt;
  return ClassAst{owner, make_node(std::string(labels::kClassRoot), std::move(roots))};
}

}  // namespace jcfinder
