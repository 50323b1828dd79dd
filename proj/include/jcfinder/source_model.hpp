#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jcfinder/errors.hpp"
#include "jcfinder/hash.hpp"
#include "jcfinder/java_lexer.hpp"
#include "jcfinder/java_parser.hpp"
#include "jcfinder/java_syntax.hpp"

namespace jcfinder {

struct SourceFile {
  std::string path;  // relative, ends in .java
  std::string content;
};

// A tokenized and parsed compilation unit. Class and function units keep it alive.
struct ParsedFile {
  std::string path;
  std::string content;
  std::vector<java::Token> tokens;
  java::SyntaxPtr root;
};

struct FunctionUnit {
  std::string name;
  std::vector<std::string> param_type_names;
  bool is_constructor = false;
  bool is_initializer = false;
  int loc = 0;  // 0 for bodiless declarations
  std::shared_ptr<const ParsedFile> file;
  const java::SyntaxNode* decl = nullptr;  // Method or Initializer node

  std::size_t arity() const { return param_type_names.size(); }
  bool has_body() const { return decl != nullptr && decl->has(java::flags::kHasBody); }
  const java::SyntaxNode* body() const { return has_body() ? decl->children.back().get() : nullptr; }
  // Stable identity within a class: name/arity.
  std::string signature() const { return name + "/" + std::to_string(arity()); }
};

struct ClassUnit {
  std::string qualified_name;
  std::string simple_name;
  std::string package_name;
  java::TypeKind kind = java::TypeKind::Class;
  std::string source_path;
  std::vector<FunctionUnit> functions;
  std::set<std::string> referenced_types;
  // Declared field names and their simple type names, used for argument type inference.
  std::vector<std::pair<std::string, std::string>> fields;
  bool is_test_path = false;
  std::shared_ptr<const ParsedFile> file;
  const java::SyntaxNode* decl = nullptr;
};

namespace detail {

inline bool valid_utf8(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    int extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + static_cast<size_t>(extra) >= s.size()) return false;
    for (int k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + static_cast<size_t>(k)]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) || (extra == 3 && (cp < 0x10000 || cp > 0x10FFFF)))
      return false;
    if (cp >= 0xD800 && cp <= 0xDFFF) return false;
    i += static_cast<size_t>(extra) + 1;
  }
  return true;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::string type_simple_name(const java::SyntaxNode& type) {
  using java::Syntax;
  switch (type.kind) {
    case Syntax::PrimitiveType:
    case Syntax::ClassType:
      return type.text;
    case Syntax::ArrayType:
      return type_simple_name(*type.children.front()) + "[]";
    default:
      return {};
  }
}

inline int count_loc(const ParsedFile& file, const java::SyntaxNode& decl) {
  std::set<std::uint32_t> lines;
  for (std::uint32_t t = decl.first_token; t <= decl.last_token && t < file.tokens.size(); ++t) {
    const auto& tok = file.tokens[t];
    if (tok.kind == java::TokenKind::End) break;
    for (std::uint32_t l = tok.line; l <= tok.end_line; ++l) lines.insert(l);
  }
  return static_cast<int>(lines.size());
}

// Type names referenced by a subtree. Nested named type declarations are skipped
// (they are separate units); anonymous and local classes are included.
inline void collect_referenced_types(const java::SyntaxNode& node, std::set<std::string>& out, bool top) {
  using java::Syntax;
  if (!top && node.kind == Syntax::TypeDecl) return;
  if (node.kind == Syntax::ClassType && !node.text.empty() && node.text != "var") out.insert(node.text);
  // Static member access through a capitalized qualifier, e.g. Utils.copy(...).
  if ((node.kind == Syntax::MethodCall && node.has(java::flags::kQualified)) || node.kind == Syntax::FieldAccess ||
      node.kind == Syntax::MethodRef) {
    const auto& target = node.children.front();
    if (target && target->kind == Syntax::Name && !target->text.empty() &&
        std::isupper(static_cast<unsigned char>(target->text.front())))
      out.insert(target->text);
  }
  for (const auto& child : node.children) {
    if (node.kind == Syntax::LocalType) {
      // Local classes contribute references but not their own name.
      for (const auto& c : child->children) collect_referenced_types(*c, out, false);
      continue;
    }
    collect_referenced_types(*child, out, false);
  }
}

}  // namespace detail

// True when a path denotes test code: a directory segment named or prefixed "test",
// or a file stem with a "test"/"tests" prefix or suffix (case-insensitive).
inline bool is_test_path(std::string_view path) {
  std::vector<std::string> segments;
  std::string cur;
  for (char c : path) {
    if (c == '/' || c == '\\') {
      if (!cur.empty()) segments.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) segments.push_back(cur);
  if (segments.empty()) return false;
  for (size_t i = 0; i + 1 < segments.size(); ++i) {
    const std::string s = detail::lower(segments[i]);
    if (s.rfind("test", 0) == 0) return true;
  }
  std::string stem = detail::lower(segments.back());
  if (auto dot = stem.rfind('.'); dot != std::string::npos) stem.resize(dot);
  auto ends_with = [&](std::string_view suf) {
    return stem.size() >= suf.size() && stem.compare(stem.size() - suf.size(), suf.size(), suf) == 0;
  };
  return stem.rfind("test", 0) == 0 || ends_with("test") || ends_with("tests");
}

// Strips a UTF-8 BOM, validates the encoding, tokenizes and parses.
inline std::shared_ptr<const ParsedFile> parse_file(const SourceFile& file) {
  if (file.path.empty() || file.path.size() < 5 || file.path.compare(file.path.size() - 5, 5, ".java") != 0)
    throw InvalidInput("not a .java path: '" + file.path + "'");
  auto parsed = std::make_shared<ParsedFile>();
  parsed->path = file.path;
  std::string_view content = file.content;
  if (content.size() >= 3 && content.substr(0, 3) == "\xEF\xBB\xBF") content.remove_prefix(3);
  if (!detail::valid_utf8(content)) throw EncodingError(file.path + ": content is not valid UTF-8");
  parsed->content = std::string(content);
  parsed->tokens = java::tokenize(parsed->content, parsed->path);
  parsed->root = java::parse_compilation_unit(parsed->tokens, parsed->path);
  return parsed;
}

namespace detail {

inline std::string package_of(const ParsedFile& file) {
  const auto& toks = file.tokens;
  size_t i = 0;
  // Skip leading annotations.
  while (i < toks.size() && toks[i].is_op("@")) {
    i += 2;
    while (i + 1 < toks.size() && toks[i].is_op(".")) i += 2;
    if (i < toks.size() && toks[i].is_op("(")) {
      int depth = 0;
      for (; i < toks.size(); ++i) {
        if (toks[i].is_op("(")) ++depth;
        if (toks[i].is_op(")") && --depth == 0) {
          ++i;
          break;
        }
      }
    }
  }
  if (i >= toks.size() || !toks[i].is_kw("package")) return {};
  std::string name;
  for (++i; i < toks.size() && !toks[i].is_op(";"); ++i) name += toks[i].text;
  return name;
}

inline void build_units(const std::shared_ptr<const ParsedFile>& file, const java::SyntaxNode& decl,
                        const std::string& prefix, const std::string& package, bool test_path,
                        std::vector<ClassUnit>& out) {
  using java::Syntax;
  ClassUnit unit;
  unit.simple_name = decl.text;
  unit.qualified_name = prefix.empty() ? decl.text : prefix + "." + decl.text;
  unit.package_name = package;
  unit.kind = decl.type_kind;
  unit.source_path = file->path;
  unit.is_test_path = test_path;
  unit.file = file;
  unit.decl = &decl;
  collect_referenced_types(decl, unit.referenced_types, true);

  std::vector<const java::SyntaxNode*> nested;
  for (const auto& member : decl.children) {
    switch (member->kind) {
      case Syntax::Method: {
        FunctionUnit fn;
        fn.is_constructor = member->has(java::flags::kConstructor);
        fn.name = fn.is_constructor ? decl.text : member->text;
        for (const auto& c : member->children)
          if (c->kind == Syntax::Parameter) fn.param_type_names.push_back(type_simple_name(*c->children.front()));
        fn.file = file;
        fn.decl = member.get();
        fn.loc = fn.has_body() ? count_loc(*file, *member) : 0;
        unit.functions.push_back(std::move(fn));
        break;
      }
      case Syntax::Initializer: {
        FunctionUnit fn;
        fn.is_initializer = true;
        const std::string k = std::to_string(unit.functions.size());
        fn.name = member->has(java::flags::kStatic) ? "<static-init-" + k + ">" : "<instance-init-" + k + ">";
        fn.file = file;
        fn.decl = member.get();
        fn.loc = count_loc(*file, *member);
        unit.functions.push_back(std::move(fn));
        break;
      }
      case Syntax::Field: {
        const std::string type = type_simple_name(*member->children.front());
        for (size_t i = 1; i < member->children.size(); ++i) unit.fields.emplace_back(member->children[i]->text, type);
        break;
      }
      case Syntax::Parameter:  // record component
        unit.fields.emplace_back(member->text, type_simple_name(*member->children.front()));
        break;
      case Syntax::TypeDecl:
        nested.push_back(member.get());
        break;
      default:
        break;
    }
  }
  const std::string qualified = unit.qualified_name;
  out.push_back(std::move(unit));
  for (const auto* n : nested) build_units(file, *n, qualified, package, test_path, out);
}

}  // namespace detail

// Partitions an already parsed file into class units: one per top-level type and per
// named nested type, in declaration order (outer before inner).
inline std::vector<ClassUnit> class_units(const std::shared_ptr<const ParsedFile>& file) {
  std::vector<ClassUnit> units;
  const std::string package = detail::package_of(*file);
  const bool test_path = is_test_path(file->path);
  for (const auto& decl : file->root->children)
    detail::build_units(file, *decl, package, package, test_path, units);
  return units;
}

inline std::vector<ClassUnit> parse_source(const SourceFile& file) { return class_units(parse_file(file)); }

// Text-level normalization: comments removed, literal contents emptied, the package
// declaration dropped, and all whitespace stripped.
inline std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  const size_t n = text.size();
  size_t i = 0;
  auto is_ident = [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '$' || u >= 0x80;
  };
  char prev_sig = '\0';  // last non-whitespace source character outside comments
  while (i < n) {
    const char c = text[i];
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '*') {
      const size_t end = text.find("*/", i + 2);
      i = end == std::string_view::npos ? n : end + 2;
      continue;
    }
    if (c == '"') {
      if (text.substr(i, 3) == "\"\"\"") {
        size_t k = i + 3;
        while (k < n && text.substr(k, 3) != "\"\"\"") k += text[k] == '\\' ? 2 : 1;
        i = std::min(n, k + 3);
        out += "\"\"\"\"\"\"";
      } else {
        size_t k = i + 1;
        while (k < n && text[k] != '"' && text[k] != '\n') k += text[k] == '\\' ? 2 : 1;
        i = k < n && text[k] == '"' ? k + 1 : std::min(k, n);
        out += "\"\"";
      }
      prev_sig = '"';
      continue;
    }
    if (c == '\'') {
      size_t k = i + 1;
      while (k < n && text[k] != '\'' && text[k] != '\n') k += text[k] == '\\' ? 2 : 1;
      i = k < n && text[k] == '\'' ? k + 1 : std::min(k, n);
      out += "''";
      prev_sig = '\'';
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    // `package a.b;` declaration (keyword must be a standalone word followed by whitespace).
    if (c == 'p' && text.substr(i, 7) == "package" && !is_ident(prev_sig) && i + 7 < n &&
        std::isspace(static_cast<unsigned char>(text[i + 7]))) {
      const size_t semi = text.find(';', i);
      if (semi != std::string_view::npos) {
        i = semi + 1;
        prev_sig = ';';
        continue;
      }
    }
    if (is_ident(c)) {
      while (i < n && is_ident(text[i])) out += text[i++];
      prev_sig = 'a';
      continue;
    }
    out += c;
    prev_sig = c;
    ++i;
  }
  return out;
}

inline FeatureHash file_hash(const SourceFile& file) { return FeatureHash{fnv1a64(normalize_text(file.content))}; }

inline FeatureHash class_text_hash(const ClassUnit& unit) {
  const auto& toks = unit.file->tokens;
  const auto& first = toks[unit.decl->first_token];
  const auto& last = toks[unit.decl->last_token];
  const std::string_view span =
      std::string_view(unit.file->content).substr(first.offset, last.offset + last.length - first.offset);
  return FeatureHash{fnv1a64(normalize_text(span))};
}

}  // namespace jcfinder
