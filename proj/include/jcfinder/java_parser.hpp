#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jcfinder/errors.hpp"
#include "jcfinder/java_lexer.hpp"
#include "jcfinder/java_syntax.hpp"

namespace jcfinder::java {

// Recursive-descent parser for Java source up to roughly Java 17 (records, switch
// expressions, text blocks, type patterns in instanceof). Annotations and generic
// bounds are consumed but not retained in the tree.
class Parser {
 public:
  Parser(const std::vector<Token>& tokens, std::string path) : toks_(tokens), path_(std::move(path)) {}

  SyntaxPtr parse_compilation_unit() {
    auto unit = start(Syntax::CompilationUnit);
    skip_annotations();
    if (at_kw("package")) {
      ++pos_;
      while (!at_op(";") && !at_end()) ++pos_;
      expect_op(";");
    }
    // module-info.java declares no types.
    if ((at_ident("open") && peek(1).is(TokenKind::Identifier, "module")) || at_ident("module")) {
      pos_ = toks_.size() - 1;
      return finish(std::move(unit));
    }
    while (!at_end()) {
      if (at_kw("import")) {
        while (!at_op(";") && !at_end()) ++pos_;
        expect_op(";");
        continue;
      }
      if (at_op(";")) {
        ++pos_;
        continue;
      }
      const size_t decl_start = pos_;
      auto mods = parse_modifiers();
      unit->children.push_back(parse_type_decl(decl_start, mods));
    }
    return finish(std::move(unit));
  }

 private:
  struct Modifiers {
    bool is_static = false;
    bool is_abstract = false;
    bool is_default = false;
  };

  static constexpr int kMaxDepth = 1500;

  const std::vector<Token>& toks_;
  std::string path_;
  size_t pos_ = 0;
  int depth_ = 0;

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth_ > kMaxDepth) p.fail("nesting too deep");
    }
    ~DepthGuard() { --p.depth_; }
    Parser& p;
  };

  // ---- token helpers ----

  const Token& peek(size_t k = 0) const {
    const size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& at(size_t i) const { return i < toks_.size() ? toks_[i] : toks_.back(); }
  bool at_end() const { return peek().kind == TokenKind::End; }
  bool at_op(std::string_view op) const { return peek().is_op(op); }
  bool at_kw(std::string_view kw) const { return peek().is_kw(kw); }
  bool at_ident() const { return peek().kind == TokenKind::Identifier; }
  bool at_ident(std::string_view text) const { return peek().is(TokenKind::Identifier, text); }
  bool adjacent(size_t a, size_t b) const { return at(a).offset + at(a).length == at(b).offset; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string near = t.kind == TokenKind::End ? "end of file" : "'" + t.text + "'";
    throw ParseError(path_, static_cast<int>(t.line), msg + " near " + near);
  }

  void expect_op(std::string_view op) {
    if (!at_op(op)) fail("expected '" + std::string(op) + "'");
    ++pos_;
  }
  bool accept_op(std::string_view op) {
    if (!at_op(op)) return false;
    ++pos_;
    return true;
  }
  std::string expect_ident() {
    if (!at_ident()) fail("expected identifier");
    return toks_[pos_++].text;
  }

  SyntaxPtr start(Syntax kind, std::string text = {}) {
    auto node = std::make_unique<SyntaxNode>();
    node->kind = kind;
    node->text = std::move(text);
    node->first_token = static_cast<std::uint32_t>(pos_);
    node->last_token = static_cast<std::uint32_t>(pos_);
    return node;
  }
  SyntaxPtr start_at(Syntax kind, size_t first, std::string text = {}) {
    auto node = start(kind, std::move(text));
    node->first_token = static_cast<std::uint32_t>(first);
    return node;
  }
  SyntaxPtr finish(SyntaxPtr node) const {
    node->last_token = static_cast<std::uint32_t>(pos_ > node->first_token ? pos_ - 1 : node->first_token);
    return node;
  }

  // ---- lookahead scanners (no tree construction) ----

  bool scan_annotation(size_t& p) const {
    if (!at(p).is_op("@") || at(p + 1).is_kw("interface")) return false;
    ++p;
    if (at(p).kind != TokenKind::Identifier) return false;
    ++p;
    while (at(p).is_op(".") && at(p + 1).kind == TokenKind::Identifier) p += 2;
    if (at(p).is_op("(")) {
      if (!skip_balanced(p, "(", ")")) return false;
    }
    return true;
  }

  bool skip_balanced(size_t& p, std::string_view open, std::string_view close) const {
    int depth = 0;
    while (at(p).kind != TokenKind::End) {
      if (at(p).is_op(open)) ++depth;
      else if (at(p).is_op(close)) {
        if (--depth == 0) {
          ++p;
          return true;
        }
      }
      ++p;
    }
    return false;
  }

  bool scan_type_args(size_t& p) const {
    if (!at(p).is_op("<")) return false;
    ++p;
    if (at(p).is_op(">")) {  // diamond
      ++p;
      return true;
    }
    while (true) {
      while (scan_annotation(p)) {
      }
      if (at(p).is_op("?")) {
        ++p;
        if (at(p).is_kw("extends") || at(p).is_kw("super")) {
          ++p;
          if (!scan_type(p)) return false;
        }
      } else if (!scan_type(p)) {
        return false;
      }
      if (at(p).is_op(",")) {
        ++p;
        continue;
      }
      if (at(p).is_op(">")) {
        ++p;
        return true;
      }
      return false;
    }
  }

  bool scan_type(size_t& p) const {
    while (scan_annotation(p)) {
    }
    const Token& t = at(p);
    if (t.kind == TokenKind::Keyword && (is_primitive_type_name(t.text) || t.text == "void")) {
      ++p;
    } else if (t.kind == TokenKind::Identifier) {
      ++p;
      if (at(p).is_op("<") && !scan_type_args(p)) return false;
      while (at(p).is_op(".") && (at(p + 1).kind == TokenKind::Identifier || at(p + 1).is_op("@"))) {
        ++p;
        while (scan_annotation(p)) {
        }
        if (at(p).kind != TokenKind::Identifier) return false;
        ++p;
        if (at(p).is_op("<") && !scan_type_args(p)) return false;
      }
    } else {
      return false;
    }
    while (true) {
      size_t q = p;
      while (scan_annotation(q)) {
      }
      if (at(q).is_op("[") && at(q + 1).is_op("]")) {
        p = q + 2;
        continue;
      }
      break;
    }
    return true;
  }

  size_t matching_close(size_t p, std::string_view open, std::string_view close) const {
    size_t q = p;
    return skip_balanced(q, open, close) ? q - 1 : toks_.size() - 1;
  }

  // ---- annotations & modifiers ----

  void skip_annotations() {
    size_t p = pos_;
    while (scan_annotation(p)) pos_ = p;
  }

  Modifiers parse_modifiers() {
    Modifiers m;
    while (true) {
      size_t p = pos_;
      if (scan_annotation(p)) {
        pos_ = p;
        continue;
      }
      const Token& t = peek();
      if (t.kind == TokenKind::Keyword &&
          (t.text == "public" || t.text == "protected" || t.text == "private" || t.text == "static" ||
           t.text == "final" || t.text == "abstract" || t.text == "native" || t.text == "synchronized" ||
           t.text == "transient" || t.text == "volatile" || t.text == "strictfp" ||
           (t.text == "default" && !peek(1).is_op(":") && !peek(1).is_op("->")))) {
        if (t.text == "static") m.is_static = true;
        if (t.text == "abstract") m.is_abstract = true;
        if (t.text == "default") m.is_default = true;
        ++pos_;
        continue;
      }
      if (t.kind == TokenKind::Identifier && t.text == "sealed" &&
          (peek(1).kind == TokenKind::Keyword || peek(1).kind == TokenKind::Identifier)) {
        ++pos_;
        continue;
      }
      if (t.kind == TokenKind::Identifier && t.text == "non" && peek(1).is_op("-") &&
          peek(2).is(TokenKind::Identifier, "sealed")) {
        pos_ += 3;
        continue;
      }
      break;
    }
    return m;
  }

  void skip_type_params() {
    if (!at_op("<")) return;
    size_t p = pos_;
    int depth = 0;
    while (true) {
      if (at(p).kind == TokenKind::End) fail("unterminated type parameters");
      if (at(p).is_op("<")) ++depth;
      else if (at(p).is_op(">")) {
        if (--depth == 0) {
          pos_ = p + 1;
          return;
        }
      }
      ++p;
    }
  }

  // ---- types ----

  SyntaxPtr parse_type() {
    DepthGuard guard(*this);
    skip_annotations();
    SyntaxPtr type;
    const Token& t = peek();
    if (t.kind == TokenKind::Keyword && (is_primitive_type_name(t.text) || t.text == "void")) {
      type = start(Syntax::PrimitiveType, t.text);
      ++pos_;
      type = finish(std::move(type));
    } else if (t.kind == TokenKind::Identifier) {
      const size_t first = pos_;
      std::string name = expect_ident();
      std::vector<SyntaxPtr> args = parse_type_args_opt();
      while (at_op(".") && (peek(1).kind == TokenKind::Identifier || peek(1).is_op("@"))) {
        ++pos_;
        skip_annotations();
        name = expect_ident();
        // Type arguments of the outer qualifier do not belong to the simple name.
        args = parse_type_args_opt();
      }
      type = start_at(Syntax::ClassType, first, name);
      type->children = std::move(args);
      type = finish(std::move(type));
    } else {
      fail("expected type");
    }
    return parse_dims(std::move(type));
  }

  SyntaxPtr parse_dims(SyntaxPtr type) {
    while (true) {
      size_t p = pos_;
      while (scan_annotation(p)) {
      }
      if (at(p).is_op("[") && at(p + 1).is_op("]")) {
        auto arr = start_at(Syntax::ArrayType, type->first_token);
        pos_ = p + 2;
        arr->children.push_back(std::move(type));
        type = finish(std::move(arr));
        continue;
      }
      return type;
    }
  }

  std::vector<SyntaxPtr> parse_type_args_opt() {
    std::vector<SyntaxPtr> args;
    if (!at_op("<")) return args;
    ++pos_;
    if (accept_op(">")) return args;
    while (true) {
      skip_annotations();
      if (at_op("?")) {
        auto wc = start(Syntax::Wildcard);
        ++pos_;
        if (at_kw("extends") || at_kw("super")) {
          wc->text = peek().text;
          ++pos_;
          wc->children.push_back(parse_type());
        }
        args.push_back(finish(std::move(wc)));
      } else {
        args.push_back(parse_type());
      }
      if (accept_op(",")) continue;
      expect_op(">");
      return args;
    }
  }

  std::vector<SyntaxPtr> parse_type_list() {
    std::vector<SyntaxPtr> types;
    types.push_back(parse_type());
    while (accept_op(",")) types.push_back(parse_type());
    return types;
  }

  // ---- declarations ----

  SyntaxPtr parse_type_decl(size_t decl_start, const Modifiers& mods) {
    DepthGuard guard(*this);
    auto decl = start_at(Syntax::TypeDecl, decl_start);
    if (mods.is_static) decl->flags |= flags::kStatic;
    if (mods.is_abstract) decl->flags |= flags::kAbstract;
    if (at_kw("class")) {
      decl->type_kind = TypeKind::Class;
    } else if (at_kw("interface")) {
      decl->type_kind = TypeKind::Interface;
    } else if (at_kw("enum")) {
      decl->type_kind = TypeKind::Enum;
    } else if (at_ident("record") && peek(1).kind == TokenKind::Identifier) {
      decl->type_kind = TypeKind::Record;
    } else if (at_op("@") && peek(1).is_kw("interface")) {
      decl->type_kind = TypeKind::Annotation;
      ++pos_;
    } else {
      fail("expected type declaration");
    }
    ++pos_;
    decl->text = expect_ident();
    skip_type_params();
    if (decl->type_kind == TypeKind::Record) {
      expect_op("(");
      while (!at_op(")")) {
        decl->children.push_back(parse_parameter());
        if (!accept_op(",")) break;
      }
      expect_op(")");
    }
    while (true) {
      if (at_kw("extends") || at_kw("implements")) {
        ++pos_;
        for (auto& t : parse_type_list()) decl->children.push_back(std::move(t));
      } else if (at_ident("permits")) {
        ++pos_;
        parse_type_list();
      } else {
        break;
      }
    }
    expect_op("{");
    if (decl->type_kind == TypeKind::Enum) parse_enum_constants(*decl);
    parse_members(*decl, decl->text);
    expect_op("}");
    return finish(std::move(decl));
  }

  void parse_enum_constants(SyntaxNode& decl) {
    while (!at_op(";") && !at_op("}")) {
      skip_annotations();
      auto constant = start(Syntax::EnumConstant, expect_ident());
      if (at_op("(")) {
        for (auto& a : parse_arguments()) constant->children.push_back(std::move(a));
      }
      if (at_op("{")) constant->children.push_back(parse_class_body());
      decl.children.push_back(finish(std::move(constant)));
      if (!accept_op(",")) break;
    }
    accept_op(";");
  }

  SyntaxPtr parse_class_body() {
    auto body = start(Syntax::ClassBody);
    expect_op("{");
    parse_members(*body, {});
    expect_op("}");
    return finish(std::move(body));
  }

  // Parses members until the closing brace (not consumed).
  void parse_members(SyntaxNode& owner, std::string_view owner_name) {
    while (!at_op("}")) {
      if (at_end()) fail("unexpected end of file in class body");
      if (accept_op(";")) continue;
      const size_t member_start = pos_;
      Modifiers mods = parse_modifiers();
      if (at_op("{")) {
        auto init = start_at(Syntax::Initializer, member_start);
        if (mods.is_static) init->flags |= flags::kStatic;
        init->flags |= flags::kHasBody;
        init->children.push_back(parse_block());
        owner.children.push_back(finish(std::move(init)));
        continue;
      }
      if (at_kw("class") || at_kw("interface") || at_kw("enum") || (at_op("@") && peek(1).is_kw("interface")) ||
          (at_ident("record") && peek(1).kind == TokenKind::Identifier && peek(2).is_op("(")) ||
          (at_ident("record") && peek(1).kind == TokenKind::Identifier && peek(2).is_op("<"))) {
        owner.children.push_back(parse_type_decl(member_start, mods));
        continue;
      }
      skip_type_params();
      // Constructor: Name '(' ; compact record constructor: Name '{'.
      if (at_ident() && (peek(1).is_op("(") || (peek(1).is_op("{") && peek().text == owner_name))) {
        auto method = start_at(Syntax::Method, member_start, expect_ident());
        method->flags |= flags::kConstructor;
        if (at_op("(")) parse_parameters(*method);
        parse_method_tail(*method, mods);
        owner.children.push_back(finish(std::move(method)));
        continue;
      }
      auto type = parse_type();
      const size_t name_pos = pos_;
      std::string name = expect_ident();
      if (at_op("(")) {
        auto method = start_at(Syntax::Method, member_start, std::move(name));
        method->children.push_back(std::move(type));
        parse_parameters(*method);
        while (at_op("[") && peek(1).is_op("]")) pos_ += 2;
        parse_method_tail(*method, mods);
        owner.children.push_back(finish(std::move(method)));
        continue;
      }
      pos_ = name_pos;
      auto field = start_at(Syntax::Field, member_start);
      if (mods.is_static) field->flags |= flags::kStatic;
      field->children.push_back(std::move(type));
      parse_declarators(*field);
      expect_op(";");
      owner.children.push_back(finish(std::move(field)));
    }
  }

  void parse_parameters(SyntaxNode& method) {
    expect_op("(");
    while (!at_op(")")) {
      method.children.push_back(parse_parameter());
      if (!accept_op(",")) break;
    }
    expect_op(")");
  }

  SyntaxPtr parse_parameter() {
    const size_t first = pos_;
    parse_modifiers();
    auto type = parse_type();
    bool varargs = false;
    skip_annotations();
    if (accept_op("...")) varargs = true;
    std::string name;
    if (at_kw("this")) {  // receiver parameter
      ++pos_;
      name = "this";
    } else {
      name = expect_ident();
      while (at_op(".") && peek(1).is_kw("this")) pos_ += 2;
    }
    while (at_op("[") && peek(1).is_op("]")) {
      auto arr = start_at(Syntax::ArrayType, type->first_token);
      pos_ += 2;
      arr->children.push_back(std::move(type));
      type = finish(std::move(arr));
    }
    auto param = start_at(Syntax::Parameter, first, std::move(name));
    if (varargs) {
      param->flags |= flags::kVarargs;
      auto arr = start_at(Syntax::ArrayType, type->first_token);
      arr->children.push_back(std::move(type));
      type = finish(std::move(arr));
    }
    param->children.push_back(std::move(type));
    return finish(std::move(param));
  }

  void parse_method_tail(SyntaxNode& method, const Modifiers& mods) {
    if (at_kw("throws")) {
      ++pos_;
      parse_type_list();
    }
    if (at_kw("default")) {  // annotation element default value
      ++pos_;
      parse_element_value();
    }
    if (at_op("{")) {
      method.flags |= flags::kHasBody;
      method.children.push_back(parse_block());
    } else {
      expect_op(";");
      method.flags |= flags::kAbstract;
    }
    if (mods.is_static) method.flags |= flags::kStatic;
  }

  void parse_element_value() {
    if (at_op("{")) {
      size_t p = pos_;
      if (!skip_balanced(p, "{", "}")) fail("unterminated element value");
      pos_ = p;
      return;
    }
    size_t p = pos_;
    if (scan_annotation(p)) {
      pos_ = p;
      return;
    }
    parse_expression();
  }

  void parse_declarators(SyntaxNode& owner) {
    while (true) {
      auto decl = start(Syntax::Declarator, expect_ident());
      while (at_op("[") && peek(1).is_op("]")) pos_ += 2;
      if (accept_op("=")) decl->children.push_back(at_op("{") ? parse_array_init() : parse_expression());
      owner.children.push_back(finish(std::move(decl)));
      if (!accept_op(",")) break;
    }
  }

  // ---- statements ----

  SyntaxPtr parse_block() {
    DepthGuard guard(*this);
    auto block = start(Syntax::Block);
    expect_op("{");
    while (!at_op("}")) {
      if (at_end()) fail("unexpected end of file in block");
      block->children.push_back(parse_block_statement());
    }
    expect_op("}");
    return finish(std::move(block));
  }

  bool looks_like_local_var() const {
    size_t p = pos_;
    if (!scan_type(p)) return false;
    if (at(p).kind != TokenKind::Identifier) return false;
    const Token& after = at(p + 1);
    return after.is_op("=") || after.is_op(";") || after.is_op(",") || after.is_op("[") || after.is_op(":");
  }

  bool looks_like_local_type() const {
    size_t p = pos_;
    while (true) {
      size_t q = p;
      if (scan_annotation(q)) {
        p = q;
        continue;
      }
      const Token& t = at(p);
      if (t.is_kw("final") || t.is_kw("abstract") || t.is_kw("static") || t.is_kw("strictfp")) {
        ++p;
        continue;
      }
      break;
    }
    const Token& t = at(p);
    if (t.is_kw("class") || t.is_kw("interface") || t.is_kw("enum")) return true;
    return t.is(TokenKind::Identifier, "record") && at(p + 1).kind == TokenKind::Identifier &&
           (at(p + 2).is_op("(") || at(p + 2).is_op("<"));
  }

  SyntaxPtr parse_block_statement() {
    if (looks_like_local_type()) {
      const size_t first = pos_;
      auto wrapper = start(Syntax::LocalType);
      Modifiers mods = parse_modifiers();
      wrapper->children.push_back(parse_type_decl(first, mods));
      return finish(std::move(wrapper));
    }
    const size_t first = pos_;
    size_t p = pos_;
    bool had_modifiers = false;
    while (true) {
      size_t q = p;
      if (scan_annotation(q)) {
        p = q;
        had_modifiers = true;
        continue;
      }
      if (at(p).is_kw("final")) {
        ++p;
        had_modifiers = true;
        continue;
      }
      break;
    }
    if (had_modifiers) {
      pos_ = p;
      if (!looks_like_local_var()) fail("expected local variable declaration");
    }
    if (had_modifiers || (!is_yield_statement() && looks_like_local_var())) {
      auto var = start_at(Syntax::LocalVar, first);
      var->children.push_back(parse_type());
      parse_declarators(*var);
      expect_op(";");
      return finish(std::move(var));
    }
    return parse_statement();
  }

  bool is_yield_statement() const {
    if (!at_ident("yield")) return false;
    const Token& n = peek(1);
    if (n.kind == TokenKind::Identifier || n.is_literal()) return true;
    if (n.kind == TokenKind::Keyword)
      return n.text == "new" || n.text == "this" || n.text == "super" || n.text == "switch" ||
             is_primitive_type_name(n.text);
    return n.is_op("-") || n.is_op("+") || n.is_op("!") || n.is_op("~") || n.is_op("(") || n.is_op("++") ||
           n.is_op("--");
  }

  SyntaxPtr parse_statement() {
    DepthGuard guard(*this);
    const Token& t = peek();
    if (t.is_op("{")) return parse_block();
    if (t.is_op(";")) {
      auto empty = start(Syntax::Empty);
      ++pos_;
      return finish(std::move(empty));
    }
    if (t.kind == TokenKind::Identifier && peek(1).is_op(":") ) {
      auto labeled = start(Syntax::Labeled, t.text);
      pos_ += 2;
      labeled->children.push_back(parse_statement());
      return finish(std::move(labeled));
    }
    if (is_yield_statement()) {
      auto y = start(Syntax::Yield);
      ++pos_;
      y->children.push_back(parse_expression());
      expect_op(";");
      return finish(std::move(y));
    }
    if (t.kind == TokenKind::Keyword) {
      const std::string& kw = t.text;
      if (kw == "if") {
        auto node = start(Syntax::If);
        ++pos_;
        node->children.push_back(parse_par_expression());
        node->children.push_back(parse_statement());
        if (at_kw("else")) {
          ++pos_;
          node->children.push_back(parse_statement());
        }
        return finish(std::move(node));
      }
      if (kw == "while") {
        auto node = start(Syntax::While);
        ++pos_;
        node->children.push_back(parse_par_expression());
        node->children.push_back(parse_statement());
        return finish(std::move(node));
      }
      if (kw == "do") {
        auto node = start(Syntax::Do);
        ++pos_;
        node->children.push_back(parse_statement());
        if (!at_kw("while")) fail("expected 'while'");
        ++pos_;
        node->children.push_back(parse_par_expression());
        expect_op(";");
        return finish(std::move(node));
      }
      if (kw == "for") return parse_for();
      if (kw == "try") return parse_try();
      if (kw == "switch") {
        auto node = parse_switch(Syntax::Switch);
        accept_op(";");
        return node;
      }
      if (kw == "return" || kw == "throw") {
        auto node = start(kw == "return" ? Syntax::Return : Syntax::Throw);
        ++pos_;
        if (!at_op(";")) node->children.push_back(parse_expression());
        expect_op(";");
        return finish(std::move(node));
      }
      if (kw == "break" || kw == "continue") {
        auto node = start(kw == "break" ? Syntax::Break : Syntax::Continue);
        ++pos_;
        if (at_ident()) node->text = expect_ident();
        expect_op(";");
        return finish(std::move(node));
      }
      if (kw == "synchronized") {
        auto node = start(Syntax::Synchronized);
        ++pos_;
        node->children.push_back(parse_par_expression());
        node->children.push_back(parse_block());
        return finish(std::move(node));
      }
      if (kw == "assert") {
        auto node = start(Syntax::Assert);
        ++pos_;
        node->children.push_back(parse_expression());
        if (accept_op(":")) node->children.push_back(parse_expression());
        expect_op(";");
        return finish(std::move(node));
      }
      if ((kw == "this" || kw == "super") && peek(1).is_op("(")) {
        auto node = start(Syntax::CtorCall, kw);
        ++pos_;
        for (auto& a : parse_arguments()) node->children.push_back(std::move(a));
        expect_op(";");
        return finish(std::move(node));
      }
    }
    // Qualified explicit constructor invocation: outer.super(...);
    auto stmt = start(Syntax::ExprStmt);
    stmt->children.push_back(parse_expression());
    expect_op(";");
    return finish(std::move(stmt));
  }

  SyntaxPtr parse_par_expression() {
    expect_op("(");
    auto e = parse_expression();
    expect_op(")");
    return e;
  }

  SyntaxPtr parse_for() {
    const size_t first = pos_;
    ++pos_;
    expect_op("(");
    // for-each: [modifiers] Type name ':'
    {
      size_t p = pos_;
      while (true) {
        size_t q = p;
        if (scan_annotation(q)) {
          p = q;
          continue;
        }
        if (at(p).is_kw("final")) {
          ++p;
          continue;
        }
        break;
      }
      size_t q = p;
      if (scan_type(q) && at(q).kind == TokenKind::Identifier && at(q + 1).is_op(":")) {
        auto node = start_at(Syntax::ForEach, first);
        pos_ = p;
        auto var = start(Syntax::LocalVar);
        var->children.push_back(parse_type());
        auto decl = start(Syntax::Declarator, expect_ident());
        var->children.push_back(finish(std::move(decl)));
        node->children.push_back(finish(std::move(var)));
        expect_op(":");
        node->children.push_back(parse_expression());
        expect_op(")");
        node->children.push_back(parse_statement());
        return finish(std::move(node));
      }
    }
    auto node = start_at(Syntax::For, first);
    // Children: init group, condition (or Empty), update group, body.
    auto init = start(Syntax::Block);
    if (!at_op(";")) {
      size_t p = pos_;
      bool mods = false;
      while (true) {
        size_t q = p;
        if (scan_annotation(q)) {
          p = q;
          mods = true;
          continue;
        }
        if (at(p).is_kw("final")) {
          ++p;
          mods = true;
          continue;
        }
        break;
      }
      const size_t saved = pos_;
      pos_ = p;
      if (mods || looks_like_local_var()) {
        auto var = start_at(Syntax::LocalVar, saved);
        var->children.push_back(parse_type());
        parse_declarators(*var);
        init->children.push_back(finish(std::move(var)));
      } else {
        pos_ = saved;
        do {
          auto es = start(Syntax::ExprStmt);
          es->children.push_back(parse_expression());
          init->children.push_back(finish(std::move(es)));
        } while (accept_op(","));
      }
    }
    node->children.push_back(finish(std::move(init)));
    expect_op(";");
    if (at_op(";")) node->children.push_back(finish(start(Syntax::Empty)));
    else node->children.push_back(parse_expression());
    expect_op(";");
    auto update = start(Syntax::Block);
    if (!at_op(")")) {
      do {
        auto es = start(Syntax::ExprStmt);
        es->children.push_back(parse_expression());
        update->children.push_back(finish(std::move(es)));
      } while (accept_op(","));
    }
    node->children.push_back(finish(std::move(update)));
    expect_op(")");
    node->children.push_back(parse_statement());
    return finish(std::move(node));
  }

  SyntaxPtr parse_try() {
    auto node = start(Syntax::Try);
    ++pos_;
    if (accept_op("(")) {
      while (!at_op(")")) {
        auto res = start(Syntax::Resource);
        parse_modifiers();
        if (looks_like_local_var()) {
          res->children.push_back(parse_type());
          auto decl = start(Syntax::Declarator, expect_ident());
          expect_op("=");
          decl->children.push_back(parse_expression());
          res->children.push_back(finish(std::move(decl)));
        } else {
          res->children.push_back(parse_expression());
        }
        node->children.push_back(finish(std::move(res)));
        if (!accept_op(";")) break;
      }
      expect_op(")");
    }
    node->children.push_back(parse_block());
    while (at_kw("catch")) {
      auto c = start(Syntax::Catch);
      ++pos_;
      expect_op("(");
      parse_modifiers();
      auto first_type = parse_type();
      if (at_op("|")) {
        auto u = start_at(Syntax::UnionType, first_type->first_token);
        u->children.push_back(std::move(first_type));
        while (accept_op("|")) u->children.push_back(parse_type());
        first_type = finish(std::move(u));
      }
      auto param = start(Syntax::Parameter, expect_ident());
      param->children.push_back(std::move(first_type));
      c->children.push_back(finish(std::move(param)));
      expect_op(")");
      c->children.push_back(parse_block());
      node->children.push_back(finish(std::move(c)));
    }
    if (at_kw("finally")) {
      auto f = start(Syntax::Finally);
      ++pos_;
      f->children.push_back(parse_block());
      node->children.push_back(finish(std::move(f)));
    }
    return finish(std::move(node));
  }

  SyntaxPtr parse_switch(Syntax kind) {
    auto node = start(kind);
    ++pos_;
    node->children.push_back(parse_par_expression());
    expect_op("{");
    while (!at_op("}")) {
      if (at_end()) fail("unexpected end of file in switch");
      auto sc = start(Syntax::SwitchCase);
      // One or more labels (old style stacks "case A: case B:" into one group).
      while (at_kw("case") || at_kw("default")) {
        if (at_kw("default")) {
          auto d = start(Syntax::DefaultLabel);
          ++pos_;
          sc->children.push_back(finish(std::move(d)));
        } else {
          ++pos_;
          do {
            auto label = start(Syntax::CaseLabel);
            label->children.push_back(parse_case_label());
            sc->children.push_back(finish(std::move(label)));
          } while (accept_op(","));
        }
        if (accept_op("->")) {
          sc->flags |= flags::kArrow;
          break;
        }
        expect_op(":");
      }
      if (sc->children.empty()) fail("expected 'case' or 'default'");
      if (sc->has(flags::kArrow)) {
        if (at_op("{")) {
          sc->children.push_back(parse_block());
        } else if (at_kw("throw")) {
          sc->children.push_back(parse_statement());
        } else {
          auto es = start(Syntax::ExprStmt);
          es->children.push_back(parse_expression());
          expect_op(";");
          sc->children.push_back(finish(std::move(es)));
        }
      } else {
        while (!at_kw("case") && !at_kw("default") && !at_op("}")) {
          if (at_end()) fail("unexpected end of file in switch");
          sc->children.push_back(parse_block_statement());
        }
      }
      node->children.push_back(finish(std::move(sc)));
    }
    expect_op("}");
    return finish(std::move(node));
  }

  SyntaxPtr parse_case_label() {
    // Type pattern: `case Foo f ->`
    size_t p = pos_;
    if (scan_type(p) && at(p).kind == TokenKind::Identifier && (at(p + 1).is_op("->") || at(p + 1).is_op(":"))) {
      auto io = start(Syntax::InstanceOf);
      io->children.push_back(parse_type());
      io->children.push_back(finish(start(Syntax::Name, expect_ident())));
      return finish(std::move(io));
    }
    return parse_ternary();
  }

  // ---- expressions ----

 public:
  SyntaxPtr parse_expression() {
    DepthGuard guard(*this);
    if (lambda_ahead()) return parse_lambda();
    const size_t first = pos_;
    auto lhs = parse_ternary();
    std::string op;
    size_t width = 0;
    if (peek_assign_op(op, width)) {
      pos_ += width;
      auto node = start_at(Syntax::Assign, first, op);
      node->children.push_back(std::move(lhs));
      node->children.push_back(at_op("{") ? parse_array_init() : parse_expression());
      return finish(std::move(node));
    }
    return lhs;
  }

 private:
  bool peek_assign_op(std::string& op, size_t& width) const {
    const Token& t = peek();
    if (t.kind != TokenKind::Operator) return false;
    static constexpr std::string_view kSimple[] = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<="};
    for (auto s : kSimple) {
      if (t.text == s) {
        op = t.text;
        width = 1;
        return true;
      }
    }
    if (t.text == ">") {
      // >>= and >>>= arrive as adjacent '>' tokens followed by '='.
      size_t k = pos_;
      std::string joined;
      while (at(k).is_op(">") && (k == pos_ || adjacent(k - 1, k))) {
        joined += ">";
        ++k;
      }
      if ((joined == ">>" || joined == ">>>") && at(k).is_op("=") && adjacent(k - 1, k)) {
        op = joined + "=";
        width = k - pos_ + 1;
        return true;
      }
    }
    return false;
  }

  SyntaxPtr parse_ternary() {
    const size_t first = pos_;
    auto cond = parse_binary(1);
    if (!at_op("?")) return cond;
    ++pos_;
    auto node = start_at(Syntax::Conditional, first);
    node->children.push_back(std::move(cond));
    node->children.push_back(parse_ternary_branch());
    expect_op(":");
    node->children.push_back(parse_ternary_branch());
    return finish(std::move(node));
  }

  SyntaxPtr parse_ternary_branch() {
    if (lambda_ahead()) return parse_lambda();
    return parse_ternary();
  }

  static int binary_precedence(std::string_view op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "|") return 3;
    if (op == "^") return 4;
    if (op == "&") return 5;
    if (op == "==" || op == "!=") return 6;
    if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof") return 7;
    if (op == "<<" || op == ">>" || op == ">>>") return 8;
    if (op == "+" || op == "-") return 9;
    if (op == "*" || op == "/" || op == "%") return 10;
    return 0;
  }

  // Returns the binary operator at the cursor and its width in tokens.
  bool peek_binary_op(std::string& op, size_t& width) const {
    const Token& t = peek();
    if (t.is_kw("instanceof")) {
      op = "instanceof";
      width = 1;
      return true;
    }
    if (t.kind != TokenKind::Operator) return false;
    if (t.text == ">") {
      size_t k = pos_ + 1;
      std::string joined = ">";
      while (joined.size() < 3 && at(k).is_op(">") && adjacent(k - 1, k)) {
        joined += ">";
        ++k;
      }
      if (at(k).is_op("=") && adjacent(k - 1, k)) {
        if (joined != ">") return false;  // compound shift assignment
        op = ">=";
        width = 2;
        return true;
      }
      op = joined;
      width = k - pos_;
      return true;
    }
    if (binary_precedence(t.text) == 0) return false;
    op = t.text;
    width = 1;
    return true;
  }

  SyntaxPtr parse_binary(int min_prec) {
    DepthGuard guard(*this);
    const size_t first = pos_;
    auto lhs = parse_unary();
    while (true) {
      std::string op;
      size_t width = 0;
      if (!peek_binary_op(op, width)) break;
      const int prec = binary_precedence(op);
      if (prec < min_prec) break;
      pos_ += width;
      if (op == "instanceof") {
        auto node = start_at(Syntax::InstanceOf, first);
        node->children.push_back(std::move(lhs));
        accept_final_modifier();
        node->children.push_back(parse_type());
        if (at_ident() && !peek(1).is_op("(")) node->children.push_back(finish(start(Syntax::Name, expect_ident())));
        lhs = finish(std::move(node));
        continue;
      }
      auto rhs = parse_binary(prec + 1);
      auto node = start_at(Syntax::Binary, first, op);
      node->children.push_back(std::move(lhs));
      node->children.push_back(std::move(rhs));
      lhs = finish(std::move(node));
    }
    return lhs;
  }

  void accept_final_modifier() {
    while (true) {
      size_t p = pos_;
      if (scan_annotation(p)) {
        pos_ = p;
        continue;
      }
      if (at_kw("final")) {
        ++pos_;
        continue;
      }
      return;
    }
  }

  SyntaxPtr parse_unary() {
    DepthGuard guard(*this);
    const Token& t = peek();
    if (t.kind == TokenKind::Operator &&
        (t.text == "+" || t.text == "-" || t.text == "++" || t.text == "--" || t.text == "!" || t.text == "~")) {
      auto node = start(Syntax::Unary, t.text);
      ++pos_;
      node->children.push_back(parse_unary());
      return finish(std::move(node));
    }
    if (t.is_op("(")) {
      if (lambda_ahead()) return parse_lambda();
      if (cast_ahead()) {
        auto node = start(Syntax::Cast);
        ++pos_;
        auto type = parse_type();
        if (at_op("&")) {
          auto u = start_at(Syntax::UnionType, type->first_token);
          u->children.push_back(std::move(type));
          while (accept_op("&")) u->children.push_back(parse_type());
          type = finish(std::move(u));
        }
        expect_op(")");
        node->children.push_back(std::move(type));
        node->children.push_back(lambda_ahead() ? parse_lambda() : parse_unary());
        return finish(std::move(node));
      }
    }
    return parse_postfix(parse_primary());
  }

  bool lambda_ahead() const {
    if (at_ident() && peek(1).is_op("->")) return true;
    if (!at_op("(")) return false;
    const size_t close = matching_close(pos_, "(", ")");
    return at(close + 1).is_op("->");
  }

  bool cast_ahead() const {
    size_t p = pos_ + 1;
    const Token& first = at(p);
    const bool primitive = first.kind == TokenKind::Keyword && is_primitive_type_name(first.text);
    if (!scan_type(p)) return false;
    while (at(p).is_op("&")) {
      ++p;
      if (!scan_type(p)) return false;
    }
    if (!at(p).is_op(")")) return false;
    if (primitive) return true;
    const Token& next = at(p + 1);
    if (next.kind == TokenKind::Identifier || next.is_literal()) return true;
    if (next.kind == TokenKind::Keyword)
      return next.text == "this" || next.text == "super" || next.text == "new" || next.text == "switch" ||
             is_primitive_type_name(next.text);
    return next.is_op("(") || next.is_op("!") || next.is_op("~");
  }

  SyntaxPtr parse_lambda() {
    auto node = start(Syntax::Lambda);
    if (at_ident()) {
      auto p = start(Syntax::Parameter, expect_ident());
      node->children.push_back(finish(std::move(p)));
    } else {
      expect_op("(");
      while (!at_op(")")) {
        if (at_ident() && (peek(1).is_op(",") || peek(1).is_op(")"))) {
          auto p = start(Syntax::Parameter, expect_ident());
          node->children.push_back(finish(std::move(p)));
        } else {
          node->children.push_back(parse_parameter());
        }
        if (!accept_op(",")) break;
      }
      expect_op(")");
    }
    expect_op("->");
    node->children.push_back(at_op("{") ? parse_block() : parse_expression());
    return finish(std::move(node));
  }

  std::vector<SyntaxPtr> parse_arguments() {
    std::vector<SyntaxPtr> args;
    expect_op("(");
    while (!at_op(")")) {
      args.push_back(lambda_ahead() ? parse_lambda() : parse_expression());
      if (!accept_op(",")) break;
    }
    expect_op(")");
    return args;
  }

  SyntaxPtr parse_array_init() {
    DepthGuard guard(*this);
    auto node = start(Syntax::ArrayInit);
    expect_op("{");
    while (!at_op("}")) {
      node->children.push_back(at_op("{") ? parse_array_init() : parse_expression());
      if (!accept_op(",")) break;
    }
    expect_op("}");
    return finish(std::move(node));
  }

  SyntaxPtr parse_creator(size_t first, SyntaxPtr outer) {
    ++pos_;  // 'new'
    parse_type_args_opt();
    skip_annotations();
    // Element type without dims; dims are parsed here.
    SyntaxPtr type;
    const Token& t = peek();
    if (t.kind == TokenKind::Keyword && is_primitive_type_name(t.text)) {
      type = start(Syntax::PrimitiveType, t.text);
      ++pos_;
      type = finish(std::move(type));
    } else {
      const size_t tf = pos_;
      std::string name = expect_ident();
      auto args = parse_type_args_opt();
      while (at_op(".") && (peek(1).kind == TokenKind::Identifier || peek(1).is_op("@"))) {
        ++pos_;
        skip_annotations();
        name = expect_ident();
        args = parse_type_args_opt();
      }
      type = start_at(Syntax::ClassType, tf, name);
      type->children = std::move(args);
      type = finish(std::move(type));
    }
    skip_annotations();
    if (at_op("[")) {
      auto node = start_at(Syntax::NewArray, first);
      std::vector<SyntaxPtr> dims;
      while (true) {
        size_t p = pos_;
        while (scan_annotation(p)) {
        }
        if (!at(p).is_op("[")) break;
        pos_ = p + 1;
        if (at_op("]")) {
          ++pos_;
          auto arr = start_at(Syntax::ArrayType, type->first_token);
          arr->children.push_back(std::move(type));
          type = finish(std::move(arr));
          continue;
        }
        dims.push_back(parse_expression());
        expect_op("]");
        auto arr = start_at(Syntax::ArrayType, type->first_token);
        arr->children.push_back(std::move(type));
        type = finish(std::move(arr));
      }
      node->children.push_back(std::move(type));
      for (auto& d : dims) node->children.push_back(std::move(d));
      if (at_op("{")) node->children.push_back(parse_array_init());
      return finish(std::move(node));
    }
    auto node = start_at(Syntax::New, first);
    if (outer) {
      node->flags |= flags::kQualified;
    }
    node->children.push_back(std::move(type));
    if (outer) node->children.push_back(std::move(outer));
    for (auto& a : parse_arguments()) node->children.push_back(std::move(a));
    if (at_op("{")) node->children.push_back(parse_class_body());
    return finish(std::move(node));
  }

  SyntaxPtr parse_primary() {
    DepthGuard guard(*this);
    const Token& t = peek();
    const size_t first = pos_;
    if (t.is_literal()) {
      auto node = start(Syntax::Literal, t.text);
      node->literal_kind = static_cast<std::uint8_t>(t.kind);
      ++pos_;
      return finish(std::move(node));
    }
    if (t.is_op("(")) {
      ++pos_;
      auto e = parse_expression();
      expect_op(")");
      return e;
    }
    if (t.kind == TokenKind::Identifier) {
      if (peek(1).is_op("(")) {
        auto call = start(Syntax::MethodCall, expect_ident());
        for (auto& a : parse_arguments()) call->children.push_back(std::move(a));
        return finish(std::move(call));
      }
      // Generic type method reference / array type literal: Foo<Bar>::new, Foo[].class
      {
        size_t p = pos_;
        if (at(p + 1).is_op("<") && scan_type(p) && at(p).is_op("::")) {
          auto type = parse_type();
          return parse_type_suffix(first, std::move(type));
        }
      }
      auto name = start(Syntax::Name, expect_ident());
      return finish(std::move(name));
    }
    if (t.kind == TokenKind::Keyword) {
      if (t.text == "this") {
        auto node = start(Syntax::This);
        ++pos_;
        return finish(std::move(node));
      }
      if (t.text == "super") {
        auto node = start(Syntax::Super);
        ++pos_;
        return finish(std::move(node));
      }
      if (t.text == "new") return parse_creator(first, nullptr);
      if (t.text == "switch") return parse_switch(Syntax::SwitchExpr);
      if (is_primitive_type_name(t.text) || t.text == "void") {
        auto type = parse_type();
        return parse_type_suffix(first, std::move(type));
      }
    }
    if (t.is_op("<")) {  // <T>method() without receiver is illegal; tolerate it
      parse_type_args_opt();
      return parse_primary();
    }
    fail("expected expression");
  }

  // After a bare type in expression position: `.class` or `::name`.
  SyntaxPtr parse_type_suffix(size_t first, SyntaxPtr type) {
    if (at_op(".") && peek(1).is_kw("class")) {
      pos_ += 2;
      auto node = start_at(Syntax::ClassLiteral, first);
      node->children.push_back(std::move(type));
      return finish(std::move(node));
    }
    if (accept_op("::")) {
      auto node = start_at(Syntax::MethodRef, first);
      node->text = at_kw("new") ? "new" : "";
      if (node->text.empty()) node->text = expect_ident();
      else ++pos_;
      node->children.push_back(std::move(type));
      return finish(std::move(node));
    }
    fail("expected '.class' or '::'");
  }

  // Converts a dotted name expression into a class type (for `a.b.C.class`).
  SyntaxPtr name_to_type(SyntaxPtr expr) {
    auto type = std::make_unique<SyntaxNode>();
    type->kind = Syntax::ClassType;
    type->first_token = expr->first_token;
    type->last_token = expr->last_token;
    type->text = expr->text;
    return type;
  }

  SyntaxPtr parse_postfix(SyntaxPtr expr) {
    const size_t first = expr->first_token;
    while (true) {
      if (at_op(".")) {
        const Token& n = peek(1);
        if (n.kind == TokenKind::Identifier) {
          pos_ += 1;
          std::string name = expect_ident();
          if (at_op("(")) {
            auto call = start_at(Syntax::MethodCall, first, std::move(name));
            call->flags |= flags::kQualified;
            call->children.push_back(std::move(expr));
            for (auto& a : parse_arguments()) call->children.push_back(std::move(a));
            expr = finish(std::move(call));
          } else {
            auto fa = start_at(Syntax::FieldAccess, first, std::move(name));
            fa->children.push_back(std::move(expr));
            expr = finish(std::move(fa));
          }
          continue;
        }
        if (n.is_op("<")) {
          pos_ += 1;
          parse_type_args_opt();
          std::string name = at_kw("super") || at_kw("this") ? peek().text : expect_ident();
          if (name == "super" || name == "this") ++pos_;
          auto call = start_at(Syntax::MethodCall, first, std::move(name));
          call->flags |= flags::kQualified;
          call->children.push_back(std::move(expr));
          for (auto& a : parse_arguments()) call->children.push_back(std::move(a));
          expr = finish(std::move(call));
          continue;
        }
        if (n.is_kw("new")) {
          pos_ += 1;
          expr = parse_creator(first, std::move(expr));
          continue;
        }
        if (n.is_kw("class")) {
          pos_ += 2;
          auto node = start_at(Syntax::ClassLiteral, first);
          node->children.push_back(name_to_type(std::move(expr)));
          expr = finish(std::move(node));
          continue;
        }
        if (n.is_kw("this")) {  // Outer.this
          pos_ += 2;
          auto node = start_at(Syntax::This, first);
          expr = finish(std::move(node));
          continue;
        }
        if (n.is_kw("super")) {  // Outer.super.m() or Interface.super.m()
          pos_ += 2;
          if (at_op("(")) {  // outer.super(...) explicit ctor call
            auto node = start_at(Syntax::CtorCall, first, "super");
            for (auto& a : parse_arguments()) node->children.push_back(std::move(a));
            expr = finish(std::move(node));
            continue;
          }
          auto node = start_at(Syntax::Super, first);
          expr = finish(std::move(node));
          continue;
        }
        fail("unexpected token after '.'");
      }
      if (at_op("[")) {
        if (peek(1).is_op("]")) {  // array type in expression: Foo[].class / Foo[]::new
          auto type = expr->kind == Syntax::Name || expr->kind == Syntax::FieldAccess ? name_to_type(std::move(expr))
                                                                                      : nullptr;
          if (!type) fail("unexpected '[]'");
          type = parse_dims(std::move(type));
          expr = parse_type_suffix(first, std::move(type));
          continue;
        }
        ++pos_;
        auto node = start_at(Syntax::ArrayAccess, first);
        node->children.push_back(std::move(expr));
        node->children.push_back(parse_expression());
        expect_op("]");
        expr = finish(std::move(node));
        continue;
      }
      if (at_op("::")) {
        ++pos_;
        auto node = start_at(Syntax::MethodRef, first);
        parse_type_args_opt();
        if (at_kw("new")) {
          ++pos_;
          node->text = "new";
        } else {
          node->text = expect_ident();
        }
        node->children.push_back(std::move(expr));
        expr = finish(std::move(node));
        continue;
      }
      if (at_op("++") || at_op("--")) {
        auto node = start_at(Syntax::Postfix, first, peek().text);
        ++pos_;
        node->children.push_back(std::move(expr));
        expr = finish(std::move(node));
        continue;
      }
      return expr;
    }
  }
};

// Tokenizes and parses a compilation unit. Throws ParseError on invalid input.
inline SyntaxPtr parse_compilation_unit(const std::vector<Token>& tokens, const std::string& path) {
  Parser parser(tokens, path);
  return parser.parse_compilation_unit();
}

}  // namespace jcfinder::java
