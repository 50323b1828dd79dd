#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jcfinder/errors.hpp"

namespace jcfinder::java {

enum class TokenKind : std::uint8_t {
  Identifier,
  Keyword,
  IntLiteral,
  FloatLiteral,
  CharLiteral,
  StringLiteral,
  TextBlock,
  BoolLiteral,
  NullLiteral,
  Operator,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::uint32_t offset = 0;  // byte offset of the first character
  std::uint32_t length = 0;
  std::uint32_t line = 1;    // 1-based line of the first character
  std::uint32_t end_line = 1;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_op(std::string_view t) const { return kind == TokenKind::Operator && text == t; }
  bool is_kw(std::string_view t) const { return kind == TokenKind::Keyword && text == t; }
  bool is_literal() const {
    return kind == TokenKind::IntLiteral || kind == TokenKind::FloatLiteral || kind == TokenKind::CharLiteral ||
           kind == TokenKind::StringLiteral || kind == TokenKind::TextBlock || kind == TokenKind::BoolLiteral ||
           kind == TokenKind::NullLiteral;
  }
};

// Reserved words. Contextual words (var, record, yield, sealed, permits, module) lex as identifiers.
inline bool is_keyword(std::string_view w) {
  static constexpr std::array<std::string_view, 50> kWords = {
      "abstract", "assert",     "boolean",   "break",     "byte",      "case",         "catch",
      "char",     "class",      "const",     "continue",  "default",   "do",           "double",
      "else",     "enum",       "extends",   "final",     "finally",   "float",        "for",
      "goto",     "if",         "implements", "import",   "instanceof", "int",         "interface",
      "long",     "native",     "new",       "package",   "private",   "protected",    "public",
      "return",   "short",      "static",    "strictfp",  "super",     "switch",       "synchronized",
      "this",     "throw",      "throws",    "transient", "try",       "void",         "volatile",
      "while"};
  for (auto k : kWords)
    if (k == w) return true;
  return false;
}

inline bool is_primitive_type_name(std::string_view w) {
  return w == "boolean" || w == "byte" || w == "char" || w == "short" || w == "int" || w == "long" ||
         w == "float" || w == "double";
}

namespace detail {

inline bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80; }
inline bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

// Longest-match operator table. A lone '>' is always emitted as a single token so that
// nested generic closers lex unambiguously; the parser re-joins adjacent '>' into shifts.
inline constexpr std::array<std::string_view, 40> kOperators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", "+=", "-=", "*=",
    "/=",  "&=",  "|=", "^=", "%=", "<<", "(",  ")",  "{",  "}",  "[",  "]",  ";",  ",",
    ".",   "@",   "=",  "<",  "!",  "~",  "?",  ":",  "+",  "-",  "*",  "/"};
inline constexpr std::array<std::string_view, 5> kOperatorsTail = {"&", "|", "^", "%", ">"};

}  // namespace detail

// Tokenizes Java source. Comments and whitespace are dropped.
inline std::vector<Token> tokenize(std::string_view src, const std::string& path = "<input>") {
  std::vector<Token> out;
  size_t i = 0;
  std::uint32_t line = 1;
  const size_t n = src.size();

  auto fail = [&](const std::string& msg) { throw ParseError(path, static_cast<int>(line), msg); };
  auto push = [&](TokenKind kind, size_t start, std::uint32_t start_line) {
    Token t;
    t.kind = kind;
    t.text = std::string(src.substr(start, i - start));
    t.offset = static_cast<std::uint32_t>(start);
    t.length = static_cast<std::uint32_t>(i - start);
    t.line = start_line;
    t.end_line = line;
    out.push_back(std::move(t));
  };

  while (i < n) {
    const unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      size_t end = src.find("*/", i + 2);
      if (end == std::string_view::npos) fail("unterminated block comment");
      for (size_t k = i; k < end; ++k)
        if (src[k] == '\n') ++line;
      i = end + 2;
      continue;
    }
    const size_t start = i;
    const std::uint32_t start_line = line;
    if (detail::ident_start(c)) {
      while (i < n && detail::ident_part(static_cast<unsigned char>(src[i]))) ++i;
      std::string_view word = src.substr(start, i - start);
      TokenKind kind = TokenKind::Identifier;
      if (word == "true" || word == "false") kind = TokenKind::BoolLiteral;
      else if (word == "null") kind = TokenKind::NullLiteral;
      else if (is_keyword(word)) kind = TokenKind::Keyword;
      push(kind, start, start_line);
      continue;
    }
    if (std::isdigit(c) || (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      bool is_float = false;
      if (c == '0' && i + 1 < n && (src[i + 1] == 'x' || src[i + 1] == 'X' || src[i + 1] == 'b' || src[i + 1] == 'B')) {
        const bool hex = src[i + 1] == 'x' || src[i + 1] == 'X';
        i += 2;
        while (i < n && (std::isxdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
        if (hex && i < n && (src[i] == '.' || src[i] == 'p' || src[i] == 'P')) {
          is_float = true;
          if (src[i] == '.') {
            ++i;
            while (i < n && (std::isxdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
          }
          if (i < n && (src[i] == 'p' || src[i] == 'P')) {
            ++i;
            if (i < n && (src[i] == '+' || src[i] == '-')) ++i;
            while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
          }
        }
      } else {
        while (i < n && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
        if (i < n && src[i] == '.' && !(i + 1 < n && src[i + 1] == '.')) {
          // "1." is a float; "1.foo" cannot occur in valid Java.
          is_float = true;
          ++i;
          while (i < n && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
        }
        if (i < n && (src[i] == 'e' || src[i] == 'E')) {
          is_float = true;
          ++i;
          if (i < n && (src[i] == '+' || src[i] == '-')) ++i;
          while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        }
      }
      if (i < n && (src[i] == 'f' || src[i] == 'F' || src[i] == 'd' || src[i] == 'D')) {
        is_float = true;
        ++i;
      } else if (i < n && (src[i] == 'l' || src[i] == 'L')) {
        ++i;
      }
      push(is_float ? TokenKind::FloatLiteral : TokenKind::IntLiteral, start, start_line);
      continue;
    }
    if (c == '"') {
      if (src.substr(i, 3) == "\"\"\"") {
        size_t k = i + 3;
        while (true) {
          if (k >= n) fail("unterminated text block");
          if (src[k] == '\\') {
            k += 2;
            continue;
          }
          if (src.substr(k, 3) == "\"\"\"") break;
          if (src[k] == '\n') ++line;
          ++k;
        }
        i = k + 3;
        push(TokenKind::TextBlock, start, start_line);
        continue;
      }
      ++i;
      while (i < n && src[i] != '"') {
        if (src[i] == '\n') fail("unterminated string literal");
        if (src[i] == '\\') ++i;
        ++i;
      }
      if (i >= n) fail("unterminated string literal");
      ++i;
      push(TokenKind::StringLiteral, start, start_line);
      continue;
    }
    if (c == '\'') {
      ++i;
      while (i < n && src[i] != '\'') {
        if (src[i] == '\n') fail("unterminated char literal");
        if (src[i] == '\\') ++i;
        ++i;
      }
      if (i >= n) fail("unterminated char literal");
      ++i;
      push(TokenKind::CharLiteral, start, start_line);
      continue;
    }
    bool matched = false;
    for (auto op : detail::kOperators) {
      if (src.substr(i, op.size()) == op) {
        i += op.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      for (auto op : detail::kOperatorsTail) {
        if (src.substr(i, op.size()) == op) {
          i += op.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) fail(std::string("unexpected character '") + static_cast<char>(c) + "'");
    push(TokenKind::Operator, start, start_line);
  }
  Token end;
  end.kind = TokenKind::End;
  end.offset = static_cast<std::uint32_t>(n);
  end.line = line;
  end.end_line = line;
  out.push_back(std::move(end));
  return out;
}

}  // namespace jcfinder::java
