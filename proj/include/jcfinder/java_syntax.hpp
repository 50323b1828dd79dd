#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace jcfinder::java {

enum class Syntax : std::uint8_t {
  CompilationUnit,
  TypeDecl,      // text = simple name; `type_kind` set
  Method,        // text = name; flags: constructor / has_body
  Initializer,   // flags: static
  Field,         // children: type, declarators
  EnumConstant,  // text = name; children: args..., optional ClassBody
  ClassBody,     // members of an anonymous class or enum constant body
  Parameter,     // text = name; children: type
  Annotation,    // text = simple name; children ignored downstream

  PrimitiveType,  // text = keyword (also `void`)
  ClassType,      // text = simple name; children = type arguments
  ArrayType,      // children: element type
  Wildcard,       // children: optional bound
  UnionType,      // multi-catch, intersection casts

  Block,
  LocalVar,    // children: type, declarators
  Declarator,  // text = name; children: optional initializer
  LocalType,   // wraps a TypeDecl declared in a block
  If,
  For,
  ForEach,
  While,
  Do,
  Try,
  Resource,
  Catch,
  Finally,
  Switch,
  SwitchCase,  // flags: arrow; children: labels then body statements
  CaseLabel,
  DefaultLabel,
  Return,
  Throw,
  Break,
  Continue,
  Yield,
  Labeled,
  ExprStmt,
  Empty,
  Synchronized,
  Assert,
  CtorCall,  // this(...) / super(...); text = "this" or "super"

  Name,         // text = identifier
  FieldAccess,  // text = member name; children: target
  MethodCall,   // text = method name; flags: qualified; children: [target], args...
  New,          // children: type, args..., optional ClassBody; flags: qualified (outer.new)
  NewArray,     // children: element type, dim exprs..., optional ArrayInit
  ArrayInit,
  ArrayAccess,
  Assign,       // text = operator
  Binary,       // text = operator
  Unary,        // text = operator (prefix)
  Postfix,      // text = operator
  Conditional,
  Cast,
  InstanceOf,   // children: expr, type, optional pattern binding Name
  Lambda,       // children: Parameter..., body
  MethodRef,    // text = member name or "new"
  Literal,      // text = literal source; `literal_kind` set
  This,
  Super,
  ClassLiteral,  // children: type
  SwitchExpr,
};

enum class TypeKind : std::uint8_t { Class, Interface, Enum, Record, Annotation };

inline std::string_view to_string(TypeKind k) {
  switch (k) {
    case TypeKind::Class: return "class";
    case TypeKind::Interface: return "interface";
    case TypeKind::Enum: return "enum";
    case TypeKind::Record: return "record";
    case TypeKind::Annotation: return "annotation";
  }
  return "class";
}

namespace flags {
inline constexpr std::uint8_t kConstructor = 1;
inline constexpr std::uint8_t kHasBody = 2;
inline constexpr std::uint8_t kStatic = 4;
inline constexpr std::uint8_t kQualified = 8;
inline constexpr std::uint8_t kArrow = 16;
inline constexpr std::uint8_t kVarargs = 32;
inline constexpr std::uint8_t kAbstract = 64;
}  // namespace flags

struct SyntaxNode {
  Syntax kind = Syntax::Empty;
  std::uint8_t flags = 0;
  TypeKind type_kind = TypeKind::Class;
  std::uint8_t literal_kind = 0;  // mirrors TokenKind for Literal nodes
  std::string text;
  std::vector<std::unique_ptr<SyntaxNode>> children;
  std::uint32_t first_token = 0;  // inclusive token range in the owning file
  std::uint32_t last_token = 0;

  bool has(std::uint8_t f) const { return (flags & f) != 0; }
};

using SyntaxPtr = std::unique_ptr<SyntaxNode>;

}  // namespace jcfinder::java
