#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "refann/core/model.hpp"
#include "refann/index/java_lexer.hpp"

namespace refann::java {

/// A syntax node of one of the concrete element types, located by byte
/// offsets [begin, end).
struct SyntaxElement {
  ElementType type = ElementType::Identifier;
  size_t begin = 0;
  size_t end = 0;
  std::string name;
  // MethodDeclaration with a body: offsets strictly between its braces.
  std::optional<std::pair<size_t, size_t>> body;
};

/// Parses one compilation unit and returns every class, method (including
/// constructors), field, local variable, parameter, method invocation and
/// identifier element it contains, in no particular order.
///
/// Declarations start at their first modifier or annotation and end after
/// their closing brace or semicolon. Local variables are covered from the
/// declarator name to the end of the initializer; enhanced-for variables
/// from their type to their name. Invocations cover the receiver chain and
/// the argument list. Identifiers inside package and import declarations are
/// not reported.
///
/// Throws ParseFailure on any syntax error.
std::vector<SyntaxElement> parse_java(std::string_view source);

}  // namespace refann::java
