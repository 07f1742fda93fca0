#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "refann/index/java_lexer.hpp"
#include "refann/index/java_parser.hpp"

using namespace refann;
using namespace refann::java;

namespace {

std::vector<std::string> texts_of(std::string_view src, const std::vector<SyntaxElement>& elements,
                                  ElementType type) {
  std::vector<std::string> out;
  for (const auto& e : elements)
    if (e.type == type) out.emplace_back(src.substr(e.begin, e.end - e.begin));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> names_of(const std::vector<SyntaxElement>& elements, ElementType type) {
  std::vector<std::string> out;
  for (const auto& e : elements)
    if (e.type == type) out.push_back(e.name);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("lexer splits closing angle brackets and skips comments") {
  auto tokens = tokenize("Map<K, List<V>> m; // trailing\n/* block */ x >>= 2;");
  std::vector<std::string> texts;
  for (const auto& t : tokens) texts.emplace_back(t.text);
  CHECK(texts == std::vector<std::string>{"Map", "<", "K", ",", "List", "<", "V", ">", ">", "m", ";",
                                          "x", ">", ">", "=", "2", ";", ""});
  CHECK(tokens.back().kind == TokenKind::End);
}

TEST_CASE("lexer classifies literals and keywords") {
  auto tokens = tokenize(R"(return 0x1F + 1.5e-3f + 'a' + "s\"q" + true + null;)");
  CHECK(tokens[0].kind == TokenKind::Keyword);
  CHECK(tokens[1].text == "0x1F");
  CHECK(tokens[3].text == "1.5e-3f");
  CHECK(tokens[5].kind == TokenKind::Literal);
  CHECK(tokens[7].text == R"("s\"q")");
  CHECK(tokens[9].kind == TokenKind::Literal);
  CHECK(tokens[11].kind == TokenKind::Literal);
}

TEST_CASE("lexer rejects unterminated constructs") {
  CHECK_THROWS_AS(tokenize("/* open"), ParseFailure);
  CHECK_THROWS_AS(tokenize("\"open\n\""), ParseFailure);
  CHECK_THROWS_AS(tokenize("x # y"), ParseFailure);
}

TEST_CASE("declaration ranges start at the first modifier and end at the closing token") {
  const std::string src =
      "class A {\n"
      "  /** doc */ @Deprecated private int x = 1, y;\n"
      "  public static void m(final int p) { }\n"
      "}\n";
  auto elements = parse_java(src);
  CHECK(texts_of(src, elements, ElementType::FieldDeclaration) ==
        std::vector<std::string>{"@Deprecated private int x = 1, y;"});
  CHECK(names_of(elements, ElementType::FieldDeclaration) == std::vector<std::string>{"x"});
  CHECK(texts_of(src, elements, ElementType::MethodDeclaration) ==
        std::vector<std::string>{"public static void m(final int p) { }"});
  CHECK(texts_of(src, elements, ElementType::ParameterDeclaration) ==
        std::vector<std::string>{"final int p"});
  CHECK(texts_of(src, elements, ElementType::ClassDeclaration).size() == 1);
}

TEST_CASE("method body offsets exclude the braces") {
  const std::string src = "class A { void m() {  x(); } }";
  auto elements = parse_java(src);
  auto it = std::find_if(elements.begin(), elements.end(),
                         [](const auto& e) { return e.type == ElementType::MethodDeclaration; });
  REQUIRE(it != elements.end());
  REQUIRE(it->body);
  CHECK(src.substr(it->body->first, it->body->second - it->body->first) == "  x(); ");
}

TEST_CASE("local variables cover the declarator, for-each variables the type and name") {
  const std::string src =
      "class A { void m(int[] xs) {\n"
      "  int a = f(1), b;\n"
      "  for (final int v : xs) {}\n"
      "  for (int i = 0, j = 1; i < j; i++) {}\n"
      "} }";
  auto elements = parse_java(src);
  CHECK(texts_of(src, elements, ElementType::VariableDeclaration) ==
        std::vector<std::string>{"a = f(1)", "b", "final int v", "i = 0", "j = 1"});
}

TEST_CASE("invocations include their receiver chain and arguments") {
  const std::string src = "class A { void m() { a.b(x).c(y); f(g(h)); this.<T>k(); } }";
  auto elements = parse_java(src);
  CHECK(texts_of(src, elements, ElementType::MethodInvocation) ==
        std::vector<std::string>{"a.b(x)", "a.b(x).c(y)", "f(g(h))", "g(h)", "this.<T>k()"});
  CHECK(names_of(elements, ElementType::MethodInvocation) ==
        std::vector<std::string>{"b", "c", "f", "g", "k"});
}

TEST_CASE("constructor calls and instance creation are not method invocations") {
  const std::string src =
      "class A extends B { A() { super(1); } A(int x) { this(); new C().d(); } }";
  auto elements = parse_java(src);
  CHECK(texts_of(src, elements, ElementType::MethodInvocation) ==
        std::vector<std::string>{"new C().d()"});
}

TEST_CASE("identifiers in package and import declarations are excluded") {
  const std::string src =
      "package a.b;\nimport java.util.List;\nimport static x.Y.*;\nclass List2 { List l; }";
  auto elements = parse_java(src);
  CHECK(names_of(elements, ElementType::Identifier) == std::vector<std::string>{"List", "List2", "l"});
}

TEST_CASE("lambda parameters and catch parameters are parameter declarations") {
  const std::string src =
      "class A { void m() {\n"
      "  r(x -> x, (a, b) -> a, (String s) -> s);\n"
      "  try { } catch (IOException | RuntimeException e) { }\n"
      "} }";
  auto elements = parse_java(src);
  CHECK(names_of(elements, ElementType::ParameterDeclaration) ==
        std::vector<std::string>{"a", "b", "e", "s", "x"});
}

TEST_CASE("shift, comparison and generic closing brackets parse together") {
  const std::string src =
      "class A { List<List<String>> f; int m(int a) {\n"
      "  int b = a >> 1 >>> 2; b >>= 1; b >>>= 1; boolean c = a >= b && a > b;\n"
      "  Map<String, List<Integer>> m = new HashMap<>(); return b;\n"
      "} }";
  CHECK_NOTHROW(parse_java(src));
}

TEST_CASE("casts versus parenthesized expressions") {
  const std::string src =
      "class A { Object m(Object o, int a, int b) {\n"
      "  int x = (int) 3.5 + (a) - b + ((Integer) o).intValue();\n"
      "  return (Runnable & java.io.Serializable) () -> {};\n"
      "} }";
  auto elements = parse_java(src);
  CHECK(texts_of(src, elements, ElementType::MethodInvocation) ==
        std::vector<std::string>{"((Integer) o).intValue()"});
}

TEST_CASE("modern constructs: records, sealed types, switch patterns, text blocks") {
  const std::string src =
      "sealed interface S permits R, Q {}\n"
      "record R(int x) implements S {}\n"
      "non-sealed class Q implements S {}\n"
      "class U { int m(S s) {\n"
      "  var t = \"\"\"\n    hi\n    \"\"\";\n"
      "  if (s instanceof R(int x) && x > 0) return x;\n"
      "  return switch (s) { case R r when r.x() > 1 -> 1; case Q q -> { yield 2; } default -> 3; };\n"
      "} }";
  auto elements = parse_java(src);
  CHECK(names_of(elements, ElementType::ClassDeclaration) ==
        std::vector<std::string>{"Q", "R", "S", "U"});
  CHECK(names_of(elements, ElementType::VariableDeclaration) == std::vector<std::string>{"t"});
}

TEST_CASE("syntax errors raise ParseFailure with an offset") {
  const std::string src = "class A { void m() { int = ; } }";
  try {
    parse_java(src);
    FAIL("expected a parse failure");
  } catch (const ParseFailure& f) {
    CHECK(f.offset() == src.find('='));
  }
  CHECK_THROWS_AS(parse_java("class A {"), ParseFailure);
  CHECK_THROWS_AS(parse_java("class A { void m() { if (x) } }"), ParseFailure);
}

TEST_CASE("empty source has no elements") {
  CHECK(parse_java("").empty());
  CHECK(parse_java("// only a comment\n").empty());
}
