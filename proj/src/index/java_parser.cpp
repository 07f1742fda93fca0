#include "refann/index/java_parser.hpp"

#include <algorithm>
#include <array>

namespace refann::java {
namespace {

constexpr std::array<std::string_view, 8> kPrimitiveTypes{
    "boolean", "byte", "char", "short", "int", "long", "float", "double"};

constexpr std::array<std::string_view, 12> kModifierKeywords{
    "public",   "protected",    "private",   "static",   "abstract", "final",
    "native",   "synchronized", "transient", "volatile", "strictfp", "default"};

constexpr std::array<std::string_view, 10> kCompoundAssignments{
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<="};

template <size_t N>
bool one_of(std::string_view s, const std::array<std::string_view, N>& set) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

struct BinaryOperator {
  int precedence = 0;
  size_t tokens = 1;
  bool instanceof = false;
};

class Parser {
 public:
  explicit Parser(std::string_view source)
      : tokens_(tokenize(source)), excluded_(tokens_.size(), false) {}

  std::vector<SyntaxElement> run() {
    compilation_unit();
    for (size_t i = 0; i < tokens_.size(); ++i) {
      const Token& t = tokens_[i];
      if (t.kind == TokenKind::Identifier && !excluded_[i])
        add(ElementType::Identifier, t.begin, t.end, t.text);
    }
    return std::move(elements_);
  }

 private:
  std::vector<Token> tokens_;
  std::vector<bool> excluded_;
  std::vector<SyntaxElement> elements_;
  size_t pos_ = 0;

  // --- token helpers ---------------------------------------------------------

  const Token& peek(size_t k = 0) const {
    return tokens_[std::min(pos_ + k, tokens_.size() - 1)];
  }
  bool at_end() const { return peek().kind == TokenKind::End; }
  bool is(std::string_view text, size_t k = 0) const {
    const Token& t = peek(k);
    return (t.kind == TokenKind::Operator || t.kind == TokenKind::Keyword) && t.text == text;
  }
  bool is_ident(size_t k = 0) const { return peek(k).kind == TokenKind::Identifier; }
  bool is_ident(std::string_view text, size_t k = 0) const {
    return is_ident(k) && peek(k).text == text;
  }
  // Token k directly follows token k-1 with no whitespace in between.
  bool adjacent(size_t k) const { return k > 0 && peek(k).begin == peek(k - 1).end; }
  bool is_primitive(size_t k = 0) const {
    return peek(k).kind == TokenKind::Keyword && one_of(peek(k).text, kPrimitiveTypes);
  }

  bool accept(std::string_view text) {
    if (!is(text)) return false;
    ++pos_;
    return true;
  }
  const Token& expect(std::string_view text) {
    if (!is(text)) fail("expected '" + std::string(text) + "'");
    return tokens_[pos_++];
  }
  const Token& expect_ident() {
    if (!is_ident()) fail("expected identifier");
    return tokens_[pos_++];
  }
  size_t prev_end() const { return pos_ > 0 ? tokens_[pos_ - 1].end : 0; }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::End ? "end of file" : "'" + std::string(t.text) + "'";
    throw ParseFailure(message + ", found " + found, t.begin);
  }

  void add(ElementType type, size_t begin, size_t end, std::string_view name,
           std::optional<std::pair<size_t, size_t>> body = std::nullopt) {
    elements_.push_back({type, begin, end, std::string(name), body});
  }

  // Runs `f` speculatively and always rewinds. Returns whether it succeeded.
  template <class F>
  bool lookahead(F&& f) {
    const size_t saved_pos = pos_;
    const size_t saved_count = elements_.size();
    bool ok = false;
    try {
      ok = f();
    } catch (const ParseFailure&) {
      ok = false;
    }
    pos_ = saved_pos;
    elements_.erase(elements_.begin() + static_cast<std::ptrdiff_t>(saved_count), elements_.end());
    return ok;
  }

  // --- compilation unit --------------------------------------------------------

  void exclude_from(size_t first_token) {
    for (size_t i = first_token; i < pos_; ++i) excluded_[i] = true;
  }

  void qualified_name() {
    expect_ident();
    while (is(".") && is_ident(1)) pos_ += 2;
  }

  void compilation_unit() {
    if (lookahead([&] {
          annotations();
          return is("package");
        })) {
      annotations();
      const size_t first = pos_;
      expect("package");
      qualified_name();
      expect(";");
      exclude_from(first);
    }
    while (is("import") || is(";")) {
      if (accept(";")) continue;
      const size_t first = pos_;
      expect("import");
      accept("static");
      expect_ident();
      while (accept(".")) {
        if (!accept("*")) expect_ident();
      }
      expect(";");
      exclude_from(first);
    }
    while (!at_end()) {
      if (accept(";")) continue;
      if (is_ident("module") || (is_ident("open") && is_ident("module", 1)))
        fail("module declarations are not supported");
      const size_t start = peek().begin;
      modifiers();
      type_declaration(start);
    }
  }

  // --- modifiers and annotations --------------------------------------------

  void modifiers() {
    for (;;) {
      if (is("@") && !is("interface", 1)) {
        annotation();
      } else if (peek().kind == TokenKind::Keyword && one_of(peek().text, kModifierKeywords)) {
        ++pos_;
      } else if (is_ident("sealed") && (peek(1).kind == TokenKind::Keyword || is_ident("record", 1))) {
        ++pos_;
      } else if (is_ident("non") && is("-", 1) && is_ident("sealed", 2) && adjacent(1) &&
                 adjacent(2)) {
        pos_ += 3;
      } else {
        return;
      }
    }
  }

  void annotations() {
    while (is("@") && !is("interface", 1)) annotation();
  }

  void annotation() {
    expect("@");
    qualified_name();
    if (!accept("(")) return;
    if (!is(")")) {
      if (is_ident() && is("=", 1)) {
        do {
          expect_ident();
          expect("=");
          element_value();
        } while (accept(","));
      } else {
        element_value();
      }
    }
    expect(")");
  }

  void element_value() {
    if (is("@")) {
      annotation();
    } else if (accept("{")) {
      while (!is("}")) {
        element_value();
        if (!accept(",")) break;
      }
      expect("}");
    } else {
      ternary();
    }
  }

  // --- types -----------------------------------------------------------------

  void type() {
    annotations();
    if (is_primitive()) {
      ++pos_;
    } else {
      class_type();
    }
    dims();
  }

  void class_type() {
    expect_ident();
    if (is("<")) type_arguments();
    while (is(".") && (is_ident(1) || is("@", 1))) {
      ++pos_;
      annotations();
      expect_ident();
      if (is("<")) type_arguments();
    }
  }

  void dims() {
    for (;;) {
      const size_t saved = pos_;
      annotations();
      if (is("[") && is("]", 1)) {
        pos_ += 2;
      } else {
        pos_ = saved;
        return;
      }
    }
  }

  void type_arguments() {
    expect("<");
    if (accept(">")) return;  // diamond
    do {
      annotations();
      if (accept("?")) {
        if (accept("extends") || accept("super")) type();
      } else {
        type();
      }
    } while (accept(","));
    expect(">");
  }

  void type_parameters() {
    expect("<");
    do {
      annotations();
      expect_ident();
      if (accept("extends")) {
        type();
        while (accept("&")) type();
      }
    } while (accept(","));
    expect(">");
  }

  void type_list() {
    type();
    while (accept(",")) type();
  }

  // --- declarations ----------------------------------------------------------

  bool at_type_declaration() const {
    return is("class") || is("interface") || is("enum") || (is("@") && is("interface", 1)) ||
           (is_ident("record") && is_ident(1) && (is("(", 2) || is("<", 2)));
  }

  void type_declaration(size_t start) {
    std::string_view name;
    if (accept("class")) {
      name = expect_ident().text;
      if (is("<")) type_parameters();
      if (accept("extends")) type();
      if (accept("implements")) type_list();
      permits();
      class_body();
    } else if (accept("interface")) {
      name = expect_ident().text;
      if (is("<")) type_parameters();
      if (accept("extends")) type_list();
      permits();
      class_body();
    } else if (accept("enum")) {
      name = expect_ident().text;
      if (accept("implements")) type_list();
      enum_body();
    } else if (is("@") && is("interface", 1)) {
      pos_ += 2;
      name = expect_ident().text;
      class_body();
    } else if (is_ident("record")) {
      ++pos_;
      name = expect_ident().text;
      if (is("<")) type_parameters();
      record_header();
      if (accept("implements")) type_list();
      class_body();
    } else {
      fail("expected a type declaration");
    }
    add(ElementType::ClassDeclaration, start, prev_end(), name);
  }

  void permits() {
    if (is_ident("permits")) {
      ++pos_;
      type_list();
    }
  }

  void record_header() {
    expect("(");
    if (!is(")")) {
      do {
        const size_t start = peek().begin;
        annotations();
        type();
        accept("...");
        const Token& name = expect_ident();
        add(ElementType::ParameterDeclaration, start, prev_end(), name.text);
      } while (accept(","));
    }
    expect(")");
  }

  void class_body() {
    expect("{");
    while (!is("}")) {
      if (at_end()) fail("unterminated class body");
      member();
    }
    expect("}");
  }

  void enum_body() {
    expect("{");
    while (!is(";") && !is("}")) {
      annotations();
      expect_ident();
      if (is("(")) arguments();
      if (is("{")) class_body();
      if (!accept(",")) break;
    }
    if (accept(";")) {
      while (!is("}")) {
        if (at_end()) fail("unterminated enum body");
        member();
      }
    }
    expect("}");
  }

  void member() {
    if (accept(";")) return;
    if (is("{")) {
      block();
      return;
    }
    if (is("static") && is("{", 1)) {
      ++pos_;
      block();
      return;
    }
    const size_t start = peek().begin;
    modifiers();
    if (at_type_declaration()) {
      type_declaration(start);
      return;
    }
    if (is("<")) type_parameters();
    if (is_ident() && is("(", 1)) {  // constructor
      const Token& name = expect_ident();
      formal_parameters();
      throws_clause();
      method_body(start, name.text);
      return;
    }
    if (is_ident() && is("{", 1)) {  // compact record constructor
      const Token& name = expect_ident();
      method_body(start, name.text);
      return;
    }
    if (!accept("void")) type();
    const Token& name = expect_ident();
    if (is("(")) {
      formal_parameters();
      dims();
      throws_clause();
      if (accept("default")) element_value();
      method_body(start, name.text);
      return;
    }
    dims();
    if (accept("=")) variable_initializer();
    while (accept(",")) {
      expect_ident();
      dims();
      if (accept("=")) variable_initializer();
    }
    expect(";");
    add(ElementType::FieldDeclaration, start, prev_end(), name.text);
  }

  void throws_clause() {
    if (accept("throws")) type_list();
  }

  void method_body(size_t start, std::string_view name) {
    if (accept(";")) {
      add(ElementType::MethodDeclaration, start, prev_end(), name);
      return;
    }
    const size_t open = peek().end;
    block();
    const size_t close = tokens_[pos_ - 1].begin;
    add(ElementType::MethodDeclaration, start, prev_end(), name, std::make_pair(open, close));
  }

  void formal_parameters() {
    expect("(");
    if (!is(")")) {
      do {
        formal_parameter();
      } while (accept(","));
    }
    expect(")");
  }

  void formal_parameter() {
    const size_t start = peek().begin;
    modifiers();
    type();
    annotations();
    accept("...");
    if (accept("this")) return;  // receiver parameter
    if (is_ident() && is(".", 1) && is("this", 2)) {
      pos_ += 3;
      return;
    }
    const Token& name = expect_ident();
    dims();
    add(ElementType::ParameterDeclaration, start, prev_end(), name.text);
  }

  void variable_initializer() {
    if (is("{")) {
      array_initializer();
    } else {
      expression();
    }
  }

  void array_initializer() {
    expect("{");
    while (!is("}")) {
      variable_initializer();
      if (!accept(",")) break;
    }
    expect("}");
  }

  // --- statements ------------------------------------------------------------

  void block() {
    expect("{");
    while (!is("}")) {
      if (at_end()) fail("unterminated block");
      block_statement();
    }
    expect("}");
  }

  bool is_local_type_declaration() {
    return lookahead([&] {
      modifiers();
      return at_type_declaration();
    });
  }

  bool is_local_variable_declaration() {
    return lookahead([&] {
      modifiers();
      type();
      if (!is_ident()) return false;
      return is("=", 1) || is(",", 1) || is(";", 1) || is("[", 1) || is(":", 1);
    });
  }

  bool is_yield_statement() const {
    if (!is_ident("yield")) return false;
    static constexpr std::array<std::string_view, 18> kNotYield{
        "=",  ".",  "[",  "++", "--",  "+=", "-=", "*=", "/=",
        "%=", "&=", "|=", "^=", "<<=", "->", ":",  ";",  ","};
    const Token& next = peek(1);
    return !(next.kind == TokenKind::Operator && one_of(next.text, kNotYield));
  }

  void block_statement() {
    if (is_local_type_declaration()) {
      const size_t start = peek().begin;
      modifiers();
      type_declaration(start);
    } else if (is_yield_statement()) {
      ++pos_;
      expression();
      expect(";");
    } else if (is_local_variable_declaration()) {
      local_variable_declaration();
      expect(";");
    } else {
      statement();
    }
  }

  void local_variable_declaration() {
    modifiers();
    type();
    do {
      const Token& name = expect_ident();
      dims();
      if (accept("=")) variable_initializer();
      add(ElementType::VariableDeclaration, name.begin, prev_end(), name.text);
    } while (accept(","));
  }

  void statement() {
    if (is("{")) {
      block();
    } else if (accept(";")) {
    } else if (accept("if")) {
      parenthesized();
      statement();
      if (accept("else")) statement();
    } else if (accept("while")) {
      parenthesized();
      statement();
    } else if (accept("do")) {
      statement();
      expect("while");
      parenthesized();
      expect(";");
    } else if (accept("for")) {
      for_statement();
    } else if (accept("try")) {
      try_statement();
    } else if (accept("switch")) {
      switch_rest();
    } else if (accept("return")) {
      if (!is(";")) expression();
      expect(";");
    } else if (accept("throw")) {
      expression();
      expect(";");
    } else if (accept("break") || accept("continue")) {
      if (is_ident()) ++pos_;
      expect(";");
    } else if (accept("synchronized")) {
      parenthesized();
      block();
    } else if (accept("assert")) {
      expression();
      if (accept(":")) expression();
      expect(";");
    } else if (is_ident() && is(":", 1)) {
      pos_ += 2;
      statement();
    } else {
      expression();
      expect(";");
    }
  }

  void parenthesized() {
    expect("(");
    expression();
    expect(")");
  }

  void for_statement() {
    expect("(");
    const bool for_each = lookahead([&] {
      modifiers();
      type();
      expect_ident();
      dims();
      return is(":");
    });
    if (for_each) {
      const size_t start = peek().begin;
      modifiers();
      type();
      const Token& name = expect_ident();
      dims();
      add(ElementType::VariableDeclaration, start, prev_end(), name.text);
      expect(":");
      expression();
      expect(")");
      statement();
      return;
    }
    if (!is(";")) {
      if (is_local_variable_declaration()) {
        local_variable_declaration();
      } else {
        expression_list();
      }
    }
    expect(";");
    if (!is(";")) expression();
    expect(";");
    if (!is(")")) expression_list();
    expect(")");
    statement();
  }

  void try_statement() {
    if (accept("(")) {
      while (!is(")")) {
        resource();
        if (!accept(";")) break;
      }
      expect(")");
    }
    block();
    while (accept("catch")) {
      expect("(");
      const size_t start = peek().begin;
      modifiers();
      type();
      while (accept("|")) type();
      const Token& name = expect_ident();
      add(ElementType::ParameterDeclaration, start, prev_end(), name.text);
      expect(")");
      block();
    }
    if (accept("finally")) block();
  }

  void resource() {
    const bool declaration = lookahead([&] {
      modifiers();
      type();
      expect_ident();
      return is("=");
    });
    if (!declaration) {
      expression();
      return;
    }
    modifiers();
    type();
    const Token& name = expect_ident();
    expect("=");
    expression();
    add(ElementType::VariableDeclaration, name.begin, prev_end(), name.text);
  }

  // `switch` already consumed; shared by statements and expressions.
  void switch_rest() {
    parenthesized();
    expect("{");
    while (!is("}")) {
      if (at_end()) fail("unterminated switch");
      const bool arrow = switch_labels();
      if (arrow) {
        if (is("{")) {
          block();
        } else if (accept("throw")) {
          expression();
          expect(";");
        } else {
          expression();
          expect(";");
        }
      } else {
        while (!is("case") && !is("default") && !is("}")) {
          if (at_end()) fail("unterminated switch");
          block_statement();
        }
      }
    }
    expect("}");
  }

  bool switch_labels() {
    if (!accept("default")) {
      expect("case");
      do {
        case_label();
      } while (accept(","));
      if (is_ident("when")) {
        ++pos_;
        ternary();
      }
    }
    if (accept("->")) return true;
    expect(":");
    return false;
  }

  void case_label() {
    if (accept("default")) return;
    const bool pattern_label = lookahead([&] {
      modifiers();
      type();
      return (is_ident() && !is_ident("when")) || is("(");
    });
    if (pattern_label) {
      pattern();
    } else {
      ternary();
    }
  }

  void pattern() {
    modifiers();
    type();
    if (accept("(")) {
      if (!is(")")) {
        do {
          pattern();
        } while (accept(","));
      }
      expect(")");
      if (is_ident() && !is_ident("when")) ++pos_;
    } else {
      expect_ident();
    }
  }

  // --- expressions -----------------------------------------------------------

  void expression_list() {
    expression();
    while (accept(",")) expression();
  }

  void expression() {
    if (lambda_ahead()) {
      lambda();
      return;
    }
    ternary();
    if (assignment_operator()) expression();
  }

  bool assignment_operator() {
    const Token& t = peek();
    if (t.kind == TokenKind::Operator && one_of(t.text, kCompoundAssignments)) {
      ++pos_;
      return true;
    }
    if (is(">") && is(">", 1) && adjacent(1)) {
      if (is("=", 2) && adjacent(2)) {
        pos_ += 3;
        return true;
      }
      if (is(">", 2) && adjacent(2) && is("=", 3) && adjacent(3)) {
        pos_ += 4;
        return true;
      }
    }
    return false;
  }

  bool lambda_ahead() const {
    if (is_ident() && is("->", 1)) return true;
    if (!is("(")) return false;
    int depth = 0;
    for (size_t k = pos_; k < tokens_.size(); ++k) {
      const Token& t = tokens_[k];
      if (t.kind == TokenKind::End) return false;
      if (t.kind != TokenKind::Operator) continue;
      if (t.text == "(") {
        ++depth;
      } else if (t.text == ")" && --depth == 0) {
        const Token& next = tokens_[std::min(k + 1, tokens_.size() - 1)];
        return next.kind == TokenKind::Operator && next.text == "->";
      }
    }
    return false;
  }

  void lambda() {
    if (is_ident()) {
      const Token& name = expect_ident();
      add(ElementType::ParameterDeclaration, name.begin, name.end, name.text);
    } else {
      expect("(");
      if (!is(")")) {
        do {
          if (is_ident() && (is(",", 1) || is(")", 1))) {
            const Token& name = expect_ident();
            add(ElementType::ParameterDeclaration, name.begin, name.end, name.text);
          } else {
            formal_parameter();
          }
        } while (accept(","));
      }
      expect(")");
    }
    expect("->");
    if (is("{")) {
      block();
    } else {
      expression();
    }
  }

  void ternary() {
    binary(1);
    if (accept("?")) {
      expression();
      expect(":");
      if (lambda_ahead()) {
        lambda();
      } else {
        ternary();
      }
    }
  }

  std::optional<BinaryOperator> binary_operator() const {
    const Token& t = peek();
    if (t.kind == TokenKind::Keyword && t.text == "instanceof") return BinaryOperator{7, 1, true};
    if (t.kind != TokenKind::Operator) return std::nullopt;
    const std::string_view op = t.text;
    if (op == ">") {
      if (is(">", 1) && adjacent(1)) {
        if (is(">", 2) && adjacent(2)) {
          if (is("=", 3) && adjacent(3)) return std::nullopt;  // >>>=
          return BinaryOperator{8, 3};
        }
        if (is("=", 2) && adjacent(2)) return std::nullopt;  // >>=
        return BinaryOperator{8, 2};
      }
      if (is("=", 1) && adjacent(1)) return BinaryOperator{7, 2};
      return BinaryOperator{7, 1};
    }
    if (op == "||") return BinaryOperator{1};
    if (op == "&&") return BinaryOperator{2};
    if (op == "|") return BinaryOperator{3};
    if (op == "^") return BinaryOperator{4};
    if (op == "&") return BinaryOperator{5};
    if (op == "==" || op == "!=") return BinaryOperator{6};
    if (op == "<" || op == "<=") return BinaryOperator{7};
    if (op == "<<") return BinaryOperator{8};
    if (op == "+" || op == "-") return BinaryOperator{9};
    if (op == "*" || op == "/" || op == "%") return BinaryOperator{10};
    return std::nullopt;
  }

  void binary(int min_precedence) {
    unary();
    for (;;) {
      auto op = binary_operator();
      if (!op || op->precedence < min_precedence) return;
      pos_ += op->tokens;
      if (op->instanceof) {
        accept("final");
        const bool record_pattern = lookahead([&] {
          type();
          return is("(");
        });
        if (record_pattern) {
          pattern();
        } else {
          type();
          if (is_ident() && !is_ident("when")) ++pos_;
        }
        continue;
      }
      binary(op->precedence + 1);
    }
  }

  bool cast_ahead() {
    return lookahead([&] {
      expect("(");
      annotations();
      if (is_primitive()) {
        ++pos_;
        dims();
        return accept(")");
      }
      type();
      while (accept("&")) type();
      expect(")");
      const Token& next = peek();
      if (next.kind == TokenKind::Identifier || next.kind == TokenKind::Literal) return true;
      if (next.kind == TokenKind::Keyword)
        return next.text == "this" || next.text == "super" || next.text == "new" ||
               next.text == "switch" || is_primitive();
      return next.text == "(" || next.text == "!" || next.text == "~";
    });
  }

  void unary() {
    if (is("++") || is("--") || is("+") || is("-") || is("!") || is("~")) {
      ++pos_;
      unary();
      return;
    }
    if (is("(") && cast_ahead()) {
      expect("(");
      annotations();
      type();
      while (accept("&")) type();
      expect(")");
      if (lambda_ahead()) {
        lambda();
      } else {
        unary();
      }
      return;
    }
    const size_t start = peek().begin;
    primary(start);
    selectors(start);
  }

  void primary(size_t start) {
    const Token& t = peek();
    if (t.kind == TokenKind::Literal) {
      ++pos_;
    } else if (accept("(")) {
      expression();
      expect(")");
    } else if (accept("this") || accept("super")) {
      if (is("(")) arguments();  // explicit constructor call
    } else if (is("new")) {
      creator();
    } else if (accept("switch")) {
      switch_rest();
    } else if (is_primitive() || is("void")) {
      ++pos_;
      dims();
      if (!(is(".") && is("class", 1)) && !is("::")) fail("expected '.class' or '::'");
    } else if (is_ident()) {
      if (is("(", 1)) {
        const Token& name = expect_ident();
        arguments();
        add(ElementType::MethodInvocation, start, prev_end(), name.text);
      } else if (is("[", 1) && is("]", 2)) {
        type();
      } else if (is("<", 1) && lookahead([&] {
                   type();
                   return is("::");
                 })) {
        type();
      } else {
        ++pos_;
      }
    } else {
      fail("expected an expression");
    }
  }

  void selectors(size_t start) {
    for (;;) {
      if (is(".")) {
        if (is_ident(1) && is("(", 2)) {
          ++pos_;
          const Token& name = expect_ident();
          arguments();
          add(ElementType::MethodInvocation, start, prev_end(), name.text);
        } else if (is("<", 1)) {
          ++pos_;
          type_arguments();
          const Token& name = expect_ident();
          arguments();
          add(ElementType::MethodInvocation, start, prev_end(), name.text);
        } else if (is_ident(1) || is("this", 1) || is("class", 1)) {
          pos_ += 2;
        } else if (is("new", 1)) {
          ++pos_;
          creator();
        } else if (is("super", 1)) {
          pos_ += 2;
          if (is("(")) arguments();
        } else {
          ++pos_;
          fail("unexpected token after '.'");
        }
      } else if (accept("[")) {
        expression();
        expect("]");
      } else if (accept("::")) {
        if (is("<")) type_arguments();
        if (!accept("new")) expect_ident();
      } else if (is("++") || is("--")) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  void creator() {
    expect("new");
    if (is("<")) type_arguments();
    annotations();
    if (is_primitive()) {
      ++pos_;
    } else {
      class_type();
    }
    if (is("[")) {
      while (accept("[")) {
        if (!is("]")) expression();
        expect("]");
      }
      if (is("{")) array_initializer();
      return;
    }
    arguments();
    if (is("{")) class_body();
  }

  void arguments() {
    expect("(");
    if (!is(")")) {
      do {
        expression();
      } while (accept(","));
    }
    expect(")");
  }
};

}  // namespace

std::vector<SyntaxElement> parse_java(std::string_view source) { return Parser(source).run(); }

}  // namespace refann::java
