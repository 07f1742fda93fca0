#include "refann/index/java_lexer.hpp"

#include <algorithm>
#include <array>

namespace refann::java {
namespace {

constexpr std::array<std::string_view, 50> kKeywords{
    "abstract", "assert",     "boolean",   "break",      "byte",      "case",
    "catch",    "char",       "class",     "const",      "continue",  "default",
    "do",       "double",     "else",      "enum",       "extends",   "final",
    "finally",  "float",      "for",       "goto",       "if",        "implements",
    "import",   "instanceof", "int",       "interface",  "long",      "native",
    "new",      "package",    "private",   "protected",  "public",    "return",
    "short",    "static",     "strictfp",  "super",      "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient",  "try",       "void",
    "volatile", "while",
};

// Longest first within each shared prefix.
constexpr std::array<std::string_view, 20> kMultiCharOperators{
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", "<<", "+=",
    "-=",  "*=",  "/=", "%=", "&=", "|=", "^=",
};

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

}  // namespace

bool is_reserved_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  size_t i = 0;
  const size_t n = src.size();
  auto at = [&](size_t k) -> unsigned char { return k < n ? static_cast<unsigned char>(src[k]) : 0; };
  auto push = [&](TokenKind kind, size_t begin, size_t end) {
    tokens.push_back({kind, src.substr(begin, end - begin), begin, end});
  };

  // A UTF-8 byte-order mark is not part of the program text.
  if (src.substr(0, 3) == "\xEF\xBB\xBF") i = 3;

  while (i < n) {
    const unsigned char c = at(i);
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
      ++i;
      continue;
    }
    if (c == '/' && at(i + 1) == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && at(i + 1) == '*') {
      size_t close = src.find("*/", i + 2);
      if (close == std::string_view::npos) throw ParseFailure("unterminated comment", i);
      i = close + 2;
      continue;
    }
    const size_t begin = i;
    if (is_ident_start(c)) {
      while (i < n && is_ident_part(at(i))) ++i;
      std::string_view word = src.substr(begin, i - begin);
      TokenKind kind = TokenKind::Identifier;
      if (word == "true" || word == "false" || word == "null")
        kind = TokenKind::Literal;
      else if (is_reserved_keyword(word))
        kind = TokenKind::Keyword;
      push(kind, begin, i);
      continue;
    }
    if (is_digit(c) || (c == '.' && is_digit(at(i + 1)))) {
      const bool hex = c == '0' && (at(i + 1) == 'x' || at(i + 1) == 'X');
      while (i < n) {
        const unsigned char d = at(i);
        if (is_ident_part(d) || d == '.') {
          ++i;
        } else if ((d == '+' || d == '-') && i > begin) {
          const unsigned char prev = at(i - 1);
          const bool exponent = hex ? (prev == 'p' || prev == 'P') : (prev == 'e' || prev == 'E');
          if (!exponent) break;
          ++i;
        } else {
          break;
        }
      }
      push(TokenKind::Literal, begin, i);
      continue;
    }
    if (c == '"') {
      if (src.substr(i, 3) == "\"\"\"") {
        size_t k = i + 3;
        for (;;) {
          if (k >= n) throw ParseFailure("unterminated text block", begin);
          if (src[k] == '\\') {
            k += 2;
            continue;
          }
          if (src.substr(k, 3) == "\"\"\"") break;
          ++k;
        }
        i = k + 3;
        push(TokenKind::Literal, begin, i);
        continue;
      }
      ++i;
      for (;;) {
        if (i >= n || src[i] == '\n') throw ParseFailure("unterminated string literal", begin);
        if (src[i] == '\\') {
          i += 2;
          continue;
        }
        if (src[i] == '"') break;
        ++i;
      }
      ++i;
      push(TokenKind::Literal, begin, i);
      continue;
    }
    if (c == '\'') {
      ++i;
      for (;;) {
        if (i >= n || src[i] == '\n') throw ParseFailure("unterminated character literal", begin);
        if (src[i] == '\\') {
          i += 2;
          continue;
        }
        if (src[i] == '\'') break;
        ++i;
      }
      ++i;
      push(TokenKind::Literal, begin, i);
      continue;
    }
    bool matched = false;
    for (std::string_view op : kMultiCharOperators) {
      if (src.substr(i, op.size()) == op) {
        i += op.size();
        push(TokenKind::Operator, begin, i);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    static constexpr std::string_view kSingles = "(){}[];,.@=><!~?:+-*/&|^%";
    if (kSingles.find(static_cast<char>(c)) != std::string_view::npos) {
      ++i;
      push(TokenKind::Operator, begin, i);
      continue;
    }
    throw ParseFailure(std::string("unexpected character '") + static_cast<char>(c) + "'", i);
  }
  tokens.push_back({TokenKind::End, std::string_view(), n, n});
  return tokens;
}

}  // namespace refann::java
