#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace refann::java {

enum class TokenKind { Identifier, Keyword, Literal, Operator, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string_view text;
  size_t begin = 0;  // byte offsets into the source
  size_t end = 0;
};

class ParseFailure : public std::runtime_error {
 public:
  ParseFailure(const std::string& message, size_t offset)
      : std::runtime_error(message), offset_(offset) {}
  size_t offset() const noexcept { return offset_; }

 private:
  size_t offset_;
};

bool is_reserved_keyword(std::string_view word);

/// Splits Java source into tokens, dropping whitespace and comments. Every
/// '>' is its own token so nested type arguments close naturally; the
/// parser reassembles shift and comparison operators from adjacent tokens.
/// The returned list always ends with an End token. Throws ParseFailure on
/// unterminated comments or literals.
std::vector<Token> tokenize(std::string_view source);

}  // namespace refann::java
