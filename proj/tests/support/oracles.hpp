#pragma once

// Test-only reference implementations. They deliberately share no code with
// the library paths they check.

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "refann/core/model.hpp"

namespace refann::testing {

std::filesystem::path fixtures_dir();
std::string read_text(const std::filesystem::path& p);

struct TokenHit {
  int line = 0;
  int col = 0;      // 1-based, in code points
  int end_col = 0;  // exclusive
  std::string word;

  auto operator<=>(const TokenHit&) const = default;
};

/// Brute-force scan of Java text: every maximal identifier-character run
/// outside comments, string/char/text-block literals and package/import
/// lines that does not start with a digit and is not a reserved word.
std::vector<TokenHit> scan_identifier_tokens(const std::string& text);

/// Hits of `name` only, optionally restricted to a [start, end) window.
std::vector<TokenHit> scan_name(const std::string& text, const std::string& name,
                                std::optional<std::pair<Position, Position>> window = {});

/// Applies unified-style hunks to `before` mechanically: copies untouched
/// lines, checks Context/Delete lines against the source, emits
/// Context/Insert lines. Returns nullopt when the hunks do not apply.
struct OracleHunkLine {
  char tag;  // ' ', '-', '+'
  std::string text;
};
struct OracleHunk {
  int before_start = 0;
  int before_len = 0;
  std::vector<OracleHunkLine> lines;
};
std::optional<std::string> apply_hunks(const std::string& before, const std::vector<OracleHunk>& hunks,
                                       bool after_has_trailing_newline);

/// Temporary directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

void write_text(const std::filesystem::path& p, const std::string& text);

/// Copies fixtures/<name> into `dest`.
void copy_fixture(const std::string& name, const std::filesystem::path& dest);

}  // namespace refann::testing
