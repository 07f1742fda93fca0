#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "refann/core/model.hpp"
#include "refann/core/vendor_json.hpp"
#include "refann/ingest/snapshot.hpp"

namespace refann {

enum class LineTag { Context, Delete, Insert };

std::string_view to_string(LineTag tag);

struct DiffLine {
  LineTag tag = LineTag::Context;
  std::string text;
  bool operator==(const DiffLine&) const = default;
};

// Unified-diff numbering: a side with len 0 has start = the line after
// which the change happens (0 at the top of the file).
struct Hunk {
  int before_start = 0;
  int before_len = 0;
  int after_start = 0;
  int after_len = 0;
  std::vector<DiffLine> lines;
  bool operator==(const Hunk&) const = default;
};

struct FileDiff {
  std::optional<std::string> path_before;
  std::optional<std::string> path_after;
  std::vector<Hunk> hunks;
  // Whether each side's content ends with '\n'. Empty content counts as
  // terminated.
  bool before_trailing_newline = true;
  bool after_trailing_newline = true;
  bool operator==(const FileDiff&) const = default;
};

/// Lines split on '\n'. A final line without a terminator is kept; a final
/// terminator does not start an extra empty line.
std::vector<std::string> split_lines(std::string_view text);

/// Myers shortest edit script over lines, grouped into hunks with
/// `context_lines` lines of context. Throws BinaryFile for binary changes.
FileDiff compute_diff(const FileChange& change, int context_lines = 3);

/// Line numbers of Delete lines (Before) or Insert lines (After).
std::set<int> changed_line_set(const FileDiff& diff, RevisionSide side);

nlohmann::json diff_to_json(const FileDiff& diff);

}  // namespace refann
