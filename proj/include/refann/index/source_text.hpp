#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "refann/core/model.hpp"

namespace refann {

/// File contents plus a line table for converting between byte offsets and
/// 1-based (line, column) positions. Columns count UTF-8 scalar values.
class SourceText {
 public:
  SourceText() = default;
  explicit SourceText(std::string text);

  const std::string& text() const { return text_; }
  int line_count() const { return static_cast<int>(line_starts_.size()); }

  Position position_of(size_t offset) const;
  /// nullopt when the position lies outside the text.
  std::optional<size_t> offset_of(Position pos) const;

  TextRange range_of(const std::string& path, size_t begin, size_t end) const;
  /// Byte offsets of a range in this file; nullopt when out of bounds.
  std::optional<std::pair<size_t, size_t>> offsets_of(const TextRange& range) const;

 private:
  std::string text_;
  std::vector<size_t> line_starts_;
};

}  // namespace refann
