#include "refann/index/source_text.hpp"

#include <algorithm>

namespace refann {
namespace {

bool is_continuation(char c) { return (static_cast<unsigned char>(c) & 0xC0) == 0x80; }

}  // namespace

SourceText::SourceText(std::string text) : text_(std::move(text)) {
  line_starts_.push_back(0);
  for (size_t i = 0; i < text_.size(); ++i)
    if (text_[i] == '\n') line_starts_.push_back(i + 1);
}

Position SourceText::position_of(size_t offset) const {
  offset = std::min(offset, text_.size());
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  const size_t line_index = static_cast<size_t>(it - line_starts_.begin()) - 1;
  int col = 1;
  for (size_t i = line_starts_[line_index]; i < offset; ++i)
    if (!is_continuation(text_[i])) ++col;
  return {static_cast<int>(line_index) + 1, col};
}

std::optional<size_t> SourceText::offset_of(Position pos) const {
  if (pos.line < 1 || pos.line > line_count() || pos.col < 1) return std::nullopt;
  const size_t begin = line_starts_[static_cast<size_t>(pos.line - 1)];
  const size_t end = static_cast<size_t>(pos.line) < line_starts_.size()
                         ? line_starts_[static_cast<size_t>(pos.line)] - 1  // at the '\n'
                         : text_.size();
  size_t offset = begin;
  for (int col = 1; col < pos.col; ++col) {
    if (offset >= end) return std::nullopt;
    ++offset;
    while (offset < end && is_continuation(text_[offset])) ++offset;
  }
  return offset;
}

TextRange SourceText::range_of(const std::string& path, size_t begin, size_t end) const {
  const Position s = position_of(begin);
  const Position e = position_of(end);
  return {path, s.line, s.col, e.line, e.col};
}

std::optional<std::pair<size_t, size_t>> SourceText::offsets_of(const TextRange& range) const {
  auto b = offset_of(range.start());
  auto e = offset_of(range.end());
  if (!b || !e) return std::nullopt;
  return std::make_pair(*b, *e);
}

}  // namespace refann
