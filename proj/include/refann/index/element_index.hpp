#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "refann/core/model.hpp"
#include "refann/index/source_text.hpp"
#include "refann/ingest/snapshot.hpp"

namespace refann {

/// Queryable index of the typed code elements of one revision side of a
/// commit. Immutable after construction and safe to share between threads.
class ElementIndex {
 public:
  struct FileEntry {
    SourceText source;
    // Sorted by (range start, range end).
    std::map<ElementType, std::vector<CodeElement>> elements;
    // Identifier elements keyed by token text; values index into
    // elements[Identifier].
    std::map<std::string, std::vector<size_t>, std::less<>> identifiers;
  };

  ElementIndex() = default;

  RevisionSide side() const { return side_; }

  /// Paths of the side's files that were parsed successfully.
  std::vector<std::string> indexed_files() const;
  /// Paths present on this side that could not be indexed, with the reason
  /// (syntax error, binary content, unsupported language).
  const std::map<std::string, std::string>& unindexed_files() const { return unindexed_; }
  bool is_indexed(std::string_view path) const;
  /// Whether the side of the commit has this path at all (indexed or not).
  bool has_file(std::string_view path) const;

  /// Source text of an indexed file.
  const SourceText* source(std::string_view path) const;

  /// Throws CodeFragmentNotEnumerable for t = CodeFragment.
  std::vector<CodeElement> elements_of_type(ElementType t,
                                            std::optional<std::string_view> file = std::nullopt) const;

  /// Smallest element of type t containing the point, if any.
  std::optional<CodeElement> element_at(ElementType t, std::string_view path, Position point) const;

  /// Smallest element of type t strictly containing the whole range.
  std::optional<CodeElement> enclosing(const TextRange& range, ElementType t) const;

  /// Identifier elements spelled `name`, restricted to `scope` when given,
  /// sorted by position.
  std::vector<CodeElement> identifiers_named(std::string_view name,
                                             const std::optional<TextRange>& scope = std::nullopt) const;

  /// Element of type t whose range is exactly `range`.
  std::optional<CodeElement> find_exact(ElementType t, const TextRange& range) const;

 private:
  friend ElementIndex build_index(const CommitSnapshot&, RevisionSide);

  const std::vector<CodeElement>* typed(std::string_view path, ElementType t) const;

  RevisionSide side_ = RevisionSide::Before;
  std::map<std::string, FileEntry, std::less<>> files_;
  std::map<std::string, std::string> unindexed_;
};

/// Parses every text file of one side of the snapshot. Files that fail to
/// parse are recorded as unindexed; nothing here is fatal.
ElementIndex build_index(const CommitSnapshot& snapshot, RevisionSide side);

/// Language tag chosen from the file extension, or nullopt if unsupported.
std::optional<std::string> language_of(std::string_view path);

}  // namespace refann
