#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "refann/core/model.hpp"
#include "refann/index/element_index.hpp"
#include "refann/ingest/snapshot.hpp"

namespace refann {

/// A commit snapshot with both side indexes. Built once and shared by every
/// session on that commit.
struct CommitData {
  CommitSnapshot snapshot;
  ElementIndex before;
  ElementIndex after;

  const ElementIndex& index(RevisionSide side) const {
    return side == RevisionSide::Before ? before : after;
  }
};

std::shared_ptr<const CommitData> make_commit_data(CommitSnapshot snapshot);

/// Milliseconds since the epoch.
using Clock = std::function<std::int64_t()>;
std::int64_t system_clock_ms();

/// Either an explicit range or a point that resolves to the innermost element.
struct Selection {
  std::optional<TextRange> range;
  std::optional<std::string> path;
  std::optional<Position> point;

  static Selection of_range(TextRange r) { return {std::move(r), std::nullopt, std::nullopt}; }
  static Selection of_point(std::string path, Position p) { return {std::nullopt, std::move(path), p}; }
};

struct CompletenessReport {
  std::vector<ParamKey> missing;
  bool verifiable = false;
};

struct AutofillReport {
  std::vector<CodeElement> derived;
};

class AnnotationSession {
 public:
  /// The annotation's type_name must equal type.name.
  AnnotationSession(Annotation annotation, std::shared_ptr<const CommitData> commit,
                    RefactoringTypeDefinition type, Clock clock = system_clock_ms);

  const Annotation& annotation() const { return annotation_; }
  const RefactoringTypeDefinition& type() const { return type_; }
  const CommitData& commit() const { return *commit_; }

  /// Selectable elements for a parameter. For CodeFragment parameters these
  /// are the method declarations whose bodies can be selected from.
  std::vector<CodeElement> candidates(RevisionSide side, std::string_view param) const;

  /// The range a selection would be stored as, without mutating anything.
  TextRange resolve(RevisionSide side, std::string_view param, const Selection& selection) const;

  const Annotation& set_parameter(RevisionSide side, std::string_view param, const Selection& selection);
  /// Removes one range, or every range when none is given.
  const Annotation& clear_parameter(RevisionSide side, std::string_view param,
                                    const std::optional<TextRange>& range = std::nullopt);
  AutofillReport autofill(RevisionSide side, std::string_view param);
  /// What autofill would derive, without mutating anything.
  std::vector<CodeElement> derive(RevisionSide side, std::string_view param) const;

  CompletenessReport completeness() const;
  const Annotation& set_status(AnnotationStatus status);

 private:
  const ParameterSchema& schema(RevisionSide side, std::string_view param) const;
  void check_unlocked() const;
  void log(AnnotationEvent event);
  TextRange resolve_fragment(const ElementIndex& index, const TextRange& range) const;

  Annotation annotation_;
  std::shared_ptr<const CommitData> commit_;
  RefactoringTypeDefinition type_;
  Clock clock_;
};

/// Gives an untyped annotation its type, with every parameter empty.
void assign_type(Annotation& annotation, const RefactoringTypeDefinition& type);

}  // namespace refann
