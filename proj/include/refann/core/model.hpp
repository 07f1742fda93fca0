#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace refann {

// 1-based line/column. Columns count Unicode scalar values.
struct Position {
  int line = 1;
  int col = 1;

  auto operator<=>(const Position&) const = default;
};

/// A contiguous span of one file on one revision side. The end position is
/// exclusive, so a range ending at column 1 does not cover its end line.
struct TextRange {
  std::string path;
  int start_line = 1;
  int start_col = 1;
  int end_line = 1;
  int end_col = 1;

  Position start() const { return {start_line, start_col}; }
  Position end() const { return {end_line, end_col}; }

  // Lexicographic on (path, start, end).
  auto operator<=>(const TextRange&) const = default;

  bool contains(const TextRange& other) const {
    return path == other.path && start() <= other.start() && other.end() <= end();
  }
  bool strictly_contains(const TextRange& other) const {
    return contains(other) && *this != other;
  }
  bool contains(std::string_view file, Position p) const {
    return path == file && start() <= p && p < end();
  }
};

/// Throws InvalidRange when the range violates its invariants.
void validate_range(const TextRange& range);
bool is_valid_relative_path(std::string_view path);
std::string to_string(const TextRange& range);

enum class ElementType {
  ClassDeclaration,
  MethodDeclaration,
  FieldDeclaration,
  VariableDeclaration,
  ParameterDeclaration,
  MethodInvocation,
  Identifier,
  CodeFragment,
};

inline constexpr ElementType kAllElementTypes[] = {
    ElementType::ClassDeclaration,    ElementType::MethodDeclaration,
    ElementType::FieldDeclaration,    ElementType::VariableDeclaration,
    ElementType::ParameterDeclaration, ElementType::MethodInvocation,
    ElementType::Identifier,          ElementType::CodeFragment,
};

// The seven types that correspond to a single syntax-tree node category.
inline constexpr ElementType kConcreteElementTypes[] = {
    ElementType::ClassDeclaration,    ElementType::MethodDeclaration,
    ElementType::FieldDeclaration,    ElementType::VariableDeclaration,
    ElementType::ParameterDeclaration, ElementType::MethodInvocation,
    ElementType::Identifier,
};

std::string_view to_string(ElementType type);
std::optional<ElementType> parse_element_type(std::string_view name);
bool is_declaration(ElementType type);

enum class RevisionSide { Before, After };

std::string_view to_string(RevisionSide side);
std::optional<RevisionSide> parse_side(std::string_view name);

struct CodeElement {
  ElementType element_type = ElementType::Identifier;
  TextRange range;
  RevisionSide side = RevisionSide::Before;
  std::optional<std::string> name;
  std::optional<TextRange> enclosing_method;
  // MethodDeclaration only: the span strictly between the body braces.
  std::optional<TextRange> body;

  bool operator==(const CodeElement&) const = default;
};

enum class AutofillKind { Reference, Ancestor };

struct AutofillRule {
  AutofillKind kind = AutofillKind::Reference;
  std::string follows;
  std::optional<ElementType> ancestor_type;

  bool operator==(const AutofillRule&) const = default;
};

struct ParameterSchema {
  std::string name;
  RevisionSide side = RevisionSide::Before;
  ElementType element_type = ElementType::Identifier;
  bool multiple = false;
  bool required = false;
  std::optional<AutofillRule> autofill;

  bool operator==(const ParameterSchema&) const = default;
};

struct RefactoringTypeDefinition {
  std::string name;
  std::vector<ParameterSchema> before;
  std::vector<ParameterSchema> after;
  bool builtin = false;

  const std::vector<ParameterSchema>& parameters(RevisionSide side) const {
    return side == RevisionSide::Before ? before : after;
  }
  const ParameterSchema* find(RevisionSide side, std::string_view param) const;

  /// Source parameter of an autofill rule: same side first, then the other.
  const ParameterSchema* resolve_follows(const ParameterSchema& target) const;

  bool operator==(const RefactoringTypeDefinition&) const = default;
};

struct CommitRef {
  std::string repository;
  std::string sha;

  std::string id() const { return repository + ":" + sha; }
  auto operator<=>(const CommitRef&) const = default;
};

enum class AnnotationStatus { Draft, Verified, Rejected };

std::string_view to_string(AnnotationStatus status);
std::optional<AnnotationStatus> parse_status(std::string_view name);

struct ParamKey {
  RevisionSide side = RevisionSide::Before;
  std::string name;

  auto operator<=>(const ParamKey&) const = default;
};

using ParameterValues = std::map<ParamKey, std::vector<TextRange>>;

enum class EventKind { SetParameter, ClearParameter, Autofill, StatusChange };

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view name);

struct AnnotationEvent {
  std::int64_t timestamp = 0;  // ms since epoch
  EventKind kind = EventKind::SetParameter;
  std::optional<ParamKey> parameter;
  std::vector<TextRange> ranges;
  std::optional<AnnotationStatus> status;

  bool operator==(const AnnotationEvent&) const = default;
};

struct Annotation {
  std::string id;
  CommitRef commit;
  std::string type_name;
  AnnotationStatus status = AnnotationStatus::Draft;
  std::string annotator;
  std::optional<std::string> description;
  ParameterValues parameters;
  std::vector<AnnotationEvent> events;
  std::int64_t version = 0;

  bool operator==(const Annotation&) const = default;
};

/// An annotation with one (possibly empty) value list per schema parameter.
Annotation make_annotation(std::string id, CommitRef commit,
                           const RefactoringTypeDefinition& type,
                           std::string annotator);

/// Structural conformance to the type: keys exist, multiplicity respected,
/// and a Verified annotation has every required parameter filled.
/// Returns human-readable violations; empty means conformant.
std::vector<std::string> schema_violations(const Annotation& annotation,
                                           const RefactoringTypeDefinition& type);

}  // namespace refann
