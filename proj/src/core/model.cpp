#include "refann/core/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "refann/core/error.hpp"

namespace refann {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::InvalidSchema: return "InvalidSchema";
    case ErrorCode::BuiltinOverwrite: return "BuiltinOverwrite";
    case ErrorCode::UnknownType: return "UnknownType";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::RepoNotFound: return "RepoNotFound";
    case ErrorCode::UnknownCommit: return "UnknownCommit";
    case ErrorCode::MergeCommitUnsupported: return "MergeCommitUnsupported";
    case ErrorCode::MalformedFixture: return "MalformedFixture";
    case ErrorCode::CodeFragmentNotEnumerable: return "CodeFragmentNotEnumerable";
    case ErrorCode::BinaryFile: return "BinaryFile";
    case ErrorCode::UnknownParameter: return "UnknownParameter";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::FragmentSpansMethods: return "FragmentSpansMethods";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::WrongSide: return "WrongSide";
    case ErrorCode::NoAutofillRule: return "NoAutofillRule";
    case ErrorCode::SourceUnfilled: return "SourceUnfilled";
    case ErrorCode::NoAncestorFound: return "NoAncestorFound";
    case ErrorCode::IncompleteAnnotation: return "IncompleteAnnotation";
    case ErrorCode::AnnotationLocked: return "AnnotationLocked";
    case ErrorCode::InsufficientAnnotators: return "InsufficientAnnotators";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::UnresolvableCommit: return "UnresolvableCommit";
    case ErrorCode::VersionConflict: return "VersionConflict";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::PortInUse: return "PortInUse";
  }
  return "Unknown";
}

bool is_valid_relative_path(std::string_view path) {
  if (path.empty() || path.front() == '/' || path.find('\\') != std::string_view::npos)
    return false;
  size_t pos = 0;
  while (pos <= path.size()) {
    size_t next = path.find('/', pos);
    if (next == std::string_view::npos) next = path.size();
    std::string_view segment = path.substr(pos, next - pos);
    if (segment.empty() || segment == "..") return false;
    pos = next + 1;
  }
  return true;
}

void validate_range(const TextRange& range) {
  if (!is_valid_relative_path(range.path))
    throw Error(ErrorCode::InvalidRange, "invalid path in range: '" + range.path + "'");
  if (range.start_line < 1 || range.start_col < 1 || range.end_line < 1 || range.end_col < 1)
    throw Error(ErrorCode::InvalidRange, "positions are 1-based: " + to_string(range));
  if (!(range.start() < range.end()))
    throw Error(ErrorCode::InvalidRange, "range start must precede its end: " + to_string(range));
}

std::string to_string(const TextRange& range) {
  return range.path + ":" + std::to_string(range.start_line) + ":" +
         std::to_string(range.start_col) + "-" + std::to_string(range.end_line) + ":" +
         std::to_string(range.end_col);
}

namespace {

constexpr std::array<std::pair<ElementType, std::string_view>, 8> kElementNames{{
    {ElementType::ClassDeclaration, "ClassDeclaration"},
    {ElementType::MethodDeclaration, "MethodDeclaration"},
    {ElementType::FieldDeclaration, "FieldDeclaration"},
    {ElementType::VariableDeclaration, "VariableDeclaration"},
    {ElementType::ParameterDeclaration, "ParameterDeclaration"},
    {ElementType::MethodInvocation, "MethodInvocation"},
    {ElementType::Identifier, "Identifier"},
    {ElementType::CodeFragment, "CodeFragment"},
}};

}  // namespace

std::string_view to_string(ElementType type) {
  for (const auto& [t, name] : kElementNames)
    if (t == type) return name;
  return "Unknown";
}

std::optional<ElementType> parse_element_type(std::string_view name) {
  for (const auto& [t, n] : kElementNames)
    if (n == name) return t;
  return std::nullopt;
}

bool is_declaration(ElementType type) {
  switch (type) {
    case ElementType::ClassDeclaration:
    case ElementType::MethodDeclaration:
    case ElementType::FieldDeclaration:
    case ElementType::VariableDeclaration:
    case ElementType::ParameterDeclaration:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(RevisionSide side) {
  return side == RevisionSide::Before ? "before" : "after";
}

std::optional<RevisionSide> parse_side(std::string_view name) {
  if (name == "before" || name == "Before") return RevisionSide::Before;
  if (name == "after" || name == "After") return RevisionSide::After;
  return std::nullopt;
}

std::string_view to_string(AnnotationStatus status) {
  switch (status) {
    case AnnotationStatus::Draft: return "Draft";
    case AnnotationStatus::Verified: return "Verified";
    case AnnotationStatus::Rejected: return "Rejected";
  }
  return "Draft";
}

std::optional<AnnotationStatus> parse_status(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "draft") return AnnotationStatus::Draft;
  if (lower == "verified") return AnnotationStatus::Verified;
  if (lower == "rejected") return AnnotationStatus::Rejected;
  return std::nullopt;
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::SetParameter: return "SetParameter";
    case EventKind::ClearParameter: return "ClearParameter";
    case EventKind::Autofill: return "Autofill";
    case EventKind::StatusChange: return "StatusChange";
  }
  return "SetParameter";
}

std::optional<EventKind> parse_event_kind(std::string_view name) {
  for (EventKind k : {EventKind::SetParameter, EventKind::ClearParameter, EventKind::Autofill,
                      EventKind::StatusChange})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

const ParameterSchema* RefactoringTypeDefinition::find(RevisionSide side,
                                                       std::string_view param) const {
  for (const auto& p : parameters(side))
    if (p.name == param) return &p;
  return nullptr;
}

const ParameterSchema* RefactoringTypeDefinition::resolve_follows(
    const ParameterSchema& target) const {
  if (!target.autofill) return nullptr;
  const RevisionSide other =
      target.side == RevisionSide::Before ? RevisionSide::After : RevisionSide::Before;
  if (const auto* p = find(target.side, target.autofill->follows); p && p->name != target.name) return p;
  return find(other, target.autofill->follows);
}

Annotation make_annotation(std::string id, CommitRef commit,
                           const RefactoringTypeDefinition& type, std::string annotator) {
  Annotation a;
  a.id = std::move(id);
  a.commit = std::move(commit);
  a.type_name = type.name;
  a.annotator = std::move(annotator);
  for (RevisionSide side : {RevisionSide::Before, RevisionSide::After})
    for (const auto& p : type.parameters(side)) a.parameters[{side, p.name}] = {};
  return a;
}

std::vector<std::string> schema_violations(const Annotation& annotation,
                                           const RefactoringTypeDefinition& type) {
  std::vector<std::string> out;
  if (annotation.type_name != type.name)
    out.push_back("type name '" + annotation.type_name + "' does not match '" + type.name + "'");
  for (const auto& [key, ranges] : annotation.parameters) {
    const auto* schema = type.find(key.side, key.name);
    if (!schema) {
      out.push_back("unknown parameter " + std::string(to_string(key.side)) + "/" + key.name);
      continue;
    }
    if (!schema->multiple && ranges.size() > 1)
      out.push_back("single-valued parameter " + key.name + " holds " +
                    std::to_string(ranges.size()) + " ranges");
    for (const auto& r : ranges) {
      try {
        validate_range(r);
      } catch (const Error& e) {
        out.push_back(key.name + ": " + e.what());
      }
    }
  }
  if (annotation.status == AnnotationStatus::Verified) {
    for (RevisionSide side : {RevisionSide::Before, RevisionSide::After}) {
      for (const auto& p : type.parameters(side)) {
        if (!p.required) continue;
        auto it = annotation.parameters.find({side, p.name});
        if (it == annotation.parameters.end() || it->second.empty())
          out.push_back("verified annotation misses required parameter " +
                        std::string(to_string(side)) + "/" + p.name);
      }
    }
  }
  for (size_t i = 1; i < annotation.events.size(); ++i)
    if (annotation.events[i].timestamp < annotation.events[i - 1].timestamp) {
      out.push_back("event timestamps decrease at index " + std::to_string(i));
      break;
    }
  return out;
}

}  // namespace refann
