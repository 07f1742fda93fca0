#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace refann {

/// Every failure surfaced by the library carries one of these codes. The
/// names are part of the external contract: the CLI prints them and the
/// HTTP service returns them in the "error" field.
enum class ErrorCode {
  // core-model
  DuplicateName,
  InvalidSchema,
  BuiltinOverwrite,
  UnknownType,
  InvalidRange,
  // repo-ingest
  RepoNotFound,
  UnknownCommit,
  MergeCommitUnsupported,
  MalformedFixture,
  // ast-index
  CodeFragmentNotEnumerable,
  // diff
  BinaryFile,
  // annotate
  UnknownParameter,
  TypeMismatch,
  FragmentSpansMethods,
  DuplicateElement,
  WrongSide,
  NoAutofillRule,
  SourceUnfilled,
  NoAncestorFound,
  IncompleteAnnotation,
  AnnotationLocked,
  // metrics
  InsufficientAnnotators,
  // storage
  SchemaViolation,
  UnresolvableCommit,
  VersionConflict,
  NotFound,
  IoError,
  // api-service
  PortInUse,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace refann
