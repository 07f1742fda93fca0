#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "refann/core/model.hpp"
#include "refann/core/registry.hpp"
#include "refann/ingest/snapshot.hpp"

namespace refann {

/// Directory of JSON documents:
///   <root>/commits/<id>.json      commit snapshots
///   <root>/types/<name>.json      user-defined refactoring types
///   <root>/annotations/<id>.json  annotations with their event logs
/// File names are percent-encoded ids. Every write goes to a temporary file
/// that is renamed into place, so readers never see partial documents.
class Store {
 public:
  explicit Store(std::filesystem::path root);

  /// $REFANN_DATA_DIR, or ./data.
  static std::filesystem::path default_root();

  const std::filesystem::path& root() const { return root_; }

  void put_commit(const CommitSnapshot& snapshot);
  bool has_commit(const std::string& id) const;
  /// Throws UnknownCommit.
  CommitSnapshot get_commit(const std::string& id) const;
  /// Sorted by (sha, repository).
  std::vector<CommitRef> list_commits() const;

  /// Validates and stores a user type. Throws DuplicateName,
  /// BuiltinOverwrite or InvalidSchema.
  void put_type(const RefactoringTypeDefinition& def);
  /// Builtins plus every stored user type.
  TypeRegistry registry() const;

  /// Requires annotation.version == stored version + 1 (0 when new);
  /// throws VersionConflict otherwise. Throws UnknownType or
  /// SchemaViolation when the annotation does not conform to its type.
  void put_annotation(const Annotation& annotation);
  /// Throws NotFound.
  Annotation get_annotation(const std::string& id) const;
  std::optional<Annotation> find_annotation(const std::string& id) const;
  /// Sorted by id.
  std::vector<Annotation> list_annotations() const;

 private:
  std::filesystem::path commit_path(const std::string& id) const;
  std::filesystem::path annotation_path(const std::string& id) const;

  std::filesystem::path root_;
  mutable std::mutex mutex_;
};

std::string percent_encode(std::string_view s);
std::string percent_decode(std::string_view s);
std::string new_annotation_id();

}  // namespace refann
