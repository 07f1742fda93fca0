#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "refann/core/model.hpp"
#include "refann/core/vendor_json.hpp"

namespace refann {

enum class ChangeKind { Added, Removed, Modified, Renamed };

std::string_view to_string(ChangeKind kind);

struct FileChange {
  std::optional<std::string> path_before;
  std::optional<std::string> path_after;
  std::optional<std::string> content_before;
  std::optional<std::string> content_after;
  ChangeKind kind = ChangeKind::Modified;
  // Binary files are listed but cannot be indexed, diffed or annotated.
  bool binary = false;

  const std::optional<std::string>& path(RevisionSide side) const {
    return side == RevisionSide::Before ? path_before : path_after;
  }
  const std::optional<std::string>& content(RevisionSide side) const {
    return side == RevisionSide::Before ? content_before : content_after;
  }

  bool operator==(const FileChange&) const = default;
};

struct CommitSnapshot {
  CommitRef commit;
  std::vector<FileChange> files;
  std::string message;

  /// The change whose path on `side` equals `path`, if any.
  const FileChange* find(RevisionSide side, std::string_view path) const;

  bool operator==(const CommitSnapshot&) const = default;
};

/// NUL byte within the first 8000 bytes.
bool looks_binary(std::string_view content);

/// Snapshot of `sha` against its single parent, read through the system git
/// executable (or the one named by REFANN_GIT). Root commits are diffed
/// against the empty tree.
CommitSnapshot load_commit(const std::filesystem::path& repo_path, const std::string& sha,
                           std::optional<std::string> repository_label = std::nullopt);

/// Snapshot from `dir/before`, `dir/after` and optional `dir/commit.json`.
/// Files are matched by path only.
CommitSnapshot load_fixture(const std::filesystem::path& dir);

/// Throws SchemaViolation on a snapshot breaking its invariants.
void validate_snapshot(const CommitSnapshot& snapshot);

nlohmann::json snapshot_to_json(const CommitSnapshot& snapshot);
CommitSnapshot snapshot_from_json(const nlohmann::json& j);

}  // namespace refann
