#include "refann/ingest/snapshot.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "refann/core/error.hpp"
#include "refann/core/json.hpp"
#include "refann/ingest/process.hpp"

namespace fs = std::filesystem;

namespace refann {

std::string_view to_string(ChangeKind kind) {
  switch (kind) {
    case ChangeKind::Added: return "Added";
    case ChangeKind::Removed: return "Removed";
    case ChangeKind::Modified: return "Modified";
    case ChangeKind::Renamed: return "Renamed";
  }
  return "Modified";
}

namespace {

std::optional<ChangeKind> parse_change_kind(std::string_view s) {
  for (ChangeKind k : {ChangeKind::Added, ChangeKind::Removed, ChangeKind::Modified,
                       ChangeKind::Renamed})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::string git_binary() {
  if (const char* env = std::getenv("REFANN_GIT"); env && *env) return env;
  return "git";
}

ProcessResult git(const fs::path& repo, std::vector<std::string> args) {
  std::vector<std::string> argv{git_binary(), "-C", repo.string()};
  argv.insert(argv.end(), std::make_move_iterator(args.begin()),
              std::make_move_iterator(args.end()));
  return run_process(argv);
}

std::string trim_trailing_newlines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

bool read_file(const fs::path& p, std::string& out) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

void mark_binary(FileChange& change) {
  change.binary = (change.content_before && looks_binary(*change.content_before)) ||
                  (change.content_after && looks_binary(*change.content_after));
  if (change.binary) {
    change.content_before.reset();
    change.content_after.reset();
  }
}

// One record of `git diff-tree --raw -z`.
struct RawEntry {
  std::string old_mode, new_mode, old_blob, new_blob;
  char status = 'M';
  std::string path, new_path;
};

std::vector<RawEntry> parse_raw_diff(const std::string& out) {
  std::vector<RawEntry> entries;
  size_t pos = 0;
  auto next_field = [&](std::string& field) {
    size_t end = out.find('\0', pos);
    if (end == std::string::npos) return false;
    field = out.substr(pos, end - pos);
    pos = end + 1;
    return true;
  };
  std::string header;
  while (pos < out.size() && next_field(header)) {
    if (header.empty() || header[0] != ':') continue;
    std::istringstream hs(header.substr(1));
    RawEntry e;
    std::string status;
    hs >> e.old_mode >> e.new_mode >> e.old_blob >> e.new_blob >> status;
    if (status.empty()) break;
    e.status = status[0];
    if (!next_field(e.path)) break;
    if (e.status == 'R' || e.status == 'C')
      if (!next_field(e.new_path)) break;
    entries.push_back(std::move(e));
  }
  return entries;
}

std::string cat_blob(const fs::path& repo, const std::string& blob) {
  auto r = git(repo, {"cat-file", "blob", blob});
  if (r.exit_code != 0) throw Error(ErrorCode::UnknownCommit, "cannot read blob " + blob);
  return r.out;
}

void collect_files(const fs::path& root, std::set<std::string>& out) {
  for (auto it = fs::recursive_directory_iterator(root); it != fs::recursive_directory_iterator();
       ++it) {
    if (it->is_regular_file()) out.insert(fs::relative(it->path(), root).generic_string());
  }
}

}  // namespace

const FileChange* CommitSnapshot::find(RevisionSide side, std::string_view path) const {
  for (const auto& f : files)
    if (f.path(side) && *f.path(side) == path) return &f;
  return nullptr;
}

bool looks_binary(std::string_view content) {
  return content.substr(0, 8000).find('\0') != std::string_view::npos;
}

CommitSnapshot load_commit(const fs::path& repo_path, const std::string& sha,
                           std::optional<std::string> repository_label) {
  std::error_code ec;
  if (!fs::is_directory(repo_path, ec))
    throw Error(ErrorCode::RepoNotFound, "repository not found: " + repo_path.string());
  if (git(repo_path, {"rev-parse", "--git-dir"}).exit_code != 0)
    throw Error(ErrorCode::RepoNotFound, "not a git repository: " + repo_path.string());

  if (sha.empty()) throw Error(ErrorCode::UnknownCommit, "empty commit id");
  auto resolved = git(repo_path, {"rev-parse", "--verify", "--quiet", sha + "^{commit}"});
  if (resolved.exit_code != 0)
    throw Error(ErrorCode::UnknownCommit, "unknown commit '" + sha + "'");
  const std::string full = trim_trailing_newlines(resolved.out);

  auto parents_out = git(repo_path, {"rev-list", "--parents", "-n", "1", full});
  if (parents_out.exit_code != 0) throw Error(ErrorCode::UnknownCommit, "cannot read " + full);
  std::istringstream ps(parents_out.out);
  std::vector<std::string> ids;
  for (std::string id; ps >> id;) ids.push_back(id);
  if (ids.size() > 2)
    throw Error(ErrorCode::MergeCommitUnsupported,
                "commit " + full + " has " + std::to_string(ids.size() - 1) + " parents");

  std::vector<std::string> diff_args{"diff-tree", "-r", "-M", "-z", "--raw", "--no-abbrev",
                                     "--no-commit-id"};
  if (ids.size() == 2) {
    diff_args.push_back(ids[1]);
  } else {
    diff_args.push_back("--root");
  }
  diff_args.push_back(full);
  auto diff = git(repo_path, diff_args);
  if (diff.exit_code != 0) throw Error(ErrorCode::UnknownCommit, "cannot diff " + full);

  CommitSnapshot snap;
  snap.commit.repository =
      repository_label ? *repository_label : fs::weakly_canonical(repo_path).filename().string();
  snap.commit.sha = full;
  snap.message = trim_trailing_newlines(git(repo_path, {"log", "-1", "--format=%B", full}).out);

  const std::string null_blob(40, '0');
  for (const auto& e : parse_raw_diff(diff.out)) {
    // Submodule entries have no blob content.
    if (e.old_mode == "160000" || e.new_mode == "160000") continue;
    FileChange change;
    switch (e.status) {
      case 'A':
        change.kind = ChangeKind::Added;
        change.path_after = e.path;
        change.content_after = cat_blob(repo_path, e.new_blob);
        break;
      case 'D':
        change.kind = ChangeKind::Removed;
        change.path_before = e.path;
        change.content_before = cat_blob(repo_path, e.old_blob);
        break;
      case 'R':
        change.kind = ChangeKind::Renamed;
        change.path_before = e.path;
        change.path_after = e.new_path;
        change.content_before = cat_blob(repo_path, e.old_blob);
        change.content_after = cat_blob(repo_path, e.new_blob);
        break;
      default:
        change.kind = ChangeKind::Modified;
        change.path_before = e.path;
        change.path_after = e.path;
        change.content_before = cat_blob(repo_path, e.old_blob);
        change.content_after = cat_blob(repo_path, e.new_blob);
        if (change.content_before == change.content_after) continue;  // mode-only change
        break;
    }
    mark_binary(change);
    snap.files.push_back(std::move(change));
  }
  return snap;
}

CommitSnapshot load_fixture(const fs::path& dir) {
  std::error_code ec;
  const fs::path before = dir / "before";
  const fs::path after = dir / "after";
  if (!fs::is_directory(dir, ec))
    throw Error(ErrorCode::MalformedFixture, "fixture directory not found: " + dir.string());
  if (!fs::is_directory(before, ec) || !fs::is_directory(after, ec))
    throw Error(ErrorCode::MalformedFixture,
                "fixture needs before/ and after/ directories: " + dir.string());

  CommitSnapshot snap;
  const std::string label = fs::weakly_canonical(dir).filename().string();
  snap.commit = {label, label};
  if (fs::exists(dir / "commit.json")) {
    std::string text;
    if (!read_file(dir / "commit.json", text))
      throw Error(ErrorCode::MalformedFixture, "cannot read commit.json");
    try {
      auto j = nlohmann::json::parse(text);
      if (!j.is_object()) throw Error(ErrorCode::MalformedFixture, "commit.json must be an object");
      if (j.contains("repository")) snap.commit.repository = j.at("repository").get<std::string>();
      if (j.contains("sha")) snap.commit.sha = j.at("sha").get<std::string>();
      if (j.contains("message")) snap.message = j.at("message").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedFixture, std::string("bad commit.json: ") + e.what());
    }
    if (snap.commit.sha.empty() || snap.commit.repository.empty())
      throw Error(ErrorCode::MalformedFixture, "commit.json has an empty repository or sha");
  }

  std::set<std::string> paths;
  collect_files(before, paths);
  collect_files(after, paths);
  for (const auto& p : paths) {
    FileChange change;
    std::string b, a;
    const bool has_b = fs::is_regular_file(before / p, ec) && read_file(before / p, b);
    const bool has_a = fs::is_regular_file(after / p, ec) && read_file(after / p, a);
    if (has_b && has_a) {
      if (a == b) continue;
      change.kind = ChangeKind::Modified;
    } else {
      change.kind = has_b ? ChangeKind::Removed : ChangeKind::Added;
    }
    if (has_b) {
      change.path_before = p;
      change.content_before = std::move(b);
    }
    if (has_a) {
      change.path_after = p;
      change.content_after = std::move(a);
    }
    mark_binary(change);
    snap.files.push_back(std::move(change));
  }
  return snap;
}

void validate_snapshot(const CommitSnapshot& snapshot) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::SchemaViolation, what); };
  if (snapshot.commit.sha.empty()) fail("snapshot commit sha is empty");
  std::set<std::string> seen_before, seen_after;
  for (const auto& f : snapshot.files) {
    if (!f.path_before && !f.path_after) fail("file change without a path");
    if (f.path_before && !seen_before.insert(*f.path_before).second)
      fail("duplicate before path " + *f.path_before);
    if (f.path_after && !seen_after.insert(*f.path_after).second)
      fail("duplicate after path " + *f.path_after);
    for (const auto& p : {f.path_before, f.path_after})
      if (p && !is_valid_relative_path(*p)) fail("invalid path '" + *p + "'");
    switch (f.kind) {
      case ChangeKind::Added:
        if (f.path_before || !f.path_after) fail("Added change must only have an after path");
        break;
      case ChangeKind::Removed:
        if (!f.path_before || f.path_after) fail("Removed change must only have a before path");
        break;
      case ChangeKind::Renamed:
        if (!f.path_before || !f.path_after || *f.path_before == *f.path_after)
          fail("Renamed change needs two different paths");
        break;
      case ChangeKind::Modified:
        if (!f.path_before || !f.path_after) fail("Modified change needs both paths");
        break;
    }
    if (!f.binary) {
      if (f.path_before.has_value() != f.content_before.has_value() ||
          f.path_after.has_value() != f.content_after.has_value())
        fail("text change content does not match its paths");
    }
  }
}

nlohmann::json snapshot_to_json(const CommitSnapshot& snapshot) {
  nlohmann::json j;
  j["commit"] = commit_to_json(snapshot.commit);
  j["message"] = snapshot.message;
  auto files = nlohmann::json::array();
  for (const auto& f : snapshot.files) {
    nlohmann::json fj;
    fj["kind"] = to_string(f.kind);
    fj["binary"] = f.binary;
    fj["pathBefore"] = f.path_before ? nlohmann::json(*f.path_before) : nlohmann::json();
    fj["pathAfter"] = f.path_after ? nlohmann::json(*f.path_after) : nlohmann::json();
    // Binary payloads are not representable as JSON strings.
    fj["contentBefore"] =
        f.content_before && !f.binary ? nlohmann::json(*f.content_before) : nlohmann::json();
    fj["contentAfter"] =
        f.content_after && !f.binary ? nlohmann::json(*f.content_after) : nlohmann::json();
    files.push_back(std::move(fj));
  }
  j["files"] = std::move(files);
  return j;
}

CommitSnapshot snapshot_from_json(const nlohmann::json& j) {
  try {
    CommitSnapshot snap;
    snap.commit = commit_from_json(j.at("commit"));
    snap.message = j.value("message", "");
    for (const auto& fj : j.at("files")) {
      FileChange f;
      auto kind = parse_change_kind(fj.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::SchemaViolation, "unknown change kind");
      f.kind = *kind;
      f.binary = fj.value("binary", false);
      auto opt = [&](const char* key) -> std::optional<std::string> {
        auto it = fj.find(key);
        if (it == fj.end() || it->is_null()) return std::nullopt;
        return it->get<std::string>();
      };
      f.path_before = opt("pathBefore");
      f.path_after = opt("pathAfter");
      f.content_before = opt("contentBefore");
      f.content_after = opt("contentAfter");
      snap.files.push_back(std::move(f));
    }
    validate_snapshot(snap);
    return snap;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaViolation, std::string("malformed snapshot: ") + e.what());
  }
}

}  // namespace refann
