#include "refann/storage/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "refann/core/error.hpp"
#include "refann/core/json.hpp"

namespace fs = std::filesystem;

namespace refann {
namespace {

// Exclusive advisory lock on <root>/.lock, shared with other processes.
class FileLock {
 public:
  explicit FileLock(const fs::path& root) {
    fd_ = ::open((root / ".lock").c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw Error(ErrorCode::IoError, "cannot open lock file in " + root.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw Error(ErrorCode::IoError, "cannot lock " + root.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const fs::path& p, const std::string& text) {
  fs::path tmp = p;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot rename into " + p.string() + ": " + ec.message());
}

nlohmann::json parse_file(const fs::path& p) {
  try {
    return nlohmann::json::parse(read_file(p));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaViolation, p.string() + ": " + e.what());
  }
}

std::vector<fs::path> documents(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string percent_encode(std::string_view s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  if (out == "." || out == "..") out = out == "." ? "%2E" : "%2E%2E";
  return out;
}

std::string percent_decode(std::string_view s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && std::isxdigit(static_cast<unsigned char>(s[i + 1])) &&
        std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
      out += static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

std::string new_annotation_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream ss;
  ss << std::hex;
  ss.width(16);
  ss.fill('0');
  ss << rng();
  return ss.str();
}

Store::Store(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  for (const char* sub : {"commits", "types", "annotations"}) {
    fs::create_directories(root_ / sub, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + (root_ / sub).string() + ": " + ec.message());
  }
}

fs::path Store::default_root() {
  if (const char* env = std::getenv("REFANN_DATA_DIR"); env && *env) return env;
  return "data";
}

fs::path Store::commit_path(const std::string& id) const {
  return root_ / "commits" / (percent_encode(id) + ".json");
}

fs::path Store::annotation_path(const std::string& id) const {
  return root_ / "annotations" / (percent_encode(id) + ".json");
}

void Store::put_commit(const CommitSnapshot& snapshot) {
  validate_snapshot(snapshot);
  std::lock_guard guard(mutex_);
  FileLock lock(root_);
  write_atomic(commit_path(snapshot.commit.id()), canonical_dump(snapshot_to_json(snapshot)));
}

bool Store::has_commit(const std::string& id) const { return fs::exists(commit_path(id)); }

CommitSnapshot Store::get_commit(const std::string& id) const {
  const auto p = commit_path(id);
  if (!fs::exists(p)) throw Error(ErrorCode::UnknownCommit, "no stored commit '" + id + "'");
  return snapshot_from_json(parse_file(p));
}

std::vector<CommitRef> Store::list_commits() const {
  std::vector<CommitRef> out;
  for (const auto& p : documents(root_ / "commits"))
    out.push_back(commit_from_json(parse_file(p).at("commit")));
  std::sort(out.begin(), out.end(), [](const CommitRef& a, const CommitRef& b) {
    return std::tie(a.sha, a.repository) < std::tie(b.sha, b.repository);
  });
  return out;
}

void Store::put_type(const RefactoringTypeDefinition& def) {
  std::lock_guard guard(mutex_);
  FileLock lock(root_);
  TypeRegistry reg = registry();
  const auto& stored = reg.register_type(def);
  write_atomic(root_ / "types" / (percent_encode(def.name) + ".json"),
               type_to_json(stored).dump(2) + "\n");
}

TypeRegistry Store::registry() const {
  TypeRegistry reg;
  for (const auto& p : documents(root_ / "types")) {
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(read_file(p));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidSchema, p.string() + ": " + e.what());
    }
    reg.register_type(type_from_json(j));
  }
  return reg;
}

void Store::put_annotation(const Annotation& annotation) {
  if (annotation.id.empty()) throw Error(ErrorCode::SchemaViolation, "annotation id is empty");
  if (annotation.commit.sha.empty()) throw Error(ErrorCode::SchemaViolation, "annotation commit sha is empty");
  if (!annotation.type_name.empty()) {
    const auto reg = registry();
    const auto violations = schema_violations(annotation, reg.lookup_type(annotation.type_name));
    if (!violations.empty()) {
      std::string msg = "annotation " + annotation.id + " violates its schema:";
      for (const auto& v : violations) msg += " " + v + ";";
      throw Error(ErrorCode::SchemaViolation, msg);
    }
  } else if (!annotation.parameters.empty() || annotation.status == AnnotationStatus::Verified) {
    throw Error(ErrorCode::SchemaViolation, "an untyped annotation can only be an empty Draft or Rejected");
  }

  std::lock_guard guard(mutex_);
  FileLock lock(root_);
  const auto p = annotation_path(annotation.id);
  std::int64_t stored = 0;
  if (fs::exists(p)) stored = annotation_from_json(parse_file(p)).version;
  if (annotation.version != stored + 1)
    throw Error(ErrorCode::VersionConflict, "annotation " + annotation.id + " is at version " +
                                                std::to_string(stored) + "; cannot write version " +
                                                std::to_string(annotation.version));
  write_atomic(p, canonical_dump(annotation_to_json(annotation)));
}

std::optional<Annotation> Store::find_annotation(const std::string& id) const {
  const auto p = annotation_path(id);
  if (!fs::exists(p)) return std::nullopt;
  return annotation_from_json(parse_file(p));
}

Annotation Store::get_annotation(const std::string& id) const {
  auto a = find_annotation(id);
  if (!a) throw Error(ErrorCode::NotFound, "no annotation '" + id + "'");
  return *a;
}

std::vector<Annotation> Store::list_annotations() const {
  std::vector<Annotation> out;
  for (const auto& p : documents(root_ / "annotations")) out.push_back(annotation_from_json(parse_file(p)));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

}  // namespace refann
