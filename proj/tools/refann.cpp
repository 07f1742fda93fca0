#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>

#include "refann/api/service.hpp"
#include "refann/core/json.hpp"
#include "refann/core/registry.hpp"
#include "refann/metrics/agreement.hpp"

using namespace refann;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <class Json = json>
Json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::SchemaViolation, path.string() + " is not valid JSON: " + e.what());
  }
}

void write_output(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f || !(f << text)) throw Error(ErrorCode::IoError, "cannot write " + out);
}

CommitResolver make_resolver(const std::string& repo, const std::string& fixtures) {
  if (repo.empty() && fixtures.empty()) return nullptr;
  return [repo, fixtures](const CommitRef& ref) -> std::optional<CommitSnapshot> {
    if (!fixtures.empty()) {
      const fs::path dir = fs::path(fixtures) / ref.sha;
      if (fs::is_directory(dir)) {
        auto snap = load_fixture(dir);
        if (snap.commit == ref) return snap;
      }
    }
    if (!repo.empty()) return load_commit(repo, ref.sha, ref.repository);
    return std::nullopt;
  };
}

std::string default_annotator() {
  const char* user = std::getenv("USER");
  return user && *user ? user : "importer";
}

// Violations of one annotation: schema conformance, then every bound range
// must still resolve to itself against the commit's index.
std::vector<std::string> check_annotation(const Store& store, const TypeRegistry& reg, const Annotation& a,
                                          std::map<std::string, std::shared_ptr<const CommitData>>& cache) {
  if (a.type_name.empty()) {
    if (a.status == AnnotationStatus::Verified) return {"Verified annotation has no type"};
    return {};
  }
  if (!reg.contains(a.type_name)) return {"unknown type '" + a.type_name + "'"};
  const auto& type = reg.lookup_type(a.type_name);
  auto out = schema_violations(a, type);
  const auto id = a.commit.id();
  if (!cache.count(id)) cache[id] = store.has_commit(id) ? make_commit_data(store.get_commit(id)) : nullptr;
  if (!cache[id]) {
    out.push_back("commit " + id + " is not in the store");
    return out;
  }
  AnnotationSession session(make_annotation(a.id, a.commit, type, a.annotator), cache[id], type);
  for (const auto& [key, ranges] : a.parameters) {
    if (!type.find(key.side, key.name)) continue;
    for (const auto& r : ranges) {
      try {
        if (session.resolve(key.side, key.name, Selection::of_range(r)) != r)
          out.push_back(std::string(to_string(key.side)) + "/" + key.name + " " + to_string(r) +
                        " is not an exact element");
      } catch (const Error& e) {
        out.push_back(std::string(to_string(key.side)) + "/" + key.name + " " + to_string(r) + ": " +
                      std::string(to_string(e.code())) + ": " + e.what());
      }
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"refann: refactoring annotation toolkit"};
  app.require_subcommand(1);
  std::string data_dir = Store::default_root().string();
  app.add_option("--data-dir", data_dir, "Store directory (default $REFANN_DATA_DIR or ./data)");

  std::string import_file_path, repo, fixtures, annotator = default_annotator();
  auto* import_cmd = app.add_subcommand("import", "Import a hint file or a dataset file");
  import_cmd->add_option("file", import_file_path, "Hint or dataset JSON")->required();
  import_cmd->add_option("--repo", repo, "Git repository used to resolve hint commits");
  import_cmd->add_option("--fixtures", fixtures, "Directory of <sha>/before|after fixtures");
  import_cmd->add_option("--annotator", annotator, "Annotator for annotations created from hints");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--port", port, "Port (default 8080)");
  serve_cmd->add_option("--host", host, "Address to bind (default 127.0.0.1)");
  serve_cmd->add_option("--repo", repo, "Git repository used to resolve new commits");
  serve_cmd->add_option("--fixtures", fixtures, "Directory of <sha>/before|after fixtures");

  auto* validate_cmd = app.add_subcommand("validate", "Re-check every stored annotation");

  std::string status_text, out;
  auto* export_cmd = app.add_subcommand("export", "Write the dataset");
  export_cmd->add_option("--status", status_text, "Only Draft, Verified or Rejected annotations");
  export_cmd->add_option("-o,--output", out, "Output file (default stdout)");

  auto* agreement_cmd = app.add_subcommand("agreement", "Inter-annotator agreement report");
  agreement_cmd->add_option("-o,--output", out, "Output file (default stdout)");

  std::string type_file;
  auto* types_cmd = app.add_subcommand("types", "Refactoring types");
  types_cmd->require_subcommand(1);
  auto* types_list = types_cmd->add_subcommand("list", "List known types");
  auto* types_add = types_cmd->add_subcommand("add", "Add a user-defined type");
  types_add->add_option("file", type_file, "Type definition JSON")->required();

  std::string fixture_dir;
  auto* fixture_cmd = app.add_subcommand("fixture", "Commit fixtures");
  fixture_cmd->require_subcommand(1);
  auto* fixture_load = fixture_cmd->add_subcommand("load", "Store a before/after fixture directory as a commit");
  fixture_load->add_option("dir", fixture_dir, "Fixture directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::optional<AnnotationStatus> status;
  if (!status_text.empty()) {
    status = parse_status(status_text);
    if (!status) {
      std::cerr << "error: --status must be draft, verified or rejected\n";
      return 2;
    }
  }

  try {
    if (*serve_cmd) {
      ServiceConfig config;
      config.host = host;
      config.port = port;
      config.data_dir = data_dir;
      config.cors_origin = default_cors_origin();
      config.resolver = make_resolver(repo, fixtures);
      Service service(std::move(config));
      const int bound = service.bind();
      std::cout << "listening on http://" << host << ":" << bound << std::endl;
      service.run_until_signal();
      std::cout << "stopped" << std::endl;
      return 0;
    }

    Store store(data_dir);
    if (*import_cmd) {
      const auto records = import_file(store, read_json(import_file_path), annotator, make_resolver(repo, fixtures));
      for (const auto& r : records)
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << records.size() << " annotations created\n";
    } else if (*validate_cmd) {
      const auto reg = store.registry();
      std::map<std::string, std::shared_ptr<const CommitData>> cache;
      size_t checked = 0, violations = 0;
      for (const auto& a : store.list_annotations()) {
        ++checked;
        for (const auto& v : check_annotation(store, reg, a, cache)) {
          std::cout << a.id << ": " << v << "\n";
          ++violations;
        }
      }
      std::cout << checked << " annotations checked, " << violations << " violations\n";
      return violations == 0 ? 0 : 1;
    } else if (*export_cmd) {
      write_output(canonical_dump(export_dataset(store, status)), out);
    } else if (*agreement_cmd) {
      write_output(canonical_dump(report_to_json(agreement_rate(store.list_annotations(), store.registry()))), out);
    } else if (*types_list) {
      for (const auto& t : store.registry().list())
        std::cout << t.name << (t.builtin ? " (builtin)" : "") << "\n";
    } else if (*types_add) {
      const auto def = type_from_json(read_json<nlohmann::ordered_json>(type_file));
      store.put_type(def);
      std::cout << "type " << def.name << " added\n";
    } else if (*fixture_load) {
      const auto snap = load_fixture(fixture_dir);
      store.put_commit(snap);
      std::cout << "commit " << snap.commit.id() << " stored (" << snap.files.size() << " files)\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: IoError: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
