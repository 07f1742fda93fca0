#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "refann/annotate/session.hpp"
#include "refann/core/error.hpp"
#include "refann/core/vendor_json.hpp"
#include "refann/storage/dataset.hpp"
#include "refann/storage/store.hpp"

namespace refann {

/// HTTP status for an error code: 400 validation, 404 not found,
/// 409 conflict, 422 type/fragment mismatch, 500 I/O.
int http_status(ErrorCode code);

struct ApiRequest {
  std::string method;
  /// Percent-decoded path segments, e.g. {"api", "commits", "demo:abc"}.
  std::vector<std::string> segments;
  std::map<std::string, std::string> query;
  std::optional<std::string> annotator;   // X-Annotator
  std::optional<std::string> if_version;  // If-Version
  std::string body;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// Request handling independent of the HTTP transport. Every mutation goes
/// through AnnotationSession and is committed with Store's version check.
class Api {
 public:
  Api(Store& store, CommitResolver resolver = nullptr, Clock clock = system_clock_ms);

  /// Never throws; errors become {"error": {"code", "message"}} bodies.
  ApiResponse handle(const ApiRequest& request);

 private:
  nlohmann::json dispatch(const ApiRequest& request, int& status);
  std::shared_ptr<const CommitData> commit_data(const std::string& id);

  nlohmann::json list_commits(const ApiRequest& r);
  nlohmann::json get_commit(const std::string& id);
  nlohmann::json get_diff(const std::string& id, const ApiRequest& r);
  nlohmann::json get_elements(const std::string& id, const ApiRequest& r);
  nlohmann::json list_types();
  nlohmann::json post_type(const ApiRequest& r);
  nlohmann::json list_annotations(const ApiRequest& r);
  nlohmann::json post_annotation(const ApiRequest& r);
  nlohmann::json put_parameter(const std::string& id, RevisionSide side, const std::string& name,
                               const ApiRequest& r);
  nlohmann::json delete_parameter(const std::string& id, RevisionSide side, const std::string& name,
                                  const ApiRequest& r);
  nlohmann::json autofill(const std::string& id, RevisionSide side, const std::string& name, const ApiRequest& r);
  nlohmann::json put_status(const std::string& id, const ApiRequest& r);
  nlohmann::json put_type(const std::string& id, const ApiRequest& r);
  nlohmann::json export_dataset(const ApiRequest& r);
  nlohmann::json agreement();

  Annotation load_for_update(const std::string& id, const ApiRequest& r);
  AnnotationSession open_session(const Annotation& annotation);
  nlohmann::json annotation_body(const Annotation& annotation);

  Store& store_;
  CommitResolver resolver_;
  Clock clock_;
  std::mutex cache_mutex_;
  std::map<std::string, std::shared_ptr<const CommitData>> cache_;
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path data_dir;
  /// Access-Control-Allow-Origin value; no CORS headers when empty.
  std::string cors_origin = "*";
  CommitResolver resolver;
};

/// $REFANN_CORS_ORIGIN, or "*".
std::string default_cors_origin();

class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the listening socket and returns the port. Throws PortInUse.
  int bind();
  /// Serves until stop(). Calls bind() first if needed.
  void run();
  void stop();
  /// Serves until SIGINT or SIGTERM, then shuts down cleanly.
  void run_until_signal();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace refann
