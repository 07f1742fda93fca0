#include "refann/api/service.hpp"

#include <httplib.h>
#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <cstdlib>
#include <thread>

#include "refann/core/json.hpp"
#include "refann/core/registry.hpp"
#include "refann/diff/line_diff.hpp"
#include "refann/metrics/agreement.hpp"

namespace refann {

using nlohmann::json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound:
    case ErrorCode::UnknownCommit:
    case ErrorCode::UnknownType:
    case ErrorCode::UnknownParameter:
    case ErrorCode::UnresolvableCommit:
    case ErrorCode::RepoNotFound: return 404;
    case ErrorCode::VersionConflict:
    case ErrorCode::DuplicateName:
    case ErrorCode::BuiltinOverwrite:
    case ErrorCode::AnnotationLocked: return 409;
    case ErrorCode::TypeMismatch:
    case ErrorCode::FragmentSpansMethods:
    case ErrorCode::CodeFragmentNotEnumerable:
    case ErrorCode::BinaryFile: return 422;
    case ErrorCode::IoError:
    case ErrorCode::PortInUse: return 500;
    default: return 400;
  }
}

namespace {

struct MethodNotAllowed {};

[[noreturn]] void bad_request(const std::string& msg) { throw Error(ErrorCode::SchemaViolation, msg); }

json error_body(std::string_view code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

json parse_body(const ApiRequest& r) {
  try {
    return json::parse(r.body);
  } catch (const json::exception& e) {
    bad_request(std::string("request body is not valid JSON: ") + e.what());
  }
}

std::optional<std::string> query(const ApiRequest& r, const std::string& key) {
  auto it = r.query.find(key);
  if (it == r.query.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

std::int64_t non_negative(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size() && v >= 0) return v;
  } catch (const std::exception&) {
  }
  bad_request(what + " must be a non-negative integer, got '" + text + "'");
}

json paginate(const ApiRequest& r, json items, const char* key) {
  const auto total = static_cast<std::int64_t>(items.size());
  const auto offset = std::min(total, query(r, "offset") ? non_negative(*query(r, "offset"), "offset") : 0);
  auto limit = query(r, "limit") ? non_negative(*query(r, "limit"), "limit") : total;
  limit = std::min(limit, total - offset);
  json page = json::array();
  for (std::int64_t i = offset; i < offset + limit; ++i) page.push_back(std::move(items[i]));
  return {{key, std::move(page)}, {"total", total}, {"offset", offset}};
}

RevisionSide side_of(const std::string& text) {
  const auto side = parse_side(text);
  if (!side) bad_request("side must be 'before' or 'after', got '" + text + "'");
  return *side;
}

json element_to_json(const CodeElement& e) {
  json j = {{"type", to_string(e.element_type)}, {"side", to_string(e.side)}, {"range", range_to_json(e.range)}};
  if (e.name) j["name"] = *e.name;
  if (e.enclosing_method) j["enclosingMethod"] = range_to_json(*e.enclosing_method);
  if (e.body) j["body"] = range_to_json(*e.body);
  return j;
}

json elements_to_json(const std::vector<CodeElement>& elements) {
  json out = json::array();
  for (const auto& e : elements) out.push_back(element_to_json(e));
  return out;
}

json completeness_json(const Annotation& a, const RefactoringTypeDefinition& type) {
  json missing = json::array();
  for (RevisionSide side : {RevisionSide::Before, RevisionSide::After})
    for (const auto& p : type.parameters(side)) {
      if (!p.required) continue;
      auto it = a.parameters.find({side, p.name});
      if (it == a.parameters.end() || it->second.empty())
        missing.push_back({{"side", to_string(side)}, {"name", p.name}});
    }
  const bool verifiable = missing.empty();
  return {{"missing", std::move(missing)}, {"verifiable", verifiable}};
}

Selection selection_from_json(const json& body) {
  if (!body.is_object()) bad_request("body must be an object");
  const bool has_range = body.contains("range"), has_point = body.contains("point");
  if (has_range == has_point || body.size() != 1) bad_request("body must hold exactly one of 'range' or 'point'");
  if (has_range) return Selection::of_range(range_from_json(body.at("range")));
  const auto& p = body.at("point");
  if (!p.is_object() || !p.contains("path") || !p.contains("line") || !p.contains("column") || p.size() != 3 ||
      !p.at("path").is_string() || !p.at("line").is_number_integer() || !p.at("column").is_number_integer())
    bad_request("point must be {\"path\": str, \"line\": int, \"column\": int}");
  return Selection::of_point(p.at("path").get<std::string>(),
                             Position{p.at("line").get<int>(), p.at("column").get<int>()});
}

}  // namespace

Api::Api(Store& store, CommitResolver resolver, Clock clock)
    : store_(store), resolver_(std::move(resolver)), clock_(std::move(clock)) {}

ApiResponse Api::handle(const ApiRequest& request) {
  ApiResponse res;
  try {
    res.body = dispatch(request, res.status);
  } catch (const Error& e) {
    res.status = http_status(e.code());
    res.body = error_body(to_string(e.code()), e.what());
  } catch (const MethodNotAllowed&) {
    res.status = 405;
    res.body = error_body("MethodNotAllowed", request.method + " is not supported here");
  } catch (const std::exception& e) {
    res.status = 500;
    res.body = error_body("InternalError", e.what());
  }
  return res;
}

json Api::dispatch(const ApiRequest& r, int& status) {
  const auto& s = r.segments;
  const auto& m = r.method;
  auto only = [&](const char* method) {
    if (m != method) throw MethodNotAllowed{};
  };
  if (s.size() < 2 || s[0] != "api") throw Error(ErrorCode::NotFound, "no such endpoint");

  if (s[1] == "commits") {
    if (s.size() == 2) return only("GET"), list_commits(r);
    if (s.size() == 3) return only("GET"), get_commit(s[2]);
    if (s.size() == 4 && s[3] == "diff") return only("GET"), get_diff(s[2], r);
    if (s.size() == 4 && s[3] == "elements") return only("GET"), get_elements(s[2], r);
  } else if (s[1] == "types" && s.size() == 2) {
    if (m == "GET") return list_types();
    only("POST");
    status = 201;
    return post_type(r);
  } else if (s[1] == "annotations") {
    if (s.size() == 2) {
      if (m == "GET") return list_annotations(r);
      only("POST");
      status = 201;
      return post_annotation(r);
    }
    const std::string& id = s[2];
    if (s.size() == 3) return only("GET"), annotation_body(store_.get_annotation(id));
    if (s.size() == 4 && s[3] == "status") {
      if (m != "PUT") only("POST");
      return put_status(id, r);
    }
    if (s.size() == 4 && s[3] == "type") return only("PUT"), put_type(id, r);
    if (s.size() == 6 && s[3] == "parameters") {
      const auto side = side_of(s[4]);
      if (m == "PUT") return put_parameter(id, side, s[5], r);
      only("DELETE");
      return delete_parameter(id, side, s[5], r);
    }
    if (s.size() == 7 && s[3] == "parameters" && s[6] == "autofill")
      return only("POST"), autofill(id, side_of(s[4]), s[5], r);
  } else if (s[1] == "export" && s.size() == 2) {
    return only("GET"), export_dataset(r);
  } else if (s[1] == "metrics" && s.size() == 3 && s[2] == "agreement") {
    return only("GET"), agreement();
  }
  throw Error(ErrorCode::NotFound, "no such endpoint");
}

std::shared_ptr<const CommitData> Api::commit_data(const std::string& id) {
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(id); it != cache_.end()) return it->second;
  }
  auto data = make_commit_data(store_.get_commit(id));
  std::lock_guard lock(cache_mutex_);
  return cache_.try_emplace(id, std::move(data)).first->second;
}

json Api::list_commits(const ApiRequest& r) {
  json items = json::array();
  for (const auto& c : store_.list_commits())
    items.push_back({{"id", c.id()}, {"repository", c.repository}, {"sha", c.sha}});
  return paginate(r, std::move(items), "commits");
}

json Api::get_commit(const std::string& id) {
  const auto data = commit_data(id);
  json j = snapshot_to_json(data->snapshot);
  j["id"] = id;
  json unindexed = json::object();
  for (RevisionSide side : {RevisionSide::Before, RevisionSide::After})
    unindexed[std::string(to_string(side))] = data->index(side).unindexed_files();
  j["unindexed"] = std::move(unindexed);
  return j;
}

json Api::get_diff(const std::string& id, const ApiRequest& r) {
  const auto data = commit_data(id);
  const int context = query(r, "context") ? static_cast<int>(std::min<std::int64_t>(
                                                non_negative(*query(r, "context"), "context"), 1'000'000))
                                          : 3;
  json files = json::array();
  for (const auto& f : data->snapshot.files) {
    json j;
    if (f.binary) {
      j = {{"pathBefore", f.path_before ? json(*f.path_before) : json()},
           {"pathAfter", f.path_after ? json(*f.path_after) : json()},
           {"hunks", json::array()}};
    } else {
      j = diff_to_json(compute_diff(f, context));
    }
    j["kind"] = to_string(f.kind);
    j["binary"] = f.binary;
    files.push_back(std::move(j));
  }
  return {{"id", id}, {"context", context}, {"files", std::move(files)}};
}

json Api::get_elements(const std::string& id, const ApiRequest& r) {
  const auto data = commit_data(id);
  const auto side_text = query(r, "side");
  const auto type_text = query(r, "type");
  if (!side_text || !type_text) bad_request("'side' and 'type' query parameters are required");
  const auto side = side_of(*side_text);
  const auto type = parse_element_type(*type_text);
  if (!type) bad_request("unknown element type '" + *type_text + "'");
  const auto file = query(r, "file");
  const auto& index = data->index(side);
  json j = {{"elements", elements_to_json(index.elements_of_type(*type, file))}};
  json unindexed = json::object();
  for (const auto& [path, reason] : index.unindexed_files())
    if (!file || *file == path) unindexed[path] = reason;
  j["unindexed"] = std::move(unindexed);
  return j;
}

json Api::list_types() {
  json out = json::array();
  for (const auto& t : store_.registry().list()) {
    json j = type_to_json(t);
    j["builtin"] = t.builtin;
    out.push_back(std::move(j));
  }
  return {{"types", std::move(out)}};
}

json Api::post_type(const ApiRequest& r) {
  nlohmann::ordered_json body;
  try {
    body = nlohmann::ordered_json::parse(r.body);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::InvalidSchema, std::string("type body is not valid JSON: ") + e.what());
  }
  const auto def = type_from_json(body);
  store_.put_type(def);
  return json::parse(type_to_json(store_.registry().lookup_type(def.name)).dump());
}

json Api::list_annotations(const ApiRequest& r) {
  const auto commit = query(r, "commit");
  const auto annotator = query(r, "annotator");
  std::optional<AnnotationStatus> status;
  if (auto s = query(r, "status")) {
    status = parse_status(*s);
    if (!status) bad_request("unknown status '" + *s + "'");
  }
  json items = json::array();
  for (const auto& a : store_.list_annotations()) {
    if (commit && a.commit.id() != *commit) continue;
    if (annotator && a.annotator != *annotator) continue;
    if (status && a.status != *status) continue;
    items.push_back(annotation_to_json(a));
  }
  return paginate(r, std::move(items), "annotations");
}

json Api::post_annotation(const ApiRequest& r) {
  if (!r.annotator || r.annotator->empty()) bad_request("X-Annotator header is required");
  auto created = import_hints(store_, json{{"hints", json::array({parse_body(r)})}}, *r.annotator, resolver_);
  auto body = annotation_body(created.at(0).annotation);
  body["warnings"] = created.at(0).warnings;
  return body;
}

Annotation Api::load_for_update(const std::string& id, const ApiRequest& r) {
  auto a = store_.get_annotation(id);
  if (r.if_version) {
    const auto expected = non_negative(*r.if_version, "If-Version");
    if (expected != a.version)
      throw Error(ErrorCode::VersionConflict, "annotation " + id + " is at version " + std::to_string(a.version) +
                                                  ", request was based on version " + std::to_string(expected));
  }
  return a;
}

AnnotationSession Api::open_session(const Annotation& annotation) {
  if (annotation.type_name.empty())
    bad_request("annotation " + annotation.id + " has no type yet; set one with PUT /api/annotations/{id}/type");
  auto type = store_.registry().lookup_type(annotation.type_name);
  return AnnotationSession(annotation, commit_data(annotation.commit.id()), std::move(type), clock_);
}

json Api::annotation_body(const Annotation& a) {
  json body = {{"annotation", annotation_to_json(a)}, {"completeness", nullptr}};
  if (!a.type_name.empty()) {
    const auto reg = store_.registry();
    if (reg.contains(a.type_name)) body["completeness"] = completeness_json(a, reg.lookup_type(a.type_name));
  }
  return body;
}

json Api::put_parameter(const std::string& id, RevisionSide side, const std::string& name, const ApiRequest& r) {
  const auto selection = selection_from_json(parse_body(r));
  auto session = open_session(load_for_update(id, r));
  const auto range = session.resolve(side, name, selection);
  session.set_parameter(side, name, Selection::of_range(range));
  store_.put_annotation(session.annotation());
  auto body = annotation_body(session.annotation());
  body["range"] = range_to_json(range);
  return body;
}

json Api::delete_parameter(const std::string& id, RevisionSide side, const std::string& name,
                           const ApiRequest& r) {
  std::optional<TextRange> range;
  if (auto text = query(r, "range")) {
    try {
      range = range_from_json(json::parse(*text));
    } catch (const json::exception& e) {
      bad_request(std::string("'range' must be a JSON range object: ") + e.what());
    }
  }
  auto session = open_session(load_for_update(id, r));
  session.clear_parameter(side, name, range);
  store_.put_annotation(session.annotation());
  return annotation_body(session.annotation());
}

json Api::autofill(const std::string& id, RevisionSide side, const std::string& name, const ApiRequest& r) {
  auto session = open_session(load_for_update(id, r));
  const auto report = session.autofill(side, name);
  store_.put_annotation(session.annotation());
  auto body = annotation_body(session.annotation());
  body["derived"] = elements_to_json(report.derived);
  return body;
}

json Api::put_status(const std::string& id, const ApiRequest& r) {
  const auto body = parse_body(r);
  if (!body.is_object() || body.size() != 1 || !body.contains("status") || !body.at("status").is_string())
    bad_request("body must be {\"status\": \"Draft\"|\"Verified\"|\"Rejected\"}");
  const auto status = parse_status(body.at("status").get<std::string>());
  if (!status) bad_request("unknown status '" + body.at("status").get<std::string>() + "'");
  auto a = load_for_update(id, r);
  if (a.type_name.empty()) {
    if (*status == AnnotationStatus::Verified)
      throw Error(ErrorCode::IncompleteAnnotation, "annotation " + id + " has no type");
    a.status = *status;
    a.events.push_back({std::max(clock_(), a.events.empty() ? 0 : a.events.back().timestamp),
                        EventKind::StatusChange, std::nullopt, {}, status});
    ++a.version;
    store_.put_annotation(a);
    return annotation_body(a);
  }
  auto session = open_session(a);
  session.set_status(*status);
  store_.put_annotation(session.annotation());
  return annotation_body(session.annotation());
}

json Api::put_type(const std::string& id, const ApiRequest& r) {
  const auto body = parse_body(r);
  if (!body.is_object() || body.size() != 1 || !body.contains("type") || !body.at("type").is_string())
    bad_request("body must be {\"type\": name}");
  auto a = load_for_update(id, r);
  assign_type(a, store_.registry().lookup_type(body.at("type").get<std::string>()));
  store_.put_annotation(a);
  return annotation_body(a);
}

json Api::export_dataset(const ApiRequest& r) {
  std::optional<AnnotationStatus> status;
  if (auto s = query(r, "status")) {
    status = parse_status(*s);
    if (!status) bad_request("unknown status '" + *s + "'");
  }
  return refann::export_dataset(store_, status);
}

json Api::agreement() { return report_to_json(agreement_rate(store_.list_annotations(), store_.registry())); }

// ---------------------------------------------------------------------------

std::string default_cors_origin() {
  const char* v = std::getenv("REFANN_CORS_ORIGIN");
  return v ? v : "*";
}

struct Service::Impl {
  ServiceConfig config;
  Store store;
  Api api;
  httplib::Server server;
  int port = -1;

  explicit Impl(ServiceConfig c)
      : config(std::move(c)), store(config.data_dir), api(store, config.resolver) {}
};

namespace {

std::vector<std::string> split_path(const std::string& target) {
  const std::string path = target.substr(0, target.find('?'));
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= path.size()) {
    size_t next = path.find('/', pos);
    if (next == std::string::npos) next = path.size();
    if (next > pos) out.push_back(httplib::detail::decode_url(path.substr(pos, next - pos), false));
    pos = next + 1;
  }
  return out;
}

}  // namespace

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
  auto& server = impl_->server;
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  const std::string origin = impl_->config.cors_origin;
  auto cors = [origin](httplib::Response& res) {
    if (origin.empty()) return;
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type, X-Annotator, If-Version");
  };
  auto handler = [this, cors](const httplib::Request& req, httplib::Response& res) {
    cors(res);
    ApiRequest r;
    r.method = req.method;
    r.segments = split_path(req.target);
    for (const auto& [k, v] : req.params) r.query[k] = v;
    if (req.has_header("X-Annotator")) r.annotator = req.get_header_value("X-Annotator");
    if (req.has_header("If-Version")) r.if_version = req.get_header_value("If-Version");
    r.body = req.body;
    const auto out = impl_->api.handle(r);
    res.status = out.status;
    res.set_content(out.body.dump(2) + "\n", "application/json");
  };
  server.Get(".*", handler);
  server.Post(".*", handler);
  server.Put(".*", handler);
  server.Delete(".*", handler);
  server.Options(".*", [cors](const httplib::Request&, httplib::Response& res) {
    cors(res);
    res.status = 204;
  });
}

Service::~Service() { stop(); }

int Service::bind() {
  if (impl_->port >= 0) return impl_->port;
  const auto& c = impl_->config;
  if (c.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(c.host);
    if (impl_->port < 0) throw Error(ErrorCode::PortInUse, "cannot bind any port on " + c.host);
  } else {
    if (!impl_->server.bind_to_port(c.host, c.port))
      throw Error(ErrorCode::PortInUse, "cannot listen on " + c.host + ":" + std::to_string(c.port));
    impl_->port = c.port;
  }
  return impl_->port;
}

void Service::run() {
  bind();
  impl_->server.listen_after_bind();
}

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void Service::run_until_signal() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  bind();
  std::thread waiter([this, set] {
    int sig = 0;
    sigwait(&set, &sig);
    impl_->server.stop();
  });
  impl_->server.listen_after_bind();
  // A stop() from elsewhere leaves the waiter blocked; wake it.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
}

}  // namespace refann
