#include "refann/core/json.hpp"

#include "refann/core/error.hpp"

namespace refann {
namespace {

[[noreturn]] void violation(const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, what);
}

const nlohmann::json& member(const nlohmann::json& j, const char* key) {
  if (!j.is_object()) violation(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) violation(std::string("missing '") + key + "'");
  return *it;
}

std::string string_member(const nlohmann::json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_string()) violation(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

int int_member(const nlohmann::json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_number_integer()) violation(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

nlohmann::json range_to_json(const TextRange& range) {
  return {{"path", range.path},
          {"startLine", range.start_line},
          {"startColumn", range.start_col},
          {"endLine", range.end_line},
          {"endColumn", range.end_col}};
}

TextRange range_from_json(const nlohmann::json& j) {
  TextRange r;
  r.path = string_member(j, "path");
  r.start_line = int_member(j, "startLine");
  r.start_col = int_member(j, "startColumn");
  r.end_line = int_member(j, "endLine");
  r.end_col = int_member(j, "endColumn");
  return r;
}

nlohmann::json commit_to_json(const CommitRef& commit) {
  return {{"repository", commit.repository}, {"sha", commit.sha}};
}

CommitRef commit_from_json(const nlohmann::json& j) {
  CommitRef c{string_member(j, "repository"), string_member(j, "sha")};
  if (c.sha.empty()) violation("commit sha is empty");
  return c;
}

nlohmann::json parameters_to_json(const ParameterValues& values) {
  nlohmann::json out = {{"before", nlohmann::json::object()}, {"after", nlohmann::json::object()}};
  for (const auto& [key, ranges] : values) {
    auto list = nlohmann::json::array();
    for (const auto& r : ranges) list.push_back(range_to_json(r));
    out[std::string(to_string(key.side))][key.name] = std::move(list);
  }
  return out;
}

ParameterValues parameters_from_json(const nlohmann::json& j) {
  if (!j.is_object()) violation("parameters must be an object");
  ParameterValues values;
  for (const auto& [side_name, params] : j.items()) {
    auto side = parse_side(side_name);
    if (!side) violation("unknown parameter side '" + side_name + "'");
    if (!params.is_object()) violation("parameters." + side_name + " must be an object");
    for (const auto& [name, list] : params.items()) {
      if (!list.is_array()) violation("parameter '" + name + "' must be a list of ranges");
      auto& out = values[{*side, name}];
      for (const auto& r : list) out.push_back(range_from_json(r));
    }
  }
  return values;
}

nlohmann::json annotation_to_json(const Annotation& a) {
  nlohmann::json j;
  j["id"] = a.id;
  j["commit"] = commit_to_json(a.commit);
  j["type"] = a.type_name;
  j["status"] = to_string(a.status);
  j["annotator"] = a.annotator;
  if (a.description) j["description"] = *a.description;
  j["parameters"] = parameters_to_json(a.parameters);
  auto events = nlohmann::json::array();
  for (const auto& e : a.events) {
    nlohmann::json ej;
    ej["timestamp"] = e.timestamp;
    ej["kind"] = to_string(e.kind);
    if (e.parameter)
      ej["parameter"] = {{"side", to_string(e.parameter->side)}, {"name", e.parameter->name}};
    auto ranges = nlohmann::json::array();
    for (const auto& r : e.ranges) ranges.push_back(range_to_json(r));
    ej["ranges"] = std::move(ranges);
    if (e.status) ej["status"] = to_string(*e.status);
    events.push_back(std::move(ej));
  }
  j["events"] = std::move(events);
  j["version"] = a.version;
  return j;
}

Annotation annotation_from_json(const nlohmann::json& j) {
  Annotation a;
  a.id = string_member(j, "id");
  a.commit = commit_from_json(member(j, "commit"));
  a.type_name = string_member(j, "type");
  auto status = parse_status(string_member(j, "status"));
  if (!status) violation("unknown status");
  a.status = *status;
  a.annotator = string_member(j, "annotator");
  if (j.contains("description") && !j["description"].is_null())
    a.description = string_member(j, "description");
  a.parameters = parameters_from_json(member(j, "parameters"));
  if (auto it = j.find("events"); it != j.end()) {
    if (!it->is_array()) violation("'events' must be a list");
    for (const auto& ej : *it) {
      AnnotationEvent e;
      const auto& ts = member(ej, "timestamp");
      if (!ts.is_number_integer()) violation("event timestamp must be an integer");
      e.timestamp = ts.get<std::int64_t>();
      auto kind = parse_event_kind(string_member(ej, "kind"));
      if (!kind) violation("unknown event kind");
      e.kind = *kind;
      if (auto p = ej.find("parameter"); p != ej.end() && !p->is_null()) {
        auto side = parse_side(string_member(*p, "side"));
        if (!side) violation("unknown event parameter side");
        e.parameter = ParamKey{*side, string_member(*p, "name")};
      }
      if (auto r = ej.find("ranges"); r != ej.end())
        for (const auto& rj : *r) e.ranges.push_back(range_from_json(rj));
      if (auto s = ej.find("status"); s != ej.end() && !s->is_null()) {
        e.status = parse_status(s->get<std::string>());
        if (!e.status) violation("unknown event status");
      }
      a.events.push_back(std::move(e));
    }
  }
  const auto& v = member(j, "version");
  if (!v.is_number_integer()) violation("'version' must be an integer");
  a.version = v.get<std::int64_t>();
  return a;
}

std::string canonical_dump(const nlohmann::json& j) {
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

}  // namespace refann
