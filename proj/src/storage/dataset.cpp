#include "refann/storage/dataset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "refann/annotate/session.hpp"
#include "refann/core/error.hpp"
#include "refann/core/json.hpp"

namespace refann {
namespace {

[[noreturn]] void violation(const std::string& msg) { throw Error(ErrorCode::SchemaViolation, msg); }

void only_keys(const nlohmann::json& j, std::initializer_list<std::string_view> keys, const std::string& where) {
  if (!j.is_object()) violation(where + " must be an object");
  for (const auto& [k, _] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) violation("unknown key '" + k + "' in " + where);
}

std::optional<std::string> optional_string(const nlohmann::json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) violation("'" + std::string(key) + "' must be a string in " + where);
  return it->get<std::string>();
}

const nlohmann::json& list_member(const nlohmann::json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_array())
    violation(std::string("expected an object with a '") + key + "' list");
  return doc.at(key);
}

struct HintRecord {
  CommitRef commit;
  std::optional<std::string> type_name;
  std::optional<std::string> description;
  std::optional<ParameterValues> prefill;
};

std::string record_label(size_t i) { return "record " + std::to_string(i + 1); }

}  // namespace

std::vector<ImportedRecord> import_hints(Store& store, const nlohmann::json& hints, const std::string& annotator,
                                         const CommitResolver& resolver) {
  only_keys(hints, {"hints"}, "hint file");
  const auto& list = list_member(hints, "hints");
  const TypeRegistry reg = store.registry();

  std::vector<HintRecord> records;
  for (size_t i = 0; i < list.size(); ++i) {
    const auto& r = list[i];
    const std::string where = "hint " + record_label(i);
    only_keys(r, {"commit", "type", "description", "prefill"}, where);
    if (!r.contains("commit")) violation(where + " has no commit");
    only_keys(r.at("commit"), {"repository", "sha"}, where + " commit");
    HintRecord h;
    h.commit = commit_from_json(r.at("commit"));
    h.type_name = optional_string(r, "type", where);
    h.description = optional_string(r, "description", where);
    if (!h.type_name && !h.description) violation(where + " needs a type or a description");
    if (h.type_name && !reg.contains(*h.type_name)) violation(where + " has unknown type '" + *h.type_name + "'");
    if (auto it = r.find("prefill"); it != r.end() && !it->is_null()) h.prefill = parameters_from_json(*it);
    records.push_back(std::move(h));
  }

  std::map<CommitRef, std::shared_ptr<const CommitData>> commits;
  for (const auto& h : records) {
    if (commits.count(h.commit)) continue;
    std::optional<CommitSnapshot> snap;
    if (store.has_commit(h.commit.id())) {
      snap = store.get_commit(h.commit.id());
    } else if (resolver) {
      try {
        snap = resolver(h.commit);
      } catch (const Error& e) {
        throw Error(ErrorCode::UnresolvableCommit,
                    "cannot resolve commit " + h.commit.id() + ": " + std::string(to_string(e.code())) + ": " + e.what());
      }
    }
    if (!snap) throw Error(ErrorCode::UnresolvableCommit, "cannot resolve commit " + h.commit.id());
    commits[h.commit] = make_commit_data(std::move(*snap));
  }
  for (const auto& [ref, data] : commits)
    if (!store.has_commit(data->snapshot.commit.id())) store.put_commit(data->snapshot);

  std::vector<ImportedRecord> out;
  for (size_t i = 0; i < records.size(); ++i) {
    const auto& h = records[i];
    const auto& data = commits.at(h.commit);
    ImportedRecord rec;
    const std::string id = new_annotation_id();
    if (h.type_name) {
      const auto& type = reg.lookup_type(*h.type_name);
      rec.annotation = make_annotation(id, data->snapshot.commit, type, annotator);
      if (h.prefill) {
        AnnotationSession session(rec.annotation, data, type, [] { return std::int64_t{0}; });
        for (const auto& [key, ranges] : *h.prefill) {
          for (const auto& range : ranges) {
            try {
              session.set_parameter(key.side, key.name, Selection::of_range(range));
            } catch (const Error& e) {
              rec.warnings.push_back(record_label(i) + ": " + std::string(to_string(key.side)) + "/" + key.name +
                                     " " + to_string(range) + " dropped: " + std::string(to_string(e.code())) +
                                     ": " + e.what());
            }
          }
        }
        // Prefilled values are machine input, not annotator activity.
        rec.annotation.parameters = session.annotation().parameters;
      }
    } else {
      rec.annotation.id = id;
      rec.annotation.commit = data->snapshot.commit;
      rec.annotation.annotator = annotator;
      if (h.prefill && !h.prefill->empty())
        rec.warnings.push_back(record_label(i) + ": prefill ignored because the hint has no type");
    }
    rec.annotation.description = h.description;
    rec.annotation.status = AnnotationStatus::Draft;
    rec.annotation.version = 1;
    store.put_annotation(rec.annotation);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ImportedRecord> import_dataset(Store& store, const nlohmann::json& dataset) {
  only_keys(dataset, {"annotations"}, "dataset file");
  const auto& list = list_member(dataset, "annotations");
  const TypeRegistry reg = store.registry();

  std::vector<ImportedRecord> out;
  for (size_t i = 0; i < list.size(); ++i) {
    const auto& r = list[i];
    const std::string where = "dataset " + record_label(i);
    only_keys(r, {"commit", "type", "status", "annotator", "description", "parameters"}, where);
    for (const char* key : {"commit", "type", "status", "annotator", "parameters"})
      if (!r.contains(key)) violation(where + " has no '" + key + "'");
    only_keys(r.at("commit"), {"repository", "sha"}, where + " commit");

    ImportedRecord rec;
    auto& a = rec.annotation;
    const auto type_name = optional_string(r, "type", where).value_or("");
    if (!type_name.empty()) {
      if (!reg.contains(type_name)) violation(where + " has unknown type '" + type_name + "'");
      a = make_annotation("", commit_from_json(r.at("commit")), reg.lookup_type(type_name), "");
    } else {
      a.commit = commit_from_json(r.at("commit"));
    }
    a.id = new_annotation_id();
    a.annotator = optional_string(r, "annotator", where).value_or("");
    a.description = optional_string(r, "description", where);
    const auto status = parse_status(optional_string(r, "status", where).value_or(""));
    if (!status) violation(where + " has an unknown status");
    a.status = *status;
    for (auto& [key, ranges] : parameters_from_json(r.at("parameters"))) a.parameters[key] = std::move(ranges);
    a.version = 1;

    if (!type_name.empty()) {
      const auto& type = reg.lookup_type(type_name);
      if (a.status == AnnotationStatus::Verified) {
        auto draft = a;
        draft.status = AnnotationStatus::Draft;
        if (schema_violations(draft, type).empty() && !schema_violations(a, type).empty()) {
          a.status = AnnotationStatus::Draft;
          rec.warnings.push_back(record_label(i) + ": Verified record lacks a required parameter; imported as Draft");
        }
      }
      const auto violations = schema_violations(a, type);
      if (!violations.empty()) violation(where + ": " + violations.front());
    }
    out.push_back(std::move(rec));
  }
  for (const auto& rec : out) store.put_annotation(rec.annotation);
  return out;
}

std::vector<ImportedRecord> import_file(Store& store, const nlohmann::json& doc, const std::string& annotator,
                                        const CommitResolver& resolver) {
  if (doc.is_object() && doc.contains("hints")) return import_hints(store, doc, annotator, resolver);
  if (doc.is_object() && doc.contains("annotations")) return import_dataset(store, doc);
  violation("expected a hint file ({\"hints\": [...]}) or a dataset file ({\"annotations\": [...]})");
}

nlohmann::json dataset_record(const Annotation& a) {
  ParameterValues sorted = a.parameters;
  for (auto& [_, ranges] : sorted) std::sort(ranges.begin(), ranges.end());
  nlohmann::json j;
  j["commit"] = commit_to_json(a.commit);
  j["type"] = a.type_name;
  j["status"] = to_string(a.status);
  j["annotator"] = a.annotator;
  if (a.description) j["description"] = *a.description;
  j["parameters"] = parameters_to_json(sorted);
  return j;
}

nlohmann::json export_dataset(const Store& store, std::optional<AnnotationStatus> status) {
  struct Row {
    std::tuple<std::string, std::string, std::string, std::string> key;
    nlohmann::json record;
  };
  std::vector<Row> rows;
  for (const auto& a : store.list_annotations()) {
    if (status && a.status != *status) continue;
    auto record = dataset_record(a);
    rows.push_back({{a.commit.sha, a.type_name, a.annotator, canonical_dump(record)}, std::move(record)});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return x.key < y.key; });
  nlohmann::json out = {{"annotations", nlohmann::json::array()}};
  for (auto& row : rows) out["annotations"].push_back(std::move(row.record));
  return out;
}

}  // namespace refann
