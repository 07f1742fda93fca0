#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "refann/core/model.hpp"
#include "refann/core/vendor_json.hpp"
#include "refann/storage/store.hpp"

namespace refann {

/// Produces a snapshot for a commit that is not in the store yet.
using CommitResolver = std::function<std::optional<CommitSnapshot>(const CommitRef&)>;

struct ImportedRecord {
  Annotation annotation;
  std::vector<std::string> warnings;
};

/// Hint file: {"hints": [{"commit": {...}, "type"?, "description"?,
/// "prefill"?}]}. Creates one Draft per record. Prefilled ranges that fail
/// validation are dropped and reported as warnings. Throws SchemaViolation
/// or UnresolvableCommit before anything is written.
std::vector<ImportedRecord> import_hints(Store& store, const nlohmann::json& hints, const std::string& annotator,
                                         const CommitResolver& resolver = nullptr);

/// Dataset file as written by export_dataset. Annotator and status are kept;
/// a Verified record missing a required parameter comes in as Draft.
std::vector<ImportedRecord> import_dataset(Store& store, const nlohmann::json& dataset);

/// Either kind of file, told apart by its top-level key.
std::vector<ImportedRecord> import_file(Store& store, const nlohmann::json& doc, const std::string& annotator,
                                        const CommitResolver& resolver = nullptr);

/// {"annotations": [...]} ordered by (sha, type, annotator).
nlohmann::json export_dataset(const Store& store, std::optional<AnnotationStatus> status = std::nullopt);

/// Dataset record for one annotation (no id, no events).
nlohmann::json dataset_record(const Annotation& annotation);

}  // namespace refann
