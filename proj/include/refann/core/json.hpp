#pragma once

#include <string>

#include "refann/core/model.hpp"
#include "refann/core/vendor_json.hpp"

namespace refann {

// Range: {"path", "startLine", "startColumn", "endLine", "endColumn"}.
nlohmann::json range_to_json(const TextRange& range);
TextRange range_from_json(const nlohmann::json& j);

nlohmann::json commit_to_json(const CommitRef& commit);
CommitRef commit_from_json(const nlohmann::json& j);

// {"before": {name: [range...]}, "after": {...}}
nlohmann::json parameters_to_json(const ParameterValues& values);
ParameterValues parameters_from_json(const nlohmann::json& j);

/// Full stored document, including the event log and version.
nlohmann::json annotation_to_json(const Annotation& annotation);
Annotation annotation_from_json(const nlohmann::json& j);

/// Sorted keys, 2-space indent, trailing newline, UTF-8.
std::string canonical_dump(const nlohmann::json& j);

}  // namespace refann
