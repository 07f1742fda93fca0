#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "refann/core/model.hpp"
#include "refann/core/registry.hpp"
#include "refann/core/vendor_json.hpp"

namespace refann {

/// Order-insensitive, exact equality of two range sets.
bool parameter_match(const std::vector<TextRange>& a, const std::vector<TextRange>& b);

struct PairAgreement {
  std::string annotator_a;
  std::string annotator_b;
  std::map<ParamKey, bool> matches;
  int matched = 0;
  int compared = 0;
  double rate = 0.0;
};

/// One refactoring instance: a (commit, type) pair annotated by two or more
/// people.
struct InstanceAgreement {
  CommitRef commit;
  std::string type_name;
  std::vector<PairAgreement> pairs;  // every unordered annotator pair
  double rate = 0.0;                 // mean over pairs
};

struct AgreementReport {
  double overall = 0.0;  // mean over instances
  std::map<std::string, double> per_type;
  std::vector<InstanceAgreement> instances;
};

/// Groups annotations by instance, keeping each annotator's latest version,
/// and compares every schema parameter between each pair of annotators.
/// Throws InsufficientAnnotators when no instance has two annotators.
AgreementReport agreement_rate(const std::vector<Annotation>& annotations, const TypeRegistry& types);

nlohmann::json report_to_json(const AgreementReport& report);

/// Timestamp of the last SetParameter, ClearParameter or Autofill event minus
/// that of the first; nullopt when there are none.
std::optional<std::int64_t> annotation_time(const Annotation& annotation);

}  // namespace refann
