#include "refann/metrics/agreement.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "refann/core/error.hpp"
#include "refann/core/json.hpp"

namespace refann {
namespace {

std::vector<ParamKey> compared_keys(const Annotation& a, const Annotation& b, const TypeRegistry& types) {
  std::set<ParamKey> keys;
  if (types.contains(a.type_name)) {
    const auto& def = types.lookup_type(a.type_name);
    for (RevisionSide side : {RevisionSide::Before, RevisionSide::After})
      for (const auto& p : def.parameters(side)) keys.insert({side, p.name});
  } else {
    for (const auto& [k, _] : a.parameters) keys.insert(k);
    for (const auto& [k, _] : b.parameters) keys.insert(k);
  }
  return {keys.begin(), keys.end()};
}

const std::vector<TextRange>& values_of(const Annotation& a, const ParamKey& key) {
  static const std::vector<TextRange> kEmpty;
  auto it = a.parameters.find(key);
  return it == a.parameters.end() ? kEmpty : it->second;
}

}  // namespace

bool parameter_match(const std::vector<TextRange>& a, const std::vector<TextRange>& b) {
  return std::set<TextRange>(a.begin(), a.end()) == std::set<TextRange>(b.begin(), b.end());
}

AgreementReport agreement_rate(const std::vector<Annotation>& annotations, const TypeRegistry& types) {
  using InstanceKey = std::tuple<CommitRef, std::string>;
  std::map<InstanceKey, std::map<std::string, const Annotation*>> grouped;
  for (const auto& a : annotations) {
    if (a.type_name.empty()) continue;
    auto& slot = grouped[{a.commit, a.type_name}][a.annotator];
    if (!slot || a.version > slot->version) slot = &a;
  }

  AgreementReport report;
  std::map<std::string, std::vector<double>> by_type;
  for (const auto& [key, by_annotator] : grouped) {
    if (by_annotator.size() < 2) continue;
    InstanceAgreement inst;
    inst.commit = std::get<0>(key);
    inst.type_name = std::get<1>(key);
    for (auto i = by_annotator.begin(); i != by_annotator.end(); ++i) {
      for (auto j = std::next(i); j != by_annotator.end(); ++j) {
        PairAgreement pair;
        pair.annotator_a = i->first;
        pair.annotator_b = j->first;
        for (const auto& k : compared_keys(*i->second, *j->second, types)) {
          const bool m = parameter_match(values_of(*i->second, k), values_of(*j->second, k));
          pair.matches[k] = m;
          pair.matched += m;
          ++pair.compared;
        }
        pair.rate = pair.compared ? static_cast<double>(pair.matched) / pair.compared : 1.0;
        inst.pairs.push_back(std::move(pair));
      }
    }
    double sum = 0;
    for (const auto& p : inst.pairs) sum += p.rate;
    inst.rate = sum / inst.pairs.size();
    by_type[inst.type_name].push_back(inst.rate);
    report.instances.push_back(std::move(inst));
  }
  if (report.instances.empty())
    throw Error(ErrorCode::InsufficientAnnotators, "no refactoring instance has two or more annotators");

  double total = 0;
  for (const auto& inst : report.instances) total += inst.rate;
  report.overall = total / report.instances.size();
  for (const auto& [type, rates] : by_type) {
    double s = 0;
    for (double r : rates) s += r;
    report.per_type[type] = s / rates.size();
  }
  return report;
}

nlohmann::json report_to_json(const AgreementReport& report) {
  nlohmann::json j;
  j["overall"] = report.overall;
  j["perType"] = nlohmann::json::object();
  for (const auto& [t, r] : report.per_type) j["perType"][t] = r;
  j["instances"] = nlohmann::json::array();
  for (const auto& inst : report.instances) {
    nlohmann::json ij;
    ij["commit"] = commit_to_json(inst.commit);
    ij["type"] = inst.type_name;
    ij["rate"] = inst.rate;
    ij["pairs"] = nlohmann::json::array();
    for (const auto& p : inst.pairs) {
      nlohmann::json pj;
      pj["annotators"] = {p.annotator_a, p.annotator_b};
      pj["matched"] = p.matched;
      pj["compared"] = p.compared;
      pj["rate"] = p.rate;
      pj["parameters"] = nlohmann::json::array();
      for (const auto& [k, m] : p.matches)
        pj["parameters"].push_back({{"side", to_string(k.side)}, {"name", k.name}, {"matched", m}});
      ij["pairs"].push_back(std::move(pj));
    }
    j["instances"].push_back(std::move(ij));
  }
  return j;
}

std::optional<std::int64_t> annotation_time(const Annotation& annotation) {
  std::optional<std::int64_t> first, last;
  for (const auto& e : annotation.events) {
    if (e.kind == EventKind::StatusChange) continue;
    if (!first) first = e.timestamp;
    last = e.timestamp;
  }
  if (!first) return std::nullopt;
  return *last - *first;
}

}  // namespace refann
