#include "refann/annotate/session.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "refann/core/error.hpp"

namespace refann {
namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool overlaps(const TextRange& a, const TextRange& b) {
  return a.path == b.path && a.start() < b.end() && b.start() < a.end();
}

RevisionSide other(RevisionSide side) {
  return side == RevisionSide::Before ? RevisionSide::After : RevisionSide::Before;
}

std::string label(RevisionSide side, std::string_view param) {
  return std::string(to_string(side)) + "/" + std::string(param);
}

}  // namespace

std::shared_ptr<const CommitData> make_commit_data(CommitSnapshot snapshot) {
  auto data = std::make_shared<CommitData>();
  data->before = build_index(snapshot, RevisionSide::Before);
  data->after = build_index(snapshot, RevisionSide::After);
  data->snapshot = std::move(snapshot);
  return data;
}

std::int64_t system_clock_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

AnnotationSession::AnnotationSession(Annotation annotation, std::shared_ptr<const CommitData> commit,
                                     RefactoringTypeDefinition type, Clock clock)
    : annotation_(std::move(annotation)),
      commit_(std::move(commit)),
      type_(std::move(type)),
      clock_(std::move(clock)) {
  if (annotation_.type_name != type_.name)
    throw Error(ErrorCode::UnknownType, "annotation has type '" + annotation_.type_name +
                                            "' but the session was opened with '" + type_.name + "'");
}

const ParameterSchema& AnnotationSession::schema(RevisionSide side, std::string_view param) const {
  if (const auto* p = type_.find(side, param)) return *p;
  if (type_.find(other(side), param))
    throw Error(ErrorCode::WrongSide, "parameter '" + std::string(param) + "' of " + type_.name +
                                          " is a " + std::string(to_string(other(side))) + " parameter");
  throw Error(ErrorCode::UnknownParameter,
              type_.name + " has no parameter " + label(side, param));
}

void AnnotationSession::check_unlocked() const {
  if (annotation_.status == AnnotationStatus::Verified)
    throw Error(ErrorCode::AnnotationLocked, "annotation " + annotation_.id +
                                                 " is Verified; set it back to Draft before editing");
}

void AnnotationSession::log(AnnotationEvent event) {
  std::int64_t now = clock_();
  if (!annotation_.events.empty()) now = std::max(now, annotation_.events.back().timestamp);
  event.timestamp = now;
  annotation_.events.push_back(std::move(event));
  ++annotation_.version;
}

std::vector<CodeElement> AnnotationSession::candidates(RevisionSide side, std::string_view param) const {
  const auto& p = schema(side, param);
  const auto& index = commit_->index(side);
  if (p.element_type == ElementType::CodeFragment)
    return index.elements_of_type(ElementType::MethodDeclaration);
  return index.elements_of_type(p.element_type);
}

TextRange AnnotationSession::resolve_fragment(const ElementIndex& index, const TextRange& range) const {
  const SourceText* source = index.source(range.path);
  const auto offsets = source->offsets_of(range);
  if (!offsets) throw Error(ErrorCode::InvalidRange, "range lies outside " + range.path);
  auto [begin, end] = *offsets;
  const std::string& text = source->text();
  while (begin < end && is_blank(text[begin])) ++begin;
  while (end > begin && is_blank(text[end - 1])) --end;
  if (begin == end)
    throw Error(ErrorCode::FragmentSpansMethods, "code fragment is empty after trimming whitespace");
  const TextRange snapped = source->range_of(range.path, begin, end);

  bool inside_body = false;
  for (const auto& m : index.elements_of_type(ElementType::MethodDeclaration, range.path)) {
    if (m.body && m.body->contains(snapped)) inside_body = true;
    if (overlaps(m.range, snapped) && !m.range.contains(snapped) && !snapped.contains(m.range))
      throw Error(ErrorCode::FragmentSpansMethods,
                  "code fragment " + to_string(snapped) + " crosses the boundary of method " +
                      m.name.value_or("?"));
  }
  if (!inside_body)
    throw Error(ErrorCode::FragmentSpansMethods,
                "code fragment " + to_string(snapped) + " is not inside a method body");
  return snapped;
}

TextRange AnnotationSession::resolve(RevisionSide side, std::string_view param,
                                     const Selection& selection) const {
  const auto& p = schema(side, param);
  const auto& index = commit_->index(side);
  const std::string& path = selection.range ? selection.range->path : selection.path.value_or("");
  if (selection.range) validate_range(*selection.range);
  else if (!selection.point || path.empty())
    throw Error(ErrorCode::InvalidRange, "selection needs a range or a path and point");

  if (!index.has_file(path)) {
    if (commit_->index(other(side)).has_file(path))
      throw Error(ErrorCode::WrongSide, path + " exists only on the " +
                                            std::string(to_string(other(side))) + " side");
    throw Error(ErrorCode::InvalidRange, path + " is not a changed file of this commit");
  }
  if (!index.is_indexed(path))
    throw Error(ErrorCode::TypeMismatch,
                path + " has no indexed elements (" + index.unindexed_files().at(path) + ")");

  if (p.element_type == ElementType::CodeFragment) {
    if (!selection.range)
      throw Error(ErrorCode::TypeMismatch, "a CodeFragment parameter needs a range, not a point");
    return resolve_fragment(index, *selection.range);
  }

  if (selection.range) {
    if (!index.source(path)->offsets_of(*selection.range))
      throw Error(ErrorCode::InvalidRange, "range " + to_string(*selection.range) + " lies outside the file");
    if (!index.find_exact(p.element_type, *selection.range))
      throw Error(ErrorCode::TypeMismatch, to_string(*selection.range) + " is not a " +
                                               std::string(to_string(p.element_type)));
    return *selection.range;
  }
  const Position at = *selection.point;
  if (at.line < 1 || at.col < 1 || !index.source(path)->offset_of(at))
    throw Error(ErrorCode::InvalidRange, "point lies outside " + path);
  auto element = index.element_at(p.element_type, path, at);
  if (!element)
    throw Error(ErrorCode::TypeMismatch, "no " + std::string(to_string(p.element_type)) + " at " + path +
                                             ":" + std::to_string(at.line) + ":" + std::to_string(at.col));
  return element->range;
}

const Annotation& AnnotationSession::set_parameter(RevisionSide side, std::string_view param,
                                                   const Selection& selection) {
  check_unlocked();
  const auto& p = schema(side, param);
  const TextRange range = resolve(side, param, selection);
  auto& values = annotation_.parameters[{side, p.name}];
  if (p.multiple) {
    if (std::find(values.begin(), values.end(), range) != values.end())
      throw Error(ErrorCode::DuplicateElement,
                  to_string(range) + " is already bound to " + label(side, param));
    values.push_back(range);
    std::sort(values.begin(), values.end());
  } else {
    values = {range};
  }
  log({0, EventKind::SetParameter, ParamKey{side, p.name}, {range}, std::nullopt});
  return annotation_;
}

const Annotation& AnnotationSession::clear_parameter(RevisionSide side, std::string_view param,
                                                     const std::optional<TextRange>& range) {
  check_unlocked();
  const auto& p = schema(side, param);
  auto& values = annotation_.parameters[{side, p.name}];
  std::vector<TextRange> removed;
  if (range) {
    auto it = std::find(values.begin(), values.end(), *range);
    if (it != values.end()) {
      removed.push_back(*it);
      values.erase(it);
    }
  } else {
    removed = std::move(values);
    values.clear();
  }
  log({0, EventKind::ClearParameter, ParamKey{side, p.name}, std::move(removed), std::nullopt});
  return annotation_;
}

std::vector<CodeElement> AnnotationSession::derive(RevisionSide side, std::string_view param) const {
  const auto& target = schema(side, param);
  if (!target.autofill)
    throw Error(ErrorCode::NoAutofillRule, label(side, param) + " has no autofill rule");
  const ParameterSchema* source = type_.resolve_follows(target);
  if (!source)
    throw Error(ErrorCode::InvalidSchema, "autofill source '" + target.autofill->follows + "' not found");
  auto it = annotation_.parameters.find({source->side, source->name});
  if (it == annotation_.parameters.end() || it->second.empty())
    throw Error(ErrorCode::SourceUnfilled,
                "fill " + label(source->side, source->name) + " before autofilling " + label(side, param));

  const auto& source_index = commit_->index(source->side);
  const auto& target_index = commit_->index(side);
  std::set<TextRange> seen;
  std::vector<CodeElement> out;

  for (const auto& r : it->second) {
    if (target.autofill->kind == AutofillKind::Ancestor) {
      auto ancestor = source_index.enclosing(r, *target.autofill->ancestor_type);
      if (!ancestor)
        throw Error(ErrorCode::NoAncestorFound,
                    "no " + std::string(to_string(*target.autofill->ancestor_type)) + " encloses " +
                        to_string(r));
      if (seen.insert(ancestor->range).second) out.push_back(*ancestor);
      continue;
    }

    auto declaration = source_index.find_exact(source->element_type, r);
    if (!declaration || !declaration->name)
      throw Error(ErrorCode::SourceUnfilled,
                  to_string(r) + " in " + label(source->side, source->name) + " is not an indexed element");
    const bool same_side = source->side == side;
    std::optional<TextRange> scope;
    if (same_side && (declaration->element_type == ElementType::VariableDeclaration ||
                      declaration->element_type == ElementType::ParameterDeclaration)) {
      if (declaration->enclosing_method) {
        scope = declaration->enclosing_method;
      } else {
        const auto* src = source_index.source(r.path);
        scope = src->range_of(r.path, 0, src->text().size());
      }
    }
    for (auto& e : target_index.identifiers_named(*declaration->name, scope)) {
      if (same_side && declaration->range.contains(e.range)) continue;
      if (seen.insert(e.range).second) out.push_back(std::move(e));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.range < b.range; });
  return out;
}

AutofillReport AnnotationSession::autofill(RevisionSide side, std::string_view param) {
  check_unlocked();
  const auto& target = schema(side, param);
  AutofillReport report;
  report.derived = derive(side, param);
  std::vector<TextRange> ranges;
  for (const auto& e : report.derived) ranges.push_back(e.range);
  if (!target.multiple && ranges.size() > 1) ranges.resize(1);
  annotation_.parameters[{side, target.name}] = ranges;
  log({0, EventKind::Autofill, ParamKey{side, target.name}, std::move(ranges), std::nullopt});
  return report;
}

CompletenessReport AnnotationSession::completeness() const {
  CompletenessReport report;
  for (RevisionSide side : {RevisionSide::Before, RevisionSide::After}) {
    for (const auto& p : type_.parameters(side)) {
      if (!p.required) continue;
      auto it = annotation_.parameters.find({side, p.name});
      if (it == annotation_.parameters.end() || it->second.empty()) report.missing.push_back({side, p.name});
    }
  }
  report.verifiable = report.missing.empty();
  return report;
}

const Annotation& AnnotationSession::set_status(AnnotationStatus status) {
  if (status == AnnotationStatus::Verified) {
    const auto report = completeness();
    if (!report.verifiable) {
      std::string names;
      for (const auto& k : report.missing) names += (names.empty() ? "" : ", ") + label(k.side, k.name);
      throw Error(ErrorCode::IncompleteAnnotation, "missing required parameters: " + names);
    }
  }
  annotation_.status = status;
  log({0, EventKind::StatusChange, std::nullopt, {}, status});
  return annotation_;
}

void assign_type(Annotation& annotation, const RefactoringTypeDefinition& type) {
  if (annotation.status == AnnotationStatus::Verified)
    throw Error(ErrorCode::AnnotationLocked, "annotation " + annotation.id + " is Verified");
  annotation.type_name = type.name;
  annotation.parameters.clear();
  for (RevisionSide side : {RevisionSide::Before, RevisionSide::After})
    for (const auto& p : type.parameters(side)) annotation.parameters[{side, p.name}] = {};
  ++annotation.version;
}

}  // namespace refann
