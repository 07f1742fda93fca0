#include "refann/index/element_index.hpp"

#include <algorithm>
#include <set>

#include "refann/core/error.hpp"
#include "refann/index/java_parser.hpp"

namespace refann {
namespace {

bool by_position(const CodeElement& a, const CodeElement& b) {
  if (a.range.start() != b.range.start()) return a.range.start() < b.range.start();
  return a.range.end() < b.range.end();
}

// Among elements that all contain a common point or range, the innermost
// one starts last and, on equal starts, ends first.
bool more_inner(const CodeElement& candidate, const CodeElement& current) {
  if (candidate.range.start() != current.range.start())
    return candidate.range.start() > current.range.start();
  return candidate.range.end() < current.range.end();
}

void reject_fragment(ElementType t) {
  if (t == ElementType::CodeFragment)
    throw Error(ErrorCode::CodeFragmentNotEnumerable,
                "CodeFragment is a selection type and has no indexed elements");
}

bool carries_name(ElementType t) {
  return is_declaration(t) || t == ElementType::Identifier || t == ElementType::MethodInvocation;
}

}  // namespace

std::optional<std::string> language_of(std::string_view path) {
  auto dot = path.rfind('.');
  auto slash = path.rfind('/');
  if (dot == std::string_view::npos || (slash != std::string_view::npos && dot < slash))
    return std::nullopt;
  if (path.substr(dot) == ".java") return "java";
  return std::nullopt;
}

ElementIndex build_index(const CommitSnapshot& snapshot, RevisionSide side) {
  ElementIndex index;
  index.side_ = side;
  for (const auto& change : snapshot.files) {
    const auto& path = change.path(side);
    if (!path) continue;
    if (change.binary || !change.content(side)) {
      index.unindexed_[*path] = "binary file";
      continue;
    }
    if (!language_of(*path)) {
      index.unindexed_[*path] = "unsupported language";
      continue;
    }
    SourceText source(*change.content(side));
    std::vector<java::SyntaxElement> syntax;
    try {
      syntax = java::parse_java(source.text());
    } catch (const java::ParseFailure& failure) {
      const Position at = source.position_of(failure.offset());
      index.unindexed_[*path] = "syntax error at " + std::to_string(at.line) + ":" +
                                std::to_string(at.col) + ": " + failure.what();
      continue;
    }

    ElementIndex::FileEntry entry;
    std::set<std::pair<ElementType, TextRange>> seen;
    for (const auto& s : syntax) {
      if (s.begin >= s.end) continue;
      CodeElement e;
      e.element_type = s.type;
      e.range = source.range_of(*path, s.begin, s.end);
      e.side = side;
      if (carries_name(s.type)) e.name = s.name;
      if (s.body) e.body = source.range_of(*path, s.body->first, s.body->second);
      if (!seen.emplace(e.element_type, e.range).second) continue;
      entry.elements[s.type].push_back(std::move(e));
    }
    for (auto& [_, list] : entry.elements) std::sort(list.begin(), list.end(), by_position);

    // Nearest physical method declaration strictly containing each element.
    const auto methods = entry.elements[ElementType::MethodDeclaration];
    for (auto& [_, list] : entry.elements) {
      for (auto& e : list) {
        const CodeElement* best = nullptr;
        for (const auto& m : methods) {
          if (m.range.start() > e.range.start()) break;
          if (m.range.strictly_contains(e.range) && (!best || more_inner(m, *best))) best = &m;
        }
        if (best) e.enclosing_method = best->range;
      }
    }
    const auto& identifiers = entry.elements[ElementType::Identifier];
    for (size_t i = 0; i < identifiers.size(); ++i)
      entry.identifiers[*identifiers[i].name].push_back(i);

    entry.source = std::move(source);
    index.files_.emplace(*path, std::move(entry));
  }
  return index;
}

std::vector<std::string> ElementIndex::indexed_files() const {
  std::vector<std::string> out;
  for (const auto& [path, _] : files_) out.push_back(path);
  return out;
}

bool ElementIndex::is_indexed(std::string_view path) const { return files_.find(path) != files_.end(); }

bool ElementIndex::has_file(std::string_view path) const {
  return is_indexed(path) || unindexed_.count(std::string(path)) > 0;
}

const SourceText* ElementIndex::source(std::string_view path) const {
  auto it = files_.find(path);
  return it == files_.end() ? nullptr : &it->second.source;
}

const std::vector<CodeElement>* ElementIndex::typed(std::string_view path, ElementType t) const {
  auto it = files_.find(path);
  if (it == files_.end()) return nullptr;
  auto jt = it->second.elements.find(t);
  return jt == it->second.elements.end() ? nullptr : &jt->second;
}

std::vector<CodeElement> ElementIndex::elements_of_type(ElementType t,
                                                        std::optional<std::string_view> file) const {
  reject_fragment(t);
  std::vector<CodeElement> out;
  for (const auto& [path, _] : files_) {
    if (file && path != *file) continue;
    if (const auto* list = typed(path, t)) out.insert(out.end(), list->begin(), list->end());
  }
  return out;
}

std::optional<CodeElement> ElementIndex::element_at(ElementType t, std::string_view path,
                                                    Position point) const {
  reject_fragment(t);
  const auto* list = typed(path, t);
  if (!list) return std::nullopt;
  const CodeElement* best = nullptr;
  for (const auto& e : *list) {
    if (e.range.start() > point) break;
    if (e.range.contains(path, point) && (!best || more_inner(e, *best))) best = &e;
  }
  if (!best) return std::nullopt;
  return *best;
}

std::optional<CodeElement> ElementIndex::enclosing(const TextRange& range, ElementType t) const {
  reject_fragment(t);
  const auto* list = typed(range.path, t);
  if (!list) return std::nullopt;
  const CodeElement* best = nullptr;
  for (const auto& e : *list) {
    if (e.range.start() > range.start()) break;
    if (e.range.strictly_contains(range) && (!best || more_inner(e, *best))) best = &e;
  }
  if (!best) return std::nullopt;
  return *best;
}

std::vector<CodeElement> ElementIndex::identifiers_named(std::string_view name,
                                                         const std::optional<TextRange>& scope) const {
  std::vector<CodeElement> out;
  if (name.empty()) return out;
  for (const auto& [path, entry] : files_) {
    if (scope && path != scope->path) continue;
    auto it = entry.identifiers.find(name);
    if (it == entry.identifiers.end()) continue;
    const auto& identifiers = entry.elements.at(ElementType::Identifier);
    for (size_t i : it->second) {
      const auto& e = identifiers[i];
      if (!scope || scope->contains(e.range)) out.push_back(e);
    }
  }
  return out;
}

std::optional<CodeElement> ElementIndex::find_exact(ElementType t, const TextRange& range) const {
  if (t == ElementType::CodeFragment) return std::nullopt;
  const auto* list = typed(range.path, t);
  if (!list) return std::nullopt;
  CodeElement probe;
  probe.range = range;
  auto it = std::lower_bound(list->begin(), list->end(), probe, by_position);
  if (it != list->end() && it->range == range) return *it;
  return std::nullopt;
}

}  // namespace refann
