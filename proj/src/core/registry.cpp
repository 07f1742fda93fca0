#include "refann/core/registry.hpp"

#include <set>
#include <utility>

#include "refann/core/error.hpp"

namespace refann {
namespace {

ParameterSchema param(std::string name, RevisionSide side, ElementType type, bool multiple,
                      bool required, std::optional<AutofillRule> autofill = std::nullopt) {
  return ParameterSchema{std::move(name), side, type, multiple, required, std::move(autofill)};
}

AutofillRule reference_to(std::string follows) {
  return AutofillRule{AutofillKind::Reference, std::move(follows), std::nullopt};
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidSchema, what); }

}  // namespace

std::vector<RefactoringTypeDefinition> predefined_types() {
  constexpr auto B = RevisionSide::Before;
  constexpr auto A = RevisionSide::After;
  using T = ElementType;

  std::vector<RefactoringTypeDefinition> types;
  types.push_back({"ExtractMethod",
                   {param("extracted code", B, T::CodeFragment, false, true)},
                   {param("extracted method", A, T::MethodDeclaration, false, true),
                    param("invocation", A, T::MethodInvocation, false, true)},
                   true});
  types.push_back({"MoveClass",
                   {param("moved class", B, T::ClassDeclaration, false, true),
                    param("references", B, T::Identifier, true, false, reference_to("moved class"))},
                   {param("moved class", A, T::ClassDeclaration, false, true)},
                   true});
  types.push_back({"MoveField",
                   {param("moved field", B, T::FieldDeclaration, false, true),
                    param("references", B, T::Identifier, true, false, reference_to("moved field"))},
                   {param("moved field", A, T::FieldDeclaration, false, true),
                    param("references", A, T::Identifier, true, false, reference_to("moved field"))},
                   true});
  types.push_back(
      {"RenameVariable",
       {param("old variable", B, T::VariableDeclaration, false, true),
        param("references", B, T::Identifier, true, false, reference_to("old variable"))},
       {param("new variable", A, T::VariableDeclaration, false, true),
        param("references", A, T::Identifier, true, false, reference_to("new variable"))},
       true});
  return types;
}

void validate_type_definition(const RefactoringTypeDefinition& def) {
  if (def.name.empty()) invalid("refactoring type name is empty");
  if (def.before.empty() && def.after.empty())
    invalid("refactoring type '" + def.name + "' has no parameters");

  for (RevisionSide side : {RevisionSide::Before, RevisionSide::After}) {
    std::set<std::string> seen;
    for (const auto& p : def.parameters(side)) {
      if (p.name.empty()) invalid("parameter with empty name in '" + def.name + "'");
      if (p.side != side) invalid("parameter '" + p.name + "' listed on the wrong side");
      if (!seen.insert(p.name).second)
        invalid("duplicate parameter '" + p.name + "' on side " + std::string(to_string(side)));
    }
  }

  for (RevisionSide side : {RevisionSide::Before, RevisionSide::After}) {
    for (const auto& p : def.parameters(side)) {
      if (!p.autofill) continue;
      const AutofillRule& rule = *p.autofill;
      const ParameterSchema* source = def.resolve_follows(p);
      if (!source)
        invalid("autofill of '" + p.name + "' follows unknown parameter '" + rule.follows + "'");
      if (rule.kind == AutofillKind::Reference) {
        if (!p.multiple || p.element_type != ElementType::Identifier)
          invalid("reference autofill target '" + p.name +
                  "' must be a multiple Identifier parameter");
        if (rule.ancestor_type) invalid("reference autofill of '" + p.name + "' has ancestorType");
        if (source->element_type == ElementType::CodeFragment)
          invalid("reference autofill of '" + p.name + "' follows an unnamed CodeFragment");
      } else {
        if (!rule.ancestor_type) invalid("ancestor autofill of '" + p.name + "' lacks ancestorType");
        if (*rule.ancestor_type == ElementType::CodeFragment)
          invalid("ancestorType cannot be CodeFragment");
        if (*rule.ancestor_type != p.element_type)
          invalid("ancestorType of '" + p.name + "' differs from its parameter type");
        if (source->side != p.side)
          invalid("ancestor autofill of '" + p.name + "' must follow a same-side parameter");
      }
    }
  }
}

TypeRegistry::TypeRegistry() {
  for (auto& def : predefined_types()) {
    std::string name = def.name;
    types_.emplace(std::move(name), std::move(def));
  }
}

const RefactoringTypeDefinition& TypeRegistry::register_type(RefactoringTypeDefinition def) {
  validate_type_definition(def);
  if (auto it = types_.find(def.name); it != types_.end()) {
    if (it->second.builtin)
      throw Error(ErrorCode::BuiltinOverwrite, "cannot overwrite builtin type '" + def.name + "'");
    throw Error(ErrorCode::DuplicateName, "type '" + def.name + "' is already registered");
  }
  def.builtin = false;
  std::string name = def.name;
  return types_.emplace(std::move(name), std::move(def)).first->second;
}

const RefactoringTypeDefinition& TypeRegistry::lookup_type(std::string_view name) const {
  auto it = types_.find(name);
  if (it == types_.end())
    throw Error(ErrorCode::UnknownType, "unknown refactoring type '" + std::string(name) + "'");
  return it->second;
}

bool TypeRegistry::contains(std::string_view name) const { return types_.find(name) != types_.end(); }

std::vector<RefactoringTypeDefinition> TypeRegistry::list() const {
  std::vector<RefactoringTypeDefinition> out;
  for (const auto& [_, def] : types_) out.push_back(def);
  return out;
}

std::vector<RefactoringTypeDefinition> TypeRegistry::user_types() const {
  std::vector<RefactoringTypeDefinition> out;
  for (const auto& [_, def] : types_)
    if (!def.builtin) out.push_back(def);
  return out;
}

// --- JSON -----------------------------------------------------------------

nlohmann::ordered_json type_to_json(const RefactoringTypeDefinition& def) {
  nlohmann::ordered_json j;
  j["name"] = def.name;
  for (RevisionSide side : {RevisionSide::Before, RevisionSide::After}) {
    auto params = nlohmann::ordered_json::object();
    for (const auto& p : def.parameters(side)) {
      nlohmann::ordered_json pj;
      pj["type"] = to_string(p.element_type);
      pj["multiple"] = p.multiple;
      pj["required"] = p.required;
      if (p.autofill) {
        nlohmann::ordered_json a;
        a["kind"] = p.autofill->kind == AutofillKind::Reference ? "reference" : "ancestor";
        a["follows"] = p.autofill->follows;
        if (p.autofill->ancestor_type) a["ancestorType"] = to_string(*p.autofill->ancestor_type);
        pj["autofill"] = std::move(a);
      }
      params[p.name] = std::move(pj);
    }
    j[std::string(to_string(side))] = std::move(params);
  }
  return j;
}

namespace {

void reject_unknown_keys(const nlohmann::ordered_json& j, std::initializer_list<std::string_view> keys,
                         const std::string& where) {
  for (const auto& [k, _] : j.items()) {
    bool known = false;
    for (auto key : keys) known = known || k == key;
    if (!known) invalid("unknown key '" + k + "' in " + where);
  }
}

const nlohmann::ordered_json& member(const nlohmann::ordered_json& j, const char* key,
                                     const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) invalid("missing '" + std::string(key) + "' in " + where);
  return *it;
}

bool bool_member(const nlohmann::ordered_json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return false;
  if (!it->is_boolean()) invalid("'" + std::string(key) + "' must be a boolean in " + where);
  return it->get<bool>();
}

ElementType element_type_of(const nlohmann::ordered_json& j, const std::string& where) {
  if (!j.is_string()) invalid("element type must be a string in " + where);
  auto t = parse_element_type(j.get<std::string>());
  if (!t) invalid("unknown element type '" + j.get<std::string>() + "' in " + where);
  return *t;
}

}  // namespace

RefactoringTypeDefinition type_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) invalid("refactoring type must be a JSON object");
  reject_unknown_keys(j, {"name", "before", "after"}, "refactoring type");
  const auto& name = member(j, "name", "refactoring type");
  if (!name.is_string()) invalid("'name' must be a string");

  RefactoringTypeDefinition def;
  def.name = name.get<std::string>();
  for (RevisionSide side : {RevisionSide::Before, RevisionSide::After}) {
    const std::string side_key(to_string(side));
    auto it = j.find(side_key);
    if (it == j.end()) continue;
    if (!it->is_object()) invalid("'" + side_key + "' must be an object");
    auto& list = side == RevisionSide::Before ? def.before : def.after;
    for (const auto& [pname, pj] : it->items()) {
      const std::string where = "parameter '" + pname + "'";
      if (!pj.is_object()) invalid(where + " must be an object");
      reject_unknown_keys(pj, {"type", "multiple", "required", "autofill"}, where);
      ParameterSchema p;
      p.name = pname;
      p.side = side;
      p.element_type = element_type_of(member(pj, "type", where), where);
      p.multiple = bool_member(pj, "multiple", where);
      p.required = bool_member(pj, "required", where);
      if (auto a = pj.find("autofill"); a != pj.end() && !a->is_null()) {
        if (!a->is_object()) invalid("autofill of " + where + " must be an object");
        reject_unknown_keys(*a, {"kind", "follows", "ancestorType"}, "autofill of " + where);
        AutofillRule rule;
        const auto& kind = member(*a, "kind", "autofill of " + where);
        if (kind == "reference")
          rule.kind = AutofillKind::Reference;
        else if (kind == "ancestor")
          rule.kind = AutofillKind::Ancestor;
        else
          invalid("autofill kind must be 'reference' or 'ancestor' in " + where);
        const auto& follows = member(*a, "follows", "autofill of " + where);
        if (!follows.is_string()) invalid("'follows' must be a string in " + where);
        rule.follows = follows.get<std::string>();
        if (auto at = a->find("ancestorType"); at != a->end() && !at->is_null())
          rule.ancestor_type = element_type_of(*at, where);
        p.autofill = std::move(rule);
      }
      list.push_back(std::move(p));
    }
  }
  return def;
}

}  // namespace refann
