#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "refann/core/model.hpp"
#include "vendor_json.hpp"

namespace refann {

/// The four study types (ExtractMethod, MoveClass, MoveField, RenameVariable)
/// in alphabetical order.
std::vector<RefactoringTypeDefinition> predefined_types();

/// Throws InvalidSchema when `def` breaks a definition invariant.
void validate_type_definition(const RefactoringTypeDefinition& def);

/// Holds the builtin types plus user-defined ones. Builtins cannot be
/// replaced; a user type name may be registered once.
class TypeRegistry {
 public:
  TypeRegistry();

  /// Returns the stored definition (with builtin = false).
  const RefactoringTypeDefinition& register_type(RefactoringTypeDefinition def);
  const RefactoringTypeDefinition& lookup_type(std::string_view name) const;
  bool contains(std::string_view name) const;

  /// All types, sorted by name.
  std::vector<RefactoringTypeDefinition> list() const;
  std::vector<RefactoringTypeDefinition> user_types() const;

 private:
  std::map<std::string, RefactoringTypeDefinition, std::less<>> types_;
};

// Wire format:
// {"name": str, "before": {"<param>": {"type": str, "multiple": bool,
//   "required": bool, "autofill": {"kind": "reference"|"ancestor",
//   "follows": str, "ancestorType": str?}?}}, "after": {...}}
// Parameter order inside "before"/"after" is preserved.
nlohmann::ordered_json type_to_json(const RefactoringTypeDefinition& def);
RefactoringTypeDefinition type_from_json(const nlohmann::ordered_json& j);

}  // namespace refann
