#pragma once

// Shared fixture cases for the unit tests and the acceptance binary.

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "refann/core/model.hpp"

namespace refann::testing {

struct AutofillCase {
  std::string fixture;
  std::string type;
  RevisionSide side;
  std::string source_param;
  std::string path;
  Position point;
  std::string name;
  size_t expected_count;
  // Declaring method lines for locals; 0 means unscoped.
  int scope_first = 0;
  int scope_last = 0;
};

const std::vector<AutofillCase>& autofill_cases();

/// Files whose bytes differ between before/ and after/, read straight from disk.
std::map<std::string, std::string> changed_files(const std::filesystem::path& dir, RevisionSide side);

/// Name-scan oracle for autofill("references"): every occurrence of the name
/// in the side's changed files (or in the scope lines of c.path), minus
/// occurrences inside the declaration.
std::set<TextRange> reference_oracle(const AutofillCase& c, const std::filesystem::path& dir,
                                     const TextRange& declaration);

}  // namespace refann::testing
