#include "cases.hpp"

#include "oracles.hpp"

namespace fs = std::filesystem;

namespace refann::testing {

const std::vector<AutofillCase>& autofill_cases() {
  static const std::vector<AutofillCase> cases = {
      {"movefield_count", "MoveField", RevisionSide::Before, "moved field", "demo/Counter.java", {4, 17}, "count", 3},
      {"movefield_count", "MoveField", RevisionSide::After, "moved field", "demo/Stats.java", {4, 9}, "count", 2},
      {"movefield_timeout", "MoveField", RevisionSide::Before, "moved field", "net/Server.java", {6, 18}, "timeout",
       4},
      {"movefield_timeout", "MoveField", RevisionSide::After, "moved field", "net/Config.java", {4, 10}, "timeout",
       4},
      {"moveclass_tokenizer", "MoveClass", RevisionSide::Before, "moved class", "src/util/Tokenizer.java", {3, 14},
       "Tokenizer", 4},
      {"moveclass_point", "MoveClass", RevisionSide::Before, "moved class", "Geometry.java", {2, 18}, "Point", 6},
      {"renamevar_index", "RenameVariable", RevisionSide::Before, "old variable", "Search.java", {3, 18}, "i", 4, 2,
       9},
      {"renamevar_index", "RenameVariable", RevisionSide::After, "new variable", "Search.java", {3, 18}, "index", 4,
       2, 9},
      {"renamevar_total", "RenameVariable", RevisionSide::Before, "old variable", "Invoice.java", {7, 16}, "total",
       5, 6, 15},
      {"renamevar_total", "RenameVariable", RevisionSide::After, "new variable", "Invoice.java", {7, 16}, "sum", 5,
       6, 15},
  };
  return cases;
}

std::map<std::string, std::string> changed_files(const fs::path& dir, RevisionSide side) {
  std::map<std::string, std::string> before, after, out;
  for (const auto& [root, into] : {std::pair{dir / "before", &before}, std::pair{dir / "after", &after}})
    for (const auto& e : fs::recursive_directory_iterator(root))
      if (e.is_regular_file()) (*into)[fs::relative(e.path(), root).generic_string()] = read_text(e.path());
  const auto& mine = side == RevisionSide::Before ? before : after;
  const auto& theirs = side == RevisionSide::Before ? after : before;
  for (const auto& [p, t] : mine)
    if (!theirs.count(p) || theirs.at(p) != t) out[p] = t;
  return out;
}

std::set<TextRange> reference_oracle(const AutofillCase& c, const fs::path& dir, const TextRange& declaration) {
  std::set<TextRange> oracle;
  for (const auto& [path, text] : changed_files(dir, c.side)) {
    std::optional<std::pair<Position, Position>> window;
    if (c.scope_first) {
      if (path != c.path) continue;
      window = std::make_pair(Position{c.scope_first, 1}, Position{c.scope_last + 1, 1});
    }
    for (const auto& h : scan_name(text, c.name, window)) {
      TextRange r{path, h.line, h.col, h.line, h.end_col};
      if (declaration.contains(r)) continue;
      oracle.insert(r);
    }
  }
  return oracle;
}

}  // namespace refann::testing
