#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "oracles.hpp"
#include "refann/core/error.hpp"
#include "refann/index/element_index.hpp"

using namespace refann;
using namespace refann::testing;
namespace fs = std::filesystem;

namespace {

CommitSnapshot added_files(const std::map<std::string, std::string>& files) {
  CommitSnapshot snap;
  snap.commit = {"test", "test"};
  for (const auto& [path, text] : files) {
    FileChange f;
    f.kind = ChangeKind::Added;
    f.path_after = path;
    f.content_after = text;
    snap.files.push_back(f);
  }
  return snap;
}

std::map<std::string, std::string> corpus() {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(fixtures_dir() / "java"))
    if (entry.path().extension() == ".java")
      files[entry.path().filename().string()] = read_text(entry.path());
  return files;
}

ElementType type_letter(char c) {
  switch (c) {
    case 'C': return ElementType::ClassDeclaration;
    case 'M': return ElementType::MethodDeclaration;
    case 'F': return ElementType::FieldDeclaration;
    case 'V': return ElementType::VariableDeclaration;
    case 'P': return ElementType::ParameterDeclaration;
    default: return ElementType::MethodInvocation;
  }
}

using Entry = std::tuple<std::string, ElementType, std::string, int>;

std::vector<Entry> hand_enumeration() {
  std::ifstream in(fixtures_dir() / "java" / "expected_elements.txt");
  std::vector<Entry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string file, letter, name;
    int start = 0;
    ls >> file >> letter >> name >> start;
    out.emplace_back(file, type_letter(letter[0]), name, start);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("corpus: declarations and invocations equal the hand enumeration") {
  const auto files = corpus();
  REQUIRE(files.size() >= 10);
  auto index = build_index(added_files(files), RevisionSide::After);
  CHECK(index.unindexed_files().empty());

  std::vector<Entry> actual;
  for (ElementType t : {ElementType::ClassDeclaration, ElementType::MethodDeclaration,
                        ElementType::FieldDeclaration, ElementType::VariableDeclaration,
                        ElementType::ParameterDeclaration, ElementType::MethodInvocation})
    for (const auto& e : index.elements_of_type(t))
      actual.emplace_back(e.range.path, t, *e.name, e.range.start_line);
  std::sort(actual.begin(), actual.end());

  const auto expected = hand_enumeration();
  std::vector<Entry> missing, extra;
  std::set_difference(expected.begin(), expected.end(), actual.begin(), actual.end(),
                      std::back_inserter(missing));
  std::set_difference(actual.begin(), actual.end(), expected.begin(), expected.end(),
                      std::back_inserter(extra));
  for (const auto& [f, t, n, l] : missing)
    MESSAGE("missing " << f << " " << to_string(t) << " " << n << " " << l);
  for (const auto& [f, t, n, l] : extra)
    MESSAGE("unexpected " << f << " " << to_string(t) << " " << n << " " << l);
  CHECK(missing.empty());
  CHECK(extra.empty());
}

TEST_CASE("corpus: identifiers_named equals the brute-force token scan for every name") {
  const auto files = corpus();
  auto index = build_index(added_files(files), RevisionSide::After);
  for (const auto& [path, text] : files) {
    const auto hits = scan_identifier_tokens(text);
    std::set<std::string> names;
    for (const auto& h : hits) names.insert(h.word);
    CHECK(index.elements_of_type(ElementType::Identifier, path).size() == hits.size());
    for (const auto& name : names) {
      std::vector<std::tuple<int, int, int>> expected, actual;
      for (const auto& h : scan_name(text, name)) expected.emplace_back(h.line, h.col, h.end_col);
      for (const auto& e : index.identifiers_named(name))
        if (e.range.path == path) {
          CHECK(e.range.start_line == e.range.end_line);
          actual.emplace_back(e.range.start_line, e.range.start_col, e.range.end_col);
        }
      CHECK_MESSAGE(expected == actual, path << " name " << name);
    }
  }
}

TEST_CASE("Customer.java has three field declarations") {
  auto index = build_index(added_files(corpus()), RevisionSide::After);
  auto fields = index.elements_of_type(ElementType::FieldDeclaration, "Customer.java");
  REQUIRE(fields.size() == 3);
  CHECK(*fields[0].name == "name");
  CHECK(*fields[1].name == "total");
  CHECK(*fields[2].name == "orders");
}

TEST_CASE("one class with two methods") {
  auto index = build_index(
      added_files({{"Two.java", "class Two {\n  void a() {}\n  int b(int x) { return x; }\n}\n"}}),
      RevisionSide::After);
  CHECK(index.elements_of_type(ElementType::MethodDeclaration).size() == 2);
  CHECK(index.elements_of_type(ElementType::ClassDeclaration).size() == 1);
}

TEST_CASE("empty file, syntax error and unsupported files are isolated") {
  auto index = build_index(added_files({{"Empty.java", ""},
                                        {"Broken.java", "class Broken { void m( }"},
                                        {"notes.txt", "class X {}"},
                                        {"Good.java", "class Good { int f; }"}}),
                           RevisionSide::After);
  CHECK(index.is_indexed("Empty.java"));
  CHECK(index.elements_of_type(ElementType::Identifier, "Empty.java").empty());
  CHECK_FALSE(index.is_indexed("Broken.java"));
  CHECK(index.unindexed_files().at("Broken.java").find("syntax error") != std::string::npos);
  CHECK(index.unindexed_files().at("notes.txt") == "unsupported language");
  CHECK(index.has_file("notes.txt"));
  CHECK(index.elements_of_type(ElementType::FieldDeclaration, "Good.java").size() == 1);
}

TEST_CASE("binary files are not indexed") {
  CommitSnapshot snap = added_files({{"Bin.java", std::string("class\0X", 7)}});
  snap.files[0].binary = true;
  auto index = build_index(snap, RevisionSide::After);
  CHECK(index.unindexed_files().at("Bin.java") == "binary file");
}

TEST_CASE("before side only sees before paths") {
  CommitSnapshot snap = added_files({{"A.java", "class A {}"}});
  auto before = build_index(snap, RevisionSide::Before);
  CHECK(before.indexed_files().empty());
  CHECK(before.side() == RevisionSide::Before);
}

TEST_CASE("CodeFragment is not enumerable") {
  auto index = build_index(added_files({{"A.java", "class A {}"}}), RevisionSide::After);
  CHECK_THROWS_AS(index.elements_of_type(ElementType::CodeFragment), Error);
  try {
    index.element_at(ElementType::CodeFragment, "A.java", {1, 1});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CodeFragmentNotEnumerable);
  }
  CHECK(index.elements_of_type(ElementType::ClassDeclaration, "Unchanged.java").empty());
}

TEST_CASE("element_at returns the innermost element") {
  const std::string src =
      "class Outer {\n"                     // 1
      "  class Inner {\n"                   // 2
      "    void target() {\n"               // 3
      "      f(g(x));\n"                    // 4
      "    }\n"                             // 5
      "  }\n"                               // 6
      "\n"                                  // 7
      "  void other() {}\n"                 // 8
      "}\n";
  auto index = build_index(added_files({{"N.java", src}}), RevisionSide::After);

  auto method = index.element_at(ElementType::MethodDeclaration, "N.java", {3, 12});
  REQUIRE(method);
  CHECK(*method->name == "target");
  auto cls = index.element_at(ElementType::ClassDeclaration, "N.java", {3, 12});
  REQUIRE(cls);
  CHECK(*cls->name == "Inner");

  // Inside the argument of the inner call g(x).
  auto call = index.element_at(ElementType::MethodInvocation, "N.java", {4, 11});
  REQUIRE(call);
  CHECK(*call->name == "g");
  auto outer_call = index.element_at(ElementType::MethodInvocation, "N.java", {4, 7});
  REQUIRE(outer_call);
  CHECK(*outer_call->name == "f");

  CHECK_FALSE(index.element_at(ElementType::MethodDeclaration, "N.java", {7, 1}));
}

TEST_CASE("enclosing requires strict containment") {
  const std::string src =
      "class C {\n"
      "  void m() {\n"
      "    int a = 1;\n"
      "  }\n"
      "  void n() {}\n"
      "}\n";
  auto index = build_index(added_files({{"C.java", src}}), RevisionSide::After);
  auto m = index.element_at(ElementType::MethodDeclaration, "C.java", {2, 3});
  REQUIRE(m);

  auto encl = index.enclosing({"C.java", 3, 5, 3, 15}, ElementType::MethodDeclaration);
  REQUIRE(encl);
  CHECK(encl->range == m->range);
  CHECK_FALSE(index.enclosing({"C.java", 2, 3, 5, 14}, ElementType::MethodDeclaration));
  CHECK_FALSE(index.enclosing(m->range, ElementType::MethodDeclaration));
  auto cls = index.enclosing(m->range, ElementType::ClassDeclaration);
  REQUIRE(cls);
  CHECK(*cls->name == "C");
}

TEST_CASE("identifiers_named counts uses and honours a scope") {
  const std::string src =
      "class T {\n"
      "  int total;\n"
      "  int a() { return total + total; }\n"
      "  int b() { int total = 2; return total; }\n"
      "  // total in a comment\n"
      "  String s = \"total\";\n"
      "}\n";
  auto index = build_index(added_files({{"T.java", src}}), RevisionSide::After);
  auto all = index.identifiers_named("total");
  CHECK(all.size() == 5);
  CHECK(index.identifiers_named("nonexistent").empty());

  auto b = index.element_at(ElementType::MethodDeclaration, "T.java", {4, 3});
  REQUIRE(b);
  auto scoped = index.identifiers_named("total", b->range);
  CHECK(scoped.size() == 2);
  const auto oracle = scan_name(src, "total", std::make_pair(b->range.start(), b->range.end()));
  CHECK(oracle.size() == scoped.size());
}

TEST_CASE("properties over the corpus: minimality, containment, enumeration agreement") {
  const auto files = corpus();
  auto index = build_index(added_files(files), RevisionSide::After);
  std::mt19937 rng(12345);

  for (const auto& [path, text] : files) {
    const SourceText* source = index.source(path);
    REQUIRE(source);

    // Containment consistency.
    for (ElementType t : kConcreteElementTypes) {
      for (const auto& e : index.elements_of_type(t, path)) {
        auto m = index.enclosing(e.range, ElementType::MethodDeclaration);
        CHECK(m.has_value() == e.enclosing_method.has_value());
        if (m && e.enclosing_method) CHECK(m->range == *e.enclosing_method);
        if (e.enclosing_method) CHECK(e.enclosing_method->strictly_contains(e.range));
        CHECK(source->offsets_of(e.range).has_value());
      }
    }

    // Minimality against a linear scan, at random points.
    std::uniform_int_distribution<size_t> offset(0, text.empty() ? 0 : text.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      const Position p = source->position_of(offset(rng));
      for (ElementType t : kConcreteElementTypes) {
        std::optional<CodeElement> best;
        for (const auto& e : index.elements_of_type(t, path)) {
          if (!e.range.contains(path, p)) continue;
          if (!best || best->range.contains(e.range)) best = e;
        }
        auto got = index.element_at(t, path, p);
        CHECK(got.has_value() == best.has_value());
        if (got && best) CHECK(got->range == best->range);
      }
    }

    // Every enumerated element is found again from a point just inside it.
    for (ElementType t : kConcreteElementTypes) {
      for (const auto& e : index.elements_of_type(t, path)) {
        auto got = index.element_at(t, path, e.range.start());
        REQUIRE(got);
        CHECK(e.range.contains(got->range));
      }
    }
  }
}

TEST_CASE("columns count code points") {
  auto index = build_index(added_files({{"U.java", "class U { String größe; int x = größe.length(); }"}}),
                           RevisionSide::After);
  auto hits = index.identifiers_named("x");
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].range.start_col == 29);
  auto field = index.identifiers_named("größe");
  REQUIRE(field.size() == 2);
  CHECK(field[0].range.end_col - field[0].range.start_col == 5);
}
