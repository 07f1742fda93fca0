#include <doctest.h>

#include <random>

#include "cases.hpp"
#include "oracles.hpp"
#include "refann/annotate/session.hpp"
#include "refann/core/error.hpp"
#include "refann/core/registry.hpp"

using namespace refann;
using namespace refann::testing;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::IoError;
}

struct Fixture {
  std::shared_ptr<const CommitData> data;
  fs::path dir;
};

Fixture open_fixture(const std::string& name) {
  const auto dir = fixtures_dir() / "commits" / name;
  return {make_commit_data(load_fixture(dir)), dir};
}

AnnotationSession session_for(const Fixture& f, const std::string& type_name, Clock clock = nullptr) {
  TypeRegistry reg;
  const auto& type = reg.lookup_type(type_name);
  auto a = make_annotation("t1", f.data->snapshot.commit, type, "alice");
  std::int64_t tick = 0;
  if (!clock) clock = [tick]() mutable { return tick += 10; };
  return AnnotationSession(a, f.data, type, clock);
}

}  // namespace

TEST_CASE("autofill references equals the brute-force name scan") {
  for (const auto& c : autofill_cases()) {
    CAPTURE(c.fixture);
    CAPTURE(to_string(c.side));
    const auto f = open_fixture(c.fixture);
    auto s = session_for(f, c.type);
    s.set_parameter(c.side, c.source_param, Selection::of_point(c.path, c.point));
    const TextRange declaration = s.annotation().parameters.at({c.side, c.source_param}).at(0);

    const auto oracle = reference_oracle(c, f.dir, declaration);
    CHECK(oracle.size() == c.expected_count);

    s.autofill(c.side, "references");
    const auto first = s.annotation().parameters.at({c.side, "references"});
    CHECK(std::set<TextRange>(first.begin(), first.end()) == oracle);
    CHECK(first.size() == oracle.size());

    s.autofill(c.side, "references");
    CHECK(s.annotation().parameters.at({c.side, "references"}) == first);
  }
}

TEST_CASE("autofill errors") {
  const auto f = open_fixture("movefield_count");
  auto s = session_for(f, "MoveField");
  CHECK(code_of([&] { s.autofill(RevisionSide::Before, "moved field"); }) == ErrorCode::NoAutofillRule);
  CHECK(code_of([&] { s.autofill(RevisionSide::Before, "references"); }) == ErrorCode::SourceUnfilled);
  CHECK(code_of([&] { s.autofill(RevisionSide::Before, "nope"); }) == ErrorCode::UnknownParameter);
}

TEST_CASE("ancestor autofill on a user-defined type") {
  RefactoringTypeDefinition def;
  def.name = "ExtractWithHost";
  def.before.push_back({"extracted code", RevisionSide::Before, ElementType::CodeFragment, false, true, {}});
  def.before.push_back({"host", RevisionSide::Before, ElementType::MethodDeclaration, false, false,
                        AutofillRule{AutofillKind::Ancestor, "extracted code", ElementType::MethodDeclaration}});
  TypeRegistry reg;
  reg.register_type(def);
  const auto f = open_fixture("extractmethod_printer");
  AnnotationSession s(make_annotation("x", f.data->snapshot.commit, def, "bob"), f.data, def);
  s.set_parameter(RevisionSide::Before, "extracted code",
                  Selection::of_range({"Printer.java", 4, 1, 5, 49}));
  auto report = s.autofill(RevisionSide::Before, "host");
  REQUIRE(report.derived.size() == 1);
  CHECK(*report.derived[0].name == "print");
  CHECK(s.annotation().parameters.at({RevisionSide::Before, "host"}) ==
        std::vector<TextRange>{{"Printer.java", 2, 5, 6, 6}});
}

TEST_CASE("set_parameter: point selection snaps to the innermost element") {
  const auto f = open_fixture("extractmethod_printer");
  auto s = session_for(f, "ExtractMethod");
  // Inside the header of printDetails.
  s.set_parameter(RevisionSide::After, "extracted method", Selection::of_point("Printer.java", {7, 20}));
  CHECK(s.annotation().parameters.at({RevisionSide::After, "extracted method"}) ==
        std::vector<TextRange>{{"Printer.java", 7, 5, 10, 6}});
  // Inside the argument list of the printDetails call.
  s.set_parameter(RevisionSide::After, "invocation", Selection::of_point("Printer.java", {4, 24}));
  CHECK(s.annotation().parameters.at({RevisionSide::After, "invocation"}) ==
        std::vector<TextRange>{{"Printer.java", 4, 9, 4, 35}});
}

TEST_CASE("set_parameter: CodeFragment snapping and containment") {
  const auto f = open_fixture("extractmethod_printer");
  auto s = session_for(f, "ExtractMethod");
  // Lines 4-5 plus surrounding whitespace; snapped to the statements.
  s.set_parameter(RevisionSide::Before, "extracted code", Selection::of_range({"Printer.java", 3, 38, 6, 5}));
  CHECK(s.annotation().parameters.at({RevisionSide::Before, "extracted code"}) ==
        std::vector<TextRange>{{"Printer.java", 4, 9, 5, 49}});
  // Three statement lines.
  s.set_parameter(RevisionSide::Before, "extracted code", Selection::of_range({"Printer.java", 3, 9, 5, 49}));
  CHECK(s.annotation().parameters.at({RevisionSide::Before, "extracted code"}).size() == 1);

  CHECK(code_of([&] {
          s.set_parameter(RevisionSide::Before, "extracted code", Selection::of_range({"Printer.java", 5, 9, 9, 10}));
        }) == ErrorCode::FragmentSpansMethods);
  CHECK(code_of([&] {
          s.set_parameter(RevisionSide::Before, "extracted code", Selection::of_range({"Printer.java", 1, 1, 1, 7}));
        }) == ErrorCode::FragmentSpansMethods);
  CHECK(code_of([&] {
          s.set_parameter(RevisionSide::Before, "extracted code", Selection::of_range({"Printer.java", 6, 1, 7, 1}));
        }) == ErrorCode::FragmentSpansMethods);
  CHECK(code_of([&] {
          s.set_parameter(RevisionSide::Before, "extracted code", Selection::of_point("Printer.java", {4, 10}));
        }) == ErrorCode::TypeMismatch);
}

TEST_CASE("set_parameter: validation errors") {
  const auto f = open_fixture("movefield_count");
  auto s = session_for(f, "MoveField");
  // The field declaration is not a method; and a method is not a field.
  CHECK(code_of([&] {
          s.set_parameter(RevisionSide::Before, "moved field", Selection::of_range({"demo/Counter.java", 6, 5, 8, 6}));
        }) == ErrorCode::TypeMismatch);
  CHECK(code_of([&] {
          s.set_parameter(RevisionSide::Before, "moved field", Selection::of_range({"demo/Counter.java", 4, 5, 4, 22}));
        }) == ErrorCode::TypeMismatch);
  CHECK(code_of([&] {
          s.set_parameter(RevisionSide::Before, "moved field", Selection::of_range({"demo/Stats.java", 4, 5, 4, 15}));
        }) == ErrorCode::WrongSide);
  CHECK(code_of([&] {
          s.set_parameter(RevisionSide::Before, "moved field", Selection::of_range({"Nope.java", 1, 1, 1, 2}));
        }) == ErrorCode::InvalidRange);
  CHECK(code_of([&] {
          s.set_parameter(RevisionSide::Before, "moved field", Selection::of_range({"demo/Counter.java", 40, 1, 41, 1}));
        }) == ErrorCode::InvalidRange);
  CHECK(code_of([&] {
          s.set_parameter(RevisionSide::Before, "ghost", Selection::of_point("demo/Counter.java", {4, 17}));
        }) == ErrorCode::UnknownParameter);

  s.set_parameter(RevisionSide::Before, "moved field", Selection::of_range({"demo/Counter.java", 4, 5, 4, 23}));
  s.set_parameter(RevisionSide::Before, "references", Selection::of_point("demo/Counter.java", {7, 10}));
  CHECK(code_of([&] {
          s.set_parameter(RevisionSide::Before, "references", Selection::of_point("demo/Counter.java", {7, 11}));
        }) == ErrorCode::DuplicateElement);
  CHECK(s.annotation().version == 2);
  CHECK(s.annotation().events.size() == 2);
}

TEST_CASE("candidates") {
  const auto f = open_fixture("extractmethod_printer");
  auto s = session_for(f, "ExtractMethod");
  const auto invocations = s.candidates(RevisionSide::After, "invocation");
  CHECK(invocations.size() == f.data->after.elements_of_type(ElementType::MethodInvocation).size());
  CHECK(invocations.size() == 5);
  const auto bodies = s.candidates(RevisionSide::Before, "extracted code");
  CHECK(bodies.size() == 2);
  CHECK(code_of([&] { s.candidates(RevisionSide::After, "nope"); }) == ErrorCode::UnknownParameter);

  auto empty = std::make_shared<CommitData>();
  TypeRegistry reg;
  AnnotationSession blank(make_annotation("e", {"r", "s"}, reg.lookup_type("ExtractMethod"), "a"), empty,
                          reg.lookup_type("ExtractMethod"));
  CHECK(blank.candidates(RevisionSide::After, "invocation").empty());
}

TEST_CASE("clear_parameter") {
  const auto f = open_fixture("movefield_count");
  auto s = session_for(f, "MoveField");
  s.set_parameter(RevisionSide::Before, "moved field", Selection::of_point("demo/Counter.java", {4, 17}));
  s.autofill(RevisionSide::Before, "references");
  const auto refs = s.annotation().parameters.at({RevisionSide::Before, "references"});
  REQUIRE(refs.size() == 3);
  s.clear_parameter(RevisionSide::Before, "references", refs[1]);
  CHECK(s.annotation().parameters.at({RevisionSide::Before, "references"}).size() == 2);
  s.clear_parameter(RevisionSide::Before, "moved field");
  CHECK(s.annotation().parameters.at({RevisionSide::Before, "moved field"}).empty());
  const auto events = s.annotation().events.size();
  s.clear_parameter(RevisionSide::Before, "moved field");
  CHECK(s.annotation().events.size() == events + 1);
}

TEST_CASE("completeness and status transitions") {
  const auto f = open_fixture("extractmethod_printer");
  auto s = session_for(f, "ExtractMethod");
  auto report = s.completeness();
  CHECK_FALSE(report.verifiable);
  CHECK(report.missing.size() == 3);
  CHECK(code_of([&] { s.set_status(AnnotationStatus::Verified); }) == ErrorCode::IncompleteAnnotation);

  s.set_parameter(RevisionSide::Before, "extracted code", Selection::of_range({"Printer.java", 4, 9, 5, 49}));
  s.set_parameter(RevisionSide::After, "extracted method", Selection::of_point("Printer.java", {7, 20}));
  report = s.completeness();
  REQUIRE(report.missing.size() == 1);
  CHECK(report.missing[0] == ParamKey{RevisionSide::After, "invocation"});

  s.set_parameter(RevisionSide::After, "invocation", Selection::of_point("Printer.java", {4, 10}));
  CHECK(s.completeness().verifiable);
  s.set_status(AnnotationStatus::Verified);
  CHECK(s.annotation().status == AnnotationStatus::Verified);
  CHECK(code_of([&] { s.clear_parameter(RevisionSide::After, "invocation"); }) == ErrorCode::AnnotationLocked);
  s.set_status(AnnotationStatus::Draft);
  s.clear_parameter(RevisionSide::After, "invocation");
  s.set_status(AnnotationStatus::Rejected);
  CHECK(s.annotation().status == AnnotationStatus::Rejected);
  CHECK(s.annotation().events.back().kind == EventKind::StatusChange);
}

TEST_CASE("event timestamps never decrease and every mutation logs one event") {
  const auto f = open_fixture("movefield_count");
  std::vector<std::int64_t> times = {500, 300, 900, 100, 1000};
  size_t k = 0;
  auto s = session_for(f, "MoveField", [&] { return times[k++ % times.size()]; });
  s.set_parameter(RevisionSide::Before, "moved field", Selection::of_point("demo/Counter.java", {4, 17}));
  s.autofill(RevisionSide::Before, "references");
  s.clear_parameter(RevisionSide::Before, "references");
  s.autofill(RevisionSide::Before, "references");
  s.set_status(AnnotationStatus::Rejected);
  const auto& ev = s.annotation().events;
  REQUIRE(ev.size() == 5);
  for (size_t i = 1; i < ev.size(); ++i) CHECK(ev[i - 1].timestamp <= ev[i].timestamp);
  CHECK(ev[0].timestamp == 500);
  CHECK(ev[1].timestamp == 500);
  CHECK(ev[2].timestamp == 900);
  CHECK(s.annotation().version == 5);
}

TEST_CASE("type safety after random operation sequences") {
  const auto f = open_fixture("movefield_timeout");
  std::mt19937 rng(4);
  for (int round = 0; round < 20; ++round) {
    auto s = session_for(f, "MoveField");
    for (int step = 0; step < 30; ++step) {
      const RevisionSide side = rng() % 2 ? RevisionSide::Before : RevisionSide::After;
      const std::string param = rng() % 2 ? "moved field" : "references";
      const auto& index = f.data->index(side);
      const auto files = index.indexed_files();
      const auto& path = files[rng() % files.size()];
      const auto* src = index.source(path);
      const Position p = src->position_of(rng() % src->text().size());
      try {
        switch (rng() % 4) {
          case 0: s.set_parameter(side, param, Selection::of_point(path, p)); break;
          case 1: s.autofill(side, "references"); break;
          case 2: s.clear_parameter(side, param); break;
          default: {
            const Position q = src->position_of(rng() % src->text().size());
            s.set_parameter(side, param, Selection::of_range({path, p.line, p.col, q.line, q.col}));
          }
        }
      } catch (const Error&) {
      }
    }
    for (const auto& [key, ranges] : s.annotation().parameters) {
      const auto* schema = s.type().find(key.side, key.name);
      REQUIRE(schema);
      if (!schema->multiple) CHECK(ranges.size() <= 1);
      for (const auto& r : ranges) CHECK(f.data->index(key.side).find_exact(schema->element_type, r));
    }
  }
}

TEST_CASE("assign_type gives an untyped annotation its parameters") {
  Annotation a;
  a.id = "u";
  TypeRegistry reg;
  assign_type(a, reg.lookup_type("MoveClass"));
  CHECK(a.type_name == "MoveClass");
  CHECK(a.parameters.size() == 3);
  CHECK(a.version == 1);
}
