#include <gtest/gtest.h>

#include <filesystem>

#include "maxahp/document.hpp"

using namespace maxahp;

namespace {

std::string data(const char* file) { return std::string(MAXAHP_DATA_DIR "/") + file; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::SchemaError;
}

}  // namespace

TEST(ParseScalar, DecimalsAndFractions) {
  EXPECT_DOUBLE_EQ(parse_scalar("1"), 1.0);
  EXPECT_DOUBLE_EQ(parse_scalar("1/7"), 1.0 / 7.0);
  EXPECT_DOUBLE_EQ(parse_scalar(" 0.25 "), 0.25);
  EXPECT_DOUBLE_EQ(parse_scalar("1.5/3"), 0.5);
  EXPECT_DOUBLE_EQ(parse_scalar("2e1"), 20.0);
  EXPECT_EQ(code_of([] { parse_scalar("3/0"); }), ErrorCode::DivisionByZero);
  for (const char* bad : {"", "abc", "1/", "/2", "1/2/3", "1.2.3", "nan", "inf", "1 2"})
    EXPECT_EQ(code_of([&] { parse_scalar(bad); }), ErrorCode::MalformedNumber) << bad;
}

TEST(LoadProblem, VacationFixture) {
  const Problem p = load_problem(data("vacation.json"));
  EXPECT_EQ(p.m(), 5u);
  EXPECT_EQ(p.n(), 4u);
  ASSERT_TRUE(p.criteria.has_value());
  EXPECT_EQ(p.criteria_names.front(), "cost");
  EXPECT_EQ(p.alternatives[1], "Quebec");
  EXPECT_DOUBLE_EQ(p.matrices[0](2, 0), 1.0 / 7.0);
}

TEST(LoadProblem, SingleMatrix) {
  const Problem p = load_problem(data("single_criterion.json"));
  EXPECT_EQ(p.m(), 1u);
  EXPECT_FALSE(p.criteria.has_value());
}

TEST(LoadProblem, ReciprocityViolationNamesTheEntry) {
  try {
    load_problem(data("bad_reciprocal.json"));
    FAIL();
  } catch (const SRValidationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReciprocityViolated);
    ASSERT_FALSE(e.entries().empty());
    EXPECT_EQ(e.entries().front(), (Edge{0, 1}));
    EXPECT_NE(std::string(e.what()).find("'bad'"), std::string::npos);
  }
}

TEST(LoadProblem, SchemaErrors) {
  EXPECT_EQ(code_of([] { load_problem(data("does_not_exist.json")); }), ErrorCode::SchemaError);
  EXPECT_EQ(code_of([] { load_matrix_document(data("malformed.json")); }), ErrorCode::SchemaError);
  auto from = [](const char* text) { problem_from_document(problem_document_from_json(nlohmann::json::parse(text))); };
  EXPECT_EQ(code_of([&] { from(R"({"matrices": []})"); }), ErrorCode::SchemaError);
  EXPECT_EQ(code_of([&] { from(R"({"matrices": [{"entries": [["1"]]}], "alternatives": ["a", "b"]})"); }),
            ErrorCode::SchemaError);
  EXPECT_EQ(code_of([&] { from(R"({"matrices": [{"entries": [["1", "x"], ["1", "1"]]}]})"); }),
            ErrorCode::MalformedNumber);
  EXPECT_EQ(code_of([&] { from(R"({"matrices": [{"entries": [["1"]]}], "criteria": {"weights": ["1", "2"]}})"); }),
            ErrorCode::SchemaError);
  EXPECT_EQ(code_of([&] { from(R"({"matrices": [{"entries": [["1"]]}], "criteria": {"weights": ["-1"]}})"); }),
            ErrorCode::InfeasibleAlpha);
  EXPECT_EQ(code_of([&] { from(R"({"matrices": [{"entries": [[true]]}]})"); }), ErrorCode::SchemaError);
  EXPECT_EQ(code_of([&] { from(R"({"matrices": [{"entries": [["1"]]}], "tolerances": {"tie": -1}})"); }),
            ErrorCode::SchemaError);
}

TEST(LoadProblem, ExplicitWeightsAndTolerances) {
  const auto doc = problem_document_from_json(nlohmann::json::parse(
      R"({"matrices": [{"name": "a", "entries": [["1", "2"], ["1/2", "1"]]}, {"entries": [["1", "1/3"], ["3", "1"]]}],
          "criteria": {"weights": ["1", "1/2"]}, "tolerances": {"tie": 0.01}})"));
  const Problem p = problem_from_document(doc);
  ASSERT_TRUE(p.alpha.has_value());
  EXPECT_DOUBLE_EQ((*p.alpha)[1], 0.5);
  EXPECT_DOUBLE_EQ(p.tol.tie, 0.01);
  EXPECT_DOUBLE_EQ(p.tol.algebraic, Tolerances{}.algebraic);
  EXPECT_EQ(p.criteria_names, (std::vector<std::string>{"a", "2"}));
  Tolerances over;
  over.tie = 0.2;
  EXPECT_DOUBLE_EQ(problem_from_document(doc, over).tol.tie, 0.2);
}

TEST(RoundTrip, SaveAndReloadIsBitIdentical) {
  const auto dir = std::filesystem::temp_directory_path() / "maxahp_roundtrip";
  std::filesystem::create_directories(dir);
  for (const char* f : {"vacation.json", "unique_minmax.json", "common_subeigenvector.json", "single_criterion.json"}) {
    const ProblemDocument doc = load_problem_document(data(f));
    const auto path = (dir / f).string();
    save_problem_document(doc, path);
    const ProblemDocument again = load_problem_document(path);
    EXPECT_EQ(to_json(doc), to_json(again)) << f;
    const Problem a = problem_from_document(doc), b = problem_from_document(again);
    ASSERT_EQ(a.m(), b.m());
    for (std::size_t k = 0; k < a.m(); ++k) EXPECT_TRUE(a.matrices[k].matrix() == b.matrices[k].matrix()) << f;
    EXPECT_EQ(read_text_file(path), to_json(again).dump(2) + "\n");
  }
  std::filesystem::remove_all(dir);
}
