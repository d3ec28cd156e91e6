#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "maxahp/classical.hpp"
#include "maxahp/document.hpp"

using namespace maxahp;

namespace {

Problem vacation() { return load_problem(MAXAHP_DATA_DIR "/vacation.json"); }

void expect_vec_near(const PositiveVector& v, const std::vector<double>& want, double tol) {
  ASSERT_EQ(v.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(v[i], want[i], tol) << "entry " << i;
}

}  // namespace

TEST(Perron, UnitNormAndEigenEquation) {
  const MaxMatrix a{{1, 2}, {0.5, 1}};
  const auto r = perron_vector(a);
  EXPECT_NEAR(r.rho, 2.0, 1e-12);
  EXPECT_NEAR(std::hypot(r.v[0], r.v[1]), 1.0, 1e-12);
  EXPECT_NEAR(r.v[0] / r.v[1], 2.0, 1e-10);
}

// Reference vectors for the vacation problem, rounded to three decimals.
TEST(Classical, VacationExamplePerronVectors) {
  const auto start = std::chrono::steady_clock::now();
  const Problem p = vacation();
  const ClassicalResult r = classical_ahp(p);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 1.0);

  expect_vec_near(r.criteria_weights, {0.179, 0.239, 0.431, 0.818, 0.237}, 2e-3);
  const std::vector<std::vector<double>> reference = {{0.877, 0.46, 0.123, 0.064},
                                                    {0.091, 0.748, 0.628, 0.196},
                                                    {0.57, 0.096, 0.096, 0.81},
                                                    {0.396, 0.355, 0.768, 0.357},
                                                    {0.723, 0.642, 0.088, 0.242}};
  const std::vector<std::string> rankings = {"1>2>3>4", "2>3>4>1", "4>1>2=3", "3>1>4>2", "1>2>4>3"};
  for (std::size_t k = 0; k < 5; ++k) {
    expect_vec_near(r.per_criterion[k], reference[k], 2e-3);
    EXPECT_EQ(r.per_criterion_rankings[k].to_string(), rankings[k]);
  }
  expect_vec_near(r.weights, {0.919, 0.745, 0.862, 0.757}, 2e-3);
  EXPECT_EQ(r.ranking.to_string(), "1>3>4>2");
}

TEST(Classical, RequiresCriteriaMatrix) {
  const Problem p = load_problem(MAXAHP_DATA_DIR "/single_criterion.json");
  try {
    classical_ahp(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingCriteria);
  }
}
