#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gammacm/classical.hpp"
#include "gammacm/errors.hpp"
#include "gammacm/oracle.hpp"
#include "spec_helpers.hpp"

using namespace gammacm;
using namespace gammacm::oracle;
using namespace gammacm::testing;

namespace {

RatioSpec p1(double alpha, double beta, double a) {
  return classical::VhatSpec{Number::literal(a), {Number::literal(alpha)}, {Number::literal(beta)}}.to_ratio_spec();
}

}  // namespace

TEST_CASE("cm_test on reference functions") {
  CHECK(cm_test([](double x) { return std::exp(-x); }).status == Status::Supported);
  CHECK(cm_test([](double x) { return 1.0 / (1.0 + x); }).status == Status::Supported);
  const auto v = cm_test([](double x) { return 2.0 + std::sin(x); });
  REQUIRE(v.is_false());
  CHECK(v.evidence["k"].get<int>() <= 2);
}

TEST_CASE("cm_test violations reproduce with extended precision") {
  const auto v = cm_test([](double x) { return 2.0 + std::sin(x); });
  REQUIRE(v.is_false());
  const long double x = v.evidence["x"].get<double>();
  const long double h = v.evidence["h"].get<double>();
  const int k = v.evidence["k"].get<int>();
  long double d = 0;
  long double c = 1;
  for (int j = 0; j <= k; ++j) {
    d += ((j % 2 == 0) ? c : -c) * (2.0L + std::sin(x + j * h));
    c = c * (k - j) / (j + 1);
  }
  // (-1)^k Delta_h^k f = sum_j (-1)^j C(k,j) f(x + j h)
  CHECK(d < 0);
}

TEST_CASE("config validation") {
  DiffTestConfig c;
  c.max_order = 13;
  CHECK_THROWS_AS(c.validate(), InputError);
  c.max_order = 4;
  c.steps = {0.1, -0.1};
  CHECK_THROWS_AS(c.validate(), InputError);
  CHECK(DiffTestConfig::default_grid().size() == 60);
  CHECK(DiffTestConfig::default_grid().front() == doctest::Approx(0.05));
  CHECK(DiffTestConfig::default_grid().back() == doctest::Approx(50.0));
}

TEST_CASE("lcm_oracle examples") {
  const auto ex2 = q_spec(0.5, {{r(1, 6), r(0), r(5)}}, {{r(1, 3), r(3), r(1)}, {r(1, 2), r(2), r(1)}});
  CHECK(lcm_oracle(ex2).status == Status::Supported);
  CHECK(lcm_oracle(p1(1, 2, 0.3)).is_false());
  const auto leg = classical_spec(r(1, 4), {{r(1), r(0), r(1)}, {r(1), r(1, 2), r(1)}}, {{r(2), r(0), r(1)}});
  CHECK(lcm_oracle(leg).status == Status::Supported);
}

TEST_CASE("bernstein_oracle examples") {
  const auto id = classical_spec(r(1), {{r(1), r(1), r(1)}}, {{r(1), r(1), r(1)}});
  CHECK(bernstein_oracle(id).status == Status::Supported);
  const auto vh = classical::VhatSpec{r(1), {r(1), r(2)}, {Number::literal(1.5), Number::literal(1.5)}}.to_ratio_spec();
  CHECK(bernstein_oracle(vh).status == Status::Supported);
  const auto rev = classical::VhatSpec{r(1), {Number::literal(1.5), Number::literal(1.5)}, {r(1), r(2)}}.to_ratio_spec();
  CHECK(bernstein_oracle(rev).is_false());
}

TEST_CASE("gamma_ratio_F") {
  CHECK(gamma_ratio_F(1.0, 1.0, 2.0, {1.0}, {2.0}) > gamma_ratio_F(2.0, 1.0, 2.0, {1.0}, {2.0}));
  CHECK(gamma_ratio_F(3.0, 1.0, 2.0, {1.5, 2.0}, {1.5, 2.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_ratio_F(3.0, 2.0, 2.0, {1.0}, {2.0}) == doctest::Approx(1.0).epsilon(1e-14));
  const auto m = gamma_ratio_decrease(1.0, 2.0, {1.0}, {2.0});
  CHECK(m.strictly_decreasing);
  CHECK(m.a_grid.size() == 64);
  CHECK_THROWS_AS(gamma_ratio_decrease(2.0, 1.0, {1.0}, {2.0}), InputError);
  CHECK_THROWS_AS(gamma_ratio_decrease(1.0, 2.0, {3.0}, {2.0}), InputError);
}

TEST_CASE("property: gamma_ratio_F decreases under the hypotheses") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 50; ++it) {
    const int p = 1 + it % 4;
    std::vector<double> beta(p), alpha(p);
    for (auto& b : beta) b = 0.2 + 3 * u(rng);
    std::sort(beta.begin(), beta.end());
    for (int i = 0; i < p; ++i) alpha[i] = beta[i] * (0.3 + 0.6 * u(rng));
    std::sort(alpha.begin(), alpha.end());
    const double X = 0.2 + 2 * u(rng);
    const double Y = X * (1.05 + 3.95 * u(rng));
    const auto m = gamma_ratio_decrease(X, Y, alpha, beta);
    CHECK_MESSAGE(m.strictly_decreasing, "it=", it, " worst_step=", m.worst_step);
  }
}

TEST_CASE("rising factorial") {
  CHECK(rising_factorial_F(0.5, 1.0, 1, 2) == doctest::Approx(0.1714285714).epsilon(1e-9));
  CHECK(rising_factorial_F(1.0, 1.0, 1, 2) == doctest::Approx(0.1666666667).epsilon(1e-9));
  CHECK(rising_factorial_decrease(1.0, 1, 2).strictly_decreasing);
  double prev = INFINITY;
  for (double a : {0.5, 1.0, 2.0, 5.0}) {
    const double v = rising_factorial_F(a, 2.0, 1, 3);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(rising_factorial_F(1.0, 1.0, 2, 2), InputError);
}

TEST_CASE("p2_conditions") {
  const auto v = p2_conditions({1, 1, 2, 2}, {2, 2, 1, 1});
  REQUIRE(v.is_true());
  CHECK(v.evidence["reconstruction"]["Y"] == 2.0);
  CHECK(p2_conditions({1, 1, 1, 1}, {1, 1, 1, 1}).reason == "p2_b");
  CHECK(p2_conditions({1, 1, 2, 2}, {3, 3, 1.5, 1.5}).reason == "p2_d");
  CHECK(p2_conditions({1, 1, 2, 3}, {2, 2, 1, 1}).reason == "p2_b");
}

TEST_CASE("property: certified p2 instances satisfy the gamma ratio hypotheses") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int certified = 0;
  for (int it = 0; it < 400; ++it) {
    const double Y = 1.1 + 3 * u(rng);
    const double m1 = 0.5 + 2 * u(rng);
    const double m2 = m1 * (0.3 + 0.7 * u(rng));
    const double n3 = 0.5 + 2 * u(rng);
    const double n4 = n3 * (0.3 + 0.7 * u(rng));
    const auto v = p2_conditions({m1, m2, m1 * Y, m2 * Y}, {n3 * Y, n4 * Y, n3, n4});
    if (!v.is_true()) continue;
    ++certified;
    const auto& rec = v.evidence["reconstruction"];
    const auto A = rec["A"].get<std::vector<double>>();
    const auto B = rec["B"].get<std::vector<double>>();
    std::vector<double> alpha = {1 / A[0], 1 / A[1]};
    std::vector<double> beta = {1 / B[0], 1 / B[1]};
    std::sort(alpha.begin(), alpha.end());
    std::sort(beta.begin(), beta.end());
    const auto m = gamma_ratio_decrease(rec["X"].get<double>(), rec["Y"].get<double>(), alpha, beta);
    CHECK(m.nonincreasing);
  }
  CHECK(certified > 10);
}
