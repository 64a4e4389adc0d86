#include <doctest.h>

#include <cmath>
#include <random>

#include "gammacm/errors.hpp"
#include "gammacm/oracle.hpp"
#include "gammacm/qmonotone.hpp"
#include "spec_helpers.hpp"

using namespace gammacm;
using namespace gammacm::qmonotone;
using namespace gammacm::testing;

namespace {

RatioSpec example2(double q, Number a, Number b, Number c) {
  return q_spec(q, {{r(1, 6), a, r(5)}}, {{r(1, 3), b, r(1)}, {r(1, 2), c, r(1)}});
}

RatioSpec example3(Number a1, Number a2, Number a3, Number a4, Number beta1) {
  const double s2 = std::sqrt(2.0);
  const double s3 = std::sqrt(3.0);
  // b_1 = 2 a_1 + 3, b_2 = 5 a_2 + 5
  return q_spec(0.5,
                {{Number(s2 / 2), a1, r(1), "u"}, {Number(s3 / 5), a2, r(1), "v"}, {Number(M_PI), a3, r(1), "w"}, {r(1), a4, r(1), "z"}},
                {{Number(s2), Number(2.0) * a1 + Number(3.0), beta1, "u"}, {Number(s3), Number(5.0) * a2 + Number(5.0), r(2), "v"}});
}

RatioSpec pair(double q, Number alpha, Number a, Number beta, Number b) {
  return q_spec(q, {{r(1), a, alpha}}, {{r(1), b, beta}});
}

}  // namespace

TEST_CASE("check_log2_cm examples") {
  CHECK(check_log2_cm(example2(0.5, r(0), r(3), r(2))).is_true());
  CHECK(check_log2_cm(q_spec(0.5, {{r(1, 3), r(0), r(1)}}, {{r(1, 2), r(0), r(1)}})).is_false());
  CHECK(check_log2_cm(pair(0.5, r(1), r(1), r(1), r(1))).is_true());
}

TEST_CASE("check_bernstein examples") {
  CHECK(check_bernstein(pair(0.5, r(1), r(1), r(1), r(1))).is_true());
  CHECK(check_bernstein(pair(0.5, r(1), r(2), r(1), r(1))).is_false());
  const auto v = check_bernstein(pair(0.5, r(1), r(1), r(1), r(2)));
  CHECK(v.is_false());
  CHECK(v.reason == "bernstein_boundary");
  CHECK_THROWS_AS(check_bernstein(example2(0.5, r(0), r(3), r(2))), DomainError);
}

TEST_CASE("check_lcm examples") {
  const auto ex2 = check_lcm(example2(0.5, r(0), r(3), r(2)));
  CHECK(ex2.is_true());
  CHECK(ex2.evidence["balance"]["order"] == "equal");
  CHECK(check_lcm(example2(0.5, r(0), r(0), r(0))).is_false());
  CHECK(check_lcm(example2(0.5, r(1), r(0), r(0))).is_false());
  CHECK(check_lcm(example3(r(0), r(0), r(0), r(0), r(2))).is_true());
  const auto v = check_lcm(pair(0.5, r(2), r(1), r(1), r(1)));
  CHECK(v.is_false());
  CHECK(v.reason == "lcm_balance");
}

TEST_CASE("example 3 for every shift pattern") {
  for (int mask = 0; mask < 16; ++mask) {
    auto a = [&](int i) { return (mask >> i) & 1 ? Number::literal(0.7) : r(0); };
    CHECK_MESSAGE(check_lcm(example3(a(0), a(1), a(2), a(3), r(2))).is_true(), "mask ", mask);
  }
  const auto v = check_lcm(example3(r(0), r(0), r(0), r(0), Number::literal(0.4)));
  CHECK(v.is_false());
  CHECK(v.reason == "lcm_balance");
}

TEST_CASE("check_fq_example1 examples") {
  CHECK(check_fq_example1(pair(0.5, r(1), r(0), r(2), r(1))).is_true());
  const auto v = check_fq_example1(pair(0.6, r(1), r(0), r(2), r(1)));
  CHECK(v.is_false());
  CHECK(v.evidence["n"] == 1);
  CHECK(check_fq_example1(pair(0.5, r(1), r(1), r(1), r(1))).is_true());
  CHECK_THROWS_AS(check_fq_example1(example2(0.5, r(0), r(3), r(2))), InputError);
}

TEST_CASE("balance order") {
  CHECK(balance_order(example2(0.5, r(0), r(3), r(2))) == exact::Order::Equal);
  CHECK(balance_order(pair(0.5, Number(0.1 + 0.2), r(0), Number(0.3), r(0))) == exact::Order::Unknown);
}

TEST_CASE("limit of the log-derivative at infinity") {
  for (double q : {0.3, 0.5, 0.8}) {
    const auto s = example3(r(0), r(0), r(0), r(0), r(2));
    RatioSpec sq = s;
    sq.q = QParam(q);
    const double x = 1e3 / std::log(1 / q);
    double sa = 0;
    double sb = 0;
    for (const auto& f : sq.numerator) sa += f.w() * f.A();
    for (const auto& f : sq.denominator) sb += f.w() * f.A();
    const double got = -log_ratio_derivative(sq, x, 1).value;
    CHECK(got == doctest::Approx((sb - sa) * std::log(1 / (1 - q))).epsilon(1e-6));
  }
}

TEST_CASE("property: unit-scale specializations agree with the general checker") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> shift(0, 6);
  std::uniform_int_distribution<int> wt(1, 8);
  std::uniform_int_distribution<int> len(1, 2);
  const double qs[] = {0.3, 0.5, 0.7};
  int decided = 0;
  for (int it = 0; it < 200; ++it) {
    std::vector<F> num;
    std::vector<F> den;
    for (int j = len(rng); j > 0; --j) num.push_back({r(1), r(shift(rng), 2), r(wt(rng), 2)});
    for (int j = len(rng); j > 0; --j) den.push_back({r(1), r(shift(rng), 2), r(wt(rng), 2)});
    const auto s = q_spec(qs[it % 3], num, den);
    const auto general = check_lcm(s);
    const auto special = check_fq_example1(s);
    if (general.status == Status::Inconclusive || special.status == Status::Inconclusive) continue;
    ++decided;
    CHECK_MESSAGE(general.status == special.status, "it=", it, " general=", general.detail, " special=", special.detail);
  }
  CHECK(decided > 150);
}

TEST_CASE("property: certified q verdicts agree with finite differences") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> shift(0, 6);
  std::uniform_int_distribution<int> wt(1, 6);
  oracle::DiffTestConfig cfg;
  cfg.x_grid.clear();
  for (int i = 0; i < 20; ++i) cfg.x_grid.push_back(0.1 * std::pow(200.0, i / 19.0));
  int trues = 0;
  for (int it = 0; it < 40; ++it) {
    const auto s = example2(0.5, r(shift(rng), 2), r(shift(rng), 2), r(shift(rng), 2));
    const auto v = check_lcm(s);
    const auto o = oracle::lcm_oracle(s, cfg);
    if (v.is_true()) {
      ++trues;
      CHECK_MESSAGE(!o.is_false(), "it=", it, " ", o.detail);
    }
  }
  CHECK(trues > 5);
}
