#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <random>

#include "gammacm/classical.hpp"
#include "gammacm/errors.hpp"
#include "spec_helpers.hpp"

using namespace gammacm;
using namespace gammacm::classical;
using namespace gammacm::testing;

namespace {

RatioSpec legendre(Number theta) { return classical_spec(theta, {{r(1), r(0), r(1)}, {r(1), r(1, 2), r(1)}}, {{r(2), r(0), r(1)}}); }

RatioSpec single(Number alpha, Number a, Number beta, Number b) {
  return classical_spec(r(1), {{r(1), a, alpha}}, {{r(1), b, beta}});
}

// A = (1,1), alpha = (1,1), a = (0,1); B = (1), beta = (2), b
RatioSpec sherman_example(Number b) {
  return classical_spec(r(1), {{r(1), r(0), r(1)}, {r(1), r(1), r(1)}}, {{r(1), b, r(2)}});
}

// int_0^inf e^{-xu} u^power Q(u) du, split at 1 so the endpoint behaviour of
// each piece is handled by the matching rule.
double laplace(const RatioSpec& s, double x, int power) {
  auto f = [&](double u) { return std::exp(-x * u) * std::pow(u, power) * q_kernel(s, u); };
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  return ts.integrate(f, 0.0, 1.0) + es.integrate([&](double t) { return f(1.0 + t); });
}

}  // namespace

TEST_CASE("q_kernel examples") {
  const auto id = classical_spec(r(1), {{r(2), r(1), r(1)}}, {{r(2), r(1), r(1)}});
  for (double u : {1e-6, 0.1, 1.0, 10.0}) CHECK(q_kernel(id, u) == 0.0);
  const auto one = single(r(1), r(0), r(1), r(1));
  for (double u : {0.1, 1.0, 10.0}) CHECK(q_kernel(one, u) == doctest::Approx(1.0).epsilon(1e-13));
  const auto leg = legendre(r(1, 4));
  for (double u : {1e-6, 1e-3, 0.1, 1.0, 10.0, 100.0}) CHECK(std::fabs(q_kernel(leg, u)) < 1e-9);
  // u Q(u) -> sum alpha A - sum beta B
  const auto unb = classical_spec(r(1), {{r(3), r(0), r(1)}}, {{r(1), r(1), r(1)}});
  CHECK(1e-6 * q_kernel(unb, 1e-6) == doctest::Approx(2.0).epsilon(1e-4));
  CHECK_THROWS_AS(q_kernel(leg, 0.0), DomainError);
}

TEST_CASE("q_kernel against a long-double direct sum") {
  const auto s = classical_spec(r(1), {{r(1), Number::literal(0.3), r(2)}, {r(3), r(1), Number::literal(0.5)}},
                                {{r(2), Number::literal(0.7), Number::literal(1.75)}});
  for (double u : {1e-3, 0.05, 0.7, 3.0, 40.0}) {
    long double ref = 0;
    for (const auto& f : s.numerator) ref += f.w() * std::exp(-f.a() * u / f.A()) / -std::expm1(-static_cast<long double>(u) / f.A());
    for (const auto& f : s.denominator) ref -= f.w() * std::exp(-f.a() * u / f.A()) / -std::expm1(-static_cast<long double>(u) / f.A());
    CHECK(q_kernel(s, u) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-11));
  }
}

TEST_CASE("kernel asymptotics and necessary conditions") {
  const auto k = kernel_asymptotics(legendre(r(1, 4)));
  CHECK(k.leading_coeff_at_0.exact == Rational(0));
  CHECK(k.const_at_0.exact == Rational(0));
  CHECK(necessary_conditions(legendre(r(1, 4))).is_true());

  const auto a1 = single(r(1), r(1), r(1), r(0));
  CHECK(kernel_asymptotics(a1).const_at_0.exact == Rational(-1));
  const auto na = necessary_conditions(a1);
  CHECK(na.is_false());
  CHECK(na.reason == "necessary_a");

  const auto b = single(r(1), Number::literal(0.2), r(1), Number::literal(0.1));
  CHECK(*kernel_asymptotics(b).numerator_rate->exact > *kernel_asymptotics(b).denominator_rate->exact);
  CHECK(necessary_conditions(b).is_false());
  // (a) holds here: 2(1/2 - 0.2) - (1/2 - 0.1) = 0.2
  const auto only_b = classical_spec(r(1), {{r(1), Number::literal(0.2), r(2)}}, {{r(2), Number::literal(0.1), r(1)}});
  CHECK(necessary_conditions(only_b).reason == "necessary_b");

  const auto unb = classical_spec(r(1), {{r(3), r(0), r(1)}}, {{r(1), r(1), r(1)}});
  CHECK(necessary_conditions(unb).reason == "balance");
}

TEST_CASE("entropy rho") {
  CHECK(entropy_rho(single(r(1), r(0), r(1), r(1))) == doctest::Approx(1.0));
  CHECK(std::fabs(log_entropy_rho(legendre(r(1, 4))) - std::log(0.25)) < 1e-14);
  const auto s = classical_spec(r(1), {{r(2), r(0), r(1)}}, {{r(1), r(0), r(1)}, {r(1), r(0), r(1)}});
  CHECK(entropy_rho(s) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(theta_vs_rho(legendre(r(1, 4))) == exact::Order::Equal);
  CHECK(theta_vs_rho(legendre(Number::literal(0.2499))) == exact::Order::Less);
  CHECK(theta_vs_rho(legendre(Number(0.25 * (1 + 1e-14)))) == exact::Order::Unknown);
}

TEST_CASE("exact kernel reduction") {
  const auto leg = exact_kernel_reduction(legendre(r(1, 4)));
  CHECK(leg.is_true());
  CHECK(exact_kernel_reduction(sherman_example(r(2))).is_true());
  // p = 1 with alpha = 1, beta = 2 at a = 0.3: Q is negative near 0
  const auto p1 = classical_spec(r(2), {{r(1), Number::literal(0.3), r(1)}}, {{r(1, 2), Number::literal(0.3), r(2)}});
  CHECK(exact_kernel_reduction(p1).is_false());
  const auto inexact = classical_spec(r(1), {{Number(std::sqrt(2.0)), r(0), r(1)}}, {{Number(std::sqrt(2.0)), r(1), r(1)}});
  CHECK(exact_kernel_reduction(inexact).status == Status::Inconclusive);
}

TEST_CASE("q_nonneg") {
  const auto leg = q_nonneg(legendre(r(1, 4)));
  CHECK(leg.status == Status::Supported);
  const auto bad = as_vhat(classical_spec(r(2), {{r(1), Number::literal(0.3), r(1)}}, {{r(1, 2), Number::literal(0.3), r(2)}}));
  REQUIRE(bad.has_value());
  CHECK(q_nonneg(bad->to_ratio_spec()).is_false());
  VhatSpec ok{Number::literal(0.5), {r(1)}, {r(2)}};
  CHECK(q_nonneg(ok.to_ratio_spec()).status == Status::Supported);
  GridConfig g;
  g.points = 1;
  CHECK_THROWS_AS(g.validate(), InputError);
}

TEST_CASE("sufficient_old") {
  CHECK(sufficient_old(single(r(1), r(0), r(1), r(1))).is_true());
  CHECK(sufficient_old(single(r(1), r(0), r(1), Number::literal(0.5))).status == Status::Inconclusive);
  const auto b = classical_spec(r(1), {{r(1), r(0), r(2)}, {r(1), r(0), r(1)}}, {{r(1), r(1), r(1)}, {r(1), r(2), r(2)}});
  CHECK(sufficient_old(b).is_true());
}

TEST_CASE("sherman inequality and sufficient conditions") {
  const StochasticMatrix one({{r(1)}});
  CHECK(sherman_inequality({r(0)}, {r(1)}, {r(2)}, {r(1)}, one).is_true());
  const StochasticMatrix half({{r(1, 2), r(1, 2)}});
  CHECK(sherman_inequality({r(0), r(2)}, {Number::literal(1.5)}, {r(1), r(1)}, {r(2)}, half).is_true());
  CHECK(sherman_inequality({r(0), r(2)}, {Number::literal(0.5)}, {r(1), r(1)}, {r(2)}, half).status == Status::Inconclusive);
  CHECK_THROWS_AS(StochasticMatrix({{r(1, 2), r(1, 3)}}), InputError);
  CHECK_THROWS_AS(StochasticMatrix({{r(-1), r(2)}}), InputError);

  CHECK(sherman_sufficient(single(r(1), r(0), r(1), r(1)), one).is_true());
  CHECK(sherman_sufficient(sherman_example(r(2)), half).is_true());
  CHECK(sherman_sufficient(sherman_example(Number::literal(1.2)), half).status == Status::Inconclusive);
  CHECK_THROWS_AS(sherman_sufficient(sherman_example(r(2)), one), InputError);
  CHECK(sherman_sufficient_auto(sherman_example(r(2))).is_true());
  CHECK(sherman_sufficient_auto(legendre(r(1, 4))).status == Status::Inconclusive);
}

TEST_CASE("property: certified sherman instances hold on the probes") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int certified = 0;
  for (int it = 0; it < 300; ++it) {
    const std::size_t p = 1 + it % 3;
    const std::size_t s = 1 + (it / 3) % 2;
    std::vector<Number> x, y, c, d;
    for (std::size_t i = 0; i < p; ++i) x.emplace_back(2 * u01(rng));
    for (std::size_t j = 0; j < s; ++j) y.emplace_back(3 * u01(rng));
    for (std::size_t i = 0; i < p; ++i) c.emplace_back(0.1 + 2 * u01(rng));
    for (std::size_t j = 0; j < s; ++j) d.emplace_back(0.1 + u01(rng));
    std::vector<std::vector<Number>> rows(s);
    for (auto& row : rows) {
      std::vector<double> w(p);
      double sum = 0;
      for (auto& v : w) sum += (v = u01(rng) + 1e-3);
      for (auto v : w) row.emplace_back(v / sum);
    }
    const auto v = sherman_inequality(x, y, c, d, StochasticMatrix(rows));
    if (!v.is_true()) continue;
    ++certified;
    for (double u : kDefaultProbes) {
      double lhs = 0, rhs = 0;
      for (std::size_t j = 0; j < s; ++j) lhs += d[j].value * std::exp(-u * y[j].value);
      for (std::size_t i = 0; i < p; ++i) rhs += c[i].value * std::exp(-u * x[i].value);
      CHECK(lhs <= rhs * (1 + 1e-12));
    }
  }
  CHECK(certified > 10);
}

TEST_CASE("vhat and leblanc-johnson") {
  CHECK(vhat_check({r(1), {r(1), r(2)}, {Number::literal(1.5), Number::literal(1.5)}}).is_true());
  CHECK(vhat_check({r(3), {r(2), r(5)}, {r(2), r(5)}}).is_true());
  CHECK(vhat_check({r(1), {r(2), r(1)}, {r(1), r(1)}}).status == Status::Inconclusive);
  CHECK_THROWS_AS(vhat_check({r(1), {r(1)}, {r(1), r(2)}}), InputError);

  const auto rt = VhatSpec{r(1), {r(1), r(2)}, {Number::literal(1.5), Number::literal(1.5)}}.to_ratio_spec();
  const auto back = as_vhat(rt);
  REQUIRE(back.has_value());
  CHECK(back->a.exact == Rational(1));

  const auto lj = [](Number a, Number theta) {
    return classical_spec(theta, {{r(3), a, r(1)}, {r(2), a, r(1)}}, {{r(1), a, r(2)}, {r(1), a, r(3)}});
  };
  CHECK(entropy_rho(lj(r(1, 2), r(108))) == doctest::Approx(108.0).epsilon(1e-13));
  CHECK(leblanc_johnson_check(lj(r(1, 2), r(108))).is_true());
  CHECK(leblanc_johnson_check(lj(r(1, 2), r(107))).status == Status::Inconclusive);
  const auto low = leblanc_johnson_check(lj(Number::literal(0.4), r(108)));
  CHECK(low.status == Status::Inconclusive);
  CHECK(low.evidence["kernel"] == false);
  // rho = 2^2
  CHECK(leblanc_johnson_check(classical_spec(r(4), {{r(2), r(1), r(1)}}, {{r(1), r(1), r(2)}})).is_true());
  CHECK_THROWS_AS(leblanc_johnson_check(sherman_example(r(2))), InputError);
}

TEST_CASE("p1_exact") {
  CHECK(p1_exact(r(1), r(2), r(1, 2)).is_true());
  CHECK(p1_exact(r(1), r(2), Number::literal(0.3)).is_false());
  CHECK(p1_exact(r(2), r(2), r(0)).is_true());
  CHECK(p1_exact(r(2), r(1), r(1)).is_false());
}

TEST_CASE("property: p1_exact and the kernel scan agree where alpha <= beta") {
  // For alpha > beta the exact criterion concerns (log W)', whose value at 0+
  // is -inf; the kernel of V-hat can stay positive there.
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> w(0.05, 3.0);
  std::uniform_real_distribution<double> sh(0.0, 2.0);
  int checked = 0;
  while (checked < 40) {
    const double al = std::round(w(rng) * 100) / 100;
    const double be = std::round(w(rng) * 100) / 100;
    const double a = std::round(sh(rng) * 100) / 100;
    if (al > be) continue;
    ++checked;
    const auto exact_v = p1_exact(Number::literal(al), Number::literal(be), Number::literal(a));
    const auto scan = q_nonneg(VhatSpec{Number::literal(a), {Number::literal(al)}, {Number::literal(be)}}.to_ratio_spec());
    CHECK_MESSAGE(exact_v.is_false() == scan.is_false(), "alpha=", al, " beta=", be, " a=", a);
  }
}

TEST_CASE("check_lcm_classical on the duplication family") {
  const auto t = check_lcm_classical(legendre(r(1, 4)));
  CHECK(t.is_true());
  const auto f = check_lcm_classical(legendre(Number::literal(0.2499)));
  CHECK(f.is_false());
  CHECK(f.reason == "theta_lt_rho");
  CHECK(check_lcm_classical(legendre(r(1, 5))).is_false());
  const auto unb = check_lcm_classical(classical_spec(r(1), {{r(3), r(0), r(1)}}, {{r(1), r(1), r(1)}}));
  CHECK(unb.is_false());
  CHECK(unb.reason == "balance");
}

TEST_CASE("representation formulas by quadrature") {
  const auto s = sherman_example(r(2));
  REQUIRE(check_lcm_classical(s).is_true());
  for (double x : {0.5, 1.0, 3.0}) {
    const double lhs = -log_ratio_derivative(s, x, 1).value + std::log(s.theta.value);
    const double rhs = laplace(s, x, 0) + std::log(s.theta.value) - log_entropy_rho(s);
    CHECK(std::fabs(lhs - rhs) < 1e-7);
    const double second = log_ratio_derivative(s, x, 2).value;
    CHECK(std::fabs(second - laplace(s, x, 1)) < 1e-7);
  }
  const auto leg = legendre(r(1, 4));
  for (double x : {0.5, 1.0, 3.0}) {
    const double lhs = -log_ratio_derivative(leg, x, 1).value + std::log(leg.theta.value);
    CHECK(std::fabs(lhs) < 1e-7);
  }
}

TEST_CASE("property: sufficient families are sound on random specs") {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> len(1, 3);
  std::uniform_int_distribution<int> small(1, 4);
  std::uniform_int_distribution<int> shift(0, 8);
  int certified = 0;
  for (int it = 0; it < 150; ++it) {
    std::vector<F> num, den;
    for (int i = len(rng); i > 0; --i) num.push_back({r(small(rng), small(rng)), r(shift(rng), 4), r(small(rng))});
    Rational total(0);
    for (const auto& f : num) total = total + *f.A.exact * *f.alpha.exact;
    const int s = len(rng);
    for (int j = 0; j < s; ++j) {
      const Rational B(small(rng), small(rng));
      den.push_back({Number(B), r(shift(rng), 2), Number(total / Rational(s) / B)});
    }
    const auto spec = classical_spec(r(1), num, den);
    for (const auto& [name, v] : sufficient_families(spec)) {
      if (!v.is_true()) continue;
      ++certified;
      CHECK_MESSAGE(necessary_conditions(spec).is_true(), name, " it=", it);
      CHECK_MESSAGE(!q_nonneg(spec).is_false(), name, " it=", it);
    }
  }
  CHECK(certified > 10);
}
