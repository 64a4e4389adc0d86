#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gammacm/errors.hpp"
#include "gammacm/exact.hpp"

using namespace gammacm;
using namespace gammacm::exact;

TEST_CASE("rational arithmetic reduces") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(1, 6) + Rational(1, 3) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(1, 6) / Rational(1, 2) == Rational(1, 3));
  CHECK(Rational(5, 6).str() == "5/6");
  CHECK(Rational(4).str() == "4");
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
}

TEST_CASE("rational overflow is reported") {
  const Rational big(1, Rational::kMaxDenominator);
  CHECK_THROWS_AS(big * Rational(1, 7), std::overflow_error);
  CHECK_THROWS_AS(Rational(std::numeric_limits<std::int64_t>::max()) + Rational(1), std::overflow_error);
}

TEST_CASE("parse literals") {
  CHECK(Rational::parse("1/6") == Rational(1, 6));
  CHECK(Rational::parse(" -2/4 ") == Rational(-1, 2));
  CHECK(Rational::parse("0.125") == Rational(1, 8));
  CHECK(Rational::parse("-1.5") == Rational(-3, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS_AS(Rational::parse("1/0"), InputError);
  CHECK_THROWS_AS(Rational::parse("abc"), InputError);
  CHECK_THROWS_AS(Rational::parse(""), InputError);
  CHECK_THROWS_AS(Rational::parse("0.1234567891"), InputError);
}

TEST_CASE("from_double recovers short literals bit for bit") {
  CHECK(Rational::from_double(0.25) == Rational(1, 4));
  CHECK(Rational::from_double(0.3) == Rational(3, 10));
  CHECK(Rational::from_double(0.2499) == Rational(2499, 10000));
  CHECK(Rational::from_double(4.4) == Rational(22, 5));
  CHECK(Rational::from_double(1.0 / 3.0) == Rational(1, 3));
  CHECK_FALSE(Rational::from_double(0.1 + 0.2).has_value());
  CHECK_FALSE(Rational::from_double(std::sqrt(2.0)).has_value());
  CHECK_FALSE(Rational::from_double(M_PI).has_value());
}

TEST_CASE("approximate finds rational ratios of floats") {
  const double r = std::sqrt(2.0) / (std::sqrt(2.0) / 2.0);
  CHECK(Rational::approximate(r, 1000000, 1e-12) == Rational(2));
  CHECK(Rational::approximate(std::sqrt(3.0) / (std::sqrt(3.0) / 5.0), 1000000, 1e-12) == Rational(5));
  CHECK_FALSE(Rational::approximate(M_PI, 1000, 1e-12).has_value());
}

TEST_CASE("gcd and lcm of rationals") {
  const std::vector<Rational> ex2 = {Rational(1, 6), Rational(1, 3), Rational(1, 2)};
  CHECK(rational_gcd(ex2) == Rational(1, 6));
  CHECK(rational_lcm(ex2) == Rational(1));
  const std::vector<Rational> two = {Rational(2, 3), Rational(3, 4)};
  CHECK(rational_gcd(two) == Rational(1, 12));
  CHECK(rational_lcm(two) == Rational(6));
  CHECK(integer_multiple_of(Rational(1, 2), Rational(1, 6)) == 3);
  CHECK_FALSE(integer_multiple_of(Rational(1, 2), Rational(1, 3)).has_value());
  CHECK_THROWS_AS(rational_gcd(std::vector<Rational>{}), InputError);
  CHECK_THROWS_AS(rational_gcd(std::vector<Rational>{Rational(0)}), InputError);
  CHECK(lcm64(4, 6) == 12);
  CHECK_THROWS_AS(lcm64(std::numeric_limits<std::int64_t>::max(), 2), std::overflow_error);
}

TEST_CASE("number keeps exactness while representable") {
  const Number a(Rational(1, 3));
  const Number b = Number::literal(0.5);
  CHECK((a + b).exact == Rational(5, 6));
  const Number c(std::sqrt(2.0));
  CHECK_FALSE((a * c).exact.has_value());
  CHECK((a * c).value == doctest::Approx(std::sqrt(2.0) / 3.0));
  const Number tiny(Rational(1, 1'000'000'000));
  CHECK_FALSE((tiny * Number(Rational(1, 3))).exact.has_value());
}

TEST_CASE("compare: exact decides, floats near a tie are unknown") {
  CHECK(compare(Number(Rational(1, 3)), Number(Rational(1, 3))) == Order::Equal);
  CHECK(compare(Number(Rational(1, 3)), Number(Rational(1, 2))) == Order::Less);
  CHECK(compare(Number(0.3), Number(0.1 + 0.2)) == Order::Unknown);
  CHECK(compare(Number(1.0), Number(1.0 + 1e-9)) == Order::Less);
  CHECK(compare(Number(0.0), Number(1e-20), 1e-12, 1e-15) == Order::Unknown);
}

TEST_CASE("power products compare exactly") {
  // rho for the duplication formula: 1^1 * 1^1 * 2^-2
  const std::vector<PowerTerm> legendre = {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}, {Rational(2), Rational(-2)}};
  CHECK(compare_power_product(Rational(1, 4), legendre) == std::strong_ordering::equal);
  CHECK(compare_power_product(Rational(2499, 10000), legendre) == std::strong_ordering::less);
  CHECK(compare_power_product(Rational(1, 5), legendre) == std::strong_ordering::less);
  // 3^3 * 2^2 = 108
  const std::vector<PowerTerm> lj = {{Rational(3), Rational(3)}, {Rational(2), Rational(2)}};
  CHECK(compare_power_product(Rational(108), lj) == std::strong_ordering::equal);
  CHECK(compare_power_product(Rational(107), lj) == std::strong_ordering::less);
  // fractional exponents: 2 vs 8^{1/3}
  const std::vector<PowerTerm> cube = {{Rational(8), Rational(1, 3)}};
  CHECK(compare_power_product(Rational(2), cube) == std::strong_ordering::equal);
  const std::vector<PowerTerm> root2 = {{Rational(2), Rational(1, 2)}};
  CHECK(compare_power_product(Rational(141421, 100000), root2) == std::strong_ordering::less);
  CHECK(compare_power_product(Rational(141422, 100000), root2) == std::strong_ordering::greater);
}

TEST_CASE("property: field identities on random rationals") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000);
  std::uniform_int_distribution<std::int64_t> den(1, 1000);
  for (int i = 0; i < 2000; ++i) {
    const Rational a(num(rng), den(rng));
    const Rational b(num(rng), den(rng));
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a * b) / b == a);
    CHECK(((a <=> b) < 0) == (a.to_double() < b.to_double() && a != b));
    CHECK(Rational::parse(a.str()) == a);
    CHECK(Rational::from_double(a.to_double()) == a);
  }
}

TEST_CASE("property: rational_gcd divides every entry and is maximal") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> num(1, 60);
  std::uniform_int_distribution<std::int64_t> den(1, 60);
  std::uniform_int_distribution<int> len(1, 5);
  for (int i = 0; i < 500; ++i) {
    std::vector<Rational> v;
    for (int k = len(rng); k > 0; --k) v.emplace_back(num(rng), den(rng));
    const Rational g = rational_gcd(v);
    const Rational l = rational_lcm(v);
    std::int64_t common = 0;
    for (const auto& x : v) {
      const auto n = integer_multiple_of(x, g);
      REQUIRE(n.has_value());
      common = std::gcd(common, *n);
      CHECK(integer_multiple_of(l, x).has_value());
    }
    CHECK(common == 1);
  }
}
