#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gammacm::exact {

/// Exact rational p/q in lowest terms with q >= 1. Denominators are capped at
/// kMaxDenominator; any operation whose reduced result exceeds the cap, or
/// whose numerator leaves the int64 range, throws std::overflow_error.
class Rational {
 public:
  static constexpr std::int64_t kMaxDenominator = 1'000'000'000;

  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);  // NOLINT: implicit from integers is intended

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }
  std::string str() const;

  /// Parses "p/q", "p", "-p/q" or a plain decimal literal such as "0.125".
  static Rational parse(std::string_view text);

  /// Recovers a short decimal/rational literal from its binary64 image: the
  /// convergent p/q (q <= max_den) is accepted only if double(p)/double(q)
  /// reproduces `value` bit for bit.
  static std::optional<Rational> from_double(double value, std::int64_t max_den = 1'000'000);

  /// Best convergent p/q with q <= max_den whose relative distance to `value`
  /// is at most rel_tol. Used for ratios of floating scales declared
  /// rationally related.
  static std::optional<Rational> approximate(double value, std::int64_t max_den, double rel_tol);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Reduces num/den; throws std::overflow_error past the caps.
  static Rational reduce(__int128 num, __int128 den);

 private:
  struct Raw {};
  constexpr Rational(Raw, std::int64_t num, std::int64_t den) : num_(num), den_(den) {}

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::int64_t gcd64(std::int64_t a, std::int64_t b);
/// lcm with overflow check (throws std::overflow_error).
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// Largest g such that every entry is an integer multiple of g.
/// Throws InputError on an empty list or a non-positive entry.
Rational rational_gcd(std::span<const Rational> values);
/// Smallest positive rational that is an integer multiple of every entry.
Rational rational_lcm(std::span<const Rational> values);

/// n >= 1 with x = n*y, or nullopt.
std::optional<std::int64_t> integer_multiple_of(const Rational& x, const Rational& y);

/// A real parameter: its binary64 value plus, when known, the exact rational
/// it denotes. Arithmetic keeps the exact part as long as it stays
/// representable and silently drops it otherwise.
struct Number {
  double value = 0.0;
  std::optional<Rational> exact;

  Number() = default;
  Number(double v) : value(v) {}  // NOLINT
  Number(const Rational& r) : value(r.to_double()), exact(r) {}  // NOLINT
  Number(double v, std::optional<Rational> r) : value(v), exact(r) {}

  /// Float with exact part recovered via Rational::from_double.
  static Number literal(double v);

  bool is_exact() const { return exact.has_value(); }
  std::string str() const;
};

Number operator+(const Number& a, const Number& b);
Number operator-(const Number& a, const Number& b);
Number operator*(const Number& a, const Number& b);
Number operator/(const Number& a, const Number& b);

enum class Order { Less, Equal, Greater, Unknown };

/// Exact comparison when both sides are exact. Otherwise floats within
/// rel_tol*max(|a|,|b|) (or abs_floor) of each other compare Unknown.
Order compare(const Number& a, const Number& b, double rel_tol = 1e-12, double abs_floor = 0.0);

std::string to_string(Order o);

/// One factor base^exponent of a power product.
struct PowerTerm {
  Rational base;      // > 0
  Rational exponent;  // any sign
};

/// Exact sign of lhs compared with prod(base^exponent). Returns nullopt when
/// the exponents would require integers beyond `max_bits` bits.
std::optional<std::strong_ordering> compare_power_product(const Rational& lhs,
                                                          std::span<const PowerTerm> terms,
                                                          std::size_t max_bits = 1u << 20);

}  // namespace gammacm::exact
