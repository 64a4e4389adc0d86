#include "gammacm/exact.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gammacm/errors.hpp"

namespace gammacm::exact {

namespace {

using i128 = __int128;

constexpr i128 kI64Max = std::numeric_limits<std::int64_t>::max();

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational Rational::reduce(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (den > Rational::kMaxDenominator || num > kI64Max || num < -kI64Max) {
    throw std::overflow_error("rational out of range");
  }
  return Rational(Raw{}, static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

namespace {

Rational make_reduced(i128 num, i128 den) { return Rational::reduce(num, den); }

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw InputError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

// Continued-fraction convergents of x, stopping before the denominator
// exceeds max_den.
template <typename Accept>
std::optional<Rational> convergents(double x, std::int64_t max_den, Accept accept) {
  if (!std::isfinite(x) || std::fabs(x) > 9.0e15) return std::nullopt;
  const bool neg = x < 0;
  double r = std::fabs(x);
  i128 p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    if (a > 9.0e15) break;
    const i128 ai = static_cast<i128>(a);
    const i128 p2 = ai * p1 + p0;
    const i128 q2 = ai * q1 + q0;
    if (q2 > max_den || p2 > kI64Max) break;
    const auto cand = make_reduced(neg ? -p2 : p2, q2);
    if (accept(cand)) return cand;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = r - a;
    if (frac <= 0.0) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = make_reduced(num, den);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InputError("empty rational literal");
  try {
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
      const auto n = parse_int(text.substr(0, slash));
      const auto d = parse_int(text.substr(slash + 1));
      if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
      return Rational(n, d);
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
      const auto int_part = text.substr(0, dot);
      const auto frac_part = text.substr(dot + 1);
      if (frac_part.size() > 9 || frac_part.empty()) {
        throw InputError("decimal literal '" + std::string(text) + "' needs 1..9 fractional digits");
      }
      const bool neg = !int_part.empty() && int_part.front() == '-';
      const auto whole = int_part.empty() || int_part == "-" || int_part == "+"
                             ? 0
                             : parse_int(neg ? int_part.substr(1) : int_part);
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
      const auto frac = parse_int(frac_part);
      const Rational r = Rational(whole) + Rational(frac, scale);
      return neg ? -r : r;
    }
    return Rational(parse_int(text));
  } catch (const std::overflow_error&) {
    throw InputError("rational literal out of range: '" + std::string(text) + "'");
  }
}

std::optional<Rational> Rational::from_double(double value, std::int64_t max_den) {
  try {
    return convergents(value, max_den, [value](const Rational& c) { return c.to_double() == value; });
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

std::optional<Rational> Rational::approximate(double value, std::int64_t max_den, double rel_tol) {
  try {
    return convergents(value, max_den, [value, rel_tol](const Rational& c) {
      return std::fabs(c.to_double() - value) <= rel_tol * std::fabs(value);
    });
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return make_reduced(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const i128 lhs = static_cast<i128>(a.num_) * b.den_;
  const i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  const i128 l = static_cast<i128>(a / std::gcd(a, b)) * b;
  if (l > kI64Max || l < -kI64Max) throw std::overflow_error("lcm overflow");
  return static_cast<std::int64_t>(l < 0 ? -l : l);
}

Rational rational_gcd(std::span<const Rational> values) {
  if (values.empty()) throw InputError("rational_gcd of an empty list");
  std::int64_t l = 1;
  for (const auto& v : values) {
    if (!v.is_positive()) throw InputError("rational_gcd requires positive entries, got " + v.str());
    l = lcm64(l, v.den());
  }
  std::int64_t g = 0;
  for (const auto& v : values) {
    const i128 scaled = static_cast<i128>(v.num()) * (l / v.den());
    if (scaled > kI64Max) throw std::overflow_error("rational_gcd overflow");
    g = std::gcd(g, static_cast<std::int64_t>(scaled));
  }
  return Rational(g, l);
}

Rational rational_lcm(std::span<const Rational> values) {
  if (values.empty()) throw InputError("rational_lcm of an empty list");
  // lcm(p_i/q_i) = lcm(p_i)/gcd(q_i) for reduced fractions.
  std::int64_t num_lcm = 1;
  std::int64_t den_gcd = 0;
  for (const auto& v : values) {
    if (!v.is_positive()) throw InputError("rational_lcm requires positive entries, got " + v.str());
    num_lcm = lcm64(num_lcm, v.num());
    den_gcd = std::gcd(den_gcd, v.den());
  }
  return Rational(num_lcm, den_gcd);
}

std::optional<std::int64_t> integer_multiple_of(const Rational& x, const Rational& y) {
  if (!x.is_positive() || !y.is_positive()) return std::nullopt;
  try {
    const Rational n = x / y;
    if (n.is_integer() && n.num() >= 1) return n.num();
  } catch (const std::overflow_error&) {
  }
  return std::nullopt;
}

Number Number::literal(double v) { return Number(v, Rational::from_double(v)); }

std::string Number::str() const {
  if (exact) return exact->str();
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

namespace {

template <typename Op, typename ExactOp>
Number combine(const Number& a, const Number& b, Op op, ExactOp exact_op) {
  Number out(op(a.value, b.value));
  if (a.exact && b.exact) {
    try {
      out.exact = exact_op(*a.exact, *b.exact);
      out.value = out.exact->to_double();
    } catch (const std::overflow_error&) {
      out.exact.reset();
    }
  }
  return out;
}

}  // namespace

Number operator+(const Number& a, const Number& b) {
  return combine(a, b, std::plus<>{}, [](const Rational& x, const Rational& y) { return x + y; });
}
Number operator-(const Number& a, const Number& b) {
  return combine(a, b, std::minus<>{}, [](const Rational& x, const Rational& y) { return x - y; });
}
Number operator*(const Number& a, const Number& b) {
  return combine(a, b, std::multiplies<>{}, [](const Rational& x, const Rational& y) { return x * y; });
}
Number operator/(const Number& a, const Number& b) {
  return combine(a, b, std::divides<>{}, [](const Rational& x, const Rational& y) { return x / y; });
}

Order compare(const Number& a, const Number& b, double rel_tol, double abs_floor) {
  if (a.exact && b.exact) {
    const auto c = *a.exact <=> *b.exact;
    if (c < 0) return Order::Less;
    if (c > 0) return Order::Greater;
    return Order::Equal;
  }
  const double diff = a.value - b.value;
  const double tol = std::max(rel_tol * std::max(std::fabs(a.value), std::fabs(b.value)), abs_floor);
  if (std::fabs(diff) <= tol) return Order::Unknown;
  return diff < 0 ? Order::Less : Order::Greater;
}

std::string to_string(Order o) {
  switch (o) {
    case Order::Less: return "less";
    case Order::Equal: return "equal";
    case Order::Greater: return "greater";
    case Order::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<std::strong_ordering> compare_power_product(const Rational& lhs,
                                                          std::span<const PowerTerm> terms,
                                                          std::size_t max_bits) {
  using boost::multiprecision::cpp_int;
  if (!lhs.is_positive()) throw InputError("compare_power_product: lhs must be positive");
  std::int64_t d = 1;
  try {
    for (const auto& t : terms) d = lcm64(d, t.exponent.den());
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }

  // Accumulate left = lhs^d * prod_{e<0} base^{|e| d}, right = prod_{e>0} base^{e d},
  // each as a fraction of big integers.
  cpp_int left_num = 1, left_den = 1, right_num = 1, right_den = 1;
  std::size_t bits = 0;
  auto bit_len = [](std::int64_t v) {
    std::size_t n = 0;
    for (auto u = static_cast<std::uint64_t>(v < 0 ? -v : v); u != 0; u >>= 1) ++n;
    return n;
  };
  auto raise = [&](cpp_int& num, cpp_int& den, const Rational& base, i128 power) -> bool {
    bits += static_cast<std::size_t>(power) * (bit_len(base.num()) + bit_len(base.den()));
    if (bits > max_bits) return false;
    num *= boost::multiprecision::pow(cpp_int(base.num()), static_cast<unsigned>(power));
    den *= boost::multiprecision::pow(cpp_int(base.den()), static_cast<unsigned>(power));
    return true;
  };
  if (!raise(left_num, left_den, lhs, d)) return std::nullopt;
  for (const auto& t : terms) {
    if (!t.base.is_positive()) throw InputError("compare_power_product: bases must be positive");
    const i128 e = static_cast<i128>(t.exponent.num()) * (d / t.exponent.den());
    if (e == 0) continue;
    if (e > std::numeric_limits<unsigned>::max() || -e > std::numeric_limits<unsigned>::max()) {
      return std::nullopt;
    }
    const bool ok = e > 0 ? raise(right_num, right_den, t.base, e) : raise(left_num, left_den, t.base, -e);
    if (!ok) return std::nullopt;
  }
  const cpp_int a = left_num * right_den;
  const cpp_int b = right_num * left_den;
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace gammacm::exact
