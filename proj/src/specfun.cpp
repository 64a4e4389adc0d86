#include "gammacm/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "gammacm/compensated_sum.hpp"
#include "gammacm/errors.hpp"

namespace gammacm {

namespace {

// B_2, B_4, ..., B_40.
constexpr std::array<double, 20> kBernoulliEven = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
};

void require_positive_arg(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be a finite positive real, got " + std::to_string(x));
  }
}

// sum_{n>=1} n^k r^n / (1 - q^n) with r = q^x, truncated once the term and a
// geometric bound on the remaining tail both fall below rel_tol * |sum|.
double lambert_sum(int k, double x, QParam q, const EvalConfig& cfg) {
  const double log_q = q.log_q();
  const double log_r = x * log_q;
  CompensatedSum sum;
  for (std::int64_t n = 1; n <= cfg.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    const double log_term = k * std::log(dn) + dn * log_r;
    const double term = std::exp(log_term) / -std::expm1(dn * log_q);
    sum += term;
    // Terms n+1, n+2, ... are bounded by a geometric series with ratio
    // ((n+2)/(n+1))^k r, starting from (n+1)^k r^{n+1}/(1-q^{n+1}).
    const double next = std::exp(k * std::log(dn + 1.0) + (dn + 1.0) * log_r) / -std::expm1((dn + 1.0) * log_q);
    const double ratio = std::exp(k * std::log1p(1.0 / (dn + 1.0)) + log_r);
    if (ratio < 1.0) {
      const double tail = next / (1.0 - ratio);
      const double s = std::fabs(sum.value());
      if (term <= cfg.rel_tol * s && tail <= cfg.rel_tol * s) return sum.value();
      if (s == 0.0 && tail == 0.0) return 0.0;
    }
  }
  throw PrecisionError("q-series did not converge within " + std::to_string(cfg.max_terms) +
                       " terms (x=" + std::to_string(x) + ", q=" + std::to_string(q.value()) + ")");
}

}  // namespace

void EvalConfig::validate() const {
  if (!(rel_tol > 0.0)) throw InputError("rel_tol must be positive");
  if (max_terms < 1) throw InputError("max_terms must be at least 1");
}

QParam::QParam(double q) : q_(q), log_q_(std::log(q)) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("q must lie strictly inside (0,1), got " + std::to_string(q));
}

double log_gamma_q(double x, QParam q, const EvalConfig& cfg) {
  require_positive_arg(x, "gamma_q");
  const double log_q = q.log_q();
  // log Gamma_q(x) = (1-x) log(1-q) + sum_n [log(1-q^{n+1}) - log(1-q^{x+n})].
  // |term_n| <= q^n |q - q^x| / (1 - q^{n + min(1,x)}), a geometric tail.
  const double spread = std::fabs(std::exp(log_q) - std::exp(x * log_q));
  const double mx = std::min(1.0, x);
  CompensatedSum sum((1.0 - x) * std::log1p(-q.value()));
  for (std::int64_t n = 0; n < cfg.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    sum += std::log(-std::expm1((dn + 1.0) * log_q)) - std::log(-std::expm1((x + dn) * log_q));
    const double m = dn + 1.0;
    const double tail = std::exp(m * log_q) * spread / ((1.0 - q.value()) * -std::expm1((m + mx) * log_q));
    if (tail <= cfg.rel_tol) return sum.value();
  }
  throw PrecisionError("gamma_q product did not converge within " + std::to_string(cfg.max_terms) + " factors");
}

double gamma_q(double x, QParam q, const EvalConfig& cfg) { return std::exp(log_gamma_q(x, q, cfg)); }

double digamma_q(double x, QParam q, const EvalConfig& cfg) {
  require_positive_arg(x, "digamma_q");
  return -std::log1p(-q.value()) + q.log_q() * lambert_sum(0, x, q, cfg);
}

double polygamma_q(int k, double x, QParam q, const EvalConfig& cfg) {
  if (k < 1) throw DomainError("polygamma_q: order must be >= 1");
  require_positive_arg(x, "polygamma_q");
  return std::pow(q.log_q(), k + 1) * lambert_sum(k, x, q, cfg);
}

double digamma(double x) {
  require_positive_arg(x, "digamma");
  // psi(x) = psi(x + m) - sum_{i<m} 1/(x+i); asymptotic series for x >= 8.
  CompensatedSum shift;
  while (x < 8.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  CompensatedSum series(std::log(x) - 0.5 / x);
  double pw = inv2;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < kBernoulliEven.size(); ++j) {
    const double term = kBernoulliEven[j] / (2.0 * static_cast<double>(j + 1)) * pw;
    if (std::fabs(term) >= prev) break;  // smallest term reached
    series -= term;
    prev = std::fabs(term);
    if (prev < 1e-18 * std::fabs(series.value())) break;
    pw *= inv2;
  }
  return series.value() + shift.value();
}

double polygamma(int k, double x) {
  if (k < 1) throw DomainError("polygamma: order must be >= 1");
  require_positive_arg(x, "polygamma");
  const double sign = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^{k+1}
  const double k_fact = std::tgamma(k + 1.0);
  // psi^{(k)}(x) = psi^{(k)}(x+1) - (-1)^k k!/x^{k+1}
  CompensatedSum shift;
  const double threshold = 8.0 + k;
  while (x < threshold) {
    shift += sign * k_fact / std::pow(x, k + 1);
    x += 1.0;
  }
  // (-1)^{k+1} [ (k-1)!/x^k + k!/(2x^{k+1}) + sum_j B_{2j} (2j+k-1)!/((2j)! x^{2j+k}) ]
  CompensatedSum series(std::tgamma(static_cast<double>(k)) / std::pow(x, k) + k_fact / (2.0 * std::pow(x, k + 1)));
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < kBernoulliEven.size(); ++j) {
    const double two_j = 2.0 * static_cast<double>(j + 1);
    const double log_mag = std::lgamma(two_j + k) - std::lgamma(two_j + 1.0) - (two_j + k) * std::log(x);
    const double term = kBernoulliEven[j] * std::exp(log_mag);
    if (std::fabs(term) >= prev) break;
    series += term;
    prev = std::fabs(term);
    if (prev < 1e-18 * std::fabs(series.value())) break;
  }
  return sign * series.value() + shift.value();
}

double log_gamma(double x) {
  require_positive_arg(x, "log_gamma");
  int sign = 1;
  return ::lgamma_r(x, &sign);
}

double bose_remainder(double z) {
  if (z < 0.1) {
    // z/(1-e^{-z}) = sum_n B_n^+ z^n / n!; subtract the 1/z pole and divide by z.
    const double z2 = z * z;
    return 0.5 + z / 12.0 - z * z2 / 720.0 + z * z2 * z2 / 30240.0 - z * z2 * z2 * z2 / 1209600.0 +
           z * z2 * z2 * z2 * z2 / 47900160.0;
  }
  return 1.0 / -std::expm1(-z) - 1.0 / z;
}

double phi(double delta, double gamma, double t) {
  if (!(delta > 0.0) || !(gamma > 0.0)) throw DomainError("phi: delta and gamma must be positive");
  if (!(t >= 0.0)) throw DomainError("phi: t must be nonnegative");
  const double z = gamma * t;
  double ratio;  // t / (1 - e^{-gamma t})
  if (z < 1e-4) {
    ratio = (1.0 + z / 2.0 + z * z / 12.0 - z * z * z * z / 720.0) / gamma;
  } else {
    ratio = t / -std::expm1(-z);
  }
  return ratio * std::exp(-delta * t);
}

}  // namespace gammacm
