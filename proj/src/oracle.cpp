#include "gammacm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gammacm/compensated_sum.hpp"
#include "gammacm/errors.hpp"
#include "gammacm/specfun.hpp"

namespace gammacm::oracle {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kBudgetFactor = 64.0;

// sign(k) multiplies (-1)^k Delta^k f before the nonnegativity check.
Verdict alternating_test(const ScaledFn& f, const DiffTestConfig& cfg, const std::function<double(int)>& sign,
                         const char* reason) {
  cfg.validate();
  const int K = cfg.max_order;
  struct Hit {
    int k;
    double x, h, value, threshold;
  };
  std::optional<Hit> first;
  double worst = std::numeric_limits<double>::infinity();
  std::vector<ScaledValue> stencil(static_cast<std::size_t>(K) + 1);
  for (double x : cfg.x_grid) {
    for (double h : cfg.steps) {
      for (int j = 0; j <= K; ++j) stencil[j] = f(x + j * h);
      for (int k = 0; k <= K; ++k) {
        if (first && first->k <= k) break;
        CompensatedSum d;
        double scale = 0.0;
        double c = 1.0;
        for (int j = 0; j <= k; ++j) {
          d += ((j % 2 == 0) ? c : -c) * stencil[j].value;
          scale = std::max(scale, std::max(std::fabs(stencil[j].value), stencil[j].scale));
          c = c * (k - j) / (j + 1);
        }
        const double value = sign(k) * d.value();
        const double threshold = (cfg.viol_tol + std::ldexp(kEps * kBudgetFactor, k)) * scale;
        if (scale > 0.0) worst = std::min(worst, value / scale);
        if (value < -threshold) first = Hit{k, x, h, value, threshold};
      }
    }
  }
  if (first) {
    Evidence ev{{"x", first->x}, {"h", first->h}, {"k", first->k}, {"difference", first->value},
                {"threshold", first->threshold}};
    return Verdict::certified_false(reason, "alternating difference of order " + std::to_string(first->k) +
                                                " is negative at x=" + std::to_string(first->x),
                                    ev);
  }
  Evidence ev{{"max_order", K}, {"points", cfg.x_grid.size()}, {"steps", cfg.steps}, {"min_relative_difference", worst}};
  return Verdict::supported(reason, "no alternating-difference violation found", ev);
}

void require_weights(const std::vector<double>& alphas, const std::vector<double>& betas) {
  if (alphas.size() != betas.size() || alphas.empty()) throw InputError("weights must be nonempty lists of equal length");
  for (double v : alphas) {
    if (!(v > 0.0)) throw InputError("weights must be positive");
  }
  for (double v : betas) {
    if (!(v > 0.0)) throw InputError("weights must be positive");
  }
}

Monotonicity scan(const std::function<ScaledValue(double)>& log_f, double a_lo, double a_hi, int points) {
  if (points < 2 || !(a_hi > a_lo)) throw InputError("monotonicity grid needs points >= 2 and a_hi > a_lo");
  Monotonicity m;
  m.worst_step = -std::numeric_limits<double>::infinity();
  ScaledValue prev{};
  for (int i = 0; i < points; ++i) {
    const double a = a_lo + (a_hi - a_lo) * i / (points - 1);
    const ScaledValue v = log_f(a);
    m.a_grid.push_back(a);
    m.log_values.push_back(v.value);
    if (i > 0) {
      const double step = v.value - prev.value;
      const double tol = 1e-12 * std::max({1.0, v.scale, prev.scale});
      if (step > m.worst_step) {
        m.worst_step = step;
        m.worst_a = a;
      }
      if (!(step < -tol)) m.strictly_decreasing = false;
      if (step > tol) m.nonincreasing = false;
    }
    prev = v;
  }
  return m;
}

ScaledValue gamma_ratio_log_scaled(double a, double X, double Y, const std::vector<double>& alphas,
                                   const std::vector<double>& betas) {
  CompensatedSum s;
  double scale = 0.0;
  auto add = [&](double arg, double sign) {
    const double v = log_gamma(arg);
    s += sign * v;
    scale += std::fabs(v);
  };
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double A = 1.0 / alphas[i];
    const double B = 1.0 / betas[i];
    add(A * X + a, 1.0);
    add(B * Y + a, 1.0);
    add(A * Y + a, -1.0);
    add(B * X + a, -1.0);
  }
  return {s.value(), scale};
}

bool leq(double a, double b) {
  const auto na = Number::literal(a);
  const auto nb = Number::literal(b);
  const auto o = exact::compare(na, nb, 1e-12);
  return o == exact::Order::Less || o == exact::Order::Equal;
}

}  // namespace

std::vector<double> DiffTestConfig::default_grid() {
  std::vector<double> xs(60);
  const double l0 = std::log(0.05);
  const double l1 = std::log(50.0);
  for (int i = 0; i < 60; ++i) xs[i] = std::exp(l0 + (l1 - l0) * i / 59.0);
  return xs;
}

void DiffTestConfig::validate() const {
  if (max_order < 1 || max_order > 12) throw InputError("max_order must be in [1, 12]");
  if (steps.empty() || x_grid.empty()) throw InputError("steps and x_grid must be nonempty");
  for (double h : steps) {
    if (!(h > 0.0)) throw InputError("steps must be positive");
  }
  for (double x : x_grid) {
    if (!(x > 0.0)) throw InputError("x_grid points must be positive");
  }
  if (!(viol_tol >= 0.0)) throw InputError("viol_tol must be nonnegative");
}

Verdict cm_test(const std::function<double(double)>& f, const DiffTestConfig& cfg) {
  return cm_test(ScaledFn([&](double x) {
                   const double v = f(x);
                   return ScaledValue{v, std::fabs(v)};
                 }),
                 cfg);
}

Verdict cm_test(const ScaledFn& f, const DiffTestConfig& cfg) {
  return alternating_test(f, cfg, [](int) { return 1.0; }, "cm_test");
}

ScaledValue neg_log_derivative(const RatioSpec& spec, double x) {
  ScaledValue d = log_ratio_derivative(spec, x, 1);
  d.value = -d.value;
  if (spec.is_classical()) {
    const double lt = std::log(spec.theta.value);
    d.value += lt;
    d.scale += std::fabs(lt);
  }
  return d;
}

Verdict lcm_oracle(const RatioSpec& spec, const DiffTestConfig& cfg) {
  spec.validate();
  Verdict v = alternating_test([&](double x) { return neg_log_derivative(spec, x); }, cfg, [](int) { return 1.0; },
                               "lcm_oracle");
  return v;
}

Verdict bernstein_oracle(const RatioSpec& spec, const DiffTestConfig& cfg) {
  spec.validate();
  return alternating_test([&](double x) { return log_ratio_derivative(spec, x, 1); }, cfg,
                          [](int k) { return k == 0 ? 1.0 : -1.0; }, "bernstein_oracle");
}

double gamma_ratio_log_F(double a, double X, double Y, const std::vector<double>& alphas,
                         const std::vector<double>& betas) {
  require_weights(alphas, betas);
  return gamma_ratio_log_scaled(a, X, Y, alphas, betas).value;
}

double gamma_ratio_F(double a, double X, double Y, const std::vector<double>& alphas, const std::vector<double>& betas) {
  return std::exp(gamma_ratio_log_F(a, X, Y, alphas, betas));
}

Monotonicity gamma_ratio_decrease(double X, double Y, const std::vector<double>& alphas, const std::vector<double>& betas,
                                  double a_lo, double a_hi, int points) {
  require_weights(alphas, betas);
  if (!(X > 0.0) || !(Y > X)) throw InputError("gamma_ratio: need Y > X > 0");
  if (!(a_lo >= 1.0)) throw InputError("gamma_ratio: a must be >= 1");
  std::vector<double> al = alphas;
  std::vector<double> be = betas;
  std::sort(al.begin(), al.end());
  std::sort(be.begin(), be.end());
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t k = 0; k < al.size(); ++k) {
    sa += al[k];
    sb += be[k];
    if (!leq(sa, sb)) {
      throw InputError("gamma_ratio: partial sum " + std::to_string(k + 1) + " of alphas exceeds that of betas");
    }
  }
  return scan([&](double a) { return gamma_ratio_log_scaled(a, X, Y, alphas, betas); }, a_lo, a_hi, points);
}

double rising_factorial_F(double a, double delta, int m, int n) {
  if (!(delta > 0.0) || m < 1 || n <= m) throw InputError("rising_factorial_F: need delta > 0 and n > m >= 1");
  double num = 1.0;
  double den = 1.0;
  for (int l = 0; l < m; ++l) num *= a + delta * m + l;
  for (int l = 0; l < n; ++l) den *= a + delta * n + l;
  return num / den;
}

Monotonicity rising_factorial_decrease(double delta, int m, int n, double a_lo, double a_hi, int points) {
  rising_factorial_F(a_lo, delta, m, n);
  return scan(
      [&](double a) {
        CompensatedSum s;
        double scale = 0.0;
        for (int l = 0; l < m; ++l) {
          const double v = std::log(a + delta * m + l);
          s += v;
          scale += std::fabs(v);
        }
        for (int l = 0; l < n; ++l) {
          const double v = std::log(a + delta * n + l);
          s -= v;
          scale += std::fabs(v);
        }
        return ScaledValue{s.value(), scale};
      },
      a_lo, a_hi, points);
}

Verdict p2_conditions(const std::array<double, 4>& mu, const std::array<double, 4>& nu) {
  for (double v : mu) {
    if (!(v > 0.0)) throw InputError("p2_conditions: mu entries must be positive");
  }
  for (double v : nu) {
    if (!(v > 0.0)) throw InputError("p2_conditions: nu entries must be positive");
  }
  const std::array<double, 4> ratios = {mu[2] / mu[0], mu[3] / mu[1], nu[0] / nu[2], nu[1] / nu[3]};
  const double Y = ratios[0];
  Evidence ev{{"ratios", ratios}};
  for (double r : ratios) {
    if (std::fabs(r - Y) > 1e-12 * std::max(std::fabs(r), std::fabs(Y))) {
      return Verdict::inconclusive("p2_b", "ratios in (b) differ", ev);
    }
  }
  if (!(Y > 1.0 + 1e-12)) return Verdict::inconclusive("p2_b", "common ratio in (b) is not > 1", ev);
  ev["reconstruction"] = {{"X", 1.0}, {"Y", Y}, {"A", {mu[0], mu[1]}}, {"B", {nu[0] / Y, nu[1] / Y}}};
  if (!leq(mu[1], mu[0]) || !leq(nu[1], nu[0])) return Verdict::inconclusive("p2_c", "(c) fails", ev);
  if (!leq(nu[0], mu[2])) return Verdict::inconclusive("p2_d", "(d) fails: nu_1 > mu_3", ev);
  const Number lhs = Number(Rational(1)) / Number::literal(mu[0]) + Number(Rational(1)) / Number::literal(mu[1]);
  const Number rhs = Number(Rational(1)) / Number::literal(nu[2]) + Number(Rational(1)) / Number::literal(nu[3]);
  const auto o = exact::compare(lhs, rhs, 1e-12);
  if (!(o == exact::Order::Less || o == exact::Order::Equal)) {
    return Verdict::inconclusive("p2_d", "(d) fails: 1/mu_1 + 1/mu_2 > 1/nu_3 + 1/nu_4", ev);
  }
  return Verdict::certified_true("p2_conditions", "the eight-gamma ratio decreases on [1, inf)", ev);
}

}  // namespace gammacm::oracle
