#pragma once

#include <array>
#include <functional>
#include <vector>

#include "gammacm/ratio_spec.hpp"
#include "gammacm/verdict.hpp"

namespace gammacm::oracle {

struct DiffTestConfig {
  int max_order = 8;
  std::vector<double> steps = {0.05, 0.1, 0.25, 0.5};
  std::vector<double> x_grid = default_grid();
  double viol_tol = 1e-9;  // relative to the local magnitude scale

  /// 60 log-spaced points on [0.05, 50].
  static std::vector<double> default_grid();
  /// Throws InputError unless 1 <= max_order <= 12 and all steps and grid points are positive.
  void validate() const;
};

using ScaledFn = std::function<ScaledValue(double)>;

/// Alternating forward differences (-1)^k Delta_h^k f(x) >= 0 for k = 0..max_order.
/// A difference counts as a violation only below -(viol_tol + 2^k eps c) * scale,
/// scale being the largest magnitude on the stencil. Never CertifiedTrue.
Verdict cm_test(const std::function<double(double)>& f, const DiffTestConfig& cfg = {});
Verdict cm_test(const ScaledFn& f, const DiffTestConfig& cfg = {});

/// -(log f)' for the spec's function f (theta included in the classical case).
ScaledValue neg_log_derivative(const RatioSpec& spec, double x);

/// cm_test on -(log f)'.
Verdict lcm_oracle(const RatioSpec& spec, const DiffTestConfig& cfg = {});
/// g = (log W)' (theta excluded): g >= 0 and (-1)^{k+1} Delta^k g >= 0 for k >= 1.
Verdict bernstein_oracle(const RatioSpec& spec, const DiffTestConfig& cfg = {});

struct Monotonicity {
  bool nonincreasing = true;
  bool strictly_decreasing = true;
  double worst_step = 0.0;  // largest consecutive difference of log F
  double worst_a = 0.0;
  std::vector<double> a_grid;
  std::vector<double> log_values;
};

/// log of prod Gamma(A_i X + a) Gamma(B_i Y + a) / (Gamma(A_i Y + a) Gamma(B_i X + a)),
/// A_i = 1/alpha_i, B_i = 1/beta_i.
double gamma_ratio_log_F(double a, double X, double Y, const std::vector<double>& alphas,
                         const std::vector<double>& betas);
double gamma_ratio_F(double a, double X, double Y, const std::vector<double>& alphas, const std::vector<double>& betas);

/// Throws InputError unless Y > X > 0 and the sorted weights satisfy the
/// partial-sum hypotheses. Samples `points` values of a on [a_lo, a_hi].
Monotonicity gamma_ratio_decrease(double X, double Y, const std::vector<double>& alphas, const std::vector<double>& betas,
                                  double a_lo = 1.0, double a_hi = 10.0, int points = 64);

/// (a + delta m)_m / (a + delta n)_n. Throws InputError unless n > m >= 1 and delta > 0.
double rising_factorial_F(double a, double delta, int m, int n);
Monotonicity rising_factorial_decrease(double delta, int m, int n, double a_lo = 0.5, double a_hi = 10.0, int points = 64);

/// Conditions (a)-(d) for the eight-gamma ratio in mu, nu. Evidence carries
/// the reconstruction X = 1, Y = common ratio, A = (mu_1, mu_2), B = (nu_1, nu_2)/Y.
Verdict p2_conditions(const std::array<double, 4>& mu, const std::array<double, 4>& nu);

}  // namespace gammacm::oracle
