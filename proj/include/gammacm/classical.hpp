#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gammacm/ratio_spec.hpp"
#include "gammacm/verdict.hpp"

namespace gammacm::classical {

/// prod Gamma^{alpha_j}(x/alpha_j + a) alpha_j^x / prod Gamma^{beta_j}(x/beta_j + a) beta_j^x.
struct VhatSpec {
  Number a;
  std::vector<Number> alphas;
  std::vector<Number> betas;

  void validate() const;
  /// Scales 1/alpha_j and 1/beta_j, weights alpha_j and beta_j, theta = prod beta_j/alpha_j.
  RatioSpec to_ratio_spec() const;
};

/// s x p matrix with nonnegative entries and unit row sums.
class StochasticMatrix {
 public:
  /// Throws InputError on ragged rows, negative entries or a row sum off 1
  /// (exactly when all entries are exact, within 1e-12 otherwise).
  explicit StochasticMatrix(std::vector<std::vector<Number>> rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return rows_.empty() ? 0 : rows_.front().size(); }
  const Number& at(std::size_t j, std::size_t i) const { return rows_[j][i]; }

 private:
  std::vector<std::vector<Number>> rows_;
};

/// Q(u) = sum alpha_i e^{-a_i u/A_i}/(1-e^{-u/A_i}) - sum beta_j e^{-b_j u/B_j}/(1-e^{-u/B_j}).
/// Throws DomainError for u <= 0.
double q_kernel(const RatioSpec& spec, double u);
/// Same, with the magnitude of the summed pieces (the 1/u parts of
/// small-argument factors are combined before summation).
ScaledValue q_kernel_scaled(const RatioSpec& spec, double u);

struct KernelAsymptotics {
  Number leading_coeff_at_0;  // sum alpha A - sum beta B, coefficient of 1/u
  Number const_at_0;          // sum alpha (1/2 - a) - sum beta (1/2 - b)
  std::optional<Number> numerator_rate;    // min a_i/A_i
  std::optional<Number> denominator_rate;  // min b_j/B_j
  std::vector<std::size_t> I;  // argmin sets, 0-based
  std::vector<std::size_t> J;
  Number weight_I;  // sum of alpha over I
  Number weight_J;
  std::string dominant_at_inf;  // "numerator", "denominator", "tie", "unknown"
};

KernelAsymptotics kernel_asymptotics(const RatioSpec& spec);

/// CertifiedFalse when balance or one of the asymptotic sign conditions
/// fails; CertifiedTrue only means that none of them is violated.
Verdict necessary_conditions(const RatioSpec& spec);

double log_entropy_rho(const RatioSpec& spec);
double entropy_rho(const RatioSpec& spec);

/// theta compared with rho: exact power-product comparison when everything
/// is rational, log-space with relative tolerance 1e-12 otherwise.
exact::Order theta_vs_rho(const RatioSpec& spec);

/// Exact decision of Q >= 0 when all scales and shifts are rational: every
/// factor is rewritten over the common scale g, giving
/// Q(u) = P(e^{-u/g}) / (1 - e^{-u/g}) with P a sum of rational powers.
/// CertifiedTrue when P vanishes identically, or when its coefficients
/// change sign once (positive first) and P(1) >= 0.
Verdict exact_kernel_reduction(const RatioSpec& spec, std::size_t max_terms = 100'000);

struct GridConfig {
  int points = 2000;
  double u_min = 1e-6;
  std::optional<double> u_max;  // default max(50, 50 / min positive decay rate)
  double abs_tol = 1e-10;

  void validate() const;
};

double default_u_max(const RatioSpec& spec);
std::vector<double> kernel_grid(const RatioSpec& spec, const GridConfig& grid);

/// Grid scan plus asymptotics. Never CertifiedTrue.
Verdict q_nonneg(const RatioSpec& spec, const GridConfig& grid = {});

Verdict sufficient_old(const RatioSpec& spec);

inline const std::vector<double> kDefaultProbes = {0.01, 0.1, 1.0, 10.0};

Verdict sherman_inequality(const std::vector<Number>& x, const std::vector<Number>& y, const std::vector<Number>& c,
                           const std::vector<Number>& d, const StochasticMatrix& H,
                           const std::vector<double>& probes = kDefaultProbes);

Verdict sherman_sufficient(const RatioSpec& spec, const StochasticMatrix& H);
Verdict sherman_sufficient_auto(const RatioSpec& spec);
Verdict vhat_check(const VhatSpec& spec);

/// Recognizes the V-hat shape: p = s, one common shift, alpha_i A_i = 1 and
/// beta_j B_j = 1 (exactly).
std::optional<VhatSpec> as_vhat(const RatioSpec& spec);

/// Throws InputError unless all shifts coincide. The evidence field
/// "kernel" records whether the conditions not involving theta hold.
Verdict leblanc_johnson_check(const RatioSpec& spec);

Verdict p1_exact(const Number& alpha, const Number& beta, const Number& a);

/// Every closed-form route to Q >= 0 that applies to the spec.
std::vector<std::pair<std::string, Verdict>> sufficient_families(const RatioSpec& spec);

Verdict check_lcm_classical(const RatioSpec& spec, const GridConfig& grid = {});

}  // namespace gammacm::classical
