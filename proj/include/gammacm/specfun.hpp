#pragma once

#include <cstdint>

namespace gammacm {

struct EvalConfig {
  double rel_tol = 1e-14;
  std::int64_t max_terms = 1'000'000;

  /// Throws InputError unless rel_tol > 0 and max_terms >= 1.
  void validate() const;
};

/// Base of a q-deformation, strictly inside (0, 1).
class QParam {
 public:
  explicit QParam(double q);
  double value() const { return q_; }
  /// log(1/q) > 0, the lattice spacing unit.
  double log_inv() const { return -log_q_; }
  double log_q() const { return log_q_; }

 private:
  double q_;
  double log_q_;
};

/// Gamma_q(x) = (1-q)^{1-x} prod_{n>=0} (1-q^{n+1})/(1-q^{x+n}).
double gamma_q(double x, QParam q, const EvalConfig& cfg = {});
double log_gamma_q(double x, QParam q, const EvalConfig& cfg = {});

/// psi_q(x) = -log(1-q) + log(q) sum_{n>=1} q^{nx}/(1-q^n).
double digamma_q(double x, QParam q, const EvalConfig& cfg = {});

/// psi_q^{(k)}(x) = (log q)^{k+1} sum_{n>=1} n^k q^{nx}/(1-q^n), k >= 1.
double polygamma_q(int k, double x, QParam q, const EvalConfig& cfg = {});

double digamma(double x);
/// psi^{(k)}(x), k >= 1.
double polygamma(int k, double x);
/// log Gamma(x) for x > 0 (reentrant).
double log_gamma(double x);

/// phi_{delta,gamma}(t) = t e^{-delta t} / (1 - e^{-gamma t}), equal to
/// 1/gamma at t = 0.
double phi(double delta, double gamma, double t);

/// h(z) = 1/(1-e^{-z}) - 1/z, smooth at 0 with h(0) = 1/2. Building block for
/// the small-argument form of Bose-type kernels.
double bose_remainder(double z);

}  // namespace gammacm
