#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gammacm/ratio_spec.hpp"
#include "gammacm/verdict.hpp"

namespace gammacm::qlattice {

/// One factor seen from its class lattice: it contributes at every k that is
/// a multiple of `stride`, with n = k / stride in the mass formula.
struct LatticeFactor {
  std::size_t index = 0;  // position in spec.numerator or spec.denominator
  bool numerator = true;
  std::int64_t stride = 1;
  GammaFactor factor;
};

/// tau = mu - sigma restricted to one irr_class. Lattice point k sits at
/// t = k * step * unit * log(1/q).
struct LatticeMeasure {
  std::string label;      // irr_class, "" for unlabeled factors
  double unit = 1.0;      // reference scale; coordinates are scale / unit
  Rational step{1};       // gcd of the coordinates
  std::int64_t period = 1;  // lcm of the strides
  double lambda = 1.0;    // log(1/q)
  std::vector<LatticeFactor> factors;

  double spacing() const { return step.to_double() * unit * lambda; }
  bool has_denominator() const;

  /// Indices into `factors` contributing at lattice index k.
  std::vector<std::size_t> contributors(std::int64_t k) const;
};

/// Signed mass at one lattice point, kept as value * exp(log_scale) so that
/// far tail points do not underflow.
struct MassAt {
  double scaled = 0.0;
  double log_scale = 0.0;
  double largest = 0.0;  // largest single |contribution|, same scaling
  bool any_denominator = false;

  double value() const;
};

/// Splits a q-case spec into per-class lattices. Within a class all scales
/// must be rationally related; unlabeled scales must be exact rationals.
/// Throws InputError otherwise.
std::vector<LatticeMeasure> build_lattices(const RatioSpec& spec);

MassAt mass_at(const LatticeMeasure& m, std::int64_t k, const QParam& q);

/// Mass of tau at lattice index k of the class containing the first
/// factor (the unlabeled class when present).
double tau_mass(const RatioSpec& spec, std::int64_t k);

Verdict support_inclusion(const RatioSpec& spec);

struct MassConfig {
  std::optional<std::int64_t> k_max;  // default 64 * period per class
  std::int64_t max_period = 1 << 20;
  std::int64_t max_explicit = 1 << 22;  // extra lattice points checked to close a tail gap
};

Verdict mass_condition(const RatioSpec& spec, const MassConfig& cfg = {});

Verdict abprime_sufficient(const RatioSpec& spec);

/// (log q)^2 sum over classes and k <= k_limit of exp(-x t_k) tau(t_k).
double laplace_log_second_derivative(const RatioSpec& spec, double x, std::int64_t k_limit);

}  // namespace gammacm::qlattice
