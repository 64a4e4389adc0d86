#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gammacm/exact.hpp"

namespace gammacm::tail {

using exact::Number;

enum class Side { Numerator, Denominator };

/// One term coef * exp(-lambda k rate) * G(k) of an exponential sum in the
/// integer variable k, where G(k) = 1/(1 - exp(-lambda k / period)) when a
/// period is given and 1 otherwise.
struct Term {
  Side side = Side::Numerator;
  Number coef;
  Number rate;
  std::optional<std::int64_t> period;
};

enum class Outcome {
  Certified,             // sum(num) - sum(den) >= 0 for every k >= from_k on the progression
  DenominatorDominates,  // the difference is negative for all large k
  Undecided,             // exact ties or rounding-level ties that cannot be resolved
};

struct Options {
  double lambda = 1.0;          // > 0
  std::int64_t k_start = 1;     // first k of the progression to certify
  std::int64_t stride = 1;      // progression step
  std::int64_t k_limit = 1 << 22;  // give up searching for a starting point beyond this
  double rel_tol = 1e-12;       // ties within this relative gap are unresolved
  int max_level = 2;            // leading order plus one refinement
};

struct Result {
  Outcome outcome = Outcome::Undecided;
  std::int64_t from_k = 0;  // valid for Certified
  int level = 1;            // expansion order at which the decision was taken
  std::string detail;
};

/// Decides the sign of num(k) - den(k) for all large k on the arithmetic
/// progression k_start + stride*m. The comparison is by decay rate, then by
/// leading coefficient; exact ties at leading order are expanded once via
/// 1/(1-x) = 1 + x/(1-x) before giving up.
///
/// A Certified result is rigorous: at from_k the numerator's dominant terms
/// bound every denominator term from above, and that bound only improves as
/// k grows. Values of k in [k_start, from_k) are not covered and must be
/// checked directly by the caller.
Result analyze(std::vector<Term> terms, const Options& opt);

std::string to_string(Outcome o);

}  // namespace gammacm::tail
