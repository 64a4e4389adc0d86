#pragma once

#include <stdexcept>
#include <string>

namespace gammacm {

/// Argument outside the mathematical domain of a function (x <= 0 for a
/// gamma-type argument, zero shift where psi_q diverges, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series did not reach the requested tolerance within the term budget.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (spec files, matrices, flags).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gammacm
