#pragma once

#include <cstdint>

#include "gammacm/qlattice.hpp"

namespace gammacm::qmonotone {

/// Relative margin under which the boundary inequalities count as ties.
inline constexpr double kBoundaryRelTol = 1e-10;

/// (log W_q)'' completely monotonic: support inclusion and a nonnegative tau.
Verdict check_log2_cm(const RatioSpec& spec, const qlattice::MassConfig& cfg = {});

/// (log W_q)' Bernstein. Throws DomainError if any shift is 0.
Verdict check_bernstein(const RatioSpec& spec, const qlattice::MassConfig& cfg = {});

/// W_q logarithmically completely monotonic.
Verdict check_lcm(const RatioSpec& spec, const qlattice::MassConfig& cfg = {});

/// Unit-scale specialization: v(q^n) >= 0 for every n and sum alpha <= sum beta.
/// Throws InputError unless every scale equals 1.
Verdict check_fq_example1(const RatioSpec& spec, std::int64_t n_max = 256);

/// sum alpha_i A_i - sum beta_j B_j compared with 0 (exact when possible).
exact::Order balance_order(const RatioSpec& spec, double rel_tol = kBoundaryRelTol);

}  // namespace gammacm::qmonotone
