#include "gammacm/qmonotone.hpp"

#include <algorithm>
#include <cmath>

#include "gammacm/compensated_sum.hpp"
#include "gammacm/errors.hpp"
#include "gammacm/tail.hpp"

namespace gammacm::qmonotone {

namespace {

using exact::Order;

const QParam& require_q(const RatioSpec& spec, const char* op) {
  if (!spec.q) throw InputError(std::string(op) + ": q-case spec required");
  spec.validate();
  return *spec.q;
}

// sign of sum alpha t^{a} - sum beta t^{b} at t = q^n, via logs.
struct Sign {
  double scaled = 0.0;
  double largest = 0.0;
  double log_scale = 0.0;
};

Sign v_at(const RatioSpec& spec, double log_t) {
  Sign s;
  s.log_scale = -INFINITY;
  auto scan = [&](const std::vector<GammaFactor>& fs) {
    for (const auto& f : fs) s.log_scale = std::max(s.log_scale, std::log(f.w()) + f.a() * log_t);
  };
  scan(spec.numerator);
  scan(spec.denominator);
  CompensatedSum sum;
  for (const auto& f : spec.numerator) {
    const double v = std::exp(std::log(f.w()) + f.a() * log_t - s.log_scale);
    s.largest = std::max(s.largest, v);
    sum += v;
  }
  for (const auto& f : spec.denominator) {
    const double v = std::exp(std::log(f.w()) + f.a() * log_t - s.log_scale);
    s.largest = std::max(s.largest, v);
    sum -= v;
  }
  s.scaled = sum.value();
  return s;
}

bool negative(const Sign& s) { return s.scaled < -1e-12 * s.largest; }

}  // namespace

Order balance_order(const RatioSpec& spec, double rel_tol) {
  const Number lhs = weighted_scale_sum(spec.numerator);
  const Number rhs = weighted_scale_sum(spec.denominator);
  return exact::compare(lhs, rhs, rel_tol);
}

Verdict check_log2_cm(const RatioSpec& spec, const qlattice::MassConfig& cfg) {
  require_q(spec, "check_log2_cm");
  Verdict support = qlattice::support_inclusion(spec);
  if (support.is_false()) {
    support.evidence = Evidence{{"support", support.evidence}};
    return support;
  }
  Verdict mass = qlattice::mass_condition(spec, cfg);
  Evidence ev{{"support", support.evidence}, {"mass", mass.evidence}};
  mass.evidence = ev;
  if (mass.is_true()) mass.detail = "(log W_q)'' is completely monotonic: " + mass.detail;
  return mass;
}

Verdict check_bernstein(const RatioSpec& spec, const qlattice::MassConfig& cfg) {
  const QParam& q = require_q(spec, "check_bernstein");
  auto require_positive = [](const std::vector<GammaFactor>& fs, const char* side) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (fs[i].a() == 0.0) {
        throw DomainError(std::string(side) + " factor " + std::to_string(i + 1) +
                          " has shift 0; psi_q diverges at 0");
      }
    }
  };
  require_positive(spec.numerator, "numerator");
  require_positive(spec.denominator, "denominator");

  const Verdict log2 = check_log2_cm(spec, cfg);
  const RatioSpec reduced = cancel_common_factors(spec);
  CompensatedSum boundary;
  double scale = 0.0;
  for (const auto& f : reduced.numerator) {
    const double t = f.w() * f.A() * digamma_q(f.a(), q);
    boundary += t;
    scale += std::fabs(t);
  }
  for (const auto& f : reduced.denominator) {
    const double t = f.w() * f.A() * digamma_q(f.a(), q);
    boundary -= t;
    scale += std::fabs(t);
  }
  const double b = boundary.value();
  Evidence ev{{"log2_cm", log2}, {"boundary", b}, {"boundary_scale", scale}};
  Order bcmp = Order::Equal;
  if (scale > 0.0) bcmp = std::fabs(b) <= kBoundaryRelTol * scale ? Order::Unknown : (b < 0 ? Order::Less : Order::Greater);

  if (bcmp == Order::Less) {
    return Verdict::certified_false("bernstein_boundary", "(log W_q)'(0+) < 0", ev);
  }
  if (log2.is_false()) return Verdict::certified_false("log2_cm", log2.detail, ev);
  if (bcmp == Order::Unknown) {
    return Verdict::inconclusive("bernstein_boundary", "boundary value within rounding of 0", ev);
  }
  if (!log2.is_true()) return Verdict::inconclusive("log2_cm", log2.detail, ev);
  return Verdict::certified_true("bernstein", "(log W_q)'' is completely monotonic and (log W_q)'(0+) >= 0", ev);
}

Verdict check_lcm(const RatioSpec& spec, const qlattice::MassConfig& cfg) {
  require_q(spec, "check_lcm");
  const Verdict log2 = check_log2_cm(spec, cfg);
  const Number lhs = weighted_scale_sum(spec.numerator);
  const Number rhs = weighted_scale_sum(spec.denominator);
  const Order bal = exact::compare(lhs, rhs, kBoundaryRelTol);
  Evidence ev{{"log2_cm", log2},
              {"balance", {{"sum_alpha_A", lhs.str()}, {"sum_beta_B", rhs.str()}, {"order", exact::to_string(bal)},
                           {"exact", lhs.is_exact() && rhs.is_exact()}}}};
  if (bal == Order::Greater) {
    return Verdict::certified_false("lcm_balance", "sum alpha A > sum beta B", ev);
  }
  if (log2.is_false()) return Verdict::certified_false("log2_cm", log2.detail, ev);
  if (bal == Order::Unknown) {
    return Verdict::inconclusive("lcm_balance", "sum alpha A and sum beta B tie within rounding", ev);
  }
  if (!log2.is_true()) return Verdict::inconclusive("log2_cm", log2.detail, ev);
  return Verdict::certified_true("lcm", "(log W_q)'' is completely monotonic and sum alpha A <= sum beta B", ev);
}

Verdict check_fq_example1(const RatioSpec& spec, std::int64_t n_max) {
  const QParam& q = require_q(spec, "check_fq_example1");
  if (n_max < 1) throw InputError("n_max must be positive");
  auto unit = [](const std::vector<GammaFactor>& fs) {
    return std::all_of(fs.begin(), fs.end(), [](const GammaFactor& f) { return f.A() == 1.0; });
  };
  if (!unit(spec.numerator) || !unit(spec.denominator)) throw InputError("check_fq_example1 needs every scale equal to 1");
  const double lq = q.log_q();

  auto failure = [&](std::int64_t n, const Sign& s, const char* stage) {
    Evidence ev{{"n", n}, {"stage", stage}, {"scaled_v", s.scaled}, {"log_scale", s.log_scale},
                {"v", s.scaled * std::exp(s.log_scale)}};
    return Verdict::certified_false("v_nonneg", "v(q^n) < 0 at n=" + std::to_string(n), ev);
  };

  for (std::int64_t n = 1; n <= n_max; ++n) {
    const Sign s = v_at(spec, static_cast<double>(n) * lq);
    if (negative(s)) return failure(n, s, "finite");
  }

  std::vector<tail::Term> terms;
  for (const auto& f : spec.numerator) terms.push_back({tail::Side::Numerator, f.weight, f.shift, std::nullopt});
  for (const auto& f : spec.denominator) terms.push_back({tail::Side::Denominator, f.weight, f.shift, std::nullopt});
  tail::Options opt;
  opt.lambda = q.log_inv();
  opt.k_start = n_max + 1;
  const auto t = tail::analyze(terms, opt);
  Evidence tail_ev{{"outcome", tail::to_string(t.outcome)}, {"level", t.level}, {"detail", t.detail}};
  bool tail_ok = false;
  if (t.outcome == tail::Outcome::Certified) {
    tail_ev["from_k"] = t.from_k;
    for (std::int64_t n = n_max + 1; n < t.from_k; ++n) {
      const Sign s = v_at(spec, static_cast<double>(n) * lq);
      if (negative(s)) return failure(n, s, "tail_gap");
    }
    tail_ok = true;
  } else if (t.outcome == tail::Outcome::DenominatorDominates) {
    for (std::int64_t n = n_max + 1; n <= (std::int64_t{1} << 50); n = 2 * n) {
      const Sign s = v_at(spec, static_cast<double>(n) * lq);
      if (negative(s)) return failure(n, s, "tail");
    }
  }

  // Stronger sufficient condition, sampled only: v(t) >= 0 on (0, q).
  bool sampled_ok = true;
  for (int i = 1; i <= 200; ++i) {
    const double log_t = lq + std::log(static_cast<double>(i) / 201.0);
    if (negative(v_at(spec, log_t))) {
      sampled_ok = false;
      break;
    }
  }

  Number sa{Rational(0)}, sb{Rational(0)};
  for (const auto& f : spec.numerator) sa = sa + f.weight;
  for (const auto& f : spec.denominator) sb = sb + f.weight;
  const Order bal = exact::compare(sa, sb, kBoundaryRelTol);
  Evidence ev{{"n_max", n_max}, {"tail", tail_ev}, {"sum_alpha", sa.str()}, {"sum_beta", sb.str()},
              {"sampled_v_nonneg_on_0_q", sampled_ok}};
  if (bal == Order::Greater) return Verdict::certified_false("weight_balance", "sum alpha > sum beta", ev);
  if (bal == Order::Unknown) return Verdict::inconclusive("weight_balance", "sum alpha and sum beta tie within rounding", ev);
  if (!tail_ok) return Verdict::inconclusive("v_tail", t.detail, ev);
  return Verdict::certified_true("fq_example1", "v(q^n) >= 0 for all n and sum alpha <= sum beta", ev);
}

}  // namespace gammacm::qmonotone
