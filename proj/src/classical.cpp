#include "gammacm/classical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "gammacm/compensated_sum.hpp"
#include "gammacm/errors.hpp"
#include "gammacm/specfun.hpp"

namespace gammacm::classical {

namespace {

using exact::Order;

constexpr double kRelTol = 1e-12;

const Number kZero{Rational(0)};
const Number kOne{Rational(1)};
const Number kHalf{Rational(1, 2)};

Order cmp(const Number& a, const Number& b) { return exact::compare(a, b, kRelTol); }

void require_classical(const RatioSpec& spec, const char* op) {
  if (!spec.is_classical()) throw InputError(std::string(op) + ": classical spec required");
  spec.validate();
}

Number sum_of(const std::vector<GammaFactor>& fs, auto&& term) {
  Number total = kZero;
  for (const auto& f : fs) total = total + term(f);
  return total;
}

Evidence factor_list(const std::vector<std::size_t>& ids) {
  Evidence out = Evidence::array();
  for (auto i : ids) out.push_back(i + 1);
  return out;
}

// Tracks conjunctions of comparisons: a clause fails outright, or cannot be
// decided because its two sides tie within rounding.
struct Clauses {
  bool failed = false;
  bool undecided = false;
  std::vector<std::string> notes;

  void require_geq(const Number& a, const Number& b, const std::string& what) {
    const Order o = cmp(a, b);
    if (o == Order::Less) {
      failed = true;
      notes.push_back(what + " fails (" + a.str() + " < " + b.str() + ")");
    } else if (o == Order::Unknown) {
      undecided = true;
      notes.push_back(what + " ties within rounding");
    }
  }
  Verdict verdict(const std::string& reason, const std::string& ok_detail, Evidence ev = Evidence::object()) const {
    ev["notes"] = notes;
    if (!failed && !undecided) return Verdict::certified_true(reason, ok_detail, ev);
    return Verdict::inconclusive(reason, notes.empty() ? "conditions not met" : notes.front(), ev);
  }
};

Order balance(const RatioSpec& spec) {
  return cmp(weighted_scale_sum(spec.numerator), weighted_scale_sum(spec.denominator));
}

}  // namespace

void VhatSpec::validate() const {
  if (alphas.size() != betas.size()) throw InputError("VhatSpec: alphas and betas differ in length");
  if (alphas.empty()) throw InputError("VhatSpec: empty");
  if (!(a.value >= 0.0)) throw InputError("VhatSpec: shift must be nonnegative");
  for (const auto& v : alphas) {
    if (!(v.value > 0.0)) throw InputError("VhatSpec: alphas must be positive");
  }
  for (const auto& v : betas) {
    if (!(v.value > 0.0)) throw InputError("VhatSpec: betas must be positive");
  }
}

RatioSpec VhatSpec::to_ratio_spec() const {
  validate();
  RatioSpec spec;
  Number theta = kOne;
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    spec.numerator.push_back({kOne / alphas[j], a, alphas[j], std::nullopt});
    spec.denominator.push_back({kOne / betas[j], a, betas[j], std::nullopt});
    theta = theta * betas[j] / alphas[j];
  }
  spec.theta = theta;
  return spec;
}

StochasticMatrix::StochasticMatrix(std::vector<std::vector<Number>> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw InputError("stochastic matrix: no rows");
  const std::size_t p = rows_.front().size();
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    if (rows_[j].size() != p || p == 0) throw InputError("stochastic matrix: ragged or empty rows");
    Number total = kZero;
    bool exact_row = true;
    for (const auto& h : rows_[j]) {
      if (!(h.value >= 0.0)) throw InputError("stochastic matrix: negative entry in row " + std::to_string(j + 1));
      total = total + h;
      exact_row = exact_row && h.is_exact();
    }
    const bool ok = exact_row && total.exact ? *total.exact == Rational(1) : std::fabs(total.value - 1.0) <= 1e-12;
    if (!ok) throw InputError("stochastic matrix: row " + std::to_string(j + 1) + " sums to " + total.str());
  }
}

ScaledValue q_kernel_scaled(const RatioSpec& spec, double u) {
  if (!(u > 0.0)) throw DomainError("q_kernel: u must be positive");
  CompensatedSum body;
  CompensatedSum inverse_u;  // coefficient of 1/u from small-argument factors
  double scale = 0.0;
  auto add = [&](const GammaFactor& f, double sign) {
    const double z = u / f.A();
    const double s = f.a();
    if (z < 2.0) {
      // e^{-sz}/(1-e^{-z}) = 1/z + e^{-sz} h(z) + expm1(-sz)/z
      const double t = f.w() * (std::exp(-s * z) * bose_remainder(z) + std::expm1(-s * z) / z);
      body += sign * t;
      scale += std::fabs(t);
      inverse_u += sign * f.w() * f.A();
    } else {
      const double t = f.w() * std::exp(-s * z) / -std::expm1(-z);
      body += sign * t;
      scale += std::fabs(t);
    }
  };
  for (const auto& f : spec.numerator) add(f, 1.0);
  for (const auto& f : spec.denominator) add(f, -1.0);
  const double lead = inverse_u.value() / u;
  body += lead;
  return {body.value(), scale + std::fabs(lead)};
}

double q_kernel(const RatioSpec& spec, double u) { return q_kernel_scaled(spec, u).value; }

KernelAsymptotics kernel_asymptotics(const RatioSpec& spec) {
  KernelAsymptotics k;
  k.leading_coeff_at_0 = weighted_scale_sum(spec.numerator) - weighted_scale_sum(spec.denominator);
  k.const_at_0 = sum_of(spec.numerator, [](const GammaFactor& f) { return f.weight * (kHalf - f.shift); }) -
                 sum_of(spec.denominator, [](const GammaFactor& f) { return f.weight * (kHalf - f.shift); });
  bool ambiguous = false;
  auto argmin = [&](const std::vector<GammaFactor>& fs, std::vector<std::size_t>& ids, Number& weight)
      -> std::optional<Number> {
    if (fs.empty()) return std::nullopt;
    Number best = fs.front().rate();
    for (const auto& f : fs) {
      if (cmp(f.rate(), best) == Order::Less) best = f.rate();
    }
    weight = kZero;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const Order o = cmp(fs[i].rate(), best);
      if (o == Order::Unknown && !(fs[i].rate().value == best.value)) ambiguous = true;
      if (o == Order::Equal || fs[i].rate().value == best.value) {
        ids.push_back(i);
        weight = weight + fs[i].weight;
      }
    }
    return best;
  };
  k.numerator_rate = argmin(spec.numerator, k.I, k.weight_I);
  k.denominator_rate = argmin(spec.denominator, k.J, k.weight_J);
  if (ambiguous) {
    k.dominant_at_inf = "unknown";
  } else if (!k.denominator_rate) {
    k.dominant_at_inf = k.numerator_rate ? "numerator" : "tie";
  } else if (!k.numerator_rate) {
    k.dominant_at_inf = "denominator";
  } else {
    const Order o = k.numerator_rate->value == k.denominator_rate->value && !(k.numerator_rate->exact && k.denominator_rate->exact)
                        ? Order::Equal
                        : cmp(*k.numerator_rate, *k.denominator_rate);
    if (o == Order::Less) {
      k.dominant_at_inf = "numerator";
    } else if (o == Order::Greater) {
      k.dominant_at_inf = "denominator";
    } else if (o == Order::Unknown) {
      k.dominant_at_inf = "unknown";
    } else {
      const Order w = cmp(k.weight_I, k.weight_J);
      k.dominant_at_inf = w == Order::Greater ? "numerator"
                          : w == Order::Less  ? "denominator"
                          : w == Order::Equal ? "tie"
                                              : "unknown";
    }
  }
  return k;
}

Verdict necessary_conditions(const RatioSpec& spec) {
  require_classical(spec, "necessary_conditions");
  const KernelAsymptotics k = kernel_asymptotics(spec);
  Evidence ev{{"leading_coeff_at_0", k.leading_coeff_at_0.str()},
              {"const_at_0", k.const_at_0.str()},
              {"numerator_rate", k.numerator_rate ? k.numerator_rate->str() : "none"},
              {"denominator_rate", k.denominator_rate ? k.denominator_rate->str() : "none"},
              {"I", factor_list(k.I)},
              {"J", factor_list(k.J)},
              {"dominant_at_inf", k.dominant_at_inf}};
  const Order bal = cmp(k.leading_coeff_at_0, kZero);
  if (bal == Order::Less || bal == Order::Greater) {
    return Verdict::certified_false("balance", "sum alpha A != sum beta B", ev);
  }
  const Order c = cmp(k.const_at_0, kZero);
  if (bal == Order::Equal && c == Order::Less) {
    return Verdict::certified_false("necessary_a", "sum beta (b - 1/2) - sum alpha (a - 1/2) < 0", ev);
  }
  if (k.dominant_at_inf == "denominator") {
    const bool tie = k.numerator_rate && k.denominator_rate && cmp(*k.numerator_rate, *k.denominator_rate) != Order::Greater;
    return Verdict::certified_false("necessary_b",
                                    tie ? "equal minimal decay rates with sum alpha_I < sum beta_J"
                                        : "min a/A > min b/B",
                                    ev);
  }
  if (bal == Order::Unknown) return Verdict::inconclusive("balance", "balance holds only within rounding", ev);
  if (c == Order::Unknown) return Verdict::inconclusive("necessary_a", "constant term within rounding of 0", ev);
  if (k.dominant_at_inf == "unknown") return Verdict::inconclusive("necessary_b", "decay comparison within rounding", ev);
  return Verdict::certified_true("necessary_conditions", "no necessary condition is violated", ev);
}

double log_entropy_rho(const RatioSpec& spec) {
  CompensatedSum s;
  for (const auto& f : spec.numerator) s += f.w() * f.A() * std::log(f.A());
  for (const auto& f : spec.denominator) s -= f.w() * f.A() * std::log(f.A());
  return s.value();
}

double entropy_rho(const RatioSpec& spec) { return std::exp(log_entropy_rho(spec)); }

Order theta_vs_rho(const RatioSpec& spec) {
  if (spec.theta.exact && spec.theta.exact->is_positive()) {
    std::vector<exact::PowerTerm> terms;
    bool ok = true;
    auto add = [&](const GammaFactor& f, bool numerator) {
      const Number e = f.weight * f.scale;
      if (!f.scale.exact || !e.exact) {
        ok = false;
        return;
      }
      terms.push_back({*f.scale.exact, numerator ? *e.exact : -*e.exact});
    };
    for (const auto& f : spec.numerator) add(f, true);
    for (const auto& f : spec.denominator) add(f, false);
    if (ok) {
      if (const auto o = exact::compare_power_product(*spec.theta.exact, terms)) {
        if (*o < 0) return Order::Less;
        if (*o > 0) return Order::Greater;
        return Order::Equal;
      }
    }
  }
  const double lt = std::log(spec.theta.value);
  const double lr = log_entropy_rho(spec);
  double mag = std::fabs(std::log(spec.theta.value));
  for (const auto& f : spec.numerator) mag += std::fabs(f.w() * f.A() * std::log(f.A()));
  for (const auto& f : spec.denominator) mag += std::fabs(f.w() * f.A() * std::log(f.A()));
  if (std::fabs(lt - lr) <= kRelTol * std::max(1.0, mag)) return Order::Unknown;
  return lt < lr ? Order::Less : Order::Greater;
}

Verdict exact_kernel_reduction(const RatioSpec& spec, std::size_t max_terms) {
  std::vector<Rational> scales;
  auto exact_ok = [&](const std::vector<GammaFactor>& fs) {
    for (const auto& f : fs) {
      if (!f.scale.exact || !f.shift.exact) return false;
      scales.push_back(*f.scale.exact);
    }
    return true;
  };
  if (!exact_ok(spec.numerator) || !exact_ok(spec.denominator)) {
    return Verdict::inconclusive("exact_reduction", "scales or shifts are not exact rationals");
  }
  if (scales.empty()) return Verdict::certified_true("exact_reduction", "no factors remain, Q vanishes identically");
  try {
    const Rational g = exact::rational_gcd(scales);
    std::map<Rational, Number> net;
    std::size_t count = 0;
    auto split = [&](const GammaFactor& f, bool numerator) {
      const std::int64_t n = *exact::integer_multiple_of(*f.scale.exact, g);
      count += static_cast<std::size_t>(n);
      if (count > max_terms) return false;
      for (std::int64_t r = 0; r < n; ++r) {
        const Rational e = (*f.shift.exact + Rational(r)) / Rational(n);
        auto it = net.try_emplace(e, kZero).first;
        it->second = numerator ? it->second + f.weight : it->second - f.weight;
      }
      return true;
    };
    for (const auto& f : spec.numerator) {
      if (!split(f, true)) return Verdict::inconclusive("exact_reduction", "too many lattice terms");
    }
    for (const auto& f : spec.denominator) {
      if (!split(f, false)) return Verdict::inconclusive("exact_reduction", "too many lattice terms");
    }

    // Coefficients of P in increasing exponent order.
    std::vector<int> signs;
    Number total = kZero;
    for (const auto& [e, w] : net) {
      total = total + w;
      if (w.exact) {
        if (w.exact->is_zero()) continue;
        signs.push_back(w.exact->is_positive() ? 1 : -1);
      } else {
        if (w.value == 0.0) continue;
        return Verdict::inconclusive("exact_reduction", "weights do not cancel exactly");
      }
    }
    Evidence ev{{"step", g.str()}, {"terms", count}, {"nonzero_coefficients", signs.size()}};
    if (signs.empty()) {
      return Verdict::certified_true("exact_reduction", "Q vanishes identically", ev);
    }
    if (signs.front() < 0) {
      return Verdict::certified_false("exact_reduction", "Q < 0 for all large u", ev);
    }
    int changes = 0;
    for (std::size_t i = 1; i < signs.size(); ++i) changes += signs[i] != signs[i - 1];
    ev["sign_changes"] = changes;
    if (changes == 0) return Verdict::certified_true("exact_reduction", "all coefficients of P are positive", ev);
    if (changes == 1) {
      // P(v) v^{-e*} is decreasing on (0, 1), so P >= 0 there iff P(1) >= 0.
      const Order o = cmp(total, kZero);
      if (o == Order::Greater || o == Order::Equal) {
        return Verdict::certified_true("exact_reduction", "one sign change and P(1) >= 0", ev);
      }
      if (o == Order::Less) return Verdict::certified_false("exact_reduction", "one sign change and P(1) < 0", ev);
    }
    // Q(u) ~ P(1)/(1-v) as v = e^{-u/g} -> 1, and Q(0+) = -P'(1) when P(1) = 0.
    const Order at_one = cmp(total, kZero);
    if (at_one == Order::Less) return Verdict::certified_false("exact_reduction", "P(1) < 0, Q -> -inf as u -> 0", ev);
    if (at_one == Order::Equal) {
      Number slope = kZero;
      for (const auto& [e, w] : net) slope = slope + Number(e) * w;
      if (cmp(slope, kZero) == Order::Greater) {
        ev["slope_at_1"] = slope.exact ? slope.exact->str() : std::to_string(slope.value);
        return Verdict::certified_false("exact_reduction", "P(1) = 0 and P'(1) > 0, so Q(0+) < 0", ev);
      }
    }
    return Verdict::inconclusive("exact_reduction", "P has several sign changes", ev);
  } catch (const std::overflow_error&) {
    return Verdict::inconclusive("exact_reduction", "rational overflow");
  }
}

void GridConfig::validate() const {
  if (points < 2) throw InputError("grid needs at least 2 points");
  if (!(u_min > 0.0)) throw InputError("grid u_min must be positive");
  if (u_max && !(*u_max > u_min)) throw InputError("grid u_max must exceed u_min");
  if (!(abs_tol >= 0.0)) throw InputError("grid abs_tol must be nonnegative");
}

double default_u_max(const RatioSpec& spec) {
  double min_rate = INFINITY;
  for (const auto* fs : {&spec.numerator, &spec.denominator}) {
    for (const auto& f : *fs) {
      const double r = f.a() / f.A();
      if (r > 0.0) min_rate = std::min(min_rate, r);
    }
  }
  return std::isfinite(min_rate) ? std::max(50.0, 50.0 / min_rate) : 50.0;
}

std::vector<double> kernel_grid(const RatioSpec& spec, const GridConfig& grid) {
  grid.validate();
  const double hi = grid.u_max.value_or(default_u_max(spec));
  std::vector<double> us(static_cast<std::size_t>(grid.points));
  const double l0 = std::log(grid.u_min);
  const double l1 = std::log(hi);
  for (int i = 0; i < grid.points; ++i) us[i] = std::exp(l0 + (l1 - l0) * i / (grid.points - 1));
  us.front() = grid.u_min;
  us.back() = hi;
  return us;
}

Verdict q_nonneg(const RatioSpec& spec, const GridConfig& grid) {
  require_classical(spec, "q_nonneg");
  const auto us = kernel_grid(spec, grid);
  double worst = INFINITY;
  double worst_u = 0.0;
  for (double u : us) {
    const ScaledValue q = q_kernel_scaled(spec, u);
    if (q.value < -grid.abs_tol * std::max(1.0, q.scale)) {
      return Verdict::certified_false("q_kernel_negative", "Q(u) < 0 at u=" + std::to_string(u),
                                      Evidence{{"u", u}, {"Q", q.value}, {"scale", q.scale}});
    }
    if (q.value < worst) {
      worst = q.value;
      worst_u = u;
    }
  }
  const KernelAsymptotics k = kernel_asymptotics(spec);
  Evidence ev{{"points", grid.points}, {"u_min", us.front()}, {"u_max", us.back()}, {"min_Q", worst},
              {"argmin_u", worst_u}, {"dominant_at_inf", k.dominant_at_inf}};
  const Order lead = cmp(k.leading_coeff_at_0, kZero);
  const Order c = cmp(k.const_at_0, kZero);
  if (lead == Order::Less || (lead == Order::Equal && c == Order::Less)) {
    return Verdict::certified_false("q_kernel_at_0", "Q(u) < 0 as u -> 0+", ev);
  }
  if (k.dominant_at_inf == "denominator") {
    return Verdict::certified_false("q_kernel_at_inf", "Q(u) < 0 for large u", ev);
  }
  if (lead == Order::Unknown || (lead == Order::Equal && c == Order::Unknown) || k.dominant_at_inf == "unknown") {
    return Verdict::inconclusive("q_kernel_asymptotics", "an asymptotic sign is within rounding", ev);
  }
  return Verdict::supported("q_kernel_grid", "Q(u) >= 0 on the grid and at both ends", ev);
}

Verdict sufficient_old(const RatioSpec& spec) {
  require_classical(spec, "sufficient_old");
  const Order bal = balance(spec);
  Evidence ev{{"balance", exact::to_string(bal)}};
  if (bal != Order::Equal) {
    return Verdict::inconclusive("sufficient_old", bal == Order::Unknown ? "balance within rounding" : "balance fails", ev);
  }
  Clauses a;
  for (const auto& f : spec.numerator) {
    for (const auto& d : spec.denominator) a.require_geq((d.shift - kOne) / d.scale, f.rate(), "(a) a_i/A_i <= (b_j-1)/B_j");
  }
  if (!a.failed && !a.undecided) {
    ev["case"] = "a";
    return Verdict::certified_true("sufficient_old", "max a_i/A_i <= min (b_j-1)/B_j with balance", ev);
  }
  ev["case_a"] = a.notes;
  if (spec.p() != spec.s()) return Verdict::inconclusive("sufficient_old", "case (a) fails and p != s", ev);

  Clauses b;
  const std::size_t p = spec.p();
  const auto& A = spec.numerator;
  const auto& B = spec.denominator;
  const Number last = (B[p - 1].shift - kOne) / B[p - 1].scale;
  for (std::size_t i = 0; i + 1 < p; ++i) {
    b.require_geq(A[i].weight * A[i].scale, B[i].weight * B[i].scale, "(b) alpha_i A_i >= beta_i B_i");
    b.require_geq(last, B[i].rate(), "(b) b_j/B_j <= (b_p-1)/B_p");
  }
  for (std::size_t i = 0; i < p; ++i) {
    b.require_geq((B[i].shift - kOne) / B[i].scale, A[i].rate(), "(b) a_i/A_i <= (b_i-1)/B_i");
  }
  ev["case_b"] = b.notes;
  if (!b.failed && !b.undecided) {
    ev["case"] = "b";
    return Verdict::certified_true("sufficient_old", "paired conditions (b) with balance", ev);
  }
  return Verdict::inconclusive("sufficient_old", "neither (a) nor (b) holds", ev);
}

Verdict sherman_inequality(const std::vector<Number>& x, const std::vector<Number>& y, const std::vector<Number>& c,
                           const std::vector<Number>& d, const StochasticMatrix& H, const std::vector<double>& probes) {
  const std::size_t p = x.size();
  const std::size_t s = y.size();
  if (c.size() != p || d.size() != s || H.rows() != s || H.cols() != p) {
    throw InputError("sherman_inequality: dimension mismatch");
  }
  Clauses cl;
  for (std::size_t j = 0; j < s; ++j) {
    Number mean = kZero;
    for (std::size_t i = 0; i < p; ++i) mean = mean + x[i] * H.at(j, i);
    cl.require_geq(y[j], mean, "y_" + std::to_string(j + 1) + " >= sum x_i h_ji");
  }
  for (std::size_t i = 0; i < p; ++i) {
    Number load = kZero;
    for (std::size_t j = 0; j < s; ++j) load = load + d[j] * H.at(j, i);
    cl.require_geq(c[i], load, "c_" + std::to_string(i + 1) + " >= sum d_j h_ji");
  }
  Evidence probe_ev = Evidence::array();
  for (double u : probes) {
    CompensatedSum lhs, rhs;
    for (std::size_t j = 0; j < s; ++j) lhs += d[j].value * std::exp(-u * y[j].value);
    for (std::size_t i = 0; i < p; ++i) rhs += c[i].value * std::exp(-u * x[i].value);
    probe_ev.push_back({{"u", u}, {"lhs", lhs.value()}, {"rhs", rhs.value()}, {"holds", lhs.value() <= rhs.value() * (1 + 1e-12)}});
  }
  return cl.verdict("sherman", "sum d f(y) <= sum c f(x) for every decreasing convex nonnegative f",
                    Evidence{{"probes", probe_ev}});
}

Verdict sherman_sufficient(const RatioSpec& spec, const StochasticMatrix& H) {
  require_classical(spec, "sherman_sufficient");
  if (H.rows() != spec.s() || H.cols() != spec.p()) throw InputError("sherman_sufficient: H must be s x p");
  std::vector<Number> x, y, c, d;
  for (const auto& f : spec.numerator) {
    x.push_back(f.rate());
    c.push_back(f.weight * f.scale);
  }
  for (const auto& f : spec.denominator) {
    y.push_back((f.shift - kOne) / f.scale);
    d.push_back(f.weight * f.scale);
  }
  Verdict v = sherman_inequality(x, y, c, d, H);
  if (v.is_true()) {
    v.reason = "sherman_sufficient";
    v.detail = "Sherman conditions hold for the given matrix, so Q >= 0";
  } else {
    v.reason = "sherman_sufficient";
  }
  return v;
}

Verdict sherman_sufficient_auto(const RatioSpec& spec) {
  require_classical(spec, "sherman_sufficient_auto");
  const Order bal = balance(spec);
  if (bal != Order::Equal) {
    return Verdict::inconclusive("sherman_sufficient_auto", bal == Order::Unknown ? "balance within rounding" : "balance fails");
  }
  const Number sum_bB = weighted_scale_sum(spec.denominator);
  const Number sum_aa = sum_of(spec.numerator, [](const GammaFactor& f) { return f.weight * f.shift; });
  Clauses cl;
  for (std::size_t j = 0; j < spec.s(); ++j) {
    const auto& f = spec.denominator[j];
    cl.require_geq((f.shift - kOne) * sum_bB, f.scale * sum_aa,
                   "(b_" + std::to_string(j + 1) + "-1) sum beta B >= B_j sum alpha a");
  }
  return cl.verdict("sherman_sufficient_auto", "canonical matrix h_ji = alpha_i A_i / sum alpha A certifies Q >= 0");
}

Verdict vhat_check(const VhatSpec& spec) {
  spec.validate();
  auto by_value = [](const Number& l, const Number& r) { return l.value < r.value; };
  std::vector<Number> al = spec.alphas;
  std::vector<Number> be = spec.betas;
  std::sort(al.begin(), al.end(), by_value);
  std::sort(be.begin(), be.end(), by_value);
  Clauses cl;
  cl.require_geq(spec.a, kOne, "a >= 1");
  Number sa = kZero, sb = kZero;
  for (std::size_t k = 0; k < al.size(); ++k) {
    sa = sa + al[k];
    sb = sb + be[k];
    cl.require_geq(sb, sa, "partial sum " + std::to_string(k + 1));
  }
  return cl.verdict("vhat", "(log W-hat)' is Bernstein and V-hat is logarithmically completely monotonic");
}

std::optional<VhatSpec> as_vhat(const RatioSpec& spec) {
  if (spec.p() != spec.s() || spec.p() == 0) return std::nullopt;
  const Number a = spec.numerator.front().shift;
  VhatSpec v{a, {}, {}};
  auto fits = [&](const GammaFactor& f) {
    return cmp(f.shift, a) == Order::Equal && cmp(f.weight * f.scale, kOne) == Order::Equal;
  };
  for (std::size_t i = 0; i < spec.p(); ++i) {
    if (!fits(spec.numerator[i]) || !fits(spec.denominator[i])) return std::nullopt;
    v.alphas.push_back(spec.numerator[i].weight);
    v.betas.push_back(spec.denominator[i].weight);
  }
  return v;
}

Verdict leblanc_johnson_check(const RatioSpec& spec) {
  require_classical(spec, "leblanc_johnson_check");
  const Number a = !spec.numerator.empty() ? spec.numerator.front().shift : spec.denominator.front().shift;
  for (const auto* fs : {&spec.numerator, &spec.denominator}) {
    for (const auto& f : *fs) {
      if (cmp(f.shift, a) != Order::Equal) throw InputError("leblanc_johnson_check: shifts differ");
    }
  }
  Clauses kernel;
  const Order bal = balance(spec);
  if (bal == Order::Unknown) {
    kernel.undecided = true;
    kernel.notes.push_back("balance within rounding");
  } else if (bal != Order::Equal) {
    kernel.failed = true;
    kernel.notes.push_back("balance fails");
  }
  kernel.require_geq(a, kHalf, "a >= 1/2");
  const auto& A = spec.numerator;
  const auto& B = spec.denominator;
  for (std::size_t i = 0; i + 1 < A.size(); ++i) {
    kernel.require_geq(A[i].scale, A[i + 1].scale, "(a) A nonincreasing");
    kernel.require_geq(A[i].weight * A[i].scale, A[i + 1].weight * A[i + 1].scale, "(b) alpha A nonincreasing");
  }
  if (!A.empty() && !B.empty()) kernel.require_geq(A.back().scale, B.front().scale, "(a) A_p >= B_1");
  for (std::size_t j = 0; j + 1 < B.size(); ++j) {
    kernel.require_geq(B[j].scale, B[j + 1].scale, "(a) B nonincreasing");
    kernel.require_geq(B[j + 1].weight * B[j + 1].scale, B[j].weight * B[j].scale, "(c) beta B nondecreasing");
  }
  const bool kernel_ok = !kernel.failed && !kernel.undecided;
  const Order th = theta_vs_rho(spec);
  Evidence ev{{"kernel", kernel_ok}, {"theta_vs_rho", exact::to_string(th)}, {"notes", kernel.notes}};
  if (!kernel_ok) return Verdict::inconclusive("leblanc_johnson", kernel.notes.front(), ev);
  if (th == Order::Less || th == Order::Unknown) {
    return Verdict::inconclusive("leblanc_johnson", th == Order::Less ? "theta < rho" : "theta ties rho within rounding", ev);
  }
  return Verdict::certified_true("leblanc_johnson", "ordered scales and weights with a >= 1/2", ev);
}

Verdict p1_exact(const Number& alpha, const Number& beta, const Number& a) {
  if (!(alpha.value > 0.0) || !(beta.value > 0.0) || !(a.value >= 0.0)) throw InputError("p1_exact: bad parameters");
  Evidence ev{{"alpha", alpha.str()}, {"beta", beta.str()}, {"a", a.str()}};
  const Order ab = cmp(alpha, beta);
  if (ab == Order::Unknown) return Verdict::inconclusive("p1_exact", "alpha and beta tie within rounding", ev);
  if (ab == Order::Equal) return Verdict::certified_true("p1_exact", "alpha = beta", ev);
  if (ab == Order::Greater) return Verdict::certified_false("p1_exact", "alpha > beta", ev);
  const Order sh = cmp(a, kHalf);
  if (sh == Order::Unknown) return Verdict::inconclusive("p1_exact", "a within rounding of 1/2", ev);
  if (sh == Order::Less) return Verdict::certified_false("p1_exact", "alpha < beta and a < 1/2", ev);
  return Verdict::certified_true("p1_exact", "alpha < beta and a >= 1/2", ev);
}

std::vector<std::pair<std::string, Verdict>> sufficient_families(const RatioSpec& spec) {
  require_classical(spec, "sufficient_families");
  std::vector<std::pair<std::string, Verdict>> out;
  out.emplace_back("exact_reduction", exact_kernel_reduction(cancel_common_factors(spec)));
  out.emplace_back("sufficient_old", sufficient_old(spec));
  out.emplace_back("sherman_sufficient_auto", sherman_sufficient_auto(spec));
  if (const auto vh = as_vhat(spec)) {
    out.emplace_back("vhat", vhat_check(*vh));
    if (vh->alphas.size() == 1) {
      Verdict p1 = p1_exact(vh->alphas.front(), vh->betas.front(), vh->a);
      // Only the affirmative direction is a statement about Q.
      if (!p1.is_true()) p1 = Verdict::inconclusive("p1_exact", p1.detail, p1.evidence);
      out.emplace_back("p1_exact", p1);
    }
  }
  bool common = true;
  const Number a = !spec.numerator.empty() ? spec.numerator.front().shift : spec.denominator.front().shift;
  for (const auto* fs : {&spec.numerator, &spec.denominator}) {
    for (const auto& f : *fs) common = common && cmp(f.shift, a) == Order::Equal;
  }
  if (common) {
    Verdict lj = leblanc_johnson_check(spec);
    // Q >= 0 needs only the kernel conditions; theta is judged separately.
    if (!lj.is_true() && lj.evidence.value("kernel", false)) {
      lj = Verdict::certified_true("leblanc_johnson", "kernel conditions hold", lj.evidence);
    }
    out.emplace_back("leblanc_johnson", lj);
  }
  return out;
}

Verdict check_lcm_classical(const RatioSpec& spec, const GridConfig& grid) {
  require_classical(spec, "check_lcm_classical");
  const Order bal = balance(spec);
  const Order th = theta_vs_rho(spec);
  Evidence ev{{"balance", exact::to_string(bal)},
              {"theta_vs_rho", exact::to_string(th)},
              {"rho", entropy_rho(spec)},
              {"theta", spec.theta.str()}};

  if (bal == Order::Less || bal == Order::Greater) {
    return Verdict::certified_false("balance", "sum alpha A != sum beta B", ev);
  }
  if (th == Order::Less) return Verdict::certified_false("theta_lt_rho", "theta < rho", ev);

  const Verdict nec = necessary_conditions(spec);
  ev["necessary"] = nec;
  if (nec.is_false()) return Verdict::certified_false(nec.reason, nec.detail, ev);

  const auto families = sufficient_families(spec);
  Evidence fam_ev = Evidence::object();
  std::optional<std::string> certified_by;
  std::optional<Verdict> refuted;
  for (const auto& [name, v] : families) {
    fam_ev[name] = to_string(v.status);
    if (v.is_true() && !certified_by) certified_by = name;
    if (v.is_false() && !refuted) refuted = v;
  }
  ev["families"] = fam_ev;

  const Verdict grid_v = q_nonneg(spec, grid);
  ev["grid"] = grid_v;
  if (certified_by && grid_v.is_false()) {
    return Verdict::inconclusive("certificate_grid_conflict", "a certificate and the grid disagree on Q", ev);
  }
  if (refuted) return Verdict::certified_false("q_kernel", refuted->detail, ev);
  if (grid_v.is_false()) return Verdict::certified_false(grid_v.reason, grid_v.detail, ev);

  if (bal == Order::Unknown) return Verdict::inconclusive("balance", "balance holds only within rounding", ev);
  if (th == Order::Unknown) return Verdict::inconclusive("theta_vs_rho", "theta ties rho within rounding", ev);
  if (certified_by) {
    ev["certified_by"] = *certified_by;
    return Verdict::certified_true("lcm", "balance, theta >= rho and Q >= 0 via " + *certified_by, ev);
  }
  if (grid_v.status == Status::Supported) {
    return Verdict::supported("lcm", "balance and theta >= rho hold; Q >= 0 only on the grid", ev);
  }
  return Verdict::inconclusive(grid_v.reason, grid_v.detail, ev);
}

}  // namespace gammacm::classical
