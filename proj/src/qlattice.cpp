#include "gammacm/qlattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "gammacm/compensated_sum.hpp"
#include "gammacm/errors.hpp"
#include "gammacm/tail.hpp"

namespace gammacm::qlattice {

namespace {

// Scale ratios inside a labeled class are recovered as p/q with q <= 10^4 and
// a few ulps of slack; looser bounds accept irrational ratios such as
// sqrt(3)/sqrt(2) ~ 1046629/854569.
constexpr std::int64_t kClassMaxDen = 10'000;
constexpr double kClassRelTol = 1e-14;

using exact::Order;

const QParam& require_q(const RatioSpec& spec, const char* op) {
  if (!spec.q) throw InputError(std::string(op) + ": q-case spec required");
  return *spec.q;
}

std::string class_name(const std::optional<std::string>& label) { return label.value_or(""); }

// log of one factor's contribution at multiplier n: weight * scale^2 * n q^{n shift} / (1 - q^n).
double log_contribution(const GammaFactor& f, std::int64_t n, const QParam& q) {
  const double dn = static_cast<double>(n);
  const double qn = std::exp(dn * q.log_q());
  return std::log(f.w()) + 2.0 * std::log(f.A()) + std::log(dn) + dn * f.a() * q.log_q() - std::log1p(-qn);
}

Evidence index_list(const LatticeMeasure& m, const std::vector<std::size_t>& ids, bool numerator) {
  Evidence out = Evidence::array();
  for (auto id : ids) {
    if (m.factors[id].numerator == numerator) out.push_back(m.factors[id].index + 1);
  }
  return out;
}

}  // namespace

bool LatticeMeasure::has_denominator() const {
  return std::any_of(factors.begin(), factors.end(), [](const LatticeFactor& f) { return !f.numerator; });
}

std::vector<std::size_t> LatticeMeasure::contributors(std::int64_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (k % factors[i].stride == 0) out.push_back(i);
  }
  return out;
}

double MassAt::value() const { return scaled == 0.0 ? 0.0 : scaled * std::exp(log_scale); }

std::vector<LatticeMeasure> build_lattices(const RatioSpec& spec) {
  const QParam& q = require_q(spec, "build_lattices");
  std::map<std::string, std::vector<LatticeFactor>> groups;
  std::vector<std::string> order;
  auto add = [&](const std::vector<GammaFactor>& fs, bool numerator) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const std::string name = class_name(fs[i].irr_class);
      if (!groups.count(name)) order.push_back(name);
      groups[name].push_back(LatticeFactor{i, numerator, 1, fs[i]});
    }
  };
  add(spec.numerator, true);
  add(spec.denominator, false);

  std::vector<LatticeMeasure> out;
  for (const auto& name : order) {
    LatticeMeasure m;
    m.label = name;
    m.lambda = q.log_inv();
    m.factors = groups[name];
    const bool exact_scales =
        std::all_of(m.factors.begin(), m.factors.end(), [](const LatticeFactor& f) { return f.factor.scale.is_exact(); });
    if (!exact_scales && name.empty()) {
      throw InputError("unlabeled factors need exact rational scales; give irrational scales an irr_class");
    }
    std::vector<Rational> coords;
    if (exact_scales) {
      for (const auto& f : m.factors) coords.push_back(*f.factor.scale.exact);
    } else {
      m.unit = std::numeric_limits<double>::infinity();
      for (const auto& f : m.factors) m.unit = std::min(m.unit, f.factor.A());
      for (const auto& f : m.factors) {
        auto c = Rational::approximate(f.factor.A() / m.unit, kClassMaxDen, kClassRelTol);
        if (!c) throw InputError("irr_class '" + name + "': scales are not rationally related");
        coords.push_back(*c);
      }
    }
    m.step = exact::rational_gcd(coords);
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      const auto n = exact::integer_multiple_of(coords[i], m.step);
      if (!n) throw std::logic_error("lattice coordinate is not a multiple of the step");
      m.factors[i].stride = *n;
      try {
        m.period = exact::lcm64(m.period, *n);
      } catch (const std::overflow_error&) {
        m.period = std::numeric_limits<std::int64_t>::max();
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

MassAt mass_at(const LatticeMeasure& m, std::int64_t k, const QParam& q) {
  MassAt res;
  std::vector<std::pair<double, bool>> logs;
  for (const auto& f : m.factors) {
    if (k % f.stride != 0) continue;
    logs.emplace_back(log_contribution(f.factor, k / f.stride, q), f.numerator);
    res.any_denominator = res.any_denominator || !f.numerator;
  }
  if (logs.empty()) return res;
  res.log_scale = -std::numeric_limits<double>::infinity();
  for (const auto& [l, num] : logs) res.log_scale = std::max(res.log_scale, l);
  CompensatedSum sum;
  for (const auto& [l, num] : logs) {
    const double v = std::exp(l - res.log_scale);
    res.largest = std::max(res.largest, v);
    if (num) {
      sum += v;
    } else {
      sum -= v;
    }
  }
  res.scaled = sum.value();
  return res;
}

double tau_mass(const RatioSpec& spec, std::int64_t k) {
  if (k < 1) throw InputError("tau_mass: k must be positive");
  const auto lattices = build_lattices(spec);
  return mass_at(lattices.front(), k, *spec.q).value();
}

Verdict support_inclusion(const RatioSpec& spec) {
  require_q(spec, "support_inclusion");
  const auto lattices = build_lattices(spec);
  Evidence n = Evidence::array();
  Evidence idx = Evidence::array();
  std::vector<std::pair<std::int64_t, std::size_t>> found(spec.s(), {0, 0});
  for (const auto& m : lattices) {
    for (const auto& d : m.factors) {
      if (d.numerator) continue;
      bool covered = false;
      for (const auto& f : m.factors) {
        if (!f.numerator || d.stride % f.stride != 0) continue;
        found[d.index] = {d.stride / f.stride, f.index};
        covered = true;
        break;
      }
      if (!covered) {
        Evidence ev{{"denominator", d.index + 1}, {"irr_class", m.label}};
        return Verdict::certified_false("support_inclusion",
                                        "denominator factor " + std::to_string(d.index + 1) +
                                            " is not an integer multiple of any numerator scale in its class",
                                        ev);
      }
    }
  }
  for (const auto& [mult, i] : found) {
    n.push_back(mult);
    idx.push_back(i + 1);
  }
  return Verdict::certified_true("support_inclusion", "every denominator scale is an integer multiple of a numerator scale",
                                 Evidence{{"n", n}, {"i", idx}});
}

Verdict mass_condition(const RatioSpec& spec, const MassConfig& cfg) {
  const QParam& q = require_q(spec, "mass_condition");
  const auto lattices = build_lattices(spec);
  Evidence classes = Evidence::array();
  std::vector<std::string> open;

  auto violation = [&](const LatticeMeasure& m, std::int64_t k, const MassAt& mass, const char* stage) {
    Evidence ev{{"irr_class", m.label}, {"k", k}, {"t", static_cast<double>(k) * m.spacing()},
                {"mass", mass.value()}, {"log_scale", mass.log_scale}, {"scaled_mass", mass.scaled},
                {"stage", stage}, {"contributors", {{"numerator", index_list(m, m.contributors(k), true)},
                                                     {"denominator", index_list(m, m.contributors(k), false)}}}};
    return Verdict::certified_false("mass_condition",
                                    "tau has negative mass at lattice index k=" + std::to_string(k) +
                                        (m.label.empty() ? "" : " of class " + m.label),
                                    ev);
  };
  auto negative = [](const MassAt& mass) { return mass.any_denominator && mass.scaled < -1e-12 * mass.largest; };

  // Finite range first for every class so that the smallest failing k is reported.
  std::vector<std::int64_t> horizons;
  for (const auto& m : lattices) {
    if (!m.has_denominator()) {
      horizons.push_back(0);
      continue;
    }
    if (m.period > cfg.max_period) {
      horizons.push_back(-1);
      continue;
    }
    const std::int64_t k_max = cfg.k_max.value_or(64 * m.period);
    if (k_max < m.period) {
      throw InputError("k_max=" + std::to_string(k_max) + " must cover a full period (" + std::to_string(m.period) + ")");
    }
    horizons.push_back(k_max);
    for (std::int64_t k = 1; k <= k_max; ++k) {
      const MassAt mass = mass_at(m, k, q);
      if (negative(mass)) return violation(m, k, mass, "finite");
    }
  }

  for (std::size_t c = 0; c < lattices.size(); ++c) {
    const auto& m = lattices[c];
    Evidence cls{{"irr_class", m.label}, {"step", m.step.str()}, {"unit", m.unit}, {"period", m.period}};
    if (horizons[c] == 0) {
      cls["families"] = Evidence::array();
      cls["note"] = "numerator only";
      classes.push_back(cls);
      continue;
    }
    if (horizons[c] < 0) {
      cls["note"] = "period too large";
      classes.push_back(cls);
      open.push_back("class '" + m.label + "' period too large");
      continue;
    }
    const std::int64_t k_max = horizons[c];
    cls["k_max"] = k_max;

    // Residues with the same contributor pattern share one tail analysis.
    std::map<std::vector<std::size_t>, std::vector<std::int64_t>> families;
    for (std::int64_t r = 1; r <= m.period; ++r) families[m.contributors(r)].push_back(r);

    Evidence fams = Evidence::array();
    for (const auto& [ids, residues] : families) {
      const bool has_den = std::any_of(ids.begin(), ids.end(), [&](std::size_t i) { return !m.factors[i].numerator; });
      if (!has_den) continue;
      Evidence res_list = Evidence::array();
      for (auto r : residues) res_list.push_back(r % m.period);
      Evidence fam{{"residues", res_list},
                   {"numerator", index_list(m, ids, true)},
                   {"denominator", index_list(m, ids, false)}};

      std::vector<tail::Term> terms;
      for (auto i : ids) {
        const auto& f = m.factors[i];
        const Number n(Rational(f.stride));
        terms.push_back(tail::Term{f.numerator ? tail::Side::Numerator : tail::Side::Denominator,
                                   f.factor.weight * f.factor.scale * f.factor.scale / n, f.factor.shift / n,
                                   f.stride});
      }
      Evidence tails = Evidence::array();
      for (auto r : residues) {
        const std::int64_t k_start = k_max + 1 + ((r - (k_max + 1)) % m.period + m.period) % m.period;
        tail::Options opt;
        opt.lambda = m.lambda;
        opt.k_start = k_start;
        opt.stride = m.period;
        const auto t = tail::analyze(terms, opt);
        Evidence te{{"residue", r % m.period}, {"outcome", tail::to_string(t.outcome)}, {"level", t.level},
                    {"detail", t.detail}};
        if (t.outcome == tail::Outcome::Certified) {
          te["from_k"] = t.from_k;
          const std::int64_t gap = (t.from_k - k_start) / m.period;
          if (gap > cfg.max_explicit) {
            open.push_back("tail gap too long in class '" + m.label + "'");
            te["outcome"] = "undecided";
          } else {
            for (std::int64_t k = k_start; k < t.from_k; k += m.period) {
              const MassAt mass = mass_at(m, k, q);
              if (negative(mass)) return violation(m, k, mass, "tail_gap");
            }
          }
        } else if (t.outcome == tail::Outcome::DenominatorDominates) {
          for (std::int64_t step = 0; step <= (std::int64_t{1} << 50); step = step == 0 ? 1 : 2 * step) {
            const std::int64_t k = k_start + m.period * step;
            const MassAt mass = mass_at(m, k, q);
            if (negative(mass)) return violation(m, k, mass, "tail");
          }
          open.push_back("denominator dominates but no failing k located");
        } else {
          open.push_back("undecided tail in class '" + m.label + "': " + t.detail);
        }
        tails.push_back(te);
      }
      fam["tail"] = tails;
      fams.push_back(fam);
    }
    cls["families"] = fams;
    classes.push_back(cls);
  }

  Evidence ev{{"classes", classes}};
  if (!open.empty()) {
    ev["open"] = open;
    return Verdict::inconclusive("mass_condition", open.front(), ev);
  }
  return Verdict::certified_true("mass_condition", "tau is nonnegative on every lattice", ev);
}

Verdict abprime_sufficient(const RatioSpec& spec) {
  const QParam& q = require_q(spec, "abprime_sufficient");
  const auto lattices = build_lattices(spec);
  const auto q_exact = Rational::from_double(q.value());
  Evidence pairs = Evidence::array();
  std::optional<Verdict> failure;
  bool unknown = false;

  for (const auto& m : lattices) {
    std::vector<const LatticeFactor*> nums, dens;
    for (const auto& f : m.factors) (f.numerator ? nums : dens).push_back(&f);
    if (dens.empty()) continue;
    if (dens.size() != 1 || nums.size() != 1) {
      return Verdict::inconclusive("abprime_structure",
                                   "class '" + m.label + "' does not pair one numerator with one denominator factor");
    }
    const auto& num = *nums.front();
    const auto& den = *dens.front();
    if (den.stride % num.stride != 0) {
      return Verdict::inconclusive("abprime_structure", "denominator scale is not an integer multiple in class '" + m.label + "'");
    }
    const std::int64_t n = den.stride / num.stride;
    const Number gap = den.factor.shift - Number(Rational(n)) * num.factor.shift;
    const Number ratio = num.factor.weight / den.factor.weight;
    Evidence pe{{"numerator", num.index + 1}, {"denominator", den.index + 1}, {"n", n}, {"shift_gap", gap.str()},
                {"ratio", ratio.str()}};

    const Order gap_sign = exact::compare(gap, Number(Rational(0)), 1e-12, 1e-12);
    if (gap_sign == Order::Unknown) {
      pe["status"] = "inconclusive";
      unknown = true;
      pairs.push_back(pe);
      continue;
    }
    if (gap_sign == Order::Less) {
      // q^{m gap} grows without bound: the point m*B fails for m large enough.
      const double lq = q.log_q();
      std::int64_t bad = 0;
      for (std::int64_t mm = 1; mm <= (std::int64_t{1} << 50); mm *= 2) {
        const double dm = static_cast<double>(mm);
        const double rhs = std::log(static_cast<double>(n)) + dm * gap.value * lq +
                           std::log1p(-std::exp(dm * static_cast<double>(n) * lq)) - std::log1p(-std::exp(dm * lq));
        if (std::log(ratio.value) < rhs - 1e-12 * std::max(1.0, std::fabs(rhs))) {
          bad = mm;
          break;
        }
      }
      pe["status"] = "false";
      pe["m"] = bad;
      pairs.push_back(pe);
      if (!failure && bad > 0) {
        failure = Verdict::certified_false("abprime_condition",
                                           "b < n a: mass at m=" + std::to_string(bad) + " multiples of B is negative",
                                           pe);
      }
      if (bad == 0) unknown = true;
      continue;
    }

    // Binding case m = 1: ratio >= n q^{gap} (1 + q + ... + q^{n-1}).
    Order cmp = Order::Unknown;
    if (q_exact && ratio.exact && gap.exact && gap.exact->is_integer() && gap.exact->num() <= 62 && n <= 62) {
      try {
        Rational qp(1), geo(0), pw(1);
        for (std::int64_t l = 0; l < gap.exact->num(); ++l) qp = qp * *q_exact;
        for (std::int64_t l = 0; l < n; ++l) {
          geo = geo + pw;
          pw = pw * *q_exact;
        }
        const Rational rhs = Rational(n) * qp * geo;
        cmp = exact::compare(*ratio.exact, rhs);
        pe["rhs"] = rhs.str();
      } catch (const std::overflow_error&) {
        cmp = Order::Unknown;
      }
    }
    if (cmp == Order::Unknown) {
      const double qv = q.value();
      const double rhs = static_cast<double>(n) * std::pow(qv, gap.value) * (-std::expm1(n * q.log_q())) / (1.0 - qv);
      pe["rhs"] = rhs;
      cmp = exact::compare(ratio, Number(rhs), 1e-12);
    }
    if (cmp == Order::Unknown) {
      pe["status"] = "inconclusive";
      unknown = true;
    } else if (cmp == Order::Less) {
      pe["status"] = "false";
      pe["m"] = 1;
      if (!failure) {
        failure = Verdict::certified_false("abprime_condition",
                                           "pair " + std::to_string(den.index + 1) + " fails at m=1", pe);
      }
    } else {
      pe["status"] = "true";
    }
    pairs.push_back(pe);
  }

  if (failure) {
    failure->evidence["pairs"] = pairs;
    return *failure;
  }
  if (unknown) return Verdict::inconclusive("abprime_condition", "a pair is within rounding of its bound", {{"pairs", pairs}});
  return Verdict::certified_true("abprime_condition", "every pair satisfies its m=1 bound", {{"pairs", pairs}});
}

double laplace_log_second_derivative(const RatioSpec& spec, double x, std::int64_t k_limit) {
  const QParam& q = require_q(spec, "laplace_log_second_derivative");
  CompensatedSum total;
  for (const auto& m : build_lattices(spec)) {
    for (std::int64_t k = 1; k <= k_limit; ++k) {
      const MassAt mass = mass_at(m, k, q);
      if (mass.scaled == 0.0) continue;
      total += mass.scaled * std::exp(mass.log_scale - x * static_cast<double>(k) * m.spacing());
    }
  }
  return q.log_q() * q.log_q() * total.value();
}

}  // namespace gammacm::qlattice
