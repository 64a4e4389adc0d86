#include "gammacm/tail.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gammacm/errors.hpp"

namespace gammacm::tail {

namespace {

using exact::Order;

bool same(const Number& a, const Number& b) {
  if (a.exact && b.exact) return *a.exact == *b.exact;
  return a.value == b.value;
}

bool same_shape(const Term& a, const Term& b) { return a.period == b.period && same(a.rate, b.rate); }

// Collapses terms with identical (rate, period) into one signed coefficient.
// Returns false when a collapsed coefficient is a rounding-level residue.
bool net_terms(std::vector<Term>& terms, double rel_tol) {
  std::vector<Term> out;
  std::vector<bool> done(terms.size(), false);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (done[i]) continue;
    Number net = terms[i].side == Side::Numerator ? terms[i].coef : Number(exact::Rational(0)) - terms[i].coef;
    double magnitude = std::fabs(terms[i].coef.value);
    bool mixed = false;
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (done[j] || !same_shape(terms[i], terms[j])) continue;
      done[j] = true;
      mixed = mixed || terms[j].side != terms[i].side;
      net = terms[j].side == Side::Numerator ? net + terms[j].coef : net - terms[j].coef;
      magnitude = std::max(magnitude, std::fabs(terms[j].coef.value));
    }
    Term t = terms[i];
    if (net.exact) {
      if (net.exact->is_zero()) continue;
    } else if (mixed && std::fabs(net.value) <= rel_tol * magnitude) {
      return false;
    }
    if (net.value < 0) {
      t.side = Side::Denominator;
      t.coef = Number(exact::Rational(0)) - net;
    } else {
      t.side = Side::Numerator;
      t.coef = net;
    }
    out.push_back(t);
  }
  terms = std::move(out);
  return true;
}

double geometric_factor(const Term& t, double lambda, double k) {
  if (!t.period) return 1.0;
  return 1.0 / -std::expm1(-lambda * k / static_cast<double>(*t.period));
}

// sum over denominator terms of coef * exp(-lambda k (rate - lead)) * G(k).
double denominator_bound(const std::vector<Term>& terms, const Number& lead, double lambda, double k) {
  double total = 0.0;
  for (const auto& t : terms) {
    if (t.side != Side::Denominator) continue;
    const Number gap = t.rate - lead;
    total += t.coef.value * std::exp(-lambda * k * std::max(0.0, gap.value)) * geometric_factor(t, lambda, k);
  }
  return total;
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Certified: return "certified";
    case Outcome::DenominatorDominates: return "denominator_dominates";
    case Outcome::Undecided: return "undecided";
  }
  return "undecided";
}

Result analyze(std::vector<Term> terms, const Options& opt) {
  if (!(opt.lambda > 0.0) || opt.stride < 1 || opt.k_start < 1) throw InputError("tail::analyze: bad options");
  Result res;
  for (int level = 1; level <= opt.max_level; ++level) {
    res.level = level;
    if (!net_terms(terms, opt.rel_tol)) {
      res.outcome = Outcome::Undecided;
      res.detail = "coefficients cancel to rounding level";
      return res;
    }
    const auto num_end = std::partition(terms.begin(), terms.end(), [](const Term& t) { return t.side == Side::Numerator; });
    const bool has_num = num_end != terms.begin();
    const bool has_den = num_end != terms.end();
    if (!has_den) {
      res.outcome = Outcome::Certified;
      res.from_k = opt.k_start;
      res.detail = "no denominator terms remain";
      return res;
    }
    if (!has_num) {
      res.outcome = Outcome::DenominatorDominates;
      res.detail = "only denominator terms remain";
      return res;
    }

    // Minimal decay rates on each side; an unresolved comparison anywhere on
    // the way means the minimum itself is uncertain.
    auto min_rate = [&](auto first, auto last, bool& ok) {
      Number best = first->rate;
      for (auto it = std::next(first); it != last; ++it) {
        if (same(it->rate, best)) continue;
        const Order c = exact::compare(it->rate, best, opt.rel_tol);
        if (c == Order::Unknown) ok = false;
        if (c == Order::Less) best = it->rate;
      }
      return best;
    };
    bool ok = true;
    const Number rho = min_rate(terms.begin(), num_end, ok);
    const Number sigma = min_rate(num_end, terms.end(), ok);
    if (!ok) {
      res.outcome = Outcome::Undecided;
      res.detail = "decay rates tie within rounding";
      return res;
    }
    const Order rate_cmp = same(rho, sigma) ? Order::Equal : exact::compare(rho, sigma, opt.rel_tol);
    if (rate_cmp == Order::Unknown) {
      res.outcome = Outcome::Undecided;
      res.detail = "leading decay rates tie within rounding (" + rho.str() + " vs " + sigma.str() + ")";
      return res;
    }
    if (rate_cmp == Order::Greater) {
      res.outcome = Outcome::DenominatorDominates;
      res.detail = "denominator decays slower (" + sigma.str() + " < " + rho.str() + ")";
      return res;
    }

    auto lead_sum = [&](auto first, auto last, const Number& r) {
      Number total{exact::Rational(0)};
      for (auto it = first; it != last; ++it) {
        if (same(it->rate, r)) total = total + it->coef;
      }
      return total;
    };
    const Number c_num = lead_sum(terms.begin(), num_end, rho);

    bool search = rate_cmp == Order::Less;
    if (rate_cmp == Order::Equal) {
      const Number c_den = lead_sum(num_end, terms.end(), sigma);
      const Order coef_cmp = same(c_num, c_den) ? Order::Equal : exact::compare(c_num, c_den, opt.rel_tol);
      if (coef_cmp == Order::Unknown) {
        res.outcome = Outcome::Undecided;
        res.detail = "leading coefficients tie within rounding";
        return res;
      }
      if (coef_cmp == Order::Less) {
        res.outcome = Outcome::DenominatorDominates;
        res.detail = "equal decay rate " + rho.str() + ", denominator coefficient larger";
        return res;
      }
      if (coef_cmp == Order::Equal) {
        if (level == opt.max_level) {
          res.outcome = Outcome::Undecided;
          res.detail = "leading terms cancel exactly at every examined order";
          return res;
        }
        // C/(1-x) - C = C x/(1-x): tied geometric terms move one step down;
        // tied plain terms cancel outright.
        std::vector<Term> next;
        for (auto t : terms) {
          if (same(t.rate, rho)) {
            if (!t.period) continue;
            t.rate = t.rate + Number(exact::Rational(1, *t.period));
          }
          next.push_back(t);
        }
        terms = std::move(next);
        continue;
      }
      search = true;
    }

    if (search) {
      // Lower bound for the numerator: its leading terms with G >= 1 dropped.
      // Upper bound for the denominator: evaluated at K, nonincreasing in k.
      const double target = c_num.value * (1.0 - 1e-12);
      std::int64_t m = 0;
      while (true) {
        const std::int64_t K = opt.k_start + opt.stride * m;
        if (K > opt.k_limit) break;
        if (denominator_bound(terms, rho, opt.lambda, static_cast<double>(K)) <= target) {
          res.outcome = Outcome::Certified;
          res.from_k = K;
          std::ostringstream os;
          os << "numerator leading rate " << rho.str() << " dominates from k=" << K;
          res.detail = os.str();
          return res;
        }
        m = m == 0 ? 1 : 2 * m;
      }
      res.outcome = Outcome::Undecided;
      res.detail = "dominance bound not reached before k_limit";
      return res;
    }
  }
  return res;
}

}  // namespace gammacm::tail
