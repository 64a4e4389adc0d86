#include "gammacm/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "gammacm/qmonotone.hpp"

namespace gammacm::report {

namespace {

// Finds the 1-based line where the value at `target` (e.g. "numerator[1].A")
// starts in well-formed JSON text; 0 when the path does not occur.
class LineLocator {
 public:
  LineLocator(const std::string& text, std::string target) : text_(text), target_(std::move(target)) {}

  int find() {
    pos_ = 0;
    found_ = std::string::npos;
    value("");
    if (found_ == std::string::npos) return 0;
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(found_), '\n'));
  }

 private:
  void ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      if (pos_ < text_.size()) out += text_[pos_++];
    }
    ++pos_;
    return out;
  }
  void value(const std::string& path) {
    ws();
    if (pos_ >= text_.size() || found_ != std::string::npos) return;
    if (path == target_) found_ = pos_;
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        ws();
        const std::string key = string_token();
        ws();
        ++pos_;  // ':'
        value(path.empty() ? key : path + "." + key);
        ws();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        ws();
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      ws();
      std::size_t i = 0;
      while (pos_ < text_.size() && text_[pos_] != ']') {
        value(path + "[" + std::to_string(i++) + "]");
        ws();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        ws();
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' && text_[pos_] != ']' &&
             !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    }
  }

  const std::string& text_;
  std::string target_;
  std::size_t pos_ = 0;
  std::size_t found_ = std::string::npos;
};

int locate(const std::string& text, std::string path) {
  while (true) {
    const int line = LineLocator(text, path).find();
    if (line > 0 || path.empty()) return line;
    const auto cut = path.find_last_of(".[");
    path = cut == std::string::npos ? "" : path.substr(0, cut);
  }
}

Number number_field(const Json& j, const std::string& field) {
  if (j.is_string()) {
    try {
      return Number(Rational::parse(j.get<std::string>()));
    } catch (const std::exception& e) {
      throw SpecError(field, 0, std::string("cannot read number: ") + e.what());
    }
  }
  if (j.is_number_integer()) return Number(Rational(j.get<std::int64_t>()));
  if (j.is_number()) return Number::literal(j.get<double>());
  throw SpecError(field, 0, "expected a number or a \"p/q\" string");
}

GammaFactor factor_field(const Json& j, const std::string& field, bool q_mode) {
  if (!j.is_object()) throw SpecError(field, 0, "expected an object with A, a, alpha");
  for (const auto& [key, v] : j.items()) {
    if (key != "A" && key != "a" && key != "alpha" && key != "irr_class") {
      throw SpecError(field + "." + key, 0, "unknown field '" + key + "'");
    }
  }
  for (const char* key : {"A", "a", "alpha"}) {
    if (!j.contains(key)) throw SpecError(field, 0, std::string("missing field '") + key + "'");
  }
  GammaFactor f;
  f.scale = number_field(j["A"], field + ".A");
  f.shift = number_field(j["a"], field + ".a");
  f.weight = number_field(j["alpha"], field + ".alpha");
  if (j.contains("irr_class")) {
    if (!j["irr_class"].is_string()) throw SpecError(field + ".irr_class", 0, "expected a string");
    f.irr_class = j["irr_class"].get<std::string>();
  }
  if (!(f.scale.value > 0.0) || !std::isfinite(f.scale.value)) throw SpecError(field + ".A", 0, "scale must be positive");
  if (!(f.shift.value >= 0.0) || !std::isfinite(f.shift.value)) throw SpecError(field + ".a", 0, "shift must be nonnegative");
  if (!(f.weight.value > 0.0) || !std::isfinite(f.weight.value)) throw SpecError(field + ".alpha", 0, "weight must be positive");
  if (q_mode && !f.irr_class && !f.scale.is_exact()) {
    throw SpecError(field + ".A", 0, "floating scale in q mode needs an irr_class (or write it as \"p/q\")");
  }
  return f;
}

Json number_json(const Number& n) {
  if (n.exact) return n.exact->str();
  return n.value;
}

Json factor_json(const GammaFactor& f) {
  Json j{{"A", number_json(f.scale)}, {"a", number_json(f.shift)}, {"alpha", number_json(f.weight)}};
  if (f.irr_class) j["irr_class"] = *f.irr_class;
  return j;
}

Verdict order_verdict(exact::Order o, bool le_ok, const std::string& reason, Evidence ev) {
  using exact::Order;
  if (o == Order::Unknown) return Verdict::inconclusive(reason, "sides tie within rounding", ev);
  const bool ok = o == Order::Equal || (le_ok && o == Order::Less);
  return ok ? Verdict::certified_true(reason, "holds", ev) : Verdict::certified_false(reason, "fails", ev);
}

class Stopwatch {
 public:
  explicit Stopwatch(std::vector<std::pair<std::string, double>>& out) : out_(out) {}
  template <class F>
  auto run(const std::string& stage, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto result = f();
    out_.emplace_back(stage, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return result;
  }

 private:
  std::vector<std::pair<std::string, double>>& out_;
};

}  // namespace

SpecError::SpecError(std::string field, int line, const std::string& message)
    : InputError((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                 (field.empty() ? std::string() : field + ": ") + message),
      field_(std::move(field)),
      line_(line) {}

RatioSpec parse_spec(const Json& j) {
  if (!j.is_object()) throw SpecError("", 0, "spec must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key != "q" && key != "theta" && key != "numerator" && key != "denominator" && key != "name" &&
        key != "comment") {
      throw SpecError(key, 0, "unknown field '" + key + "'");
    }
  }
  RatioSpec spec;
  if (!j.contains("q")) throw SpecError("q", 0, "missing field 'q' (a number in (0,1) or \"classical\")");
  const Json& q = j["q"];
  if (q.is_string() && q.get<std::string>() == "classical") {
    spec.q.reset();
  } else {
    const Number qv = number_field(q, "q");
    try {
      spec.q = QParam(qv.value);
    } catch (const std::exception& e) {
      throw SpecError("q", 0, e.what());
    }
  }
  if (j.contains("theta")) {
    spec.theta = number_field(j["theta"], "theta");
    if (!(spec.theta.value > 0.0) || !std::isfinite(spec.theta.value)) throw SpecError("theta", 0, "theta must be positive");
  }
  for (const char* side : {"numerator", "denominator"}) {
    if (!j.contains(side)) continue;
    if (!j[side].is_array()) throw SpecError(side, 0, "expected an array of factors");
    auto& out = std::string(side) == "numerator" ? spec.numerator : spec.denominator;
    for (std::size_t i = 0; i < j[side].size(); ++i) {
      out.push_back(factor_field(j[side][i], std::string(side) + "[" + std::to_string(i) + "]", spec.q.has_value()));
    }
  }
  if (spec.numerator.empty() && spec.denominator.empty()) throw SpecError("", 0, "spec has no factors");
  return spec;
}

RatioSpec parse_spec(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw SpecError("", line, std::string("malformed JSON: ") + e.what());
  }
  try {
    return parse_spec(j);
  } catch (const SpecError& e) {
    const std::string msg = e.what();
    const std::string prefix = e.field().empty() ? "" : e.field() + ": ";
    throw SpecError(e.field(), locate(text, e.field()), msg.substr(prefix.size()));
  }
}

RatioSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

Json spec_to_json(const RatioSpec& spec) {
  Json j;
  if (spec.q) {
    j["q"] = spec.q->value();
  } else {
    j["q"] = "classical";
    j["theta"] = number_json(spec.theta);
  }
  j["numerator"] = Json::array();
  j["denominator"] = Json::array();
  for (const auto& f : spec.numerator) j["numerator"].push_back(factor_json(f));
  for (const auto& f : spec.denominator) j["denominator"].push_back(factor_json(f));
  return j;
}

const Verdict* CheckReport::find(const std::string& name) const {
  for (const auto& [n, v] : results) {
    if (n == name) return &v;
  }
  return nullptr;
}

Verdict run_oracle(const RatioSpec& spec, const oracle::DiffTestConfig& cfg) {
  Verdict lcm = oracle::lcm_oracle(spec, cfg);
  lcm.evidence["bernstein"] = oracle::bernstein_oracle(spec, cfg);
  return lcm;
}

CheckReport run_check(const RatioSpec& spec, const CheckOptions& opt) {
  spec.validate();
  CheckReport r;
  r.spec_echo = spec_to_json(spec);
  Stopwatch sw(r.timing);
  auto add = [&](const std::string& name, auto&& f) { r.results.emplace_back(name, sw.run(name, f)); };

  if (spec.q) {
    add("support_inclusion", [&] { return qlattice::support_inclusion(spec); });
    add("mass_condition", [&] { return qlattice::mass_condition(spec, opt.mass); });
    add("balance", [&] {
      const Number lhs = weighted_scale_sum(spec.numerator);
      const Number rhs = weighted_scale_sum(spec.denominator);
      return order_verdict(qmonotone::balance_order(spec), true, "balance",
                           Evidence{{"sum_alpha_A", lhs.str()}, {"sum_beta_B", rhs.str()}});
    });
    add("lcm_q", [&] { return qmonotone::check_lcm(spec, opt.mass); });
    add("bernstein_q", [&] {
      try {
        return qmonotone::check_bernstein(spec, opt.mass);
      } catch (const DomainError& e) {
        return Verdict::inconclusive("bernstein_q", std::string("not applicable: ") + e.what());
      }
    });
    add("abprime", [&] { return qlattice::abprime_sufficient(spec); });
    const auto unit = [](const std::vector<GammaFactor>& fs) {
      return std::all_of(fs.begin(), fs.end(), [](const GammaFactor& f) { return f.A() == 1.0; });
    };
    if (unit(spec.numerator) && unit(spec.denominator)) {
      add("fq_example1", [&] { return qmonotone::check_fq_example1(spec, opt.n_max); });
    }
    r.overall = *r.find("lcm_q");
  } else {
    add("necessary", [&] { return classical::necessary_conditions(spec); });
    add("balance", [&] {
      const Number lhs = weighted_scale_sum(spec.numerator);
      const Number rhs = weighted_scale_sum(spec.denominator);
      return order_verdict(exact::compare(lhs, rhs, 1e-12), false, "balance",
                           Evidence{{"sum_alpha_A", lhs.str()}, {"sum_beta_B", rhs.str()}});
    });
    add("theta_vs_rho", [&] {
      const exact::Order o = classical::theta_vs_rho(spec);
      Evidence ev{{"rho", classical::entropy_rho(spec)}, {"log_rho", classical::log_entropy_rho(spec)},
                  {"theta", spec.theta.str()}};
      // theta >= rho is the requirement: flip so that "Less" reads as failure.
      using exact::Order;
      const Order flipped = o == Order::Less ? Order::Greater : o == Order::Greater ? Order::Less : o;
      return order_verdict(flipped, true, "theta_vs_rho", ev);
    });
    r.sufficient_families = sw.run("sufficient_families", [&] { return classical::sufficient_families(spec); });
    add("q_nonneg_grid", [&] { return classical::q_nonneg(spec, opt.grid); });
    add("lcm_classical", [&] { return classical::check_lcm_classical(spec, opt.grid); });
    r.overall = *r.find("lcm_classical");
  }

  if (opt.run_oracle) {
    add("oracle", [&] { return run_oracle(spec, opt.oracle); });
    const Verdict& o = *r.find("oracle");
    if (r.overall.is_true() && o.is_false()) {
      Evidence ev{{"certificate", r.overall}, {"oracle", o}};
      r.overall = Verdict::inconclusive("oracle_contradiction", "the oracle refutes a certified property", ev);
    }
  }
  if (!opt.timing) r.timing.clear();
  return r;
}

Json to_json(const CheckReport& r) {
  Json j;
  j["spec"] = r.spec_echo;
  j["overall"] = r.overall;
  Json res = Json::object();
  for (const auto& [name, v] : r.results) res[name] = v;
  j["results"] = res;
  Json fams = Json::array();
  for (const auto& [name, v] : r.sufficient_families) fams.push_back({{"name", name}, {"verdict", v}});
  j["sufficient_families"] = fams;
  if (!r.timing.empty()) {
    Json t = Json::object();
    for (const auto& [stage, s] : r.timing) t[stage] = s;
    j["timing"] = t;
  }
  return j;
}

CheckReport report_from_json(const Json& j) {
  CheckReport r;
  r.spec_echo = j.at("spec");
  r.overall = j.at("overall").get<Verdict>();
  for (const auto& [name, v] : j.at("results").items()) r.results.emplace_back(name, v.get<Verdict>());
  for (const auto& f : j.at("sufficient_families")) {
    r.sufficient_families.emplace_back(f.at("name").get<std::string>(), f.at("verdict").get<Verdict>());
  }
  if (j.contains("timing")) {
    for (const auto& [stage, s] : j["timing"].items()) r.timing.emplace_back(stage, s.get<double>());
  }
  return r;
}

std::string to_text(const CheckReport& r) {
  std::ostringstream os;
  os << "overall: " << to_string(r.overall.status) << " [" << r.overall.reason << "] " << r.overall.detail << "\n";
  std::size_t width = 0;
  for (const auto& [name, v] : r.results) width = std::max(width, name.size());
  for (const auto& [name, v] : r.sufficient_families) width = std::max(width, name.size());
  for (const auto& [name, v] : r.results) {
    os << "  " << std::left << std::setw(static_cast<int>(width)) << name << "  " << std::setw(14) << to_string(v.status)
       << "  " << v.detail << "\n";
  }
  if (!r.sufficient_families.empty()) {
    os << "sufficient families:\n";
    for (const auto& [name, v] : r.sufficient_families) {
      os << "  " << std::left << std::setw(static_cast<int>(width)) << name << "  " << std::setw(14)
         << to_string(v.status) << "  " << v.detail << "\n";
    }
  }
  if (!r.timing.empty()) {
    os << "timing:";
    for (const auto& [stage, s] : r.timing) os << " " << stage << "=" << std::setprecision(3) << s << "s";
    os << "\n";
  }
  return os.str();
}

int exit_code(Status s) {
  switch (s) {
    case Status::CertifiedTrue: return 0;
    case Status::CertifiedFalse: return 1;
    case Status::Supported:
    case Status::Inconclusive: return 2;
  }
  return 2;
}

namespace {

// Shortest decimal that round-trips.
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string dump_csv(const RatioSpec& spec, const CheckOptions& opt) {
  std::ostringstream os;
  if (spec.is_classical()) {
    os << "u,Q\n";
    for (double u : classical::kernel_grid(spec, opt.grid)) {
      os << shortest(u) << "," << shortest(classical::q_kernel(spec, u)) << "\n";
    }
    return os.str();
  }
  os << "irr_class,k,t,mass\n";
  for (const auto& m : qlattice::build_lattices(spec)) {
    const std::int64_t k_max = opt.mass.k_max.value_or(64 * std::min<std::int64_t>(m.period, 1 << 16));
    for (std::int64_t k = 1; k <= k_max; ++k) {
      const auto mass = qlattice::mass_at(m, k, *spec.q);
      os << m.label << "," << k << "," << shortest(static_cast<double>(k) * m.spacing()) << "," << shortest(mass.value())
         << "\n";
    }
  }
  return os.str();
}

}  // namespace gammacm::report
