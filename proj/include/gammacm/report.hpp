#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gammacm/classical.hpp"
#include "gammacm/errors.hpp"
#include "gammacm/oracle.hpp"
#include "gammacm/qlattice.hpp"

namespace gammacm::report {

using Json = nlohmann::ordered_json;

/// Malformed spec: carries the JSON path of the offending field and, when
/// known, its 1-based line in the source text.
class SpecError : public InputError {
 public:
  SpecError(std::string field, int line, const std::string& message);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

/// Parses a JSON ratio spec from text; errors are SpecError.
RatioSpec parse_spec(const std::string& text);
RatioSpec parse_spec(const Json& j);
RatioSpec load_spec(const std::string& path);

/// Normalized form: exact numbers as "p/q" strings, the rest as numbers.
Json spec_to_json(const RatioSpec& spec);

struct CheckOptions {
  qlattice::MassConfig mass;
  std::int64_t n_max = 256;
  classical::GridConfig grid;
  oracle::DiffTestConfig oracle;
  bool run_oracle = false;
  bool timing = true;
};

struct CheckReport {
  Json spec_echo;
  std::vector<std::pair<std::string, Verdict>> results;
  std::vector<std::pair<std::string, Verdict>> sufficient_families;
  Verdict overall;
  std::vector<std::pair<std::string, double>> timing;  // seconds per stage

  const Verdict* find(const std::string& name) const;
  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

CheckReport run_check(const RatioSpec& spec, const CheckOptions& opt = {});

/// Standalone oracle run: lcm_oracle, plus bernstein_oracle as evidence.
Verdict run_oracle(const RatioSpec& spec, const oracle::DiffTestConfig& cfg = {});

Json to_json(const CheckReport& r);
CheckReport report_from_json(const Json& j);
std::string to_text(const CheckReport& r);

/// 0 CertifiedTrue, 1 CertifiedFalse, 2 Supported or Inconclusive.
int exit_code(Status s);
inline constexpr int kInputErrorExit = 3;

/// CSV for external plotting: "u,Q" on the kernel grid (classical) or
/// "irr_class,k,t,mass" up to the finite horizon (q-case).
std::string dump_csv(const RatioSpec& spec, const CheckOptions& opt = {});

}  // namespace gammacm::report
