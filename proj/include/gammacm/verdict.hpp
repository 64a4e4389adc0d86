#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace gammacm {

/// Supported is a refinement of "inconclusive": numerical evidence agrees
/// with the property but no certificate exists.
enum class Status { CertifiedTrue, CertifiedFalse, Supported, Inconclusive };

std::string to_string(Status s);
Status status_from_string(std::string_view s);

using Evidence = nlohmann::ordered_json;

struct Verdict {
  Status status = Status::Inconclusive;
  std::string reason;  // name of the deciding condition
  std::string detail;  // one-line human summary
  Evidence evidence = Evidence::object();

  static Verdict certified_true(std::string reason, std::string detail, Evidence ev = Evidence::object());
  static Verdict certified_false(std::string reason, std::string detail, Evidence ev = Evidence::object());
  static Verdict supported(std::string reason, std::string detail, Evidence ev = Evidence::object());
  static Verdict inconclusive(std::string reason, std::string detail, Evidence ev = Evidence::object());

  bool is_true() const { return status == Status::CertifiedTrue; }
  bool is_false() const { return status == Status::CertifiedFalse; }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

void to_json(nlohmann::ordered_json& j, const Verdict& v);
void from_json(const nlohmann::ordered_json& j, Verdict& v);

}  // namespace gammacm
