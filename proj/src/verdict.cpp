#include "gammacm/verdict.hpp"

#include "gammacm/errors.hpp"

namespace gammacm {

std::string to_string(Status s) {
  switch (s) {
    case Status::CertifiedTrue: return "CertifiedTrue";
    case Status::CertifiedFalse: return "CertifiedFalse";
    case Status::Supported: return "Supported";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Status status_from_string(std::string_view s) {
  if (s == "CertifiedTrue") return Status::CertifiedTrue;
  if (s == "CertifiedFalse") return Status::CertifiedFalse;
  if (s == "Supported") return Status::Supported;
  if (s == "Inconclusive") return Status::Inconclusive;
  throw InputError("unknown verdict status '" + std::string(s) + "'");
}

Verdict Verdict::certified_true(std::string reason, std::string detail, Evidence ev) {
  return {Status::CertifiedTrue, std::move(reason), std::move(detail), std::move(ev)};
}
Verdict Verdict::certified_false(std::string reason, std::string detail, Evidence ev) {
  return {Status::CertifiedFalse, std::move(reason), std::move(detail), std::move(ev)};
}
Verdict Verdict::supported(std::string reason, std::string detail, Evidence ev) {
  return {Status::Supported, std::move(reason), std::move(detail), std::move(ev)};
}
Verdict Verdict::inconclusive(std::string reason, std::string detail, Evidence ev) {
  return {Status::Inconclusive, std::move(reason), std::move(detail), std::move(ev)};
}

void to_json(nlohmann::ordered_json& j, const Verdict& v) {
  j = nlohmann::ordered_json{
      {"status", to_string(v.status)}, {"reason", v.reason}, {"detail", v.detail}, {"evidence", v.evidence}};
}

void from_json(const nlohmann::ordered_json& j, Verdict& v) {
  v.status = status_from_string(j.at("status").get<std::string>());
  v.reason = j.at("reason").get<std::string>();
  v.detail = j.at("detail").get<std::string>();
  v.evidence = j.at("evidence");
}

}  // namespace gammacm
