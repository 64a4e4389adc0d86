#pragma once

#include <string>
#include <vector>

#include "gammacm/verdict.hpp"

namespace gammacm::corpus {

/// A worked example with its known overall verdict. `json` uses the CLI
/// spec schema; the same text ships as corpus/<name>.json.
struct Case {
  std::string name;
  std::string json;
  Status expected;
  std::string expected_reason;  // empty when any reason is acceptable
};

const std::vector<Case>& golden();

}  // namespace gammacm::corpus
