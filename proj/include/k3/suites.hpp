#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "k3/report.hpp"

namespace k3 {

struct RunConfig {
  long precision = 60;  // decimal digits, >= 30
  int order = 40;       // truncation order, >= 8
  bool json_output = false;
  std::uint64_t seed = 0;

  void validate() const;  // InvalidInput
  json to_json() const;
};

struct Check {
  std::string name;
  bool ok = false;
  bool numerical_failure = false;  // the check aborted with a precision or convergence error
  json data;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;  // sorted by name
  double seconds = 0;
  bool ok() const;
  bool numerical_failure() const;
};

const std::vector<std::string>& suite_names();
// Throws InvalidInput for an unknown suite name.
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

// Expected fiber configurations per family, as printed.
const std::vector<std::pair<std::string, std::string>>& expected_fibers();

}  // namespace k3
