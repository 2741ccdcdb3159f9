#pragma once

#include <string>
#include <vector>

#include "philap/config.hpp"
#include "philap/potential.hpp"

namespace philap {

// Aggregated structural verification for one configuration: potential-family
// checks (gradient consistency, convexity, monotonicity constant, growth
// bounds), nonlinearity checks (value at zero, evenness, growth/divergence,
// domination), and — when the document is structurally broken — a single
// failed report carrying the thrown witness.
struct VerifyReport {
  std::string config_name;
  std::string system;
  std::vector<CheckReport> checks;
  bool all_passed = false;
};

VerifyReport run_verification(const Config& cfg);

}  // namespace philap
