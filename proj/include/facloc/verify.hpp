#pragma once

#include <cstdint>
#include <string>

namespace facloc {

// Result of one verification suite run.
struct VerifyReport {
  std::string suite;      // equal-cost | sp | gsp | ratio
  std::string mechanism;  // ec | ptl
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  bool passed = false;
  double worst = 0.0;       // suite-specific worst value (deviation, gain,
                            // ratio margin)
  std::string detail_json;  // structured worst finding
};

// Runs a verification suite over seeded random instances. Each trial draws
// its own stream from the root seed, so results do not depend on trial
// count or ordering. Throws std::invalid_argument for unknown suite or
// mechanism names.
VerifyReport run_verify_suite(const std::string& suite,
                              const std::string& mechanism,
                              std::uint64_t trials, std::uint64_t seed,
                              double tolerance);

}  // namespace facloc
