#pragma once

// Property suite over all modules, driven by a single seed.

#include <cstdint>
#include <string>
#include <vector>

namespace sscap::verify {

struct CheckRecord {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst violation (or residual) seen
  double tolerance = 0.0;  // passes when measured <= tolerance
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  bool passed() const;
};

VerifyReport run(std::uint64_t seed);

}  // namespace sscap::verify
