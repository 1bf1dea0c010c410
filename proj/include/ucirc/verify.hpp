#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ucirc::verify {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

struct VerifyOptions {
  int threads = 1;
  bool full = true;  // full-scale sample sizes; fast shrinks them
  std::uint64_t seed = 20240613;
};

/// Runs the whole cross-check suite (every module invariant) and returns one
/// result per named check.
std::vector<CheckResult> run_all(const VerifyOptions& opts);

}  // namespace ucirc::verify
