#pragma once
#include <string>
#include <vector>

namespace coliseum {

struct CheckResult {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  std::string scratch_dir = ".";  // determinism check writes images here
  bool quick = false;             // smaller grids / sample counts (smoke only)
  bool one_d_only = false;        // staircase oracles only (check 7)
  bool progress = false;          // stream results to stderr as checks finish
};

// The eleven acceptance checks, in order. Each catches its own exceptions and
// reports them as failures.
std::vector<CheckResult> run_acceptance(const VerifyOptions& opt);

}  // namespace coliseum
