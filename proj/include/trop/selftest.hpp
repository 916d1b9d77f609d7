#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace trop {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct SelftestOptions {
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  // Caps each internal batch for quick smoke runs; the defaults run the full
  // battery.
  std::optional<std::size_t> cases;
};

// The full verification battery: one result per criterion, deterministic in
// the seed. Aggregation is order-independent so --jobs does not change the
// outcome.
std::vector<CriterionResult> run_selftest(const SelftestOptions& opt);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace trop
