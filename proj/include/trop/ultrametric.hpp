#pragma once

#include "trop/common.hpp"

namespace trop {

// Symmetric matrix of logarithmic distances log|a_i - a_j| between n marked
// points, diagonal -inf, off-diagonal finite rationals, satisfying the
// ultrametric inequality L[i][j] <= max(L[i][k], L[k][j]).
struct LogDistanceMatrix {
  std::vector<std::string> labels;            // optional point names, empty or size n
  std::vector<std::vector<LogValue>> entries; // n x n

  std::size_t size() const { return entries.size(); }
  const LogValue& at(std::size_t i, std::size_t j) const { return entries[i][j]; }

  // Principal submatrix on the first k points.
  LogDistanceMatrix leading(std::size_t k) const;

  friend bool operator==(const LogDistanceMatrix& a, const LogDistanceMatrix& b) {
    return a.labels == b.labels && a.entries == b.entries;
  }
};

struct UltrametricViolation {
  std::size_t i, j, k;  // L[i][j] > max(L[i][k], L[k][j]), i < j, k distinct
};

struct UltrametricReport {
  bool ok = false;
  std::vector<std::string> structural_errors;     // shape/symmetry/diagonal problems
  std::vector<UltrametricViolation> violations;   // strict-inequality witnesses
};

UltrametricReport validate_ultrametric(const LogDistanceMatrix& m);

// L[i][j] = -val_p(a_i - a_j), i.e. log base p of |a_i - a_j|_p; exact for
// rational points. Rejects non-prime p and duplicate points.
LogDistanceMatrix from_padic_points(long long p, const std::vector<Rat>& points,
                                    std::vector<std::string> labels = {});

// Exact p-adic valuation of a nonzero rational.
long long padic_valuation(long long p, const Rat& q);

struct RandomUltrametricOptions {
  long long max_abs = 6;   // top merge height drawn from [-max_abs, max_abs]
  long long max_den = 4;   // denominators of generated heights
  std::size_t max_branch = 4;
};

// Random valid matrix built from a rooted cluster tree with strictly
// decreasing radii. Deterministic in the seed.
LogDistanceMatrix random_ultrametric(std::size_t n, std::uint64_t seed,
                                     const RandomUltrametricOptions& opt = {});

}  // namespace trop
