#include "trop/ultrametric.hpp"

#include <algorithm>

namespace trop {

LogDistanceMatrix LogDistanceMatrix::leading(std::size_t k) const {
  invariant(k <= size(), "leading: submatrix larger than matrix");
  LogDistanceMatrix out;
  if (!labels.empty())
    out.labels.assign(labels.begin(), labels.begin() + static_cast<long>(k));
  out.entries.resize(k);
  for (std::size_t i = 0; i < k; ++i)
    out.entries[i].assign(entries[i].begin(), entries[i].begin() + static_cast<long>(k));
  return out;
}

UltrametricReport validate_ultrametric(const LogDistanceMatrix& m) {
  UltrametricReport rep;
  const std::size_t n = m.size();
  if (n == 0) {
    rep.structural_errors.push_back("matrix is empty");
    return rep;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (m.entries[i].size() != n) {
      rep.structural_errors.push_back("matrix is not square (row " + std::to_string(i) + ")");
      return rep;
    }
  if (!m.labels.empty() && m.labels.size() != n)
    rep.structural_errors.push_back("labels count differs from n");
  for (std::size_t i = 0; i < n; ++i) {
    if (!m.entries[i][i].is_neg_inf())
      rep.structural_errors.push_back("diagonal entry (" + std::to_string(i) + "," +
                                      std::to_string(i) + ") is not -inf");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m.entries[i][j] != m.entries[j][i])
        rep.structural_errors.push_back("matrix is not symmetric at (" + std::to_string(i) +
                                        "," + std::to_string(j) + ")");
      if (m.entries[i][j].is_neg_inf())
        rep.structural_errors.push_back("off-diagonal entry (" + std::to_string(i) + "," +
                                        std::to_string(j) +
                                        ") is -inf (coincident points are not allowed)");
    }
  }
  if (!rep.structural_errors.empty()) return rep;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (m.entries[i][j] > max(m.entries[i][k], m.entries[k][j]))
          rep.violations.push_back({i, j, k});
      }
  rep.ok = rep.violations.empty();
  return rep;
}

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long long int_valuation(long long p, BigInt x) {
  invariant(x != 0, "valuation of zero");
  if (x < 0) x = -x;
  long long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

long long padic_valuation(long long p, const Rat& q) {
  require(is_prime(p), "p = " + std::to_string(p) + " is not prime");
  require(q != 0, "p-adic valuation of zero is undefined");
  return int_valuation(p, numerator(q)) - int_valuation(p, denominator(q));
}

LogDistanceMatrix from_padic_points(long long p, const std::vector<Rat>& points,
                                    std::vector<std::string> labels) {
  require(is_prime(p), "p = " + std::to_string(p) + " is not prime");
  const std::size_t n = points.size();
  require(n >= 1, "at least one point is required");
  require(labels.empty() || labels.size() == n, "labels count differs from point count");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      require(points[i] != points[j], "duplicate points at positions " + std::to_string(i) +
                                          " and " + std::to_string(j));

  LogDistanceMatrix m;
  if (labels.empty())
    for (const Rat& a : points) m.labels.push_back(rat_to_string(a));
  else
    m.labels = std::move(labels);
  m.entries.assign(n, std::vector<LogValue>(n, LogValue::neg_inf()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      long long v = padic_valuation(p, points[i] - points[j]);
      m.entries[i][j] = m.entries[j][i] = LogValue(Rat(-v));
    }
  return m;
}

namespace {

// Fills L on S x S: pairs in different blocks get distance `height`, blocks
// recurse with strictly smaller heights.
void fill_cluster(std::vector<std::vector<LogValue>>& L, std::vector<std::size_t> s,
                  const Rat& height, Rng& rng, const RandomUltrametricOptions& opt) {
  if (s.size() <= 1) return;
  // random partition into 2..max_branch non-empty blocks
  std::size_t nblocks =
      2 + rng.below(std::min<std::size_t>(opt.max_branch, s.size()) - 1);
  for (std::size_t i = s.size(); i > 1; --i)
    std::swap(s[i - 1], s[rng.below(i)]);
  std::vector<std::vector<std::size_t>> blocks(nblocks);
  for (std::size_t i = 0; i < s.size(); ++i)
    blocks[i < nblocks ? i : rng.below(nblocks)].push_back(s[i]);

  for (std::size_t a = 0; a < nblocks; ++a)
    for (std::size_t b = a + 1; b < nblocks; ++b)
      for (std::size_t i : blocks[a])
        for (std::size_t j : blocks[b]) L[i][j] = L[j][i] = LogValue(height);

  for (auto& blk : blocks) {
    if (blk.size() <= 1) continue;
    Rat den(rng.range(1, opt.max_den));
    Rat delta = Rat(rng.range(1, 3)) / den;  // strictly positive radius drop
    fill_cluster(L, blk, height - delta, rng, opt);
  }
}

}  // namespace

LogDistanceMatrix random_ultrametric(std::size_t n, std::uint64_t seed,
                                     const RandomUltrametricOptions& opt) {
  require(n >= 1, "at least one point is required");
  Rng rng(seed);
  LogDistanceMatrix m;
  m.entries.assign(n, std::vector<LogValue>(n, LogValue::neg_inf()));
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  Rat den(rng.range(1, opt.max_den));
  Rat top = Rat(rng.range(-opt.max_abs, opt.max_abs)) + Rat(rng.range(0, opt.max_den - 1)) / den;
  fill_cluster(m.entries, all, top, rng, opt);
  invariant(validate_ultrametric(m).ok, "random_ultrametric produced an invalid matrix");
  return m;
}

}  // namespace trop
