#include "trop/linalg.hpp"

#include <algorithm>

namespace trop {

std::size_t int_rank(std::vector<std::vector<BigInt>> m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        // Bareiss step: exact division by the previous pivot.
        m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
      }
      m[i][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

namespace {

std::vector<std::vector<BigInt>> clear_denominators(const std::vector<std::vector<Rat>>& m) {
  std::vector<std::vector<BigInt>> out;
  out.reserve(m.size());
  for (const auto& row : m) {
    BigInt l = 1;
    for (const Rat& q : row) l = lcm(l, denominator(q));
    std::vector<BigInt> irow;
    irow.reserve(row.size());
    for (const Rat& q : row) irow.push_back(numerator(q) * (l / denominator(q)));
    out.push_back(std::move(irow));
  }
  return out;
}

}  // namespace

std::size_t rat_rank(const std::vector<std::vector<Rat>>& m) {
  if (m.empty()) return 0;
  return int_rank(clear_denominators(m));
}

RankProfile rank_profile(const std::vector<std::vector<Rat>>& m, std::size_t rows,
                         std::size_t cols) {
  invariant(m.size() == rows, "rank_profile: row count mismatch");
  RankProfile p;
  p.rank = rat_rank(m);
  p.kernel = cols - p.rank;
  p.cokernel = rows - p.rank;
  return p;
}

bool SpanTracker::insert(const std::vector<Rat>& v) {
  invariant(v.size() == dim_, "SpanTracker: dimension mismatch");
  std::vector<Rat> vec = v;
  std::vector<Rat> combo(kept_ + 1, Rat(0));
  combo[kept_] = 1;
  for (const Row& r : echelon_) {
    if (vec[r.pivot] == 0) continue;
    Rat f = vec[r.pivot] / r.vec[r.pivot];
    for (std::size_t j = 0; j < dim_; ++j) vec[j] -= f * r.vec[j];
    for (std::size_t j = 0; j < r.combo.size(); ++j) combo[j] -= f * r.combo[j];
  }
  std::size_t pivot = 0;
  while (pivot < dim_ && vec[pivot] == 0) ++pivot;
  if (pivot == dim_) return false;  // dependent; vector not kept
  Row row{std::move(vec), std::move(combo), pivot};
  auto pos = std::find_if(echelon_.begin(), echelon_.end(),
                          [&](const Row& r) { return r.pivot > pivot; });
  echelon_.insert(pos, std::move(row));
  ++kept_;
  return true;
}

std::vector<Rat> SpanTracker::coordinates(const std::vector<Rat>& v) const {
  invariant(v.size() == dim_, "SpanTracker: dimension mismatch");
  std::vector<Rat> vec = v;
  std::vector<Rat> x(kept_, Rat(0));
  for (const Row& r : echelon_) {
    if (vec[r.pivot] == 0) continue;
    Rat f = vec[r.pivot] / r.vec[r.pivot];
    for (std::size_t j = 0; j < dim_; ++j) vec[j] -= f * r.vec[j];
    for (std::size_t j = 0; j < r.combo.size(); ++j) x[j] += f * r.combo[j];
  }
  for (const Rat& q : vec)
    invariant(q == 0, "SpanTracker: vector outside tracked span");
  return x;
}

}  // namespace trop
