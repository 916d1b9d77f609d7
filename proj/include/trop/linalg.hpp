#pragma once

#include "trop/common.hpp"

namespace trop {

// Rank of an integer matrix, fraction-free Bareiss elimination. Exact; the
// matrix is taken by value and destroyed.
std::size_t int_rank(std::vector<std::vector<BigInt>> m);

// Rank of a rational matrix: rows are scaled to integers first (row scaling
// preserves rank), then Bareiss.
std::size_t rat_rank(const std::vector<std::vector<Rat>>& m);

// Kernel/cokernel dimensions of the linear map represented by an
// (rows x cols) rational matrix.
struct RankProfile {
  std::size_t rank = 0;
  std::size_t kernel = 0;   // cols - rank
  std::size_t cokernel = 0; // rows - rank
};
RankProfile rank_profile(const std::vector<std::vector<Rat>>& m, std::size_t rows,
                         std::size_t cols);

// Maintains a basis of a growing subspace of Q^dim; insert() returns true and
// keeps the vector when it enlarges the span. Used for greedy direction bases.
class SpanTracker {
 public:
  explicit SpanTracker(std::size_t dim) : dim_(dim) {}
  bool insert(const std::vector<Rat>& v);
  std::size_t rank() const { return echelon_.size(); }

  // Coordinates of v in the basis formed by the kept vectors, in insertion
  // order. Throws InvariantError if v is outside the span.
  std::vector<Rat> coordinates(const std::vector<Rat>& v) const;

 private:
  std::size_t dim_;
  // Echelon rows paired with their expression in terms of kept basis vectors.
  struct Row {
    std::vector<Rat> vec;    // reduced vector
    std::vector<Rat> combo;  // coords of `vec` in kept-vector basis
    std::size_t pivot;
  };
  std::vector<Row> echelon_;
  std::size_t kept_ = 0;
};

}  // namespace trop
