#pragma once

#include <cstddef>
#include <vector>

namespace ectkit {

/// Dense row-major square matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct Assignment {
  std::vector<std::size_t> row_to_col;  // a permutation of 0..n-1
  double cost = 0.0;                    // sum of the chosen entries
};

/// Minimum-cost perfect assignment by the Hungarian method with potentials,
/// O(n^3). Entries must be finite and non-negative.
Assignment solve_assignment(const SquareMatrix& cost);

}  // namespace ectkit
