#pragma once

#include <span>

#include "ectkit/assignment.hpp"
#include "ectkit/persistence.hpp"

namespace ectkit {

/// Points whose persistence exceeds this are rejected before costs are raised to the p-th power.
inline constexpr double kMaxPersistence = 1e150;

/// l_q distance from a finite point to the diagonal:
/// 2^{(1-q)/q} (death - birth) for finite q, (death - birth) / 2 for q = inf.
/// +inf for an essential point. Throws std::invalid_argument for q < 1.
double diagonal_cost(const PersistencePoint& pt, double q);

/// l_q distance between two points. Two essential points cost |birth_x - birth_y|;
/// an essential point against a finite one costs +inf.
double point_cost(const PersistencePoint& x, const PersistencePoint& y, double q);

/// Cost matrix of the finite points of one dimension, augmented with diagonal
/// slots. Rows are the points of d1 followed by one diagonal slot per point of
/// d2; columns are the points of d2 followed by one diagonal slot per point of
/// d1. Entries are costs raised to the p-th power.
struct MatchingCostMatrix {
  SquareMatrix costs;
  std::size_t left_points = 0;
  std::size_t right_points = 0;
};

MatchingCostMatrix build_cost_matrix(std::span<const PersistencePoint> d1, std::span<const PersistencePoint> d2,
                                     double p, double q);

/// (p,q)-Wasserstein distance between the points of one homology dimension.
/// Essential points are matched by sorted birth; +inf when their counts differ.
/// Throws std::invalid_argument for p < 1 or q < 1, std::domain_error for a
/// persistence above kMaxPersistence.
double w_pq(std::span<const PersistencePoint> d1, std::span<const PersistencePoint> d2, double p, double q);

/// (sum_k w_pq(dim k)^p)^{1/p}.
double total_w_pq(const PersistenceDiagram& dgm1, const PersistenceDiagram& dgm2, double p, double q);

}  // namespace ectkit
