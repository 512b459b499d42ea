#include "ectkit/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ectkit {

namespace {

void check_exponent(double e, const char* name) {
  if (std::isnan(e) || e < 1.0) throw std::invalid_argument(std::string(name) + " must be at least 1");
}

double raise(double cost, double p) { return p == 1.0 ? cost : std::pow(cost, p); }

}  // namespace

double diagonal_cost(const PersistencePoint& pt, double q) {
  check_exponent(q, "q");
  if (pt.is_essential()) return kInfinity;
  const double length = std::abs(pt.death - pt.birth);
  if (q == kInfinity) return length / 2.0;
  return std::pow(2.0, (1.0 - q) / q) * length;
}

double point_cost(const PersistencePoint& x, const PersistencePoint& y, double q) {
  check_exponent(q, "q");
  if (x.is_essential() && y.is_essential()) return std::abs(x.birth - y.birth);
  if (x.is_essential() || y.is_essential()) return kInfinity;
  const double db = std::abs(x.birth - y.birth);
  const double dd = std::abs(x.death - y.death);
  if (q == kInfinity) return std::max(db, dd);
  if (q == 1.0) return db + dd;
  return std::pow(std::pow(db, q) + std::pow(dd, q), 1.0 / q);
}

MatchingCostMatrix build_cost_matrix(std::span<const PersistencePoint> d1, std::span<const PersistencePoint> d2,
                                     double p, double q) {
  const std::size_t m = d1.size();
  const std::size_t n = d2.size();
  MatchingCostMatrix out{SquareMatrix(m + n, 0.0), m, n};
  auto& c = out.costs;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) c(i, j) = raise(point_cost(d1[i], d2[j], q), p);
    const double to_diag = raise(diagonal_cost(d1[i], q), p);
    for (std::size_t j = n; j < n + m; ++j) c(i, j) = to_diag;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double to_diag = raise(diagonal_cost(d2[j], q), p);
    for (std::size_t i = m; i < m + n; ++i) c(i, j) = to_diag;
  }
  return out;
}

double w_pq(std::span<const PersistencePoint> d1, std::span<const PersistencePoint> d2, double p, double q) {
  check_exponent(p, "p");
  check_exponent(q, "q");
  if (p == kInfinity) throw std::invalid_argument("p must be finite");

  std::vector<double> births1, births2;
  std::vector<PersistencePoint> finite1, finite2;
  const auto split = [](std::span<const PersistencePoint> d, std::vector<double>& births,
                        std::vector<PersistencePoint>& finite) {
    for (const auto& pt : d) {
      if (pt.is_essential()) {
        births.push_back(pt.birth);
      } else {
        if (pt.persistence() > kMaxPersistence) throw std::domain_error("persistence too large for cost computation");
        finite.push_back(pt);
      }
    }
  };
  split(d1, births1, finite1);
  split(d2, births2, finite2);
  if (births1.size() != births2.size()) return kInfinity;

  std::sort(births1.begin(), births1.end());
  std::sort(births2.begin(), births2.end());
  double total = 0.0;
  for (std::size_t i = 0; i < births1.size(); ++i) total += raise(std::abs(births1[i] - births2[i]), p);

  if (!finite1.empty() || !finite2.empty()) {
    // Canonical argument order makes the result bitwise symmetric.
    std::sort(finite1.begin(), finite1.end());
    std::sort(finite2.begin(), finite2.end());
    if (finite2 < finite1) std::swap(finite1, finite2);
    const auto matrix = build_cost_matrix(finite1, finite2, p, q);
    total += solve_assignment(matrix.costs).cost;
  }
  return p == 1.0 ? total : std::pow(total, 1.0 / p);
}

double total_w_pq(const PersistenceDiagram& dgm1, const PersistenceDiagram& dgm2, double p, double q) {
  check_exponent(p, "p");
  const int dims = std::max(dgm1.dimension_count(), dgm2.dimension_count());
  double total = 0.0;
  for (int k = 0; k < dims; ++k) {
    const double w = w_pq(dgm1.points(k), dgm2.points(k), p, q);
    if (w == kInfinity) return kInfinity;
    total += raise(w, p);
  }
  return p == 1.0 ? total : std::pow(total, 1.0 / p);
}

}  // namespace ectkit
