#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "ectkit/filtration.hpp"

namespace ectkit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePoint {
  double birth = 0.0;
  double death = kInfinity;
  int dim = 0;

  bool is_essential() const { return death == kInfinity; }
  double persistence() const { return death - birth; }

  friend auto operator<=>(const PersistencePoint&, const PersistencePoint&) = default;
};

/// Multiset of persistence points grouped by homology dimension.
///
/// Points with birth == death are dropped on construction; the rest are kept
/// sorted so that equality is multiset equality.
class PersistenceDiagram {
 public:
  PersistenceDiagram() = default;
  /// Throws std::invalid_argument on infinite/NaN births, death < birth or dim < 0.
  explicit PersistenceDiagram(std::vector<PersistencePoint> points);

  /// One past the highest dimension holding a point.
  int dimension_count() const { return static_cast<int>(by_dim_.size()); }
  std::span<const PersistencePoint> points(int dim) const;
  std::vector<PersistencePoint> all_points() const;
  std::size_t size() const;
  std::size_t essential_count(int dim) const;

  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;

 private:
  std::vector<std::vector<PersistencePoint>> by_dim_;
};

/// Raw output of the boundary-matrix reduction, in simplex indices of the
/// filtered complex. Zero-persistence pairs are included.
struct PersistencePairing {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (creator, destroyer)
  std::vector<std::size_t> essential;
};

/// Column reduction over Z/2 with simplices ordered by (value, dimension,
/// lexicographic ids). Throws std::invalid_argument("filtration not
/// simplex-wise monotone") when a face has a larger value than a coface.
PersistencePairing persistence_pairing(const SimplexFiltration& filt);

/// Sublevel-set persistence diagram; zero-persistence pairs dropped.
PersistenceDiagram persistence_diagram(const SimplexFiltration& filt);

/// beta_0 .. beta_top of a non-empty complex.
std::vector<int> betti_numbers(const AbstractComplex& k);

}  // namespace ectkit
