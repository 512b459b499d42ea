#pragma once

#include <map>
#include <span>
#include <vector>

#include "ectkit/complex.hpp"

namespace ectkit {

/// A unit vector of S^{d-1}.
class Direction {
 public:
  /// Throws std::invalid_argument unless |v| = 1 within 1e-12.
  explicit Direction(std::vector<double> v);

  /// Rescales v to unit length. Throws on the zero vector.
  static Direction normalized(std::vector<double> v);

  int dim() const { return static_cast<int>(v_.size()); }
  std::span<const double> components() const { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  std::vector<double> v_;
};

inline constexpr double kUnitNormTolerance = 1e-12;

double dot(std::span<const double> a, std::span<const double> b);

/// Real values on the simplices of a complex, indexed like complex.simplices().
class SimplexFiltration {
 public:
  /// Throws std::invalid_argument if values.size() != complex.size() or a value is NaN.
  SimplexFiltration(AbstractComplex complex, std::vector<double> values);

  const AbstractComplex& complex() const { return complex_; }
  std::span<const double> values() const { return values_; }
  double value(std::size_t i) const { return values_[i]; }

  /// value(face) <= value(simplex) for every facet relation.
  bool is_monotone() const;

 private:
  AbstractComplex complex_;
  std::vector<double> values_;
};

/// Strictly positive values on vertices.
class VertexFunction {
 public:
  VertexFunction() = default;
  /// Throws std::invalid_argument on a non-positive or non-finite value.
  explicit VertexFunction(std::map<VertexId, double> values);

  std::size_t size() const { return values_.size(); }
  bool contains(VertexId v) const { return values_.count(v) != 0; }
  /// Throws std::out_of_range for unknown vertices.
  double at(VertexId v) const;
  const std::map<VertexId, double>& values() const { return values_; }

  friend bool operator==(const VertexFunction&, const VertexFunction&) = default;

 private:
  std::map<VertexId, double> values_;
};

/// max over the vertices of sigma of <f(v), nu>.
double height(const Embedding& emb, const Direction& nu, const Simplex& sigma);

/// Height filtration of gc in direction nu.
SimplexFiltration directional_filtration(const GeometricComplex& gc, const Direction& nu);

/// phibar(sigma) = min over the vertices of sigma of phi(v), indexed like k.simplices().
std::vector<double> min_extension(const AbstractComplex& k, const VertexFunction& phi);

/// Subcomplex {sigma : phibar(sigma) >= t}; possibly empty.
AbstractComplex superlevel_complex(const AbstractComplex& k, std::span<const double> phibar, double t);

/// Distinct values of phi in increasing order.
std::vector<double> phi_breakpoints(const VertexFunction& phi);

}  // namespace ectkit
