#pragma once

#include <cstdint>
#include <vector>

#include "ectkit/ect.hpp"

namespace ectkit {

/// Embedded complex carrying the piecewise-constant field phibar o f^{-1}.
class SelectField {
 public:
  /// Throws std::invalid_argument if phi misses a vertex of the complex.
  SelectField(GeometricComplex gc, VertexFunction phi);

  const GeometricComplex& geometry() const { return gc_; }
  const VertexFunction& phi() const { return phi_; }
  /// Min-extension, indexed like geometry().complex().simplices().
  std::span<const double> phibar() const { return phibar_; }
  /// Distinct phi values on V(K), increasing.
  std::span<const double> breakpoints() const { return breakpoints_; }

  /// K^t = {sigma : phibar(sigma) >= t}.
  AbstractComplex superlevel(double t) const;

 private:
  GeometricComplex gc_;
  VertexFunction phi_;
  std::vector<double> phibar_;
  std::vector<double> breakpoints_;
};

/// chi({x : <x, nu> <= a, field(x) >= t}) computed on the subcomplex K^t.
std::int64_t select_eval(const SelectField& field, const Direction& nu, double a, double t);

/// Largest phibar value. Throws std::invalid_argument for an empty complex.
double r_max(const SelectField& field);

/// One constant piece of the t-integral: K^t is fixed on (t_lo, t_hi].
struct SelectSegment {
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::size_t simplex_count = 0;
  double d_ect = 0.0;
  double contribution = 0.0;  // (t_hi - t_lo) * d_ect
};

struct SelectDistance {
  double value = 0.0;
  std::string quadrature;
  std::vector<SelectSegment> segments;
};

/// Integral over t > 0 of d_ect(f(K^t), g(K^t)), exact in t: K^t only changes
/// at phi values, so the integral is a finite sum over segments evaluated at
/// their right endpoints. Direction quadrature follows `scheme`.
SelectDistance d_select(const AbstractComplex& k, const VertexFunction& phi, const Embedding& f, const Embedding& g,
                        const DirectionScheme& scheme, const IntegrationOptions& options = {});

/// 2 r_max C_d C_K sum_v ||f(v) - g(v)||_2.
double select_bound(const AbstractComplex& k, const VertexFunction& phi, const Embedding& f, const Embedding& g);

/// Segment-wise form of the same bound before its constants are coarsened:
/// sum over segments of (t_hi - t_lo) 2 C_d C_{K^t} sum_{v in V(K^t)} ||f(v) - g(v)||_2.
double select_segmentwise_bound(const AbstractComplex& k, const VertexFunction& phi, const Embedding& f,
                                const Embedding& g);

}  // namespace ectkit
