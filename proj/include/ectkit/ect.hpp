#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ectkit/complex.hpp"
#include "ectkit/ecc.hpp"
#include "ectkit/filtration.hpp"

namespace ectkit {

enum class SchemeKind { UniformCircle, FibonacciSphere, MonteCarlo };

std::string_view to_string(SchemeKind kind);
/// Accepts "uniform-circle", "fibonacci-sphere", "monte-carlo".
SchemeKind parse_scheme_kind(std::string_view name);

/// Equal-weight quadrature rule on S^{d-1}.
struct DirectionScheme {
  int dim = 2;
  std::size_t count = 1024;
  SchemeKind kind = SchemeKind::UniformCircle;
  std::uint64_t seed = 0;  // monte-carlo only

  /// uniform-circle N=1024 for d=2, fibonacci-sphere N=4096 for d=3,
  /// monte-carlo N=4096 otherwise.
  static DirectionScheme default_for(int dim);

  /// Throws std::invalid_argument if count is 0 or the kind does not fit dim.
  void validate() const;
  std::string describe() const;
};

struct WeightedDirection {
  Direction direction;
  double weight;
};

/// Surface area of S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

std::vector<WeightedDirection> sample_directions(const DirectionScheme& scheme);

/// Equal weights area(S^{d-1}) / N for a user-supplied direction set.
std::vector<WeightedDirection> equal_weight_directions(std::vector<Direction> directions);

/// Sum of weight_i * fn(direction_i), accumulated in index order so the result
/// does not depend on the worker count. Per-direction values are written to
/// `integrands` when it is non-null.
double integrate_over_directions(std::span<const WeightedDirection> directions,
                                 const std::function<double(const Direction&)>& fn, unsigned threads = 0,
                                 std::vector<double>* integrands = nullptr);

/// ECC of gc in direction nu. Agrees exactly with
/// ecc_from_filtration(directional_filtration(gc, nu)) but only sorts vertices.
StepFunction ecc(const GeometricComplex& gc, const Direction& nu);

/// chi of the sublevel set {sigma : h_nu(sigma) <= a}.
std::int64_t ect_eval(const GeometricComplex& gc, const Direction& nu, double a);

struct IntegrationOptions {
  std::optional<double> window;  // integrate a over [-B, B] only
  bool keep_per_direction = false;
  unsigned threads = 0;
};

struct DistanceEstimate {
  double value = 0.0;
  std::string quadrature;
  std::size_t direction_count = 0;
  std::vector<WeightedDirection> directions;  // filled when keep_per_direction
  std::vector<double> integrands;             // filled when keep_per_direction
};

/// Quadrature estimate of the integral over S^{d-1} of ||ECC_nu(f) - ECC_nu(g)||_1.
/// +inf if any integrand is infinite. Throws std::invalid_argument when the
/// ambient dimensions differ or do not match the directions.
DistanceEstimate d_ect(const GeometricComplex& f_gc, const GeometricComplex& g_gc, const DirectionScheme& scheme,
                       const IntegrationOptions& options = {});
DistanceEstimate d_ect(const GeometricComplex& f_gc, const GeometricComplex& g_gc,
                       std::span<const WeightedDirection> directions, std::string quadrature,
                       const IntegrationOptions& options = {});

/// C_d = 2 omega_{d-2} / (d - 1), omega_m the area of S^m (omega_0 = 2).
/// Throws std::invalid_argument for d < 2.
double c_d(int d);

/// 2 C_K C_d sum_v ||f(v) - g(v)||_2.
double ect_bound(const AbstractComplex& k, const Embedding& f, const Embedding& g);

/// Largest vertex norm over both embeddings, plus one.
double default_window(const Embedding& f, const Embedding& g);

}  // namespace ectkit
