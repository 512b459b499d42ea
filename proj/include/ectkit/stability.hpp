#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ectkit/ect.hpp"
#include "ectkit/persistence.hpp"
#include "ectkit/select.hpp"

namespace ectkit {

/// Acceptance rule lhs <= rhs * (1 + rel) + abs.
struct Tolerance {
  double rel = 0.0;
  double abs = 0.0;
};

/// Guard for sphere-quadrature estimates.
inline constexpr Tolerance kQuadratureTolerance{1e-6, 1e-3};
/// Guard for inequalities evaluated exactly, up to floating-point rounding.
inline constexpr Tolerance kRoundingTolerance{0.0, 1e-9};

/// Outcome of checking one inequality instance.
struct BoundReport {
  std::string inequality;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs; 0 when both sides are +inf
  bool holds = false;
  Tolerance tolerance;
  nlohmann::json instance = nlohmann::json::object();
};

/// Fills slack/holds from lhs, rhs and the tolerance. Two infinite sides hold
/// vacuously and are flagged in the instance descriptor.
BoundReport make_report(std::string inequality, double lhs, double rhs, Tolerance tol,
                        nlohmann::json instance = nlohmann::json::object());

nlohmann::json report_to_json(const BoundReport& r);

/// Parameters of one random instance.
struct InstanceParams {
  std::size_t vertices = 6;
  int top_dim = 2;
  double density = 0.5;  // edge probability and higher-simplex fill probability
  int ambient_dim = 2;
  double epsilon = 0.1;  // perturbation radius per vertex
  double phi_lo = 0.1;
  double phi_hi = 5.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Erdos-Renyi edges on `vertices` vertices, then each k-simplex (k <= top_dim)
/// whose facets are all present is added with probability `density`.
AbstractComplex random_complex(const InstanceParams& params);

/// Coordinates i.i.d. uniform in [-1, 1]^d for every vertex of k.
Embedding random_embedding(const AbstractComplex& k, int d, std::uint64_t seed);

/// Moves each vertex by a vector drawn uniformly from the ball of radius eps.
Embedding perturb(const Embedding& f, double eps, std::uint64_t seed);

/// phi uniform in (lo, hi] on every vertex of k.
VertexFunction random_phi(const AbstractComplex& k, double lo, double hi, std::uint64_t seed);

/// Random diagram with up to `max_finite` finite points per dimension in
/// dimensions 0..dims-1 and the given numbers of essential points.
PersistenceDiagram random_diagram(std::uint64_t seed, int dims, std::size_t max_finite,
                                  const std::vector<std::size_t>& essential_per_dim);

/// d_ECT(f(K), g(K)) <= 2 C_K C_d sum_v ||f(v) - g(v)||.
BoundReport verify_ect_stability(const AbstractComplex& k, const Embedding& f, const Embedding& g,
                                 const DirectionScheme& scheme, unsigned threads = 0);

/// d_SELECT <= 2 r_max C_d C_K sum_v ||f(v) - g(v)||.
BoundReport verify_select_stability(const AbstractComplex& k, const VertexFunction& phi, const Embedding& f,
                                    const Embedding& g, const DirectionScheme& scheme, unsigned threads = 0);

/// Per-direction ||ECC_nu(f) - ECC_nu(g)||_1 <= 2 W_{1,inf} of the two height diagrams.
BoundReport verify_ecc_vs_wasserstein(const GeometricComplex& gc_f, const GeometricComplex& gc_g, const Direction& nu);

/// Integral over the sphere of W_{1,1} of the height diagrams <= C_K C_d sum_v ||f(v) - g(v)||.
BoundReport verify_integrated_wasserstein(const AbstractComplex& k, const Embedding& f, const Embedding& g,
                                          const DirectionScheme& scheme, unsigned threads = 0);

/// W_{p,inf} <= W_{p,p} <= 2 W_{p,inf}. Reported as lhs = W_{p,p}, rhs = 2 W_{p,inf};
/// `holds` also requires the lower inequality, whose value is in the instance.
BoundReport verify_turner_sandwich(const PersistenceDiagram& dgm1, const PersistenceDiagram& dgm2, double p);

/// The integrated chain behind the ECT bound, one report per link:
/// d_ECT <= int 2 W_{1,inf} <= 2 int W_{1,1} <= 2 C_K C_d sum_v ||f(v) - g(v)||.
std::vector<BoundReport> verify_ect_chain(const AbstractComplex& k, const Embedding& f, const Embedding& g,
                                          const DirectionScheme& scheme, unsigned threads = 0);

enum class Inequality { Ect, Select, Prop2, Skraba, Turner };

std::string_view to_string(Inequality which);
/// Accepts "ect", "select", "prop2", "skraba", "turner".
Inequality parse_inequality(std::string_view name);

struct BatchOptions {
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::optional<std::size_t> directions;  // overrides the per-dimension default N
  std::size_t max_vertices = 12;
};

/// Seed of trial i, a splitmix64 hash of (seed, i).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

/// Parameters drawn for one trial: d in {2, 3}, 1..max_vertices vertices,
/// top dimension <= 3, epsilon in {0.01, 0.1, 0.5}, phi in (0.1, 5].
InstanceParams draw_instance(std::uint64_t seed, std::size_t max_vertices = 12);

/// Runs `trials` seeded instances of one inequality. Trials run in parallel;
/// reports come back in trial order and failing reports carry the full
/// instance (complex, embeddings, phi) for replay.
std::vector<BoundReport> run_batch(Inequality which, const BatchOptions& options);

}  // namespace ectkit
