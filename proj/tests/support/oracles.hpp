#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ectkit/complex.hpp"
#include "ectkit/filtration.hpp"
#include "ectkit/persistence.hpp"

namespace oracle {

/// Minimum matching cost by enumerating every partial matching of the two
/// point sets (unmatched points go to the diagonal). At most 8 points total.
double brute_force_w(const std::vector<ectkit::PersistencePoint>& d1, const std::vector<ectkit::PersistencePoint>& d2,
                     double p, double q);

/// Composite Simpson rule on [a, b] with `intervals` (even) subintervals.
double simpson(const std::function<double(double)>& fn, double a, double b, int intervals);

/// Area of the unit m-sphere by the recursion omega_m = 2 pi omega_{m-2} / (m - 1).
double sphere_area(int m);

/// 2 omega_{d-2} * int_0^{pi/2} cos(t) sin^{d-2}(t) dt by Simpson quadrature.
double c_d_quadrature(int d);

/// int over the unit circle of |<delta, nu>| by a dense midpoint rule.
double circle_abs_projection(double dx, double dy, int samples = 1 << 20);

/// chi of the sublevel set {sigma : max_v <f(v), nu> <= a}, counted directly.
std::int64_t sublevel_euler(const ectkit::GeometricComplex& gc, const ectkit::Direction& nu, double a);

/// Betti numbers over Z/2 from boundary-matrix ranks.
std::vector<int> betti_by_rank(const ectkit::AbstractComplex& k);

/// Small random face-closed complex: random maximal simplices on n vertices.
ectkit::AbstractComplex random_small_complex(std::mt19937_64& rng, int n, int max_dim, int generators);

ectkit::Embedding random_points(std::mt19937_64& rng, const ectkit::AbstractComplex& k, int d);

ectkit::Direction random_direction(std::mt19937_64& rng, int d);

std::vector<ectkit::PersistencePoint> random_points_in_dim(std::mt19937_64& rng, int finite, int essential,
                                                           int dim = 0);

}  // namespace oracle
