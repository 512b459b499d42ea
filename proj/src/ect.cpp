#include "ectkit/ect.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ectkit/parallel.hpp"

namespace ectkit {

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::UniformCircle: return "uniform-circle";
    case SchemeKind::FibonacciSphere: return "fibonacci-sphere";
    case SchemeKind::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

SchemeKind parse_scheme_kind(std::string_view name) {
  if (name == "uniform-circle") return SchemeKind::UniformCircle;
  if (name == "fibonacci-sphere") return SchemeKind::FibonacciSphere;
  if (name == "monte-carlo") return SchemeKind::MonteCarlo;
  throw std::invalid_argument("unknown direction scheme: " + std::string(name));
}

DirectionScheme DirectionScheme::default_for(int dim) {
  if (dim == 2) return {2, 1024, SchemeKind::UniformCircle, 0};
  if (dim == 3) return {3, 4096, SchemeKind::FibonacciSphere, 0};
  return {dim, 4096, SchemeKind::MonteCarlo, 0};
}

void DirectionScheme::validate() const {
  if (dim < 1) throw std::invalid_argument("direction scheme dimension must be positive");
  if (count == 0) throw std::invalid_argument("direction scheme needs at least one direction");
  if (kind == SchemeKind::UniformCircle && dim != 2)
    throw std::invalid_argument("uniform-circle requires dimension 2");
  if (kind == SchemeKind::FibonacciSphere && dim != 3)
    throw std::invalid_argument("fibonacci-sphere requires dimension 3");
}

std::string DirectionScheme::describe() const {
  std::string s = std::string(to_string(kind)) + "(d=" + std::to_string(dim) + ",N=" + std::to_string(count);
  if (kind == SchemeKind::MonteCarlo) s += ",seed=" + std::to_string(seed);
  return s + ")";
}

double sphere_area(int d) {
  if (d < 1) throw std::invalid_argument("sphere dimension must be positive");
  // Area of S^{d-1} by omega_m = 2 pi omega_{m-2} / (m - 1), exact for small d.
  double area = d % 2 == 1 ? 2.0 : 2.0 * std::numbers::pi;
  for (int m = d % 2 == 1 ? 2 : 3; m <= d - 1; m += 2) area *= 2.0 * std::numbers::pi / (m - 1);
  return area;
}

std::vector<WeightedDirection> sample_directions(const DirectionScheme& scheme) {
  scheme.validate();
  const std::size_t n = scheme.count;
  const double weight = sphere_area(scheme.dim) / static_cast<double>(n);
  std::vector<WeightedDirection> out;
  out.reserve(n);
  switch (scheme.kind) {
    case SchemeKind::UniformCircle:
      for (std::size_t j = 0; j < n; ++j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        out.push_back({Direction::normalized({std::cos(theta), std::sin(theta)}), weight});
      }
      break;
    case SchemeKind::FibonacciSphere: {
      const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
      for (std::size_t i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * static_cast<double>(i);
        out.push_back({Direction::normalized({r * std::cos(phi), r * std::sin(phi), z}), weight});
      }
      break;
    }
    case SchemeKind::MonteCarlo: {
      std::mt19937_64 rng(scheme.seed);
      std::normal_distribution<double> gauss;
      std::vector<double> v(static_cast<std::size_t>(scheme.dim));
      while (out.size() < n) {
        double norm2 = 0.0;
        for (double& c : v) {
          c = gauss(rng);
          norm2 += c * c;
        }
        if (norm2 < 1e-24) continue;
        out.push_back({Direction::normalized(v), weight});
      }
      break;
    }
  }
  return out;
}

std::vector<WeightedDirection> equal_weight_directions(std::vector<Direction> directions) {
  if (directions.empty()) throw std::invalid_argument("direction set is empty");
  const int d = directions.front().dim();
  const double weight = sphere_area(d) / static_cast<double>(directions.size());
  std::vector<WeightedDirection> out;
  out.reserve(directions.size());
  for (auto& nu : directions) {
    if (nu.dim() != d) throw std::invalid_argument("directions have mixed dimensions");
    out.push_back({std::move(nu), weight});
  }
  return out;
}

double integrate_over_directions(std::span<const WeightedDirection> directions,
                                 const std::function<double(const Direction&)>& fn, unsigned threads,
                                 std::vector<double>* integrands) {
  std::vector<double> values(directions.size());
  parallel_for(directions.size(), threads, [&](std::size_t i) { values[i] = fn(directions[i].direction); });
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == kInfinity) {
      total = kInfinity;
      continue;
    }
    total += directions[i].weight * values[i];
  }
  if (integrands) *integrands = std::move(values);
  return total;
}

StepFunction ecc(const GeometricComplex& gc, const Direction& nu) {
  if (gc.dim() != nu.dim()) throw std::invalid_argument("direction and embedding dimensions differ");
  const auto& k = gc.complex();
  const std::size_t nv = k.vertex_count();
  std::vector<double> h(nv);
  for (std::size_t p = 0; p < nv; ++p) h[p] = dot(gc.point(p), nu.components());

  // A simplex enters with its highest vertex; bin its sign there.
  std::vector<std::int64_t> bins(nv, 0);
  for (std::size_t i = 0; i < k.size(); ++i) {
    const auto vp = k.vertex_positions(i);
    std::uint32_t top = vp[0];
    for (auto p : vp)
      if (h[p] > h[top]) top = p;
    bins[top] += vp.size() % 2 == 1 ? 1 : -1;
  }
  std::vector<std::pair<double, std::int64_t>> events;
  events.reserve(nv);
  for (std::size_t p = 0; p < nv; ++p)
    if (bins[p] != 0) events.emplace_back(h[p], bins[p]);
  return StepFunction::from_events(std::move(events));
}

std::int64_t ect_eval(const GeometricComplex& gc, const Direction& nu, double a) {
  return evaluate(ecc(gc, nu), a);
}

DistanceEstimate d_ect(const GeometricComplex& f_gc, const GeometricComplex& g_gc, const DirectionScheme& scheme,
                       const IntegrationOptions& options) {
  if (scheme.dim != f_gc.dim()) throw std::invalid_argument("direction scheme dimension does not match embedding");
  const auto directions = sample_directions(scheme);
  return d_ect(f_gc, g_gc, directions, scheme.describe(), options);
}

DistanceEstimate d_ect(const GeometricComplex& f_gc, const GeometricComplex& g_gc,
                       std::span<const WeightedDirection> directions, std::string quadrature,
                       const IntegrationOptions& options) {
  if (f_gc.dim() != g_gc.dim()) throw std::invalid_argument("embeddings have different ambient dimensions");
  for (const auto& wd : directions)
    if (wd.direction.dim() != f_gc.dim())
      throw std::invalid_argument("direction dimension does not match embedding");

  DistanceEstimate out;
  out.quadrature = std::move(quadrature);
  out.direction_count = directions.size();
  std::vector<double> integrands;
  out.value = integrate_over_directions(
      directions,
      [&](const Direction& nu) { return l1_distance(ecc(f_gc, nu), ecc(g_gc, nu), options.window); },
      options.threads, options.keep_per_direction ? &integrands : nullptr);
  if (options.keep_per_direction) {
    out.directions.assign(directions.begin(), directions.end());
    out.integrands = std::move(integrands);
  }
  return out;
}

double c_d(int d) {
  if (d < 2) throw std::invalid_argument("C_d is defined for d >= 2");
  // omega_{d-2} is the area of S^{d-2}, i.e. sphere_area(d - 1).
  return 2.0 * sphere_area(d - 1) / static_cast<double>(d - 1);
}

double ect_bound(const AbstractComplex& k, const Embedding& f, const Embedding& g) {
  return 2.0 * static_cast<double>(c_k(k)) * c_d(f.dim()) * displacement(f, g, k);
}

double default_window(const Embedding& f, const Embedding& g) {
  double r = 0.0;
  for (const auto* e : {&f, &g})
    for (const auto& [id, x] : e->coordinates()) r = std::max(r, std::sqrt(dot(x, x)));
  return r + 1.0;
}

}  // namespace ectkit
