#include "ectkit/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ectkit {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Direction::Direction(std::vector<double> v) : v_(std::move(v)) {
  if (v_.empty()) throw std::invalid_argument("direction must have at least one component");
  const double norm = std::sqrt(dot(v_, v_));
  if (!(std::abs(norm - 1.0) <= kUnitNormTolerance))
    throw std::invalid_argument("direction is not a unit vector (norm " + std::to_string(norm) + ")");
}

Direction Direction::normalized(std::vector<double> v) {
  const double norm = std::sqrt(dot(v, v));
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  for (double& c : v) c /= norm;
  return Direction(std::move(v));
}

SimplexFiltration::SimplexFiltration(AbstractComplex complex, std::vector<double> values)
    : complex_(std::move(complex)), values_(std::move(values)) {
  if (values_.size() != complex_.size())
    throw std::invalid_argument("filtration must assign a value to every simplex");
  for (double v : values_)
    if (std::isnan(v)) throw std::invalid_argument("filtration value is NaN");
}

bool SimplexFiltration::is_monotone() const {
  for (std::size_t i = 0; i < complex_.size(); ++i)
    for (auto f : complex_.facets(i))
      if (values_[f] > values_[i]) return false;
  return true;
}

VertexFunction::VertexFunction(std::map<VertexId, double> values) : values_(std::move(values)) {
  for (const auto& [v, x] : values_)
    if (!std::isfinite(x) || !(x > 0.0))
      throw std::invalid_argument("vertex function must be strictly positive and finite (vertex " +
                                  std::to_string(v) + ")");
}

double VertexFunction::at(VertexId v) const {
  auto it = values_.find(v);
  if (it == values_.end()) throw std::out_of_range("vertex function has no value for vertex " + std::to_string(v));
  return it->second;
}

double height(const Embedding& emb, const Direction& nu, const Simplex& sigma) {
  if (emb.dim() != nu.dim()) throw std::invalid_argument("direction and embedding dimensions differ");
  double h = -std::numeric_limits<double>::infinity();
  for (VertexId v : sigma) h = std::max(h, dot(emb.at(v), nu.components()));
  return h;
}

SimplexFiltration directional_filtration(const GeometricComplex& gc, const Direction& nu) {
  if (gc.dim() != nu.dim()) throw std::invalid_argument("direction and embedding dimensions differ");
  const auto& k = gc.complex();
  std::vector<double> vertex_height(k.vertex_count());
  for (std::size_t p = 0; p < vertex_height.size(); ++p) vertex_height[p] = dot(gc.point(p), nu.components());
  std::vector<double> values(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    double h = -std::numeric_limits<double>::infinity();
    for (auto p : k.vertex_positions(i)) h = std::max(h, vertex_height[p]);
    values[i] = h;
  }
  return SimplexFiltration(k, std::move(values));
}

std::vector<double> min_extension(const AbstractComplex& k, const VertexFunction& phi) {
  std::vector<double> vertex_value(k.vertex_count());
  for (std::size_t p = 0; p < vertex_value.size(); ++p) {
    const VertexId v = k.vertices()[p];
    if (!phi.contains(v)) throw std::invalid_argument("vertex function has no value for vertex " + std::to_string(v));
    vertex_value[p] = phi.at(v);
  }
  std::vector<double> out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    double m = std::numeric_limits<double>::infinity();
    for (auto p : k.vertex_positions(i)) m = std::min(m, vertex_value[p]);
    out[i] = m;
  }
  return out;
}

AbstractComplex superlevel_complex(const AbstractComplex& k, std::span<const double> phibar, double t) {
  if (phibar.size() != k.size()) throw std::invalid_argument("min-extension does not match complex");
  std::vector<char> keep(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) keep[i] = phibar[i] >= t;
  return k.subcomplex(keep);
}

std::vector<double> phi_breakpoints(const VertexFunction& phi) {
  std::vector<double> out;
  out.reserve(phi.size());
  for (const auto& [v, x] : phi.values()) out.push_back(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ectkit
