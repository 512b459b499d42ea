#include "ectkit/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <stdexcept>

namespace ectkit {

PersistenceDiagram::PersistenceDiagram(std::vector<PersistencePoint> points) {
  for (const auto& p : points) {
    if (!std::isfinite(p.birth)) throw std::invalid_argument("persistence point has non-finite birth");
    if (std::isnan(p.death) || p.death < p.birth)
      throw std::invalid_argument("persistence point has death before birth");
    if (p.dim < 0) throw std::invalid_argument("persistence point has negative dimension");
    if (p.death == p.birth) continue;
    if (static_cast<std::size_t>(p.dim) >= by_dim_.size()) by_dim_.resize(static_cast<std::size_t>(p.dim) + 1);
    by_dim_[static_cast<std::size_t>(p.dim)].push_back(p);
  }
  for (auto& pts : by_dim_) std::sort(pts.begin(), pts.end());
  while (!by_dim_.empty() && by_dim_.back().empty()) by_dim_.pop_back();
}

std::span<const PersistencePoint> PersistenceDiagram::points(int dim) const {
  if (dim < 0 || dim >= dimension_count()) return {};
  return by_dim_[static_cast<std::size_t>(dim)];
}

std::vector<PersistencePoint> PersistenceDiagram::all_points() const {
  std::vector<PersistencePoint> out;
  for (const auto& pts : by_dim_) out.insert(out.end(), pts.begin(), pts.end());
  return out;
}

std::size_t PersistenceDiagram::size() const {
  std::size_t n = 0;
  for (const auto& pts : by_dim_) n += pts.size();
  return n;
}

std::size_t PersistenceDiagram::essential_count(int dim) const {
  const auto pts = points(dim);
  return static_cast<std::size_t>(
      std::count_if(pts.begin(), pts.end(), [](const PersistencePoint& p) { return p.is_essential(); }));
}

namespace {

using Column = std::vector<std::uint32_t>;

// a += b over Z/2; both sorted ascending.
void add_columns(Column& a, const Column& b, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(scratch));
  a.swap(scratch);
}

}  // namespace

PersistencePairing persistence_pairing(const SimplexFiltration& filt) {
  if (!filt.is_monotone()) throw std::invalid_argument("filtration not simplex-wise monotone");
  const auto& k = filt.complex();
  const std::size_t n = k.size();

  // Canonical simplex order already breaks ties by (dimension, lex ids).
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return filt.value(a) < filt.value(b); });
  std::vector<std::uint32_t> position(n);
  for (std::uint32_t pos = 0; pos < n; ++pos) position[order[pos]] = pos;

  std::vector<Column> columns(n);
  for (std::uint32_t pos = 0; pos < n; ++pos) {
    auto& col = columns[pos];
    for (auto f : k.facets(order[pos])) col.push_back(position[f]);
    std::sort(col.begin(), col.end());
  }

  constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> pivot_owner(n, kNone);
  std::vector<char> paired(n, 0);
  PersistencePairing out;
  Column scratch;
  for (std::uint32_t j = 0; j < n; ++j) {
    auto& col = columns[j];
    while (!col.empty() && pivot_owner[col.back()] != kNone) add_columns(col, columns[pivot_owner[col.back()]], scratch);
    if (!col.empty()) {
      const std::uint32_t low = col.back();
      pivot_owner[low] = j;
      paired[low] = paired[j] = 1;
      out.pairs.emplace_back(order[low], order[j]);
    }
  }
  for (std::uint32_t pos = 0; pos < n; ++pos)
    if (!paired[pos]) out.essential.push_back(order[pos]);
  return out;
}

PersistenceDiagram persistence_diagram(const SimplexFiltration& filt) {
  const auto pairing = persistence_pairing(filt);
  const auto& k = filt.complex();
  std::vector<PersistencePoint> points;
  points.reserve(pairing.pairs.size() + pairing.essential.size());
  for (auto [creator, destroyer] : pairing.pairs)
    points.push_back({filt.value(creator), filt.value(destroyer), k.dimension_of(creator)});
  for (auto creator : pairing.essential) points.push_back({filt.value(creator), kInfinity, k.dimension_of(creator)});
  return PersistenceDiagram(std::move(points));
}

std::vector<int> betti_numbers(const AbstractComplex& k) {
  if (k.empty()) return {};
  const SimplexFiltration flat(k, std::vector<double>(k.size(), 0.0));
  const auto pairing = persistence_pairing(flat);
  std::vector<int> betti(static_cast<std::size_t>(k.top_dimension()) + 1, 0);
  for (auto creator : pairing.essential) ++betti[static_cast<std::size_t>(k.dimension_of(creator))];
  return betti;
}

}  // namespace ectkit
