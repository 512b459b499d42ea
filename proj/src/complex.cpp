#include "ectkit/complex.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace ectkit {

namespace {

bool canonical_less(const Simplex& a, const Simplex& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Simplex normalized(const Simplex& raw) {
  if (raw.empty()) throw std::invalid_argument("simplex must be non-empty");
  Simplex s = raw;
  std::sort(s.begin(), s.end());
  if (s.front() < 0) throw std::invalid_argument("vertex ids must be non-negative");
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("repeated vertex id in simplex");
  return s;
}

// Inserts every non-empty subset of s into out.
void insert_faces(const Simplex& s, std::set<Simplex>& out) {
  if (out.count(s)) return;
  const std::size_t n = s.size();
  if (n >= 32) throw std::invalid_argument("simplex too large for face enumeration");
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    Simplex face;
    face.reserve(static_cast<std::size_t>(std::popcount(mask)));
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) face.push_back(s[i]);
    out.insert(std::move(face));
  }
}

}  // namespace

AbstractComplex::AbstractComplex() : data_(std::make_shared<const Data>()) {}

AbstractComplex AbstractComplex::from_canonical(std::vector<Simplex> simplices) {
  auto data = std::make_shared<Data>();
  data->simplices = std::move(simplices);
  const auto& all = data->simplices;
  for (std::uint32_t i = 0; i < all.size(); ++i) data->index.emplace(all[i], i);
  for (const auto& s : all)
    if (s.size() == 1) data->vertices.push_back(s.front());

  data->facets.resize(all.size());
  data->vertex_positions.resize(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Simplex& s = all[i];
    auto& vp = data->vertex_positions[i];
    vp.reserve(s.size());
    for (VertexId v : s) {
      auto it = std::lower_bound(data->vertices.begin(), data->vertices.end(), v);
      if (it == data->vertices.end() || *it != v)
        throw std::invalid_argument("selection is not face-closed");
      vp.push_back(static_cast<std::uint32_t>(it - data->vertices.begin()));
    }
    if (s.size() < 2) continue;
    auto& fs = data->facets[i];
    fs.reserve(s.size());
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex face;
      face.reserve(s.size() - 1);
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != drop) face.push_back(s[j]);
      auto it = data->index.find(face);
      if (it == data->index.end()) throw std::invalid_argument("selection is not face-closed");
      fs.push_back(it->second);
    }
    std::sort(fs.begin(), fs.end());
  }
  return AbstractComplex(std::move(data));
}

AbstractComplex AbstractComplex::close(std::span<const Simplex> generators) {
  std::set<Simplex> closed;
  for (const auto& g : generators) insert_faces(normalized(g), closed);
  std::vector<Simplex> simplices(closed.begin(), closed.end());
  std::stable_sort(simplices.begin(), simplices.end(), canonical_less);
  return from_canonical(std::move(simplices));
}

int AbstractComplex::top_dimension() const {
  return empty() ? -1 : dimension(data_->simplices.back());
}

std::optional<std::size_t> AbstractComplex::vertex_position(VertexId id) const {
  const auto& vs = data_->vertices;
  auto it = std::lower_bound(vs.begin(), vs.end(), id);
  if (it == vs.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - vs.begin());
}

std::optional<std::size_t> AbstractComplex::find(const Simplex& s) const {
  auto it = data_->index.find(s);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

AbstractComplex AbstractComplex::subcomplex(std::span<const char> keep) const {
  if (keep.size() != size()) throw std::invalid_argument("selection size does not match complex");
  std::vector<Simplex> kept;
  for (std::size_t i = 0; i < size(); ++i)
    if (keep[i]) kept.push_back(data_->simplices[i]);
  return from_canonical(std::move(kept));
}

bool operator==(const AbstractComplex& a, const AbstractComplex& b) {
  return a.data_ == b.data_ || a.data_->simplices == b.data_->simplices;
}

AbstractComplex build_complex(std::span<const Simplex> simplices) {
  if (simplices.empty()) throw std::invalid_argument("empty complex not permitted");
  return AbstractComplex::close(simplices);
}

AbstractComplex build_complex(std::initializer_list<Simplex> simplices) {
  return build_complex(std::span<const Simplex>(simplices.begin(), simplices.size()));
}

bool is_valid(const AbstractComplex& k) {
  const auto all = k.simplices();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Simplex& s = all[i];
    if (s.empty() || s.front() < 0) return false;
    for (std::size_t j = 1; j < s.size(); ++j)
      if (s[j - 1] >= s[j]) return false;
    if (i > 0 && !canonical_less(all[i - 1], s)) return false;
    if (k.find(s) != i) return false;
    const auto fs = k.facets(i);
    if (fs.size() != (s.size() < 2 ? 0 : s.size())) return false;
    for (auto f : fs) {
      const Simplex& face = all[f];
      if (face.size() + 1 != s.size()) return false;
      if (!std::includes(s.begin(), s.end(), face.begin(), face.end())) return false;
    }
  }
  return true;
}

std::int64_t euler_characteristic(const AbstractComplex& k) {
  std::int64_t chi = 0;
  for (const auto& s : k.simplices()) chi += (s.size() % 2 == 1) ? 1 : -1;
  return chi;
}

std::int64_t c_k(const AbstractComplex& k) {
  std::vector<std::int64_t> cofaces(k.vertex_count(), 0);
  for (std::size_t i = 0; i < k.size(); ++i)
    for (auto p : k.vertex_positions(i)) ++cofaces[p];
  return cofaces.empty() ? 0 : *std::max_element(cofaces.begin(), cofaces.end());
}

Embedding::Embedding(int dim, std::map<VertexId, std::vector<double>> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ < 1) throw std::invalid_argument("embedding dimension must be at least 1");
  for (const auto& [id, x] : coords_) {
    if (x.size() != static_cast<std::size_t>(dim_))
      throw std::invalid_argument("coordinate vector of vertex " + std::to_string(id) +
                                  " has length " + std::to_string(x.size()) + ", expected " +
                                  std::to_string(dim_));
    for (double c : x)
      if (!std::isfinite(c))
        throw std::invalid_argument("non-finite coordinate for vertex " + std::to_string(id));
  }
}

std::span<const double> Embedding::at(VertexId id) const {
  auto it = coords_.find(id);
  if (it == coords_.end()) throw std::out_of_range("no coordinates for vertex " + std::to_string(id));
  return it->second;
}

namespace {

double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

double displacement(const Embedding& f, const Embedding& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("embeddings have different dimensions");
  if (f.size() != g.size()) throw std::invalid_argument("embeddings have different vertex sets");
  double total = 0.0;
  auto gi = g.coordinates().begin();
  for (const auto& [id, x] : f.coordinates()) {
    if (gi->first != id) throw std::invalid_argument("embeddings have different vertex sets");
    total += euclidean(x, gi->second);
    ++gi;
  }
  return total;
}

double displacement(const Embedding& f, const Embedding& g, const AbstractComplex& k) {
  if (f.dim() != g.dim()) throw std::invalid_argument("embeddings have different dimensions");
  double total = 0.0;
  for (VertexId v : k.vertices()) {
    if (!f.contains(v) || !g.contains(v))
      throw std::invalid_argument("embedding does not cover vertex " + std::to_string(v));
    total += euclidean(f.at(v), g.at(v));
  }
  return total;
}

GeometricComplex::GeometricComplex(AbstractComplex complex, Embedding embedding)
    : complex_(std::move(complex)), embedding_(std::move(embedding)) {
  const auto d = static_cast<std::size_t>(embedding_.dim());
  points_.reserve(complex_.vertex_count() * d);
  for (VertexId v : complex_.vertices()) {
    if (!embedding_.contains(v))
      throw std::invalid_argument("embedding does not cover vertex " + std::to_string(v));
    const auto x = embedding_.at(v);
    points_.insert(points_.end(), x.begin(), x.end());
  }
}

std::vector<std::size_t> degenerate_simplices(const GeometricComplex& gc, double tolerance) {
  std::vector<std::size_t> out;
  const auto d = static_cast<std::size_t>(gc.dim());
  const auto& k = gc.complex();
  for (std::size_t i = 0; i < k.size(); ++i) {
    const auto vp = k.vertex_positions(i);
    if (vp.size() < 2) continue;
    if (vp.size() - 1 > d) {
      out.push_back(i);
      continue;
    }
    const auto origin = gc.point(vp[0]);
    std::vector<std::vector<double>> basis;
    bool degenerate = false;
    for (std::size_t j = 1; j < vp.size() && !degenerate; ++j) {
      const auto p = gc.point(vp[j]);
      std::vector<double> w(d);
      for (std::size_t c = 0; c < d; ++c) w[c] = p[c] - origin[c];
      for (const auto& b : basis) {
        double proj = 0.0;
        for (std::size_t c = 0; c < d; ++c) proj += w[c] * b[c];
        for (std::size_t c = 0; c < d; ++c) w[c] -= proj * b[c];
      }
      double norm = 0.0;
      for (double c : w) norm += c * c;
      norm = std::sqrt(norm);
      if (norm <= tolerance) {
        degenerate = true;
      } else {
        for (double& c : w) c /= norm;
        basis.push_back(std::move(w));
      }
    }
    if (degenerate) out.push_back(i);
  }
  return out;
}

}  // namespace ectkit
