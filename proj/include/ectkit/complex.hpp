#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace ectkit {

using VertexId = std::int64_t;

/// Vertex ids of one simplex, strictly increasing.
using Simplex = std::vector<VertexId>;

inline int dimension(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

/// Finite abstract simplicial complex, closed under taking faces.
///
/// Simplices are stored in canonical order: by dimension, then
/// lexicographically by vertex ids. Indices into simplices() are stable for
/// the lifetime of the object and every per-simplex table in the library
/// (filtration values, min-extensions) is indexed the same way.
///
/// The complex is an immutable value; copies share storage.
class AbstractComplex {
 public:
  AbstractComplex();

  /// Face closure of `generators`. Accepts an empty list (empty complex).
  /// Throws std::invalid_argument on empty tuples, negative or repeated ids.
  static AbstractComplex close(std::span<const Simplex> generators);

  std::size_t size() const { return data_->simplices.size(); }
  bool empty() const { return data_->simplices.empty(); }

  std::span<const Simplex> simplices() const { return data_->simplices; }
  const Simplex& simplex(std::size_t i) const { return data_->simplices[i]; }
  int dimension_of(std::size_t i) const { return dimension(data_->simplices[i]); }

  /// Highest simplex dimension, -1 for the empty complex.
  int top_dimension() const;

  /// Sorted vertex ids, V(K).
  std::span<const VertexId> vertices() const { return data_->vertices; }
  std::size_t vertex_count() const { return data_->vertices.size(); }

  /// Position of `id` within vertices(), if present.
  std::optional<std::size_t> vertex_position(VertexId id) const;

  /// Positions (into vertices()) of the vertices of simplex i.
  std::span<const std::uint32_t> vertex_positions(std::size_t i) const {
    return data_->vertex_positions[i];
  }

  /// Indices of the codimension-one faces of simplex i (empty for vertices).
  std::span<const std::uint32_t> facets(std::size_t i) const { return data_->facets[i]; }

  std::optional<std::size_t> find(const Simplex& s) const;
  bool contains(const Simplex& s) const { return find(s).has_value(); }

  /// Subcomplex made of the simplices i with keep[i] != 0.
  /// Throws std::invalid_argument if the selection is not face-closed.
  AbstractComplex subcomplex(std::span<const char> keep) const;

  friend bool operator==(const AbstractComplex& a, const AbstractComplex& b);

 private:
  struct Data {
    std::vector<Simplex> simplices;
    std::vector<VertexId> vertices;
    std::vector<std::vector<std::uint32_t>> facets;
    std::vector<std::vector<std::uint32_t>> vertex_positions;
    std::map<Simplex, std::uint32_t> index;
  };

  explicit AbstractComplex(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  static AbstractComplex from_canonical(std::vector<Simplex> simplices);

  std::shared_ptr<const Data> data_;
};

/// Face closure of a non-empty list of simplices.
/// Throws std::invalid_argument("empty complex not permitted") on an empty list.
AbstractComplex build_complex(std::span<const Simplex> simplices);
AbstractComplex build_complex(std::initializer_list<Simplex> simplices);

/// Re-checks every structural invariant: sorted unique ids, canonical order,
/// face closure and consistency of the cached facet tables.
bool is_valid(const AbstractComplex& k);

/// Alternating simplex count, sum over simplices of (-1)^dim.
std::int64_t euler_characteristic(const AbstractComplex& k);

/// Maximum over vertices of the number of simplices containing that vertex
/// (the vertex itself included). 0 for the empty complex.
std::int64_t c_k(const AbstractComplex& k);

/// Coordinates in R^d for a set of vertex ids.
class Embedding {
 public:
  Embedding() = default;
  /// Throws std::invalid_argument if dim < 1, a vector has the wrong length
  /// or a coordinate is not finite.
  Embedding(int dim, std::map<VertexId, std::vector<double>> coords);

  int dim() const { return dim_; }
  std::size_t size() const { return coords_.size(); }
  bool contains(VertexId id) const { return coords_.count(id) != 0; }
  /// Throws std::out_of_range for unknown ids.
  std::span<const double> at(VertexId id) const;
  const std::map<VertexId, std::vector<double>>& coordinates() const { return coords_; }

  friend bool operator==(const Embedding& a, const Embedding& b) = default;

 private:
  int dim_ = 0;
  std::map<VertexId, std::vector<double>> coords_;
};

/// Sum over vertices of ||f(v) - g(v)||_2. Requires identical vertex sets
/// and dimensions, else throws std::invalid_argument.
double displacement(const Embedding& f, const Embedding& g);

/// Same sum restricted to V(k). Both embeddings must cover V(k).
double displacement(const Embedding& f, const Embedding& g, const AbstractComplex& k);

/// An abstract complex paired with an embedding covering its vertices.
class GeometricComplex {
 public:
  /// Throws std::invalid_argument if some vertex of `complex` has no coordinates.
  GeometricComplex(AbstractComplex complex, Embedding embedding);

  const AbstractComplex& complex() const { return complex_; }
  const Embedding& embedding() const { return embedding_; }
  int dim() const { return embedding_.dim(); }

  /// Coordinates of the vertex at position p of complex().vertices().
  std::span<const double> point(std::size_t p) const {
    return {points_.data() + p * static_cast<std::size_t>(dim()), static_cast<std::size_t>(dim())};
  }

 private:
  AbstractComplex complex_;
  Embedding embedding_;
  std::vector<double> points_;
};

/// Indices of simplices whose embedded vertices are affinely dependent
/// (Gram-Schmidt residual below `tolerance`).
std::vector<std::size_t> degenerate_simplices(const GeometricComplex& gc, double tolerance = 1e-12);

}  // namespace ectkit
