#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

namespace oracle {

using ectkit::PersistencePoint;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// l_q distance from (b, d) to the nearest diagonal point ((b+d)/2, (b+d)/2).
double to_diagonal(const PersistencePoint& x, double q) {
  if (std::isinf(x.death)) return kInf;
  const double half = std::abs(x.death - x.birth) / 2.0;
  if (std::isinf(q)) return half;
  return std::pow(2.0 * std::pow(half, q), 1.0 / q);
}

double between(const PersistencePoint& x, const PersistencePoint& y, double q) {
  const bool xi = std::isinf(x.death), yi = std::isinf(y.death);
  if (xi && yi) return std::abs(x.birth - y.birth);
  if (xi || yi) return kInf;
  const double a = std::abs(x.birth - y.birth), b = std::abs(x.death - y.death);
  if (std::isinf(q)) return std::max(a, b);
  return std::pow(std::pow(a, q) + std::pow(b, q), 1.0 / q);
}

void enumerate(std::size_t i, const std::vector<PersistencePoint>& d1, const std::vector<PersistencePoint>& d2,
               std::vector<char>& used, double p, double q, double acc, double& best) {
  if (acc >= best) return;
  if (i == d1.size()) {
    for (std::size_t j = 0; j < d2.size(); ++j)
      if (!used[j]) acc += std::pow(to_diagonal(d2[j], q), p);
    best = std::min(best, acc);
    return;
  }
  enumerate(i + 1, d1, d2, used, p, q, acc + std::pow(to_diagonal(d1[i], q), p), best);
  for (std::size_t j = 0; j < d2.size(); ++j) {
    if (used[j]) continue;
    used[j] = 1;
    enumerate(i + 1, d1, d2, used, p, q, acc + std::pow(between(d1[i], d2[j], q), p), best);
    used[j] = 0;
  }
}

}  // namespace

double brute_force_w(const std::vector<PersistencePoint>& d1, const std::vector<PersistencePoint>& d2, double p,
                     double q) {
  if (d1.size() + d2.size() > 8) throw std::invalid_argument("brute force limited to 8 points");
  std::vector<char> used(d2.size(), 0);
  double best = kInf;
  enumerate(0, d1, d2, used, p, q, 0.0, best);
  if (std::isinf(best)) return kInf;
  return std::pow(best, 1.0 / p);
}

double simpson(const std::function<double(double)>& fn, double a, double b, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double sum = fn(a) + fn(b);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * fn(a + i * h);
  return sum * h / 3.0;
}

double sphere_area(int m) {
  if (m == 0) return 2.0;
  if (m == 1) return 2.0 * std::numbers::pi;
  return 2.0 * std::numbers::pi * sphere_area(m - 2) / (m - 1);
}

double c_d_quadrature(int d) {
  const double integral =
      simpson([d](double t) { return std::cos(t) * std::pow(std::sin(t), d - 2); }, 0.0, std::numbers::pi / 2, 20000);
  return 2.0 * sphere_area(d - 2) * integral;
}

double circle_abs_projection(double dx, double dy, int samples) {
  const double h = 2.0 * std::numbers::pi / samples;
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = (i + 0.5) * h;
    sum += std::abs(dx * std::cos(t) + dy * std::sin(t));
  }
  return sum * h;
}

std::int64_t sublevel_euler(const ectkit::GeometricComplex& gc, const ectkit::Direction& nu, double a) {
  std::int64_t chi = 0;
  for (const auto& s : gc.complex().simplices()) {
    double h = -kInf;
    for (auto v : s) {
      const auto x = gc.embedding().at(v);
      double dot = 0.0;
      for (std::size_t c = 0; c < x.size(); ++c) dot += x[c] * nu[c];
      h = std::max(h, dot);
    }
    if (h <= a) chi += (s.size() % 2 == 1) ? 1 : -1;
  }
  return chi;
}

namespace {

// Rank over Z/2 of the boundary map from k-simplices to (k-1)-simplices.
int boundary_rank(const ectkit::AbstractComplex& k, int dim) {
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<std::size_t> lower;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k.dimension_of(i) == dim - 1) lower.push_back(i);
  const std::size_t words = (lower.size() + 63) / 64;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k.dimension_of(i) != dim) continue;
    std::vector<std::uint64_t> row(words, 0);
    const auto& s = k.simplex(i);
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      ectkit::Simplex face;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != drop) face.push_back(s[j]);
      const auto idx = *k.find(face);
      const auto pos = static_cast<std::size_t>(std::lower_bound(lower.begin(), lower.end(), idx) - lower.begin());
      row[pos / 64] ^= std::uint64_t{1} << (pos % 64);
    }
    rows.push_back(std::move(row));
  }
  int rank = 0;
  for (std::size_t col = 0; col < lower.size(); ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](const auto& r) { return (r[w] & bit) != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != static_cast<std::size_t>(rank) && (rows[r][w] & bit))
        for (std::size_t x = 0; x < words; ++x) rows[r][x] ^= rows[static_cast<std::size_t>(rank)][x];
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<int> betti_by_rank(const ectkit::AbstractComplex& k) {
  const int top = k.top_dimension();
  std::vector<int> counts(static_cast<std::size_t>(top + 1), 0);
  for (std::size_t i = 0; i < k.size(); ++i) ++counts[static_cast<std::size_t>(k.dimension_of(i))];
  std::vector<int> ranks(static_cast<std::size_t>(top + 2), 0);
  for (int d = 1; d <= top; ++d) ranks[static_cast<std::size_t>(d)] = boundary_rank(k, d);
  std::vector<int> betti(static_cast<std::size_t>(top + 1));
  for (int d = 0; d <= top; ++d)
    betti[static_cast<std::size_t>(d)] =
        counts[static_cast<std::size_t>(d)] - ranks[static_cast<std::size_t>(d)] - ranks[static_cast<std::size_t>(d + 1)];
  return betti;
}

ectkit::AbstractComplex random_small_complex(std::mt19937_64& rng, int n, int max_dim, int generators) {
  std::uniform_int_distribution<int> dim(0, max_dim);
  std::vector<ectkit::Simplex> gens;
  std::vector<ectkit::VertexId> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
  for (int g = 0; g < generators; ++g) {
    std::shuffle(ids.begin(), ids.end(), rng);
    const int size = std::min(n, dim(rng) + 1);
    ectkit::Simplex s(ids.begin(), ids.begin() + size);
    std::sort(s.begin(), s.end());
    gens.push_back(std::move(s));
  }
  for (int i = 0; i < n; ++i) gens.push_back({i});
  return ectkit::build_complex(gens);
}

ectkit::Embedding random_points(std::mt19937_64& rng, const ectkit::AbstractComplex& k, int d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::map<ectkit::VertexId, std::vector<double>> coords;
  for (auto v : k.vertices()) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (auto& c : x) c = u(rng);
    coords.emplace(v, std::move(x));
  }
  return ectkit::Embedding(d, std::move(coords));
}

ectkit::Direction random_direction(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  std::vector<double> v(static_cast<std::size_t>(d));
  for (auto& c : v) c = g(rng);
  return ectkit::Direction::normalized(std::move(v));
}

std::vector<PersistencePoint> random_points_in_dim(std::mt19937_64& rng, int finite, int essential, int dim) {
  std::uniform_real_distribution<double> b(-3.0, 3.0), l(0.01, 3.0);
  std::vector<PersistencePoint> out;
  for (int i = 0; i < finite; ++i) {
    const double x = b(rng);
    out.push_back({x, x + l(rng), dim});
  }
  for (int i = 0; i < essential; ++i) out.push_back({b(rng), kInf, dim});
  return out;
}

}  // namespace oracle
