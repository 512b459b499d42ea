#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ectkit/ect.hpp"
#include "oracles.hpp"

using namespace ectkit;

namespace {

GeometricComplex point_at(double x, double y) { return GeometricComplex(build_complex({{0}}), Embedding(2, {{0, {x, y}}})); }

DirectionScheme circle(std::size_t n) { return {2, n, SchemeKind::UniformCircle, 0}; }

Embedding rotate(const Embedding& e, double angle) {
  std::map<VertexId, std::vector<double>> out;
  for (const auto& [v, x] : e.coordinates())
    out[v] = {std::cos(angle) * x[0] - std::sin(angle) * x[1], std::sin(angle) * x[0] + std::cos(angle) * x[1]};
  return Embedding(2, out);
}

}  // namespace

TEST_CASE("uniform circle with four directions") {
  const auto dirs = sample_directions(circle(4));
  REQUIRE(dirs.size() == 4);
  const double expect[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int i = 0; i < 4; ++i) {
    CHECK(dirs[static_cast<std::size_t>(i)].direction[0] == doctest::Approx(expect[i][0]));
    CHECK(dirs[static_cast<std::size_t>(i)].direction[1] == doctest::Approx(expect[i][1]));
    CHECK(dirs[static_cast<std::size_t>(i)].weight == doctest::Approx(std::numbers::pi / 2));
  }
}

TEST_CASE("every scheme yields unit directions with weights summing to the sphere area") {
  const DirectionScheme schemes[] = {circle(1000),
                                     {3, 999, SchemeKind::FibonacciSphere, 0},
                                     {2, 500, SchemeKind::MonteCarlo, 7},
                                     {3, 500, SchemeKind::MonteCarlo, 7},
                                     {5, 300, SchemeKind::MonteCarlo, 7}};
  for (const auto& s : schemes) {
    double total = 0.0;
    for (const auto& wd : sample_directions(s)) {
      double n2 = 0.0;
      for (double c : wd.direction.components()) n2 += c * c;
      CHECK(std::abs(std::sqrt(n2) - 1.0) <= 1e-12);
      total += wd.weight;
    }
    CHECK(total == doctest::Approx(oracle::sphere_area(s.dim - 1)).epsilon(1e-12));
  }
  CHECK(sphere_area(2) == doctest::Approx(2 * std::numbers::pi));
  CHECK(sphere_area(3) == doctest::Approx(4 * std::numbers::pi));
}

TEST_CASE("scheme validation") {
  CHECK_THROWS_AS(sample_directions({3, 10, SchemeKind::UniformCircle, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_directions({2, 10, SchemeKind::FibonacciSphere, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_directions({2, 0, SchemeKind::UniformCircle, 0}), std::invalid_argument);
  CHECK(DirectionScheme::default_for(2).count == 1024);
  CHECK(DirectionScheme::default_for(3).kind == SchemeKind::FibonacciSphere);
  CHECK(DirectionScheme::default_for(3).count == 4096);
  CHECK(DirectionScheme::default_for(4).kind == SchemeKind::MonteCarlo);
  CHECK(parse_scheme_kind("fibonacci-sphere") == SchemeKind::FibonacciSphere);
  CHECK_THROWS_AS(parse_scheme_kind("grid"), std::invalid_argument);
}

TEST_CASE("monte-carlo directions are reproducible") {
  const DirectionScheme s{4, 64, SchemeKind::MonteCarlo, 99};
  const auto a = sample_directions(s), b = sample_directions(s);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].direction == b[i].direction);
}

TEST_CASE("ect_eval") {
  const GeometricComplex edge(build_complex({{0, 1}}), Embedding(2, {{0, {0.0, 0.0}}, {1, {1.0, 0.0}}}));
  const Direction x({1.0, 0.0});
  CHECK(ect_eval(edge, x, -1e300) == 0);
  CHECK(ect_eval(edge, x, 5.0) == 1);
  CHECK(ect_eval(edge, x, 0.5) == 1);
  CHECK_THROWS_AS(ect_eval(edge, Direction({1.0, 0.0, 0.0}), 0.0), std::invalid_argument);
}

TEST_CASE("d_ect basics") {
  const auto a = point_at(0.0, 0.0);
  CHECK(d_ect(a, a, circle(64)).value == 0.0);
  const auto est = d_ect(a, point_at(0.5, 0.0), circle(2048));
  CHECK(std::abs(est.value - 2.0) <= 0.002);
  CHECK(est.direction_count == 2048);
  const GeometricComplex two(build_complex({{0}, {1}}), Embedding(2, {{0, {0.0, 0.0}}, {1, {1.0, 0.0}}}));
  const GeometricComplex edge(build_complex({{0, 1}}), Embedding(2, {{0, {0.0, 0.0}}, {1, {1.0, 0.0}}}));
  CHECK(d_ect(two, edge, circle(16)).value == kInfinity);
  IntegrationOptions windowed;
  windowed.window = 3.0;
  CHECK(std::isfinite(d_ect(two, edge, circle(16), windowed).value));
  CHECK_THROWS_AS(d_ect(a, GeometricComplex(build_complex({{0}}), Embedding(3, {{0, {0, 0, 0}}})), circle(8)),
                  std::invalid_argument);
  const GeometricComplex empty(AbstractComplex(), Embedding(2, {}));
  CHECK(d_ect(empty, empty, circle(8)).value == 0.0);
}

TEST_CASE("closed-form single vertex matches a dense oracle") {
  for (auto [dx, dy] : {std::pair{0.5, 0.0}, std::pair{0.3, -0.4}, std::pair{-1.0, 2.0}}) {
    const double exact = 4.0 * std::hypot(dx, dy);
    CHECK(oracle::circle_abs_projection(dx, dy) == doctest::Approx(exact).epsilon(1e-9));
    const double est = d_ect(point_at(0.0, 0.0), point_at(dx, dy), circle(4096)).value;
    CHECK(est == doctest::Approx(exact).epsilon(1e-4));
  }
}

TEST_CASE("quadrature converges within 10/N") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {3u, 8u, 17u, 64u, 100u, 512u, 1024u, 2048u}) {
    for (int rep = 0; rep < 10; ++rep) {
      const double dx = u(rng), dy = u(rng);
      const double est = d_ect(point_at(0.0, 0.0), point_at(dx, dy), circle(n)).value;
      CHECK(std::abs(est - 4.0 * std::hypot(dx, dy)) <= 10.0 / static_cast<double>(n));
    }
  }
}

TEST_CASE("per-direction output and determinism across thread counts") {
  std::mt19937_64 rng(62);
  const auto k = oracle::random_small_complex(rng, 8, 2, 6);
  const GeometricComplex f(k, oracle::random_points(rng, k, 3)), g(k, oracle::random_points(rng, k, 3));
  IntegrationOptions one, many;
  one.threads = 1;
  one.keep_per_direction = true;
  many.threads = 4;
  const DirectionScheme s{3, 500, SchemeKind::FibonacciSphere, 0};
  const auto a = d_ect(f, g, s, one);
  const auto b = d_ect(f, g, s, many);
  CHECK(a.value == b.value);
  REQUIRE(a.integrands.size() == 500);
  double sum = 0.0;
  for (std::size_t i = 0; i < 500; ++i) sum += a.directions[i].weight * a.integrands[i];
  CHECK(sum == a.value);
}

TEST_CASE("c_d matches quadrature of the defining integral") {
  CHECK(c_d(2) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(c_d(3) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-15));
  CHECK(c_d(4) == doctest::Approx(8 * std::numbers::pi / 3).epsilon(1e-15));
  for (int d = 2; d <= 8; ++d) CHECK(std::abs(c_d(d) - oracle::c_d_quadrature(d)) <= 1e-9);
  CHECK_THROWS_AS(c_d(1), std::invalid_argument);
}

TEST_CASE("ect bound") {
  const auto k = build_complex({{0}});
  const Embedding f(2, {{0, {0.0, 0.0}}}), g(2, {{0, {0.5, 0.0}}});
  CHECK(ect_bound(k, f, f) == 0.0);
  CHECK(ect_bound(k, f, g) == 4.0);
  const auto tri = build_complex({{0, 1, 2}});
  const Embedding t1(2, {{0, {0.0, 0.0}}, {1, {1.0, 0.0}}, {2, {0.0, 1.0}}});
  const Embedding t2(2, {{0, {1.0, 0.0}}, {1, {1.0, 0.0}}, {2, {0.0, 1.0}}});
  CHECK(ect_bound(tri, t1, t2) == 32.0);
}

TEST_CASE("default window covers both embeddings") {
  const Embedding f(2, {{0, {3.0, 4.0}}}), g(2, {{0, {0.0, 1.0}}});
  CHECK(default_window(f, g) == 6.0);
}

TEST_CASE("d_ect is a metric on embeddings of a fixed complex") {
  std::mt19937_64 rng(63);
  const auto k = build_complex({{0, 1, 2}, {2, 3}, {3, 4}});
  const auto s = circle(256);
  for (int trial = 0; trial < 50; ++trial) {
    const GeometricComplex f(k, oracle::random_points(rng, k, 2)), g(k, oracle::random_points(rng, k, 2)),
        h(k, oracle::random_points(rng, k, 2));
    const double fg = d_ect(f, g, s).value, gf = d_ect(g, f, s).value;
    CHECK(fg == gf);
    CHECK(d_ect(f, f, s).value == 0.0);
    CHECK(d_ect(f, h, s).value <= fg + d_ect(g, h, s).value + 2e-3);
  }
}

TEST_CASE("rotation equivariance") {
  std::mt19937_64 rng(64);
  const auto k = build_complex({{0, 1, 2}, {1, 3}});
  const std::size_t n = 720;
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = oracle::random_points(rng, k, 2), g = oracle::random_points(rng, k, 2);
    const double base = d_ect(GeometricComplex(k, f), GeometricComplex(k, g), circle(n)).value;
    // A multiple of 2 pi / n permutes the grid, so the estimate is unchanged up to rounding.
    const double grid_angle = 2 * std::numbers::pi * 37 / static_cast<double>(n);
    const double r1 =
        d_ect(GeometricComplex(k, rotate(f, grid_angle)), GeometricComplex(k, rotate(g, grid_angle)), circle(n)).value;
    CHECK(r1 == doctest::Approx(base).epsilon(1e-9));
    const double r2 = d_ect(GeometricComplex(k, rotate(f, 1.234)), GeometricComplex(k, rotate(g, 1.234)), circle(n)).value;
    CHECK(std::abs(r2 - base) <= 1e-6 * base + 1e-3);
  }
}
