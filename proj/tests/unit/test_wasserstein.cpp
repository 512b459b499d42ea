#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "ectkit/assignment.hpp"
#include "ectkit/wasserstein.hpp"
#include "oracles.hpp"

using namespace ectkit;

namespace {

using Pts = std::vector<PersistencePoint>;
constexpr double kInf = kInfinity;

}  // namespace

TEST_CASE("diagonal cost") {
  CHECK(diagonal_cost({0.0, 2.0, 0}, 1.0) == 2.0);
  CHECK(diagonal_cost({0.0, 2.0, 0}, kInf) == 1.0);
  CHECK(diagonal_cost({0.0, 2.0, 0}, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(diagonal_cost({0.0, kInf, 0}, 1.0) == kInf);
  CHECK_THROWS_AS(diagonal_cost({0.0, 2.0, 0}, 0.5), std::invalid_argument);
}

TEST_CASE("point cost") {
  CHECK(point_cost({0.0, 1.0, 0}, {0.0, 1.0, 0}, 2.0) == 0.0);
  for (double q : {1.0, 2.0, kInf}) CHECK(point_cost({0.0, kInf, 0}, {3.0, kInf, 0}, q) == 3.0);
  CHECK(point_cost({0.0, 1.0, 0}, {2.0, 4.0, 0}, 1.0) == 5.0);
  CHECK(point_cost({0.0, 1.0, 0}, {2.0, 4.0, 0}, kInf) == 3.0);
  CHECK(point_cost({0.0, 1.0, 0}, {2.0, kInf, 0}, 1.0) == kInf);
}

TEST_CASE("w_pq examples") {
  const Pts a{{0.0, 1.0, 0}, {2.0, kInf, 0}};
  CHECK(w_pq(a, a, 1.0, kInf) == 0.0);
  CHECK(w_pq(Pts{{0.0, 2.0, 0}}, Pts{}, 1.0, kInf) == 1.0);
  CHECK(w_pq(Pts{{0.0, 3.0, 0}}, Pts{{1.0, 3.0, 0}}, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(w_pq(Pts{{0.0, kInf, 0}}, Pts{}, 1.0, 1.0) == kInf);
  CHECK_THROWS_AS(w_pq(a, a, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("essential points are matched by sorted births") {
  const Pts a{{0.0, kInf, 0}, {5.0, kInf, 0}};
  const Pts b{{4.0, kInf, 0}, {1.0, kInf, 0}};
  CHECK(w_pq(a, b, 1.0, 1.0) == 2.0);
  CHECK(w_pq(a, b, 2.0, 1.0) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("overflow guard") {
  CHECK_THROWS_AS(w_pq(Pts{{0.0, 1e151, 0}}, Pts{}, 1.0, 1.0), std::domain_error);
}

TEST_CASE("total w_pq") {
  const PersistenceDiagram d0({{0.0, kInf, 0}, {0.0, 2.0, 0}, {1.0, 2.0, 1}});
  CHECK(total_w_pq(d0, d0, 2.0, 2.0) == 0.0);
  const PersistenceDiagram d1({{0.0, kInf, 0}, {1.0, 2.0, 1}});
  CHECK(total_w_pq(d0, d1, 1.0, kInf) == w_pq(d0.points(0), d1.points(0), 1.0, kInf));
  // dim 0: essential births 0 vs 3; dim 1: essential births 1 vs 5.
  const PersistenceDiagram x({{0.0, kInf, 0}, {1.0, kInf, 1}});
  const PersistenceDiagram y({{3.0, kInf, 0}, {5.0, kInf, 1}});
  CHECK(total_w_pq(x, y, 1.0, 1.0) == 7.0);
  CHECK(total_w_pq(x, y, 2.0, 1.0) == doctest::Approx(5.0));
  CHECK(total_w_pq(x, PersistenceDiagram({{3.0, kInf, 0}}), 1.0, 1.0) == kInf);
  CHECK_THROWS_AS(total_w_pq(x, y, 0.9, 1.0), std::invalid_argument);
}

TEST_CASE("brute force oracle examples") {
  CHECK(oracle::brute_force_w({}, {}, 1.0, 1.0) == 0.0);
  CHECK(oracle::brute_force_w(Pts{{0.0, 2.0, 0}}, Pts{{0.0, 2.0, 0}, {5.0, 5.1, 0}}, 1.0, kInf) ==
        doctest::Approx(0.05));
  CHECK_THROWS(oracle::brute_force_w(Pts(5), Pts(4), 1.0, 1.0));
}

TEST_CASE("hungarian matches the exhaustive oracle") {
  std::mt19937_64 rng(51);
  const double ps[] = {1.0, 2.0, 3.0};
  const double qs[] = {1.0, 2.0, kInf};
  for (int trial = 0; trial < 1000; ++trial) {
    const int total = 1 + static_cast<int>(rng() % 8);
    const int ess = static_cast<int>(rng() % 2);
    const int n1 = static_cast<int>(rng() % static_cast<unsigned>(total - 2 * ess + 1 > 0 ? total - 2 * ess + 1 : 1));
    const int n2 = std::max(0, total - 2 * ess - n1);
    const auto a = oracle::random_points_in_dim(rng, n1, ess);
    const auto b = oracle::random_points_in_dim(rng, n2, ess);
    const double p = ps[trial % 3], q = qs[(trial / 3) % 3];
    const double expect = oracle::brute_force_w(a, b, p, q);
    const double got = w_pq(a, b, p, q);
    CHECK(std::abs(got - expect) <= 1e-9);
  }
}

TEST_CASE("Turner sandwich for p in {1, 2}") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 500; ++trial) {
    const double p = trial % 2 ? 2.0 : 1.0;
    const int ess = static_cast<int>(rng() % 3);
    const auto a = oracle::random_points_in_dim(rng, static_cast<int>(rng() % 6), ess);
    const auto b = oracle::random_points_in_dim(rng, static_cast<int>(rng() % 6), ess);
    const double w_inf = w_pq(a, b, p, kInf), w_p = w_pq(a, b, p, p);
    CHECK(w_inf <= w_p + 1e-9);
    CHECK(w_p <= 2.0 * w_inf + 1e-9);
  }
}

TEST_CASE("metric axioms") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    const double p = 1.0 + trial % 2, q = trial % 3 == 0 ? kInf : 1.0 + trial % 3;
    const auto a = oracle::random_points_in_dim(rng, static_cast<int>(rng() % 5), 1);
    const auto b = oracle::random_points_in_dim(rng, static_cast<int>(rng() % 5), 1);
    const auto c = oracle::random_points_in_dim(rng, static_cast<int>(rng() % 5), 1);
    CHECK(w_pq(a, a, p, q) == 0.0);
    CHECK(w_pq(a, b, p, q) == w_pq(b, a, p, q));
    CHECK(w_pq(a, c, p, q) <= w_pq(a, b, p, q) + w_pq(b, c, p, q) + 1e-9);
  }
}

TEST_CASE("cost matrix layout") {
  const Pts a{{0.0, 2.0, 0}}, b{{1.0, 2.0, 0}, {0.0, 4.0, 0}};
  const auto m = build_cost_matrix(a, b, 1.0, 1.0);
  REQUIRE(m.costs.size() == 3);
  CHECK(m.left_points == 1);
  CHECK(m.right_points == 2);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(m.costs(r, c) >= 0.0);
  // Rows 1..2 and columns 2 are the diagonal copies; diagonal-diagonal entries vanish.
  CHECK(m.costs(1, 2) == 0.0);
  CHECK(m.costs(2, 2) == 0.0);
}

TEST_CASE("assignment returns a permutation with the optimal cost") {
  std::mt19937_64 rng(54);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    SquareMatrix m(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = trial % 4 == 0 ? std::floor(u(rng) / 3) : u(rng);
    const auto a = solve_assignment(m);
    std::vector<std::size_t> sorted = a.row_to_col;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> iota(n);
    std::iota(iota.begin(), iota.end(), 0);
    CHECK(sorted == iota);
    double chosen = 0.0;
    for (std::size_t r = 0; r < n; ++r) chosen += m(r, a.row_to_col[r]);
    CHECK(chosen == doctest::Approx(a.cost));
    double best = 1e300;
    do {
      double c = 0.0;
      for (std::size_t r = 0; r < n; ++r) c += m(r, iota[r]);
      best = std::min(best, c);
    } while (std::next_permutation(iota.begin(), iota.end()));
    CHECK(a.cost == doctest::Approx(best).epsilon(1e-12));
  }
  SquareMatrix bad(2, 1.0);
  bad(0, 1) = -1.0;
  CHECK_THROWS_AS(solve_assignment(bad), std::invalid_argument);
  CHECK(solve_assignment(SquareMatrix(0)).row_to_col.empty());
}
