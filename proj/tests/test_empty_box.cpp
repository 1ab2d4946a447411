#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "dispgrid/construct.hpp"
#include "dispgrid/empty_box.hpp"
#include "oracles.hpp"

using namespace dispgrid;

namespace {

Box box1(Rational lo, Rational hi, bool lo_open, bool hi_open) {
  return Box({Interval{lo, hi, lo_open, hi_open}});
}

PointSet grid_set(int k, std::size_t d, const std::vector<std::vector<std::int64_t>>& pts) {
  auto out = PointSet::grid(GridParams(k), d);
  for (const auto& p : pts) out.add(std::span<const std::int64_t>(p));
  return out;
}

PointSet real_set(std::size_t d, const std::vector<std::vector<double>>& pts) {
  auto out = PointSet::real(d);
  for (const auto& p : pts) out.add(std::span<const double>(p));
  return out;
}

std::vector<std::vector<std::int64_t>> random_grid_points(std::mt19937_64& rng, int k, std::size_t d,
                                                          std::size_t n) {
  std::uniform_int_distribution<std::int64_t> coord(1, (std::int64_t{1} << k) - 1);
  std::vector<std::vector<std::int64_t>> pts(n, std::vector<std::int64_t>(d));
  for (auto& p : pts) {
    for (auto& a : p) a = coord(rng);
  }
  return pts;
}

void check_witness(const PointSet& points, const DispersionResult& result) {
  CHECK(box_volume(result.witness) == result.volume);
  for (std::size_t i = 0; i < points.size(); ++i) CHECK_FALSE(box_contains(result.witness, points, i));
}

}  // namespace

TEST_CASE("box_contains respects openness") {
  const std::vector<Rational> half{Rational(1, 2)};
  const std::vector<Rational> quarter{Rational(1, 4)};
  CHECK(box_contains(box1(Rational(1, 4), Rational(3, 4), true, true), half));
  CHECK_FALSE(box_contains(box1(Rational(1, 4), Rational(3, 4), true, true), quarter));
  CHECK(box_contains(box1(Rational(1, 4), Rational(3, 4), false, false), quarter));
  CHECK_THROWS_AS(box_contains(Box::unit(2), half), std::invalid_argument);
}

TEST_CASE("box_volume") {
  CHECK(box_volume(Box({Interval{0, Rational(1, 2)}, Interval{0, Rational(1, 2)}})) == Rational(1, 4));
  CHECK(box_volume(Box::unit(5, true)) == 1);
  CHECK(box_volume(Box({Interval{Rational(1, 4), Rational(3, 4)}, Interval{0, 1}})) == Rational(1, 2));
  // Openness does not change the volume.
  CHECK(box_volume(Box({Interval{Rational(1, 4), Rational(3, 4), false, true}, Interval{0, 1, true, false}})) ==
        Rational(1, 2));
  CHECK_THROWS_AS(Box({Interval{Rational(1, 2), Rational(1, 2)}}), std::invalid_argument);
  CHECK_THROWS_AS(Box({Interval{0, Rational(3, 2)}}), std::invalid_argument);
}

TEST_CASE("largest_empty_box on the named instances") {
  SUBCASE("empty set") {
    const auto r = largest_empty_box(PointSet::real(2));
    CHECK(r.volume == 1);
    CHECK(r.witness == Box::unit(2, false));
  }
  SUBCASE("single midpoint in d=1") {
    const auto points = real_set(1, {{0.5}});
    const auto r = largest_empty_box(points);
    CHECK(r.volume == Rational(1, 2));
    check_witness(points, r);
    // Lexicographically smallest of the two maximal boxes.
    CHECK(format_box(r.witness) == "[0,1/2)");
  }
  SUBCASE("full grid M_2^2") {
    const auto points = full_grid(GridParams(2), 2);
    std::vector<std::vector<std::int64_t>> raw;
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto p = points.grid_point(i);
      raw.emplace_back(p.begin(), p.end());
    }
    // 4/16 from the grid-endpoint oracle.
    CHECK(oracle::grid_dispersion_numerator(raw, 2, 4) == 4);
    const auto r = largest_empty_box(points);
    CHECK(r.volume == Rational(1, 4));
    check_witness(points, r);
  }
}

TEST_CASE("has_empty_box_above") {
  const auto grid = full_grid(GridParams(2), 2);
  CHECK_FALSE(has_empty_box_above(grid, Rational(1, 4)).has_value());
  CHECK(has_empty_box_above(grid, Rational(1, 5)).has_value());

  const auto mid = real_set(1, {{0.5}});
  const auto witness = has_empty_box_above(mid, Rational(1, 4));
  REQUIRE(witness.has_value());
  CHECK(box_volume(*witness) > Rational(1, 4));
  CHECK_FALSE(box_contains(*witness, mid, 0));

  CHECK(has_empty_box_above(PointSet::real(3), Rational(1, 2)).has_value());
  CHECK_FALSE(has_empty_box_above(PointSet::real(3), Rational(1)).has_value());
}

TEST_CASE("grid search agrees with the grid-endpoint oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 2 + trial % 2;
    const std::size_t d = 1 + trial % 3 % 2 + (trial % 7 == 0 ? 1 : 0);
    const std::size_t n = static_cast<std::size_t>(trial % 9);
    const auto raw = random_grid_points(rng, k, d, n);
    const auto points = grid_set(k, d, raw);
    const auto expected =
        Rational(oracle::grid_dispersion_numerator(raw, d, std::int64_t{1} << k), pow2(static_cast<unsigned>(k * d)));
    const auto exhaustive = largest_empty_box(points, {SearchMode::exhaustive});
    const auto pruned = largest_empty_box(points, {SearchMode::pruned});
    CHECK(exhaustive.volume == expected);
    CHECK(pruned.volume == exhaustive.volume);
    CHECK(pruned.witness == exhaustive.witness);
    check_witness(points, exhaustive);
    CHECK(has_empty_box_above(points, expected).has_value() == false);
    CHECK(has_empty_box_above(points, expected - Rational(1, 1 << 20)).has_value());
  }
}

TEST_CASE("real search agrees with the shrink oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t d = 1 + trial % 2;
    const std::size_t n = static_cast<std::size_t>(trial % 7);
    std::vector<std::vector<double>> raw(n, std::vector<double>(d));
    for (auto& p : raw) {
      for (auto& x : p) x = unit(rng);
    }
    const auto points = real_set(d, raw);
    const auto r = largest_empty_box(points);
    CHECK(std::abs(to_double(r.volume) - oracle::shrink_dispersion(raw, d)) <= 1e-9);
    check_witness(points, r);
    const auto pruned = largest_empty_box(points, {SearchMode::pruned});
    CHECK(pruned.volume == r.volume);
  }
}

TEST_CASE("points on the cube boundary") {
  const auto points = real_set(1, {{0.0}, {1.0}, {0.25}});
  const auto r = largest_empty_box(points);
  CHECK(r.volume == Rational(3, 4));
  CHECK(format_box(r.witness) == "(1/4,1)");
  check_witness(points, r);
}

TEST_CASE("monotonicity, duplicate and axis-permutation invariance") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    const int k = 3;
    const std::size_t d = 2;
    auto raw = random_grid_points(rng, k, d, 1 + trial % 8);
    const auto base = largest_empty_box(grid_set(k, d, raw));

    auto more = raw;
    for (const auto& p : random_grid_points(rng, k, d, 3)) more.push_back(p);
    CHECK(largest_empty_box(grid_set(k, d, more)).volume <= base.volume);

    auto dup = raw;
    dup.push_back(raw[trial % raw.size()]);
    std::shuffle(dup.begin(), dup.end(), rng);
    CHECK(largest_empty_box(grid_set(k, d, dup)).volume == base.volume);

    auto swapped = raw;
    for (auto& p : swapped) std::swap(p[0], p[1]);
    const auto permuted = largest_empty_box(grid_set(k, d, swapped));
    CHECK(permuted.volume == base.volume);
    check_witness(grid_set(k, d, swapped), permuted);
  }
}

TEST_CASE("wide volumes use arbitrary precision") {
  // k d = 64 exceeds the 64-bit fast path.
  const GridParams grid(32);
  const std::int64_t half = std::int64_t{1} << 31;
  const auto points = grid_set(32, 2, {{half, half}});
  const auto r = largest_empty_box(points);
  CHECK(r.volume == Rational(1, 2));
  CHECK(largest_empty_box(points, {SearchMode::pruned}).volume == Rational(1, 2));
  CHECK_FALSE(has_empty_box_above(points, Rational(1, 2)).has_value());
  CHECK(has_empty_box_above(points, Rational(1, 3)).has_value());
  (void)grid;
}

TEST_CASE("candidate guard") {
  const auto points = full_grid(GridParams(2), 2);
  CHECK(candidate_box_count(points) == 100);
  CHECK_THROWS_AS(largest_empty_box(points, {SearchMode::exhaustive, EnumerationGuard{99}}), GuardExceeded);
  try {
    largest_empty_box(points, {SearchMode::exhaustive, EnumerationGuard{10}});
  } catch (const GuardExceeded& e) {
    CHECK(e.requested() == 100);
    CHECK(e.limit() == 10);
  }
  CHECK(largest_empty_box(points, {SearchMode::exhaustive, EnumerationGuard{100}}).volume == Rational(1, 4));
}
