#include <doctest.h>

#include <cmath>
#include <vector>

#include "dispgrid/grid.hpp"

using namespace dispgrid;

TEST_CASE("k_from_epsilon picks the dyadic bracket") {
  CHECK(k_from_epsilon(0.25).k() == 2);
  CHECK(k_from_epsilon(0.3).k() == 2);
  CHECK(k_from_epsilon(0.1).k() == 4);
  // Exact powers of two map to their own k, not k+1.
  CHECK(k_from_epsilon(0.125).k() == 3);
  CHECK(k_from_epsilon(std::ldexp(1.0, -10)).k() == 10);
  CHECK(k_from_epsilon(std::nextafter(0.5, 0.0)).k() == 2);
  CHECK(k_from_epsilon(std::nextafter(0.25, 0.0)).k() == 3);
}

TEST_CASE("k_from_epsilon rejects values outside (0, 1/2)") {
  CHECK_THROWS_AS(k_from_epsilon(0.5), std::domain_error);
  CHECK_THROWS_AS(k_from_epsilon(0.0), std::domain_error);
  CHECK_THROWS_AS(k_from_epsilon(-0.1), std::domain_error);
  CHECK_THROWS_AS(k_from_epsilon(0.7), std::domain_error);
  CHECK_THROWS_AS(k_from_epsilon(std::nan("")), std::domain_error);
}

TEST_CASE("epsilon_range") {
  CHECK(epsilon_range(GridParams(2)).lower == 0.25);
  CHECK(epsilon_range(GridParams(2)).upper == 0.5);
  CHECK(epsilon_range(GridParams(3)).lower == 0.125);
  CHECK(epsilon_range(GridParams(3)).upper == 0.25);
  CHECK(epsilon_range(GridParams(4)).lower == 0.0625);
  CHECK(epsilon_range(GridParams(4)).upper == 0.125);
}

TEST_CASE("epsilon round trip and monotonicity on a descending grid") {
  int previous = 2;
  for (int i = 1; i < 5000; ++i) {
    const double eps = 0.5 * std::pow(1e-6, i / 5000.0);
    const auto grid = k_from_epsilon(eps);
    CHECK(epsilon_range(grid).contains(eps));
    CHECK(grid.k() >= previous);
    previous = grid.k();
  }
}

TEST_CASE("grid_values") {
  const auto m2 = grid_values(GridParams(2));
  REQUIRE(m2.size() == 3);
  CHECK(m2[0].value(GridParams(2)) == Rational(1, 4));
  CHECK(m2[1].value(GridParams(2)) == Rational(1, 2));
  CHECK(m2[2].value(GridParams(2)) == Rational(3, 4));

  for (int k = 2; k <= 8; ++k) {
    const GridParams grid(k);
    const auto values = grid_values(grid);
    REQUIRE(values.size() == static_cast<std::size_t>((1 << k) - 1));
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto v = values[i].value(grid);
      CHECK(v > 0);
      CHECK(v < 1);
      if (i > 0) CHECK(v - values[i - 1].value(grid) == dyadic(1, static_cast<unsigned>(k)));
    }
  }
}

TEST_CASE("grid_values respects the enumeration guard") {
  CHECK_THROWS_AS(grid_values(GridParams(30)), GuardExceeded);
  CHECK(grid_values(GridParams(10), EnumerationGuard{1023}).size() == 1023);
  CHECK_THROWS_AS(grid_values(GridParams(10), EnumerationGuard{1022}), GuardExceeded);
}

TEST_CASE("GridParams bounds") {
  CHECK_THROWS_AS(GridParams(1), std::domain_error);
  CHECK_THROWS_AS(GridParams(63), std::domain_error);
  CHECK(GridParams(62).m() == (std::int64_t{1} << 62));
}

TEST_CASE("PointSet validation and multiset semantics") {
  auto grid_set = PointSet::grid(GridParams(2), 2);
  grid_set.add(std::vector<std::int64_t>{1, 3});
  grid_set.add(std::vector<std::int64_t>{1, 3});
  grid_set.add(std::vector<std::int64_t>{2, 2});
  CHECK(grid_set.size() == 3);
  CHECK(grid_set.distinct_count() == 2);
  CHECK(grid_set.coordinate(0, 1) == Rational(3, 4));
  CHECK_THROWS_AS(grid_set.add(std::vector<std::int64_t>{0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(grid_set.add(std::vector<std::int64_t>{4, 1}), std::invalid_argument);
  CHECK_THROWS_AS(grid_set.add(std::vector<std::int64_t>{1}), std::invalid_argument);
  CHECK_THROWS_AS(grid_set.add(std::vector<double>{0.5, 0.5}), std::invalid_argument);

  auto real_set = PointSet::real(1);
  real_set.add(std::vector<double>{0.0});
  real_set.add(std::vector<double>{1.0});
  CHECK(real_set.coordinate(1, 0) == 1);
  CHECK_THROWS_AS(real_set.add(std::vector<double>{1.2}), std::invalid_argument);
  CHECK_THROWS_AS(real_set.add(std::vector<double>{-0.1}), std::invalid_argument);
  CHECK_THROWS_AS(PointSet::real(0), std::invalid_argument);
}
