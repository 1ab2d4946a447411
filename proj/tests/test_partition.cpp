#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "dispgrid/partition.hpp"
#include "oracles.hpp"

using namespace dispgrid;

namespace {

Box box_of(std::vector<std::pair<Rational, Rational>> sides) {
  std::vector<Interval> axes;
  for (auto& [lo, hi] : sides) axes.push_back({lo, hi, true, false});
  return Box(std::move(axes));
}

// Random box with endpoints on the 1/(4 2^k) lattice and volume > 2^-k.
Box random_big_box(std::mt19937_64& rng, const GridParams& grid, std::size_t d) {
  const std::int64_t fine = 4 * grid.m();
  std::uniform_int_distribution<std::int64_t> endpoint(0, fine);
  std::bernoulli_distribution coin(0.5);
  while (true) {
    std::vector<Interval> axes;
    for (std::size_t l = 0; l < d; ++l) {
      std::int64_t a = endpoint(rng), b = endpoint(rng);
      if (a == b) b = a == fine ? a - 1 : a + 1;
      if (a > b) std::swap(a, b);
      axes.push_back({Rational(a, fine), Rational(b, fine), coin(rng), coin(rng)});
    }
    Box box(std::move(axes));
    if (box_volume(box) * grid.m() > 1) return box;
  }
}

}  // namespace

TEST_CASE("classify_box examples") {
  const GridParams k2(2);
  const auto c1 = classify_box(box_of({{Rational(3, 10), Rational(8, 10)}}), k2);
  CHECK(c1.s() == std::vector<std::int64_t>{1});
  CHECK(c1.p() == std::vector<std::int64_t>{2});

  const auto c2 = classify_box(Box({Interval{0, 1, true, true}}), k2);
  CHECK(c2.s() == std::vector<std::int64_t>{3});
  CHECK(c2.p() == std::vector<std::int64_t>{1});

  const auto c3 = classify_box(box_of({{Rational(3, 10), Rational(8, 10)}, {0, 1}}), k2);
  CHECK(c3.p() == std::vector<std::int64_t>{2, 1});
  CHECK(c3.s() == std::vector<std::int64_t>{1, 3});

  CHECK_THROWS_AS(classify_box(box_of({{0, Rational(1, 4)}}), k2), std::invalid_argument);
  CHECK_THROWS_AS(classify_box(box_of({{0, Rational(1, 2)}, {0, Rational(1, 2)}}), k2), std::invalid_argument);
}

TEST_CASE("class_is_feasible examples") {
  const GridParams k2(2);
  CHECK(class_is_feasible(BoxClass(k2, {1}, {3})));
  CHECK(attainable_volume(BoxClass(k2, {1}, {3})) == 1);
  CHECK_FALSE(class_is_feasible(BoxClass(k2, {3}, {3})));
  CHECK_FALSE(class_is_feasible(BoxClass(k2, {1, 1}, {1, 0})));
  // Per-axis conditions hold but the largest member has volume 1/4 = 2^-k.
  CHECK_FALSE(class_is_feasible(BoxClass(k2, {1, 1}, {1, 1})));
  CHECK_THROWS_AS(BoxClass(k2, {0}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(BoxClass(k2, {1}, {4}), std::invalid_argument);
  CHECK_THROWS_AS(BoxClass(k2, {1, 1}, {1}), std::invalid_argument);
}

TEST_CASE("core_box examples") {
  const GridParams k2(2);
  const auto single = core_box(BoxClass(k2, {2}, {1}));
  CHECK(single.lo == std::vector<std::int64_t>{2});
  CHECK(single.hi == std::vector<std::int64_t>{2});
  CHECK(single.grid_point_count() == 1);

  const auto wide = core_box(BoxClass(k2, {1}, {3}));
  CHECK(wide.hi == std::vector<std::int64_t>{3});
  CHECK(wide.grid_point_count() == 3);
  CHECK(wide.to_string() == "[1/4,3/4]");

  const auto flat = core_box(BoxClass(k2, {1, 2}, {2, 1}));
  CHECK(flat.grid_point_count() == 2);
  CHECK(flat.to_string() == "[1/4,1/2] x [1/2,1/2]");
  CHECK(oracle::grid_fraction_in_core(BoxClass(k2, {1, 2}, {2, 1})) == Rational(2, 9));

  CHECK_THROWS_AS(core_box(BoxClass(k2, {3}, {3})), std::invalid_argument);
}

TEST_CASE("m1 and A_k") {
  const GridParams k2(2);
  CHECK(m1_of(BoxClass(k2, {1, 1}, {3, 3})) == 0);
  CHECK(m1_of(BoxClass(k2, {1, 1}, {2, 1})) == 2);
  CHECK(BoxClass(k2, {1, 1}, {2, 3}).non_maximal_axes() == std::vector<std::size_t>{0});
  CHECK(a_k(k2) == doctest::Approx(5.545177444479562).epsilon(1e-14));
  CHECK(a_k(GridParams(3)) == doctest::Approx(std::log(2.0) * 24).epsilon(1e-14));
}

TEST_CASE("enumeration for k=2, d=1") {
  const auto classes = enumerate_feasible_classes(GridParams(2), 1, false);
  std::vector<std::pair<std::int64_t, std::int64_t>> ps;
  for (const auto& c : classes) ps.emplace_back(c.p()[0], c.s()[0]);
  CHECK(ps == std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 1}, {2, 1}, {3, 1}, {1, 2}, {2, 2}, {1, 3}});
  // p counts per s equal prod (2^k - s).
  for (std::int64_t s = 1; s <= 3; ++s) {
    const auto count = std::count_if(classes.begin(), classes.end(), [&](const BoxClass& c) { return c.s()[0] == s; });
    CHECK(BigInt(count) == paper_p_count(std::vector<std::int64_t>{s}, GridParams(2)));
  }
}

TEST_CASE("enumeration matches the predicate and the box-classification oracle") {
  for (int k : {2, 3}) {
    for (std::size_t d : {1u, 2u, 3u}) {
      if (k == 3 && d == 3) continue;  // oracle box scan too large for a unit test
      const GridParams grid(k);
      const auto listed = enumerate_feasible_classes(grid, d, false);
      const std::set<BoxClass> listed_set(listed.begin(), listed.end());
      CHECK(listed_set.size() == listed.size());
      CHECK(listed_set == oracle::classes_of_grid_boxes(grid, d));
      CHECK(enumerate_feasible_classes(grid, d, true) == listed);

      // Every (p, s) accepted by the predicate is listed, and nothing else.
      std::size_t accepted = 0;
      const std::int64_t m = grid.m();
      std::vector<std::int64_t> p(d, 1), s(d, 0);
      std::function<void(std::size_t)> walk = [&](std::size_t l) {
        if (l == d) {
          if (class_is_feasible(BoxClass(grid, p, s))) ++accepted;
          return;
        }
        for (std::int64_t a = 1; a < m; ++a) {
          for (std::int64_t b = 0; b < m; ++b) {
            p[l] = a;
            s[l] = b;
            walk(l + 1);
          }
        }
      };
      walk(0);
      CHECK(accepted == listed.size());
    }
  }
}

TEST_CASE("feasible classes satisfy m1 < A_k") {
  for (int k : {2, 3}) {
    for (std::size_t d : {1u, 2u, 3u}) {
      const GridParams grid(k);
      for_each_feasible_class(grid, d, false, [&](const BoxClass& c) {
        CHECK(static_cast<double>(m1_of(c)) < a_k(grid));
      });
    }
  }
}

TEST_CASE("classification is a partition") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const GridParams grid(2 + trial % 2);
    const std::size_t d = 1 + trial % 3 % 2;
    const Box box = random_big_box(rng, grid, d);
    const auto cls = classify_box(box, grid);
    CHECK(box_in_class(box, cls));
    CHECK(class_is_feasible(cls));
    for (const auto& other : enumerate_feasible_classes(grid, d, false)) {
      if (!(other == cls)) CHECK_FALSE(box_in_class(box, other));
    }
  }
}

TEST_CASE("core box grid points lie in every member box") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 400; ++trial) {
    const GridParams grid(2 + trial % 2);
    const std::size_t d = 1 + trial % 2;
    const Box box = random_big_box(rng, grid, d);
    const auto cls = classify_box(box, grid);
    const auto core = core_box(cls);
    // Volume sandwich: 2^-k < |B| <= prod (s+1)/2^k, and |B| <= attainable volume.
    Rational upper = 1;
    for (auto s : cls.s()) upper *= Rational(s + 1, grid.m());
    CHECK(box_volume(box) * grid.m() > 1);
    CHECK(box_volume(box) <= upper);
    CHECK(box_volume(box) <= attainable_volume(cls));

    std::vector<std::int64_t> x(d, 1);
    std::vector<Rational> coords(d);
    std::function<void(std::size_t)> walk = [&](std::size_t l) {
      if (l == d) {
        if (!core.contains(x)) return;
        for (std::size_t j = 0; j < d; ++j) coords[j] = GridCoord{x[j]}.value(grid);
        CHECK(box_contains(box, coords));
        return;
      }
      for (std::int64_t a = 1; a < grid.m(); ++a) {
        x[l] = a;
        walk(l + 1);
      }
    };
    walk(0);
  }
}

TEST_CASE("counting formulas") {
  const GridParams k2(2);
  CHECK(paper_p_count(std::vector<std::int64_t>{1}, k2) == 3);
  CHECK(paper_p_count(std::vector<std::int64_t>{2, 1}, k2) == 6);
  CHECK(ln_pair_count_bound(k2, 2) == doctest::Approx(32 * std::log(2.0)).epsilon(1e-14));
  CHECK(ln_pair_count_bound(k2, 2) == doctest::Approx(22.18070977791825).epsilon(1e-12));
  CHECK(ln_s_count_bound(k2, 2) == doctest::Approx(a_k(k2) * std::log(4.0)).epsilon(1e-14));
  CHECK(ln_s_count_bound(k2, 2) == doctest::Approx(7.688).epsilon(1e-4));

  for (int k : {2, 3}) {
    for (std::size_t d : {1u, 2u}) {
      const auto row = count_audit(GridParams(k), d);
      CHECK(std::log(static_cast<double>(row.exact_feasible_count)) <= row.ln_pair_count_bound);
      CHECK(BigInt(row.exact_feasible_count) <= row.sum_paper_p_count);
    }
  }
}

TEST_CASE("class enumeration guard") {
  CHECK(class_space_size(GridParams(2), 2) == 144);
  CHECK_THROWS_AS(enumerate_feasible_classes(GridParams(2), 2, false, EnumerationGuard{143}), GuardExceeded);
  CHECK_THROWS_AS(enumerate_feasible_classes(GridParams(10), 4, false), GuardExceeded);
}
