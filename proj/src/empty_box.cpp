#include "dispgrid/empty_box.hpp"

#include <algorithm>
#include <stdexcept>

namespace dispgrid {

bool Interval::contains(const Rational& x) const {
  const bool above = lo_open ? x > lo : x >= lo;
  const bool below = hi_open ? x < hi : x <= hi;
  return above && below;
}

Box::Box(std::vector<Interval> axes) : axes_(std::move(axes)) {
  for (const auto& side : axes_) {
    if (!(side.lo >= 0 && side.lo < side.hi && side.hi <= 1)) {
      throw std::invalid_argument("box side [" + to_string(side.lo) + ", " + to_string(side.hi) +
                                  "] is not a nondegenerate interval in [0, 1]");
    }
  }
}

Box Box::unit(std::size_t dim, bool open) {
  return Box(std::vector<Interval>(dim, Interval{Rational(0), Rational(1), open, open}));
}

Rational box_volume(const Box& box) {
  Rational out = 1;
  for (const auto& side : box.axes()) out *= side.length();
  return out;
}

bool box_contains(const Box& box, std::span<const Rational> point) {
  if (point.size() != box.dim()) {
    throw std::invalid_argument("point dimension " + std::to_string(point.size()) +
                                " does not match box dimension " + std::to_string(box.dim()));
  }
  for (std::size_t l = 0; l < box.dim(); ++l) {
    if (!box.axis(l).contains(point[l])) return false;
  }
  return true;
}

bool box_contains(const Box& box, const PointSet& points, std::size_t index) {
  if (points.dim() != box.dim()) {
    throw std::invalid_argument("point dimension " + std::to_string(points.dim()) +
                                " does not match box dimension " + std::to_string(box.dim()));
  }
  for (std::size_t l = 0; l < box.dim(); ++l) {
    if (!box.axis(l).contains(points.coordinate(index, l))) return false;
  }
  return true;
}

std::string format_box(const Box& box) {
  std::string out;
  for (std::size_t l = 0; l < box.dim(); ++l) {
    const auto& side = box.axis(l);
    if (l > 0) out += " x ";
    out += side.lo_open ? '(' : '[';
    out += to_string(side.lo) + "," + to_string(side.hi);
    out += side.hi_open ? ')' : ']';
  }
  return out;
}

namespace {

// Candidate-box scan over per-axis sorted endpoint values. Points are held as
// ranks into those value lists; a point lies in the open candidate box iff its
// rank is strictly between the endpoint ranks on every axis.
template <class Side, class Volume>
class EmptyBoxSearch {
 public:
  EmptyBoxSearch(std::vector<std::vector<Side>> values, std::vector<std::vector<char>> supported,
                 std::vector<std::uint32_t> ranks, std::size_t n)
      : values_(std::move(values)),
        supported_(std::move(supported)),
        ranks_(std::move(ranks)),
        dim_(values_.size()),
        n_(n),
        lo_(dim_),
        hi_(dim_),
        best_lo_(dim_),
        best_hi_(dim_),
        buffers_(dim_),
        tail_(dim_ + 1, Volume(1)) {
    for (std::size_t l = dim_; l-- > 0;) tail_[l] = tail_[l + 1] * side(l, 0, last(l));
  }

  // Finds the lexicographically first box with the largest volume above `floor`,
  // or the first box above `floor` when stop_at_first is set.
  bool run(SearchMode mode, const Volume& floor, bool stop_at_first) {
    best_ = floor;
    found_ = false;
    stop_at_first_ = stop_at_first;
    if (mode == SearchMode::exhaustive) {
      exhaustive(0, Volume(1));
    } else {
      std::vector<std::uint32_t> all(n_);
      for (std::size_t i = 0; i < n_; ++i) all[i] = static_cast<std::uint32_t>(i);
      pruned(0, Volume(1), all);
    }
    return found_;
  }

  template <class ToRational>
  Box witness(ToRational&& to_rational) const {
    std::vector<Interval> axes;
    axes.reserve(dim_);
    for (std::size_t l = 0; l < dim_; ++l) {
      axes.push_back({to_rational(values_[l][best_lo_[l]]), to_rational(values_[l][best_hi_[l]]),
                      supported_[l][best_lo_[l]] != 0, supported_[l][best_hi_[l]] != 0});
    }
    return Box(std::move(axes));
  }

 private:
  std::uint32_t last(std::size_t axis) const {
    return static_cast<std::uint32_t>(values_[axis].size() - 1);
  }

  Volume side(std::size_t axis, std::uint32_t a, std::uint32_t b) const {
    return Volume(values_[axis][b] - values_[axis][a]);
  }

  bool done() const { return stop_at_first_ && found_; }

  void record(const Volume& volume) {
    best_ = volume;
    found_ = true;
    best_lo_ = lo_;
    best_hi_ = hi_;
  }

  bool current_box_empty() const {
    for (std::size_t i = 0; i < n_; ++i) {
      const auto* r = &ranks_[i * dim_];
      bool inside = true;
      for (std::size_t l = 0; l < dim_ && inside; ++l) inside = r[l] > lo_[l] && r[l] < hi_[l];
      if (inside) return false;
    }
    return true;
  }

  void exhaustive(std::size_t axis, const Volume& partial) {
    const std::uint32_t c = last(axis) + 1;
    for (std::uint32_t a = 0; a + 1 < c; ++a) {
      for (std::uint32_t b = a + 1; b < c; ++b) {
        if (done()) return;
        lo_[axis] = a;
        hi_[axis] = b;
        const Volume volume = partial * side(axis, a, b);
        if (axis + 1 < dim_) {
          exhaustive(axis + 1, volume);
        } else if (volume > best_ && current_box_empty()) {
          record(volume);
        }
      }
    }
  }

  void pruned(std::size_t axis, const Volume& partial, const std::vector<std::uint32_t>& active) {
    if (axis + 1 == dim_) {
      last_axis(partial, active);
      return;
    }
    const std::uint32_t c = last(axis) + 1;
    auto& inside = buffers_[axis];
    for (std::uint32_t a = 0; a + 1 < c; ++a) {
      for (std::uint32_t b = a + 1; b < c; ++b) {
        if (done()) return;
        const Volume volume = partial * side(axis, a, b);
        // Remaining sides can at most span their whole axis.
        if (!(volume * tail_[axis + 1] > best_)) continue;
        lo_[axis] = a;
        hi_[axis] = b;
        inside.clear();
        for (auto i : active) {
          const auto r = ranks_[i * dim_ + axis];
          if (r > a && r < b) inside.push_back(i);
        }
        pruned(axis + 1, volume, inside);
      }
    }
  }

  // On the last axis only maximal gaps between blocking points can win.
  void last_axis(const Volume& partial, const std::vector<std::uint32_t>& active) {
    const std::size_t axis = dim_ - 1;
    const std::uint32_t end = last(axis);
    auto& blockers = buffers_[axis];
    blockers.clear();
    for (auto i : active) {
      const auto r = ranks_[i * dim_ + axis];
      if (r > 0 && r < end) blockers.push_back(r);
    }
    std::sort(blockers.begin(), blockers.end());
    blockers.erase(std::unique(blockers.begin(), blockers.end()), blockers.end());

    std::uint32_t start = 0;
    for (std::size_t j = 0; j <= blockers.size(); ++j) {
      if (done()) return;
      const std::uint32_t stop = j < blockers.size() ? blockers[j] : end;
      const Volume volume = partial * side(axis, start, stop);
      if (volume > best_) {
        lo_[axis] = start;
        hi_[axis] = stop;
        record(volume);
      }
      start = stop;
    }
  }

  std::vector<std::vector<Side>> values_;
  std::vector<std::vector<char>> supported_;
  std::vector<std::uint32_t> ranks_;
  std::size_t dim_;
  std::size_t n_;

  std::vector<std::uint32_t> lo_, hi_;
  std::vector<std::uint32_t> best_lo_, best_hi_;
  std::vector<std::vector<std::uint32_t>> buffers_;
  std::vector<Volume> tail_;
  Volume best_{};
  bool found_ = false;
  bool stop_at_first_ = false;
};

template <class Side, class Volume>
EmptyBoxSearch<Side, Volume> make_search(const PointSet& points, const Side& zero, const Side& one,
                                         auto&& coordinate) {
  const std::size_t dim = points.dim();
  const std::size_t n = points.size();
  std::vector<std::vector<Side>> values(dim);
  std::vector<std::vector<char>> supported(dim);
  std::vector<std::uint32_t> ranks(n * dim);
  for (std::size_t l = 0; l < dim; ++l) {
    std::vector<Side> coords;
    coords.reserve(n);
    for (std::size_t i = 0; i < n; ++i) coords.push_back(coordinate(i, l));
    auto& v = values[l];
    v = coords;
    v.push_back(zero);
    v.push_back(one);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    supported[l].assign(v.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = static_cast<std::uint32_t>(std::lower_bound(v.begin(), v.end(), coords[i]) - v.begin());
      ranks[i * dim + l] = r;
      supported[l][r] = 1;
    }
  }
  return EmptyBoxSearch<Side, Volume>(std::move(values), std::move(supported), std::move(ranks), n);
}

std::uint64_t choose2(std::uint64_t c) { return c * (c - 1) / 2; }

void check_search_guard(const PointSet& points, const EnumerationGuard& guard) {
  check_guard(guard, candidate_box_count(points), "candidate boxes");
}

// Volume numerators over 2^(k d) fit in 64 bits when k d <= 63.
bool fits_u64(const PointSet& points) {
  return static_cast<std::uint64_t>(points.grid_params()->k()) * points.dim() <= 63;
}

template <class Volume>
Volume grid_floor(const Rational& threshold, const PointSet& points) {
  const auto bits = static_cast<unsigned>(points.grid_params()->k() * points.dim());
  const Rational scaled = threshold * Rational(pow2(bits));
  BigInt floor = numerator(scaled) / denominator(scaled);
  if (scaled < 0) floor = 0;
  return floor.template convert_to<Volume>();
}

// Dispatches to the representation-specific search; `fn` receives the search,
// a value-to-Rational converter, and the floor volume for a threshold.
template <class Fn>
auto with_search(const PointSet& points, const std::optional<Rational>& threshold, Fn&& fn) {
  if (points.repr() == Repr::grid) {
    const auto& grid = *points.grid_params();
    const auto coordinate = [&](std::size_t i, std::size_t l) { return points.grid_point(i)[l]; };
    const auto to_rational = [&](std::int64_t a) { return dyadic(a, static_cast<unsigned>(grid.k())); };
    if (fits_u64(points)) {
      auto search = make_search<std::int64_t, std::uint64_t>(points, 0, grid.m(), coordinate);
      const std::uint64_t floor = threshold ? grid_floor<std::uint64_t>(*threshold, points) : 0;
      return fn(search, to_rational, floor);
    }
    auto search = make_search<std::int64_t, BigInt>(points, 0, grid.m(), coordinate);
    const BigInt floor = threshold ? grid_floor<BigInt>(*threshold, points) : BigInt(0);
    return fn(search, to_rational, floor);
  }
  const auto coordinate = [&](std::size_t i, std::size_t l) { return Rational(points.real_point(i)[l]); };
  const auto to_rational = [](const Rational& x) { return x; };
  auto search = make_search<Rational, Rational>(points, Rational(0), Rational(1), coordinate);
  const Rational floor = threshold && *threshold > 0 ? *threshold : Rational(0);
  return fn(search, to_rational, floor);
}

}  // namespace

std::uint64_t candidate_box_count(const PointSet& points) {
  const auto distinct_on_axis = [&](std::size_t l, auto zero, auto one, auto&& coordinate) {
    std::vector<decltype(zero)> v{zero, one};
    for (std::size_t i = 0; i < points.size(); ++i) v.push_back(coordinate(i, l));
    std::sort(v.begin(), v.end());
    return static_cast<std::uint64_t>(std::unique(v.begin(), v.end()) - v.begin());
  };
  std::uint64_t total = 1;
  for (std::size_t l = 0; l < points.dim(); ++l) {
    const std::uint64_t distinct =
        points.repr() == Repr::grid
            ? distinct_on_axis(l, std::int64_t{0}, points.grid_params()->m(),
                               [&](std::size_t i, std::size_t a) { return points.grid_point(i)[a]; })
            : distinct_on_axis(l, 0.0, 1.0,
                               [&](std::size_t i, std::size_t a) { return points.real_point(i)[a]; });
    total = saturating_mul(total, choose2(distinct));
  }
  return total;
}

DispersionResult largest_empty_box(const PointSet& points, const SearchOptions& options) {
  check_search_guard(points, options.guard);
  return with_search(points, std::nullopt, [&](auto& search, auto&& to_rational, const auto& floor) {
    if (!search.run(options.mode, floor, false)) {
      throw std::logic_error("largest_empty_box: no empty candidate box found");
    }
    Box witness = search.witness(to_rational);
    Rational volume = box_volume(witness);
    return DispersionResult{std::move(volume), std::move(witness)};
  });
}

std::optional<Box> has_empty_box_above(const PointSet& points, const Rational& threshold,
                                       const SearchOptions& options) {
  if (threshold >= 1) return std::nullopt;
  check_search_guard(points, options.guard);
  return with_search(points, threshold,
                     [&](auto& search, auto&& to_rational, const auto& floor) -> std::optional<Box> {
                       if (!search.run(options.mode, floor, true)) return std::nullopt;
                       return search.witness(to_rational);
                     });
}

}  // namespace dispgrid
