#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dispgrid/grid.hpp"
#include "dispgrid/guard.hpp"
#include "dispgrid/rational.hpp"

namespace dispgrid {

/// One side I_l of an axis-parallel box, with exact endpoints.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_open = true;
  bool hi_open = true;

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-parallel box I_1 x ... x I_d inside [0,1]^d.
class Box {
 public:
  Box() = default;
  /// Throws std::invalid_argument unless 0 <= lo < hi <= 1 on every axis.
  explicit Box(std::vector<Interval> axes);

  /// The closed or open unit cube.
  static Box unit(std::size_t dim, bool open = false);

  std::size_t dim() const { return axes_.size(); }
  const std::vector<Interval>& axes() const { return axes_; }
  const Interval& axis(std::size_t l) const { return axes_[l]; }

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> axes_;
};

/// Exact product of side lengths; openness does not matter.
Rational box_volume(const Box& box);

/// Throws std::invalid_argument on dimension mismatch.
bool box_contains(const Box& box, std::span<const Rational> point);
bool box_contains(const Box& box, const PointSet& points, std::size_t index);

/// Per-axis text: "[lo,hi]" / "(lo,hi]" etc. joined by " x ".
std::string format_box(const Box& box);

struct DispersionResult {
  Rational volume;
  Box witness;
};

enum class SearchMode {
  /// Every candidate box is examined.
  exhaustive,
  /// Slab filtering with volume bounds; only boxes maximal on the last axis are scored.
  pruned,
};

struct SearchOptions {
  SearchMode mode = SearchMode::exhaustive;
  EnumerationGuard guard{};
};

/// Number of candidate boxes, product over axes of C(c_l, 2) with c_l the
/// count of distinct values in {0, 1} and the point coordinates on axis l.
std::uint64_t candidate_box_count(const PointSet& points);

/// Exact dispersion of the point set. Witness boxes are open at faces that
/// pass through a point coordinate and closed at faces on the unit cube
/// boundary; among maximal boxes the lexicographically smallest endpoint
/// vector (lo_1, hi_1, ..., lo_d, hi_d) is returned.
/// Throws GuardExceeded when candidate_box_count exceeds the guard.
DispersionResult largest_empty_box(const PointSet& points, const SearchOptions& options = {});

/// Some empty box with volume strictly greater than the threshold, if any.
std::optional<Box> has_empty_box_above(const PointSet& points, const Rational& threshold,
                                       const SearchOptions& options = {});

}  // namespace dispgrid
