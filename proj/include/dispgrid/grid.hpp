#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dispgrid/guard.hpp"
#include "dispgrid/rational.hpp"

namespace dispgrid {

/// Resolution of the dyadic grid M_k = {1/2^k, ..., (2^k - 1)/2^k}.
class GridParams {
 public:
  static constexpr int kMinK = 2;
  static constexpr int kMaxK = 62;

  /// Throws std::domain_error unless kMinK <= k <= kMaxK.
  explicit GridParams(int k);

  int k() const { return k_; }
  /// 2^k
  std::int64_t m() const { return std::int64_t{1} << k_; }
  /// Number of grid values, 2^k - 1.
  std::int64_t size() const { return m() - 1; }

  friend bool operator==(const GridParams&, const GridParams&) = default;

 private:
  int k_;
};

/// One element a/2^k of M_k, stored by its numerator.
struct GridCoord {
  std::int64_t numerator;

  Rational value(const GridParams& grid) const;
  bool valid_for(const GridParams& grid) const {
    return numerator >= 1 && numerator <= grid.size();
  }
  friend auto operator<=>(const GridCoord&, const GridCoord&) = default;
};

/// Numerators of a point of M_k^d.
using GridPoint = std::vector<std::int64_t>;

/// Half-open interval [lower, upper) of epsilon values.
struct EpsilonRange {
  double lower;
  double upper;
  bool contains(double eps) const { return lower <= eps && eps < upper; }
};

/// The k with 2^-k <= eps < 2^-k+1. Throws std::domain_error unless 0 < eps < 1/2.
GridParams k_from_epsilon(double eps);

EpsilonRange epsilon_range(const GridParams& grid);

/// M_k in increasing order.
std::vector<GridCoord> grid_values(const GridParams& grid,
                                   const EnumerationGuard& guard = EnumerationGuard{});

enum class Repr { grid, real };

const char* repr_name(Repr repr);

/// Multiset of points in [0,1]^d. Grid points share one resolution and are
/// stored as integer numerators; real points are stored as doubles.
class PointSet {
 public:
  static PointSet grid(const GridParams& params, std::size_t dim);
  static PointSet real(std::size_t dim);

  /// Throws std::invalid_argument on a dimension mismatch or a numerator outside 1..2^k-1.
  void add(std::span<const std::int64_t> numerators);
  /// Throws std::invalid_argument on a dimension mismatch or a coordinate outside [0,1].
  void add(std::span<const double> coords);

  void reserve(std::size_t n);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : (repr_ == Repr::grid ? numerators_.size() : reals_.size()) / dim_; }
  bool empty() const { return size() == 0; }
  Repr repr() const { return repr_; }
  /// Present iff repr() == Repr::grid.
  const std::optional<GridParams>& grid_params() const { return grid_; }

  std::span<const std::int64_t> grid_point(std::size_t i) const;
  std::span<const double> real_point(std::size_t i) const;

  /// Exact coordinate value (doubles convert exactly).
  Rational coordinate(std::size_t i, std::size_t axis) const;

  std::size_t distinct_count() const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  PointSet(Repr repr, std::optional<GridParams> grid, std::size_t dim);

  Repr repr_;
  std::optional<GridParams> grid_;
  std::size_t dim_;
  std::vector<std::int64_t> numerators_;
  std::vector<double> reals_;
};

}  // namespace dispgrid
