#include "dispgrid/grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace dispgrid {

GridParams::GridParams(int k) : k_(k) {
  if (k < kMinK || k > kMaxK) {
    throw std::domain_error("grid resolution k must lie in [" + std::to_string(kMinK) + ", " +
                            std::to_string(kMaxK) + "], got " + std::to_string(k));
  }
}

Rational GridCoord::value(const GridParams& grid) const {
  return dyadic(numerator, static_cast<unsigned>(grid.k()));
}

GridParams k_from_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::domain_error("epsilon must lie in (0, 1/2), got " + std::to_string(eps));
  }
  // Powers of two are exact in binary floating point, so these comparisons are exact.
  int k = 2;
  while (std::ldexp(1.0, -k) > eps) ++k;
  return GridParams(k);
}

EpsilonRange epsilon_range(const GridParams& grid) {
  return {std::ldexp(1.0, -grid.k()), std::ldexp(1.0, -grid.k() + 1)};
}

std::vector<GridCoord> grid_values(const GridParams& grid, const EnumerationGuard& guard) {
  check_guard(guard, static_cast<std::uint64_t>(grid.size()), "grid_values");
  std::vector<GridCoord> out;
  out.reserve(static_cast<std::size_t>(grid.size()));
  for (std::int64_t a = 1; a <= grid.size(); ++a) out.push_back({a});
  return out;
}

const char* repr_name(Repr repr) { return repr == Repr::grid ? "grid" : "real"; }

PointSet::PointSet(Repr repr, std::optional<GridParams> grid, std::size_t dim)
    : repr_(repr), grid_(grid), dim_(dim) {
  if (dim == 0) throw std::invalid_argument("point set dimension must be at least 1");
}

PointSet PointSet::grid(const GridParams& params, std::size_t dim) {
  return PointSet(Repr::grid, params, dim);
}

PointSet PointSet::real(std::size_t dim) { return PointSet(Repr::real, std::nullopt, dim); }

void PointSet::add(std::span<const std::int64_t> numerators) {
  if (repr_ != Repr::grid) throw std::invalid_argument("grid point added to a real point set");
  if (numerators.size() != dim_) {
    throw std::invalid_argument("point has " + std::to_string(numerators.size()) +
                                " coordinates, expected " + std::to_string(dim_));
  }
  for (auto a : numerators) {
    if (!GridCoord{a}.valid_for(*grid_)) {
      throw std::invalid_argument("grid numerator " + std::to_string(a) + " outside 1.." +
                                  std::to_string(grid_->size()));
    }
  }
  numerators_.insert(numerators_.end(), numerators.begin(), numerators.end());
}

void PointSet::add(std::span<const double> coords) {
  if (repr_ != Repr::real) throw std::invalid_argument("real point added to a grid point set");
  if (coords.size() != dim_) {
    throw std::invalid_argument("point has " + std::to_string(coords.size()) +
                                " coordinates, expected " + std::to_string(dim_));
  }
  for (auto x : coords) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument("coordinate " + std::to_string(x) + " outside [0, 1]");
    }
  }
  reals_.insert(reals_.end(), coords.begin(), coords.end());
}

void PointSet::reserve(std::size_t n) {
  if (repr_ == Repr::grid) {
    numerators_.reserve(n * dim_);
  } else {
    reals_.reserve(n * dim_);
  }
}

std::span<const std::int64_t> PointSet::grid_point(std::size_t i) const {
  if (repr_ != Repr::grid) throw std::logic_error("grid_point on a real point set");
  return std::span(numerators_).subspan(i * dim_, dim_);
}

std::span<const double> PointSet::real_point(std::size_t i) const {
  if (repr_ != Repr::real) throw std::logic_error("real_point on a grid point set");
  return std::span(reals_).subspan(i * dim_, dim_);
}

Rational PointSet::coordinate(std::size_t i, std::size_t axis) const {
  if (repr_ == Repr::grid) {
    return GridCoord{numerators_[i * dim_ + axis]}.value(*grid_);
  }
  return Rational(reals_[i * dim_ + axis]);
}

std::size_t PointSet::distinct_count() const {
  if (repr_ == Repr::grid) {
    std::set<std::vector<std::int64_t>> seen;
    for (std::size_t i = 0; i < size(); ++i) {
      auto pt = grid_point(i);
      seen.emplace(pt.begin(), pt.end());
    }
    return seen.size();
  }
  std::set<std::vector<double>> seen;
  for (std::size_t i = 0; i < size(); ++i) {
    auto pt = real_point(i);
    seen.emplace(pt.begin(), pt.end());
  }
  return seen.size();
}

}  // namespace dispgrid
