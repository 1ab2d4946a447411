#include "dispgrid/partition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dispgrid {

namespace {

BigInt floor_nonneg(const Rational& x) { return numerator(x) / denominator(x); }

BigInt ceil_pos(const Rational& x) {
  return (numerator(x) + denominator(x) - 1) / denominator(x);
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

}  // namespace

BoxClass::BoxClass(GridParams grid, std::vector<std::int64_t> p, std::vector<std::int64_t> s)
    : grid_(grid), p_(std::move(p)), s_(std::move(s)) {
  if (p_.size() != s_.size() || p_.empty()) {
    throw std::invalid_argument("box class needs p and s of equal, nonzero length");
  }
  for (std::size_t l = 0; l < p_.size(); ++l) {
    if (!GridCoord{p_[l]}.valid_for(grid_)) {
      throw std::invalid_argument("class offset numerator " + std::to_string(p_[l]) +
                                  " outside 1.." + std::to_string(grid_.size()));
    }
    if (s_[l] < 0 || s_[l] > grid_.size()) {
      throw std::invalid_argument("class side index " + std::to_string(s_[l]) + " outside 0.." +
                                  std::to_string(grid_.size()));
    }
  }
}

std::vector<std::size_t> BoxClass::non_maximal_axes() const {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < s_.size(); ++l) {
    if (s_[l] < grid_.size()) out.push_back(l);
  }
  return out;
}

std::string BoxClass::to_string() const {
  return "k=" + std::to_string(grid_.k()) + " p=" + join(p_) + "/2^k s=" + join(s_);
}

bool CoreBox::contains(std::span<const std::int64_t> point) const {
  if (point.size() != lo.size()) throw std::invalid_argument("core box dimension mismatch");
  for (std::size_t l = 0; l < lo.size(); ++l) {
    if (point[l] < lo[l] || point[l] > hi[l]) return false;
  }
  return true;
}

BigInt CoreBox::grid_point_count() const {
  BigInt out = 1;
  for (std::size_t l = 0; l < lo.size(); ++l) out *= hi[l] - lo[l] + 1;
  return out;
}

std::string CoreBox::to_string() const {
  std::string out;
  for (std::size_t l = 0; l < lo.size(); ++l) {
    if (l > 0) out += " x ";
    out += "[" + dispgrid::to_string(GridCoord{lo[l]}.value(grid)) + "," +
           dispgrid::to_string(GridCoord{hi[l]}.value(grid)) + "]";
  }
  return out;
}

BoxClass classify_box(const Box& box, const GridParams& grid) {
  if (box.dim() == 0) throw std::invalid_argument("cannot classify a zero-dimensional box");
  const Rational m(grid.m());
  if (box_volume(box) * m <= 1) {
    throw std::invalid_argument("box volume " + to_string(box_volume(box)) + " is not above 2^-" +
                                std::to_string(grid.k()));
  }
  std::vector<std::int64_t> p(box.dim());
  std::vector<std::int64_t> s(box.dim());
  for (std::size_t l = 0; l < box.dim(); ++l) {
    const auto& side = box.axis(l);
    // s/m < len <= (s+1)/m  <=>  s = ceil(len m) - 1
    s[l] = static_cast<std::int64_t>(ceil_pos(side.length() * m)) - 1;
    // p - 1/m <= lo < p  <=>  p m = floor(lo m) + 1
    p[l] = static_cast<std::int64_t>(floor_nonneg(side.lo * m)) + 1;
    if (p[l] > grid.size()) {
      // A side starting at or beyond 1 - 1/m is too short for a box of volume > 1/m.
      throw std::logic_error("box side starting at " + to_string(side.lo) + " has no class offset");
    }
  }
  return BoxClass(grid, std::move(p), std::move(s));
}

bool box_in_class(const Box& box, const BoxClass& cls) {
  if (box.dim() != cls.dim()) return false;
  const Rational m(cls.grid().m());
  if (box_volume(box) * m <= 1) return false;
  for (std::size_t l = 0; l < box.dim(); ++l) {
    const auto& side = box.axis(l);
    const Rational len = side.length() * m;
    const Rational lo = side.lo * m;
    const auto s = cls.s()[l];
    const auto p = cls.p()[l];
    if (!(len > s && len <= s + 1)) return false;
    if (!(lo >= p - 1 && lo < p)) return false;
  }
  return true;
}

Rational attainable_volume(const BoxClass& cls) {
  const std::int64_t m = cls.grid().m();
  Rational out = 1;
  for (std::size_t l = 0; l < cls.dim(); ++l) {
    const std::int64_t longest = std::min(cls.s()[l] + 1, m - cls.p()[l] + 1);
    out *= Rational(longest, m);
  }
  return out;
}

namespace detail {

bool volume_feasible(std::span<const std::int64_t> p, std::span<const std::int64_t> s,
                     const GridParams& grid) {
  const std::int64_t m = grid.m();
  for (std::size_t l = 0; l < s.size(); ++l) {
    if (s[l] < 1 || p[l] >= m + 1 - s[l]) return false;
  }
  // prod min(s+1, m-p+1) / m^d > 1/m  <=>  prod min(s+1, m-p+1) > m^(d-1)
  const auto longest = [&](std::size_t l) { return std::min(s[l] + 1, m - p[l] + 1); };
  if (static_cast<std::uint64_t>(grid.k()) * s.size() <= 63) {
    std::uint64_t lhs = 1;
    for (std::size_t l = 0; l < s.size(); ++l) lhs *= static_cast<std::uint64_t>(longest(l));
    return lhs > (std::uint64_t{1} << (grid.k() * static_cast<int>(s.size() - 1)));
  }
  BigInt lhs = 1;
  for (std::size_t l = 0; l < s.size(); ++l) lhs *= longest(l);
  return lhs > pow2(static_cast<unsigned>(grid.k()) * static_cast<unsigned>(s.size() - 1));
}

}  // namespace detail

bool class_is_feasible(const BoxClass& cls) {
  return detail::volume_feasible(cls.p(), cls.s(), cls.grid());
}

CoreBox core_box(const BoxClass& cls) {
  if (!class_is_feasible(cls)) {
    throw std::invalid_argument("core box of infeasible class " + cls.to_string());
  }
  CoreBox out{cls.grid(), cls.p(), cls.p()};
  for (std::size_t l = 0; l < cls.dim(); ++l) out.hi[l] += cls.s()[l] - 1;
  return out;
}

std::size_t m1_of(std::span<const std::int64_t> s, const GridParams& grid) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [&](std::int64_t v) { return v < grid.size(); }));
}

std::size_t m1_of(const BoxClass& cls) { return m1_of(cls.s(), cls.grid()); }

double a_k(const GridParams& grid) {
  return std::numbers::ln2 * grid.k() * std::ldexp(1.0, grid.k());
}

std::uint64_t class_space_size(const GridParams& grid, std::size_t dim) {
  return saturating_mul(saturating_pow(static_cast<std::uint64_t>(grid.m()), dim),
                        saturating_pow(static_cast<std::uint64_t>(grid.size()), dim));
}

std::vector<BoxClass> enumerate_feasible_classes(const GridParams& grid, std::size_t dim,
                                                 bool prune_by_a_k, const EnumerationGuard& guard) {
  std::vector<BoxClass> out;
  for_each_feasible_class(grid, dim, prune_by_a_k, [&](const BoxClass& c) { out.push_back(c); },
                          guard);
  return out;
}

BigInt paper_p_count(std::span<const std::int64_t> s, const GridParams& grid) {
  BigInt out = 1;
  for (auto v : s) out *= grid.m() - v;
  return out;
}

double ln_s_count_bound(const GridParams& grid, std::size_t dim) {
  return a_k(grid) * std::log(4.0 * static_cast<double>(dim) / grid.k());
}

double ln_pair_count_bound(const GridParams& grid, std::size_t dim) {
  const double k = grid.k();
  return k * std::ldexp(1.0, grid.k()) * std::log2(std::ldexp(static_cast<double>(dim), grid.k() + 1)) *
         std::numbers::ln2;
}

CountAuditRow count_audit(const GridParams& grid, std::size_t dim, const EnumerationGuard& guard) {
  CountAuditRow row{grid.k(), dim, 0, 0, ln_pair_count_bound(grid, dim)};
  std::vector<std::int64_t> last_s;
  for_each_feasible_class(
      grid, dim, false,
      [&](const BoxClass& c) {
        ++row.exact_feasible_count;
        // Classes arrive grouped by s.
        if (c.s() != last_s) {
          row.sum_paper_p_count += paper_p_count(c.s(), grid);
          last_s = c.s();
        }
      },
      guard);
  return row;
}

}  // namespace dispgrid
