#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "dispgrid/empty_box.hpp"
#include "dispgrid/grid.hpp"
#include "dispgrid/guard.hpp"
#include "dispgrid/rational.hpp"

namespace dispgrid {

/// Index (p, s) of the box class Omega_k(p, s): boxes of volume > 2^-k whose
/// side l has length in (s_l/2^k, (s_l+1)/2^k] and infimum in [p_l - 1/2^k, p_l).
/// p is stored by grid numerators (1..2^k-1), s by integers (0..2^k-1).
class BoxClass {
 public:
  /// Throws std::invalid_argument on out-of-range components or mismatched lengths.
  BoxClass(GridParams grid, std::vector<std::int64_t> p, std::vector<std::int64_t> s);

  const GridParams& grid() const { return grid_; }
  std::size_t dim() const { return p_.size(); }
  const std::vector<std::int64_t>& p() const { return p_; }
  const std::vector<std::int64_t>& s() const { return s_; }

  /// D_s: axes whose side class is not maximal (s_l < 2^k - 1).
  std::vector<std::size_t> non_maximal_axes() const;

  std::string to_string() const;

  friend bool operator==(const BoxClass&, const BoxClass&) = default;
  friend auto operator<=>(const BoxClass& a, const BoxClass& b) {
    if (auto c = a.s_ <=> b.s_; c != 0) return c;
    return a.p_ <=> b.p_;
  }

 private:
  GridParams grid_;
  std::vector<std::int64_t> p_;
  std::vector<std::int64_t> s_;
};

/// Closed box prod_l [p_l, p_l + (s_l - 1)/2^k]; sides may be single points.
struct CoreBox {
  GridParams grid;
  std::vector<std::int64_t> lo;  // numerators
  std::vector<std::int64_t> hi;  // numerators, hi >= lo

  bool contains(std::span<const std::int64_t> point) const;
  /// Number of points of M_k^d inside, prod_l (hi_l - lo_l + 1).
  BigInt grid_point_count() const;
  std::string to_string() const;
};

/// The class whose defining conditions B satisfies. Throws std::invalid_argument
/// if |B| <= 2^-k or the dimension is zero.
BoxClass classify_box(const Box& box, const GridParams& grid);

/// Whether the two defining conditions of the class hold for B.
bool box_in_class(const Box& box, const BoxClass& cls);

/// prod_l min((s_l+1)/2^k, 1 - p_l + 1/2^k): the largest volume of any box
/// satisfying the class's side and infimum conditions.
Rational attainable_volume(const BoxClass& cls);

/// True iff Omega_k(p, s) is nonempty: all s_l >= 1, p_l 2^k < 2^k + 1 - s_l,
/// and attainable_volume > 2^-k.
bool class_is_feasible(const BoxClass& cls);

/// Throws std::invalid_argument for infeasible classes.
CoreBox core_box(const BoxClass& cls);

/// m1(s) = #{l : s_l < 2^k - 1}
std::size_t m1_of(const BoxClass& cls);
std::size_t m1_of(std::span<const std::int64_t> s, const GridParams& grid);

/// A_k = ln(2) k 2^k
double a_k(const GridParams& grid);

/// Number of candidate (p, s) pairs, (2^k)^d (2^k - 1)^d, saturating.
std::uint64_t class_space_size(const GridParams& grid, std::size_t dim);

namespace detail {
bool volume_feasible(std::span<const std::int64_t> p, std::span<const std::int64_t> s,
                     const GridParams& grid);
}

/// Calls fn(const BoxClass&) for every feasible class, ordered by s then p
/// (both lexicographic). fn may return bool; false stops the enumeration.
/// With prune_by_a_k, side vectors with m1(s) >= A_k are skipped before the
/// p loop; the set of classes produced is the same.
/// Throws GuardExceeded when class_space_size exceeds the guard.
template <class Fn>
void for_each_feasible_class(const GridParams& grid, std::size_t dim, bool prune_by_a_k, Fn&& fn,
                             const EnumerationGuard& guard = EnumerationGuard{}) {
  if (dim == 0) throw std::invalid_argument("dimension must be at least 1");
  check_guard(guard, class_space_size(grid, dim), "box classes");
  const std::int64_t m = grid.m();
  const double threshold = a_k(grid);
  std::vector<std::int64_t> s(dim, 0);
  std::vector<std::int64_t> p(dim, 1);

  // Odometer over s in {0..m-1}^d.
  while (true) {
    const bool zero_side = std::find(s.begin(), s.end(), 0) != s.end();
    const bool pruned = prune_by_a_k && static_cast<double>(m1_of(s, grid)) >= threshold;
    if (!zero_side && !pruned) {
      // Only p_l in 1..m-s_l can satisfy the per-axis condition.
      std::fill(p.begin(), p.end(), 1);
      while (true) {
        if (detail::volume_feasible(p, s, grid)) {
          BoxClass cls(grid, p, s);
          if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const BoxClass&>, bool>) {
            if (!fn(static_cast<const BoxClass&>(cls))) return;
          } else {
            fn(static_cast<const BoxClass&>(cls));
          }
        }
        std::size_t l = dim;
        while (l-- > 0) {
          if (p[l] < m - s[l]) {
            ++p[l];
            break;
          }
          p[l] = 1;
        }
        if (l == static_cast<std::size_t>(-1)) break;
      }
    }
    std::size_t l = dim;
    while (l-- > 0) {
      if (s[l] < m - 1) {
        ++s[l];
        break;
      }
      s[l] = 0;
    }
    if (l == static_cast<std::size_t>(-1)) break;
  }
}

std::vector<BoxClass> enumerate_feasible_classes(const GridParams& grid, std::size_t dim,
                                                 bool prune_by_a_k,
                                                 const EnumerationGuard& guard = EnumerationGuard{});

/// prod_l (2^k - s_l): the per-coordinate count of admissible p for side vector s.
BigInt paper_p_count(std::span<const std::int64_t> s, const GridParams& grid);

/// ln of (4d/k)^{A_k}, the bound on the number of side vectors with m1(s) < A_k.
double ln_s_count_bound(const GridParams& grid, std::size_t dim);

/// ln of the pair-count bound 2^{k 2^k log2(2^{k+1} d)} on the number of feasible classes.
double ln_pair_count_bound(const GridParams& grid, std::size_t dim);

struct CountAuditRow {
  int k;
  std::size_t d;
  std::uint64_t exact_feasible_count;
  /// Sum of paper_p_count(s) over side vectors s admitting at least one feasible p.
  BigInt sum_paper_p_count;
  double ln_pair_count_bound;
};

CountAuditRow count_audit(const GridParams& grid, std::size_t dim,
                          const EnumerationGuard& guard = EnumerationGuard{});

}  // namespace dispgrid
