#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dispgrid/grid.hpp"
#include "dispgrid/guard.hpp"
#include "dispgrid/partition.hpp"
#include "dispgrid/rational.hpp"

namespace dispgrid {

/// P(x in core_box(c)) for x uniform on M_k^d, prod_l s_l / (2^k - 1).
/// Throws std::invalid_argument for infeasible classes.
Rational hit_probability(const BoxClass& cls);

/// 2^{-k-4}
Rational lemma_lower_bound(const GridParams& grid);

/// exp(-2^{-k-4})
double class_miss_bound(const GridParams& grid);

struct LemmaAuditReport {
  int k = 0;
  std::size_t d = 0;
  std::uint64_t classes_checked = 0;
  Rational lower_bound;
  Rational min_hit_probability;
  std::optional<BoxClass> min_witness;
  /// Classes with hit probability <= 2^{-k-4}.
  std::uint64_t bound_violations = 0;
  /// Classes where hit >= (1 - 1/(k 2^k))^{m1} V^{k/(k-1)} fails by more than the slack.
  std::uint64_t chain_violations = 0;
  /// Smallest observed hit - (1 - 1/(k 2^k))^{m1} V^{k/(k-1)}.
  long double min_chain_slack = 0;

  bool pass() const { return classes_checked > 0 && bound_violations == 0 && chain_violations == 0; }
};

inline constexpr long double kChainTolerance = 1e-12L;

/// Checks every feasible class against the lower bound (exactly) and against
/// the intermediate inequality chain with V the class's attainable volume.
LemmaAuditReport audit_lemma1(const GridParams& grid, std::size_t dim,
                              const EnumerationGuard& guard = EnumerationGuard{});

struct KeyInequalityReport {
  int k = 0;
  /// min over j = 1..2^k-2 of j / (j+1)^{k/(k-1)}
  long double lhs_min = 0;
  std::int64_t argmin_j = 0;
  /// (2^k - 1) 2^{-k^2/(k-1)} (1 - 1/(k 2^k))
  long double rhs = 0;
  long double margin = 0;
  /// margins[j-1] = j/(j+1)^{k/(k-1)} - rhs
  std::vector<long double> margins;
  /// Per-j form j/(2^k-1) >= (1 - 1/(k 2^k)) ((j+1)/2^k)^{k/(k-1)} held for every j.
  bool per_j_form_holds = false;
  bool holds = false;
};

/// Throws std::domain_error for k > 40 (the j range is materialized).
KeyInequalityReport check_key_inequality(const GridParams& grid);

/// ln of the union bound on P(some box of volume > 2^-k misses all n points):
/// ln_pair_count_bound(k, d) - n 2^{-k-4}.
double union_failure_bound(const GridParams& grid, std::size_t dim, std::uint64_t n);

/// ln of 2^{2kd} exp(-n 2^{-k-4}).
double rudolf_failure_bound(const GridParams& grid, std::size_t dim, std::uint64_t n);

struct FailureBoundReport {
  int k = 0;
  std::size_t d = 0;
  std::uint64_t n = 0;
  double ln_union_bound = 0;
  double ln_rudolf_bound = 0;
  /// Smallest n with the respective bound below 1.
  std::uint64_t union_threshold_n = 0;
  std::uint64_t rudolf_threshold_n = 0;
};

FailureBoundReport failure_bounds(const GridParams& grid, std::size_t dim, std::uint64_t n);

/// Exact probability, over n i.i.d. uniform draws from M_k^d, that some box of
/// volume > 2^-k contains none of them. Enumerates all (2^k-1)^{dn} ordered
/// outcomes; throws GuardExceeded beyond the guard (default 10^7 outcomes).
Rational exact_failure_probability(const GridParams& grid, std::size_t dim, std::size_t n,
                                   const EnumerationGuard& guard = {EnumerationGuard::kOutcomeLimit},
                                   unsigned threads = 1);

}  // namespace dispgrid
