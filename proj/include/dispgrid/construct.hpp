#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "dispgrid/grid.hpp"
#include "dispgrid/guard.hpp"
#include "dispgrid/partition.hpp"

namespace dispgrid {

/// n points with coordinates drawn i.i.d. uniformly from M_k. Points are drawn
/// one after another, so a larger n with the same seed extends the smaller sample.
PointSet sample_grid_points(const GridParams& grid, std::size_t dim, std::size_t n, std::uint64_t seed);

/// Every point of M_k^d once, in lexicographic order.
PointSet full_grid(const GridParams& grid, std::size_t dim, const EnumerationGuard& guard = EnumerationGuard{});

struct CertificateResult {
  bool pass = false;
  std::uint64_t checked_classes = 0;
  /// Feasible classes whose core box holds no point (counted only when the
  /// check does not stop at the first failure).
  std::uint64_t uncovered_classes = 0;
  std::optional<BoxClass> witness;
};

struct CertifyOptions {
  bool stop_at_first_failure = true;
  EnumerationGuard guard{};
  /// Answer core-box queries from prefix sums over the grid when it is small
  /// enough; otherwise scan the points.
  bool use_occupancy_index = true;
};

/// Passes iff every feasible class's core box contains a point of P, which
/// implies disp(P) <= 2^-k. A failure says nothing about disp(P).
/// Throws std::invalid_argument unless P is a grid set with the same k.
CertificateResult certify_dispersion_leq(const PointSet& points, const GridParams& grid,
                                         const CertifyOptions& options = {});

struct GeneratedSet {
  PointSet points;
  std::uint64_t attempts;
  std::uint64_t attempt_seed;
};

class AttemptsExhausted : public std::runtime_error {
 public:
  AttemptsExhausted(std::uint64_t attempts, CertificateResult best);
  std::uint64_t attempts() const { return attempts_; }
  /// Certificate of the attempt with the fewest uncovered classes.
  const CertificateResult& best() const { return best_; }

 private:
  std::uint64_t attempts_;
  CertificateResult best_;
};

/// Samples with seeds derive_seed(seed, attempt) until the certificate passes.
GeneratedSet generate_certified(const GridParams& grid, std::size_t dim, std::size_t n, std::uint64_t seed,
                                std::uint64_t max_attempts, const EnumerationGuard& guard = EnumerationGuard{});

struct WilsonInterval {
  double lower;
  double upper;
};

/// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct MonteCarloSummary {
  int k = 0;
  std::size_t d = 0;
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double success_rate = 0;
  WilsonInterval interval{0, 0};
  std::uint64_t master_seed = 0;
};

/// Trial t certifies sample_grid_points(k, d, n, derive_seed(master_seed, t)).
/// The summary does not depend on the thread count.
MonteCarloSummary monte_carlo_success(const GridParams& grid, std::size_t dim, std::size_t n,
                                      std::uint64_t trials, std::uint64_t master_seed, unsigned threads = 1,
                                      const EnumerationGuard& guard = EnumerationGuard{});

struct MinNResult {
  std::size_t n_star = 0;
  double rate_at_n_star = 0;
  /// Estimated success at n_star - 1 (0 when n_star == 1).
  double rate_below = 0;
  /// Present for d >= 2.
  std::optional<std::uint64_t> n_required;
  bool within_n_required = true;
};

/// Smallest n whose estimated success rate reaches target_rate. Trials reuse
/// their seeds across n, so the estimate is monotone in n. Throws
/// std::runtime_error if no n up to max_n reaches the target.
MinNResult empirical_min_n(const GridParams& grid, std::size_t dim, double target_rate, std::uint64_t trials,
                           std::uint64_t seed, unsigned threads = 1, std::size_t max_n = std::size_t{1} << 24,
                           const EnumerationGuard& guard = EnumerationGuard{});

}  // namespace dispgrid
