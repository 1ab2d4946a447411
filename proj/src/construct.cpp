#include "dispgrid/construct.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "dispgrid/bounds.hpp"
#include "dispgrid/rng.hpp"

namespace dispgrid {

PointSet sample_grid_points(const GridParams& grid, std::size_t dim, std::size_t n, std::uint64_t seed) {
  Engine engine(seed);
  auto points = PointSet::grid(grid, dim);
  points.reserve(n);
  std::vector<std::int64_t> point(dim);
  const auto values = static_cast<std::uint64_t>(grid.size());
  for (std::size_t j = 0; j < n; ++j) {
    for (auto& a : point) a = static_cast<std::int64_t>(uniform_below(engine, values)) + 1;
    points.add(std::span<const std::int64_t>(point));
  }
  return points;
}

PointSet full_grid(const GridParams& grid, std::size_t dim, const EnumerationGuard& guard) {
  const std::uint64_t count = saturating_pow(static_cast<std::uint64_t>(grid.size()), dim);
  check_guard(guard, count, "grid points");
  auto points = PointSet::grid(grid, dim);
  points.reserve(static_cast<std::size_t>(count));
  std::vector<std::int64_t> point(dim, 1);
  while (true) {
    points.add(std::span<const std::int64_t>(point));
    std::size_t l = dim;
    while (l-- > 0) {
      if (point[l] < grid.size()) {
        ++point[l];
        break;
      }
      point[l] = 1;
    }
    if (l == static_cast<std::size_t>(-1)) break;
  }
  return points;
}

namespace {

// Counts of points in closed grid boxes via d-dimensional prefix sums over
// indices 0..2^k-1 (index 0 is an empty pad row).
class OccupancyIndex {
 public:
  static constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 22;

  static bool fits(const GridParams& grid, std::size_t dim) {
    return saturating_pow(static_cast<std::uint64_t>(grid.m()), dim) <= kMaxCells;
  }

  OccupancyIndex(const PointSet& points, const GridParams& grid)
      : dim_(points.dim()), side_(static_cast<std::size_t>(grid.m())), stride_(dim_) {
    std::size_t cells = 1;
    for (std::size_t l = dim_; l-- > 0;) {
      stride_[l] = cells;
      cells *= side_;
    }
    prefix_.assign(cells, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto pt = points.grid_point(i);
      std::size_t cell = 0;
      for (std::size_t l = 0; l < dim_; ++l) cell += static_cast<std::size_t>(pt[l]) * stride_[l];
      ++prefix_[cell];
    }
    for (std::size_t l = 0; l < dim_; ++l) {
      for (std::size_t cell = 0; cell < cells; ++cell) {
        if ((cell / stride_[l]) % side_ != 0) prefix_[cell] += prefix_[cell - stride_[l]];
      }
    }
  }

  std::int64_t count(const CoreBox& box) const {
    std::int64_t total = 0;
    for (std::size_t corner = 0; corner < (std::size_t{1} << dim_); ++corner) {
      std::size_t cell = 0;
      bool negative = false;
      for (std::size_t l = 0; l < dim_; ++l) {
        const bool low = (corner >> l) & 1U;
        cell += static_cast<std::size_t>(low ? box.lo[l] - 1 : box.hi[l]) * stride_[l];
        negative ^= low;
      }
      total += negative ? -prefix_[cell] : prefix_[cell];
    }
    return total;
  }

 private:
  std::size_t dim_;
  std::size_t side_;
  std::vector<std::size_t> stride_;
  std::vector<std::int64_t> prefix_;
};

}  // namespace

CertificateResult certify_dispersion_leq(const PointSet& points, const GridParams& grid,
                                         const CertifyOptions& options) {
  if (points.repr() != Repr::grid || !(*points.grid_params() == grid)) {
    throw std::invalid_argument("certificate needs a grid point set with k=" + std::to_string(grid.k()));
  }
  std::optional<OccupancyIndex> index;
  if (options.use_occupancy_index && OccupancyIndex::fits(grid, points.dim())) index.emplace(points, grid);

  const auto hit = [&](const CoreBox& box) {
    if (index) return index->count(box) > 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (box.contains(points.grid_point(i))) return true;
    }
    return false;
  };

  CertificateResult result;
  result.pass = true;
  for_each_feasible_class(
      grid, points.dim(), true,
      [&](const BoxClass& cls) {
        ++result.checked_classes;
        if (hit(core_box(cls))) return true;
        ++result.uncovered_classes;
        if (result.pass) {
          result.pass = false;
          result.witness = cls;
        }
        return !options.stop_at_first_failure;
      },
      options.guard);
  return result;
}

AttemptsExhausted::AttemptsExhausted(std::uint64_t attempts, CertificateResult best)
    : std::runtime_error("no certified point set after " + std::to_string(attempts) + " attempts" +
                         (best.witness ? "; best attempt misses class " + best.witness->to_string() : "")),
      attempts_(attempts),
      best_(std::move(best)) {}

GeneratedSet generate_certified(const GridParams& grid, std::size_t dim, std::size_t n, std::uint64_t seed,
                                std::uint64_t max_attempts, const EnumerationGuard& guard) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (max_attempts == 0) throw std::invalid_argument("max_attempts must be at least 1");
  std::optional<CertificateResult> best;
  for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
    const std::uint64_t attempt_seed = derive_seed(seed, attempt);
    auto points = sample_grid_points(grid, dim, n, attempt_seed);
    if (certify_dispersion_leq(points, grid, CertifyOptions{true, guard}).pass) {
      return {std::move(points), attempt + 1, attempt_seed};
    }
    auto full = certify_dispersion_leq(points, grid, CertifyOptions{false, guard});
    if (!best || full.uncovered_classes < best->uncovered_classes) best = std::move(full);
  }
  throw AttemptsExhausted(max_attempts, std::move(*best));
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (p + z * z / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

std::uint64_t count_successes(const GridParams& grid, std::size_t dim, std::size_t n, std::uint64_t trials,
                              std::uint64_t master_seed, unsigned threads, const EnumerationGuard& guard) {
  const auto run_trial = [&](std::uint64_t t) {
    const auto points = sample_grid_points(grid, dim, n, derive_seed(master_seed, t));
    return certify_dispersion_leq(points, grid, CertifyOptions{true, guard}).pass;
  };
  threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(trials, 1)));
  if (threads == 1) {
    std::uint64_t successes = 0;
    for (std::uint64_t t = 0; t < trials; ++t) successes += run_trial(t) ? 1 : 0;
    return successes;
  }
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::uint64_t t = w; t < trials; t += threads) partial[w] += run_trial(t) ? 1 : 0;
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& worker : workers) worker.join();
  for (auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  std::uint64_t successes = 0;
  for (auto p : partial) successes += p;
  return successes;
}

}  // namespace

MonteCarloSummary monte_carlo_success(const GridParams& grid, std::size_t dim, std::size_t n,
                                      std::uint64_t trials, std::uint64_t master_seed, unsigned threads,
                                      const EnumerationGuard& guard) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  MonteCarloSummary summary;
  summary.k = grid.k();
  summary.d = dim;
  summary.n = n;
  summary.trials = trials;
  summary.master_seed = master_seed;
  summary.successes = count_successes(grid, dim, n, trials, master_seed, threads, guard);
  summary.success_rate = static_cast<double>(summary.successes) / static_cast<double>(trials);
  summary.interval = wilson_interval(summary.successes, trials);
  return summary;
}

MinNResult empirical_min_n(const GridParams& grid, std::size_t dim, double target_rate, std::uint64_t trials,
                           std::uint64_t seed, unsigned threads, std::size_t max_n,
                           const EnumerationGuard& guard) {
  if (!(target_rate > 0.0 && target_rate < 1.0)) {
    throw std::invalid_argument("target rate must lie in (0, 1)");
  }
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  const auto rate = [&](std::size_t n) {
    if (n == 0) return 0.0;
    return static_cast<double>(count_successes(grid, dim, n, trials, seed, threads, guard)) /
           static_cast<double>(trials);
  };

  std::size_t hi = 1;
  double hi_rate = rate(hi);
  while (hi_rate < target_rate) {
    if (hi >= max_n) {
      throw std::runtime_error("no n <= " + std::to_string(max_n) + " reaches success rate " +
                               std::to_string(target_rate));
    }
    hi = std::min(hi * 2, max_n);
    hi_rate = rate(hi);
  }
  // rate(lo) < target <= rate(hi)
  std::size_t lo = hi / 2;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const double mid_rate = rate(mid);
    if (mid_rate >= target_rate) {
      hi = mid;
      hi_rate = mid_rate;
    } else {
      lo = mid;
    }
  }

  MinNResult result;
  result.n_star = hi;
  result.rate_at_n_star = hi_rate;
  result.rate_below = rate(hi - 1);
  if (dim >= 2) {
    result.n_required = n_required(grid, dim);
    result.within_n_required = hi <= *result.n_required;
  }
  return result;
}

}  // namespace dispgrid
