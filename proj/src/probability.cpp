#include "dispgrid/probability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "dispgrid/empty_box.hpp"

namespace dispgrid {

Rational hit_probability(const BoxClass& cls) {
  if (!class_is_feasible(cls)) {
    throw std::invalid_argument("hit probability of infeasible class " + cls.to_string());
  }
  Rational out = 1;
  for (auto s : cls.s()) out *= Rational(s, cls.grid().size());
  return out;
}

Rational lemma_lower_bound(const GridParams& grid) {
  return dyadic(1, static_cast<unsigned>(grid.k() + 4));
}

double class_miss_bound(const GridParams& grid) { return std::exp(-std::ldexp(1.0, -grid.k() - 4)); }

LemmaAuditReport audit_lemma1(const GridParams& grid, std::size_t dim, const EnumerationGuard& guard) {
  LemmaAuditReport report;
  report.k = grid.k();
  report.d = dim;
  report.lower_bound = lemma_lower_bound(grid);
  const long double k = grid.k();
  const long double shrink = 1.0L - 1.0L / (k * std::ldexp(1.0L, grid.k()));
  const long double exponent = k / (k - 1.0L);
  bool first = true;

  for_each_feasible_class(
      grid, dim, false,
      [&](const BoxClass& cls) {
        ++report.classes_checked;
        const Rational hit = hit_probability(cls);
        if (hit <= report.lower_bound) ++report.bound_violations;
        if (first || hit < report.min_hit_probability) {
          report.min_hit_probability = hit;
          report.min_witness = cls;
        }
        const long double chain =
            std::pow(shrink, static_cast<long double>(m1_of(cls))) *
            std::pow(to_long_double(attainable_volume(cls)), exponent);
        const long double slack = to_long_double(hit) - chain;
        if (slack < -kChainTolerance) ++report.chain_violations;
        if (first || slack < report.min_chain_slack) report.min_chain_slack = slack;
        first = false;
      },
      guard);
  return report;
}

KeyInequalityReport check_key_inequality(const GridParams& grid) {
  if (grid.k() > 40) throw std::domain_error("check_key_inequality supports k <= 40");
  KeyInequalityReport report;
  report.k = grid.k();
  const long double k = grid.k();
  const long double m = std::ldexp(1.0L, grid.k());
  const long double exponent = k / (k - 1.0L);
  const long double shrink = 1.0L - 1.0L / (k * m);
  report.rhs = (m - 1.0L) * std::pow(2.0L, -k * k / (k - 1.0L)) * shrink;

  const auto last = static_cast<std::int64_t>(m) - 2;
  report.margins.reserve(static_cast<std::size_t>(last));
  report.per_j_form_holds = true;
  for (std::int64_t j = 1; j <= last; ++j) {
    const long double jl = static_cast<long double>(j);
    const long double lhs = jl / std::pow(jl + 1.0L, exponent);
    report.margins.push_back(lhs - report.rhs);
    if (j == 1 || lhs < report.lhs_min) {
      report.lhs_min = lhs;
      report.argmin_j = j;
    }
    const long double per_j_rhs = shrink * std::pow((jl + 1.0L) / m, exponent);
    if (jl / (m - 1.0L) < per_j_rhs) report.per_j_form_holds = false;
  }
  report.margin = report.lhs_min - report.rhs;
  report.holds = report.margin >= 0 && report.per_j_form_holds;
  return report;
}

double union_failure_bound(const GridParams& grid, std::size_t dim, std::uint64_t n) {
  return ln_pair_count_bound(grid, dim) - static_cast<double>(n) * std::ldexp(1.0, -grid.k() - 4);
}

double rudolf_failure_bound(const GridParams& grid, std::size_t dim, std::uint64_t n) {
  return 2.0 * grid.k() * static_cast<double>(dim) * std::numbers::ln2 -
         static_cast<double>(n) * std::ldexp(1.0, -grid.k() - 4);
}

namespace {

// Smallest n with c - n 2^{-k-4} < 0.
std::uint64_t threshold_n(double c, const GridParams& grid) {
  if (c < 0) return 0;
  return static_cast<std::uint64_t>(std::floor(std::ldexp(c, grid.k() + 4))) + 1;
}

}  // namespace

FailureBoundReport failure_bounds(const GridParams& grid, std::size_t dim, std::uint64_t n) {
  FailureBoundReport report;
  report.k = grid.k();
  report.d = dim;
  report.n = n;
  report.ln_union_bound = union_failure_bound(grid, dim, n);
  report.ln_rudolf_bound = rudolf_failure_bound(grid, dim, n);
  report.union_threshold_n = threshold_n(union_failure_bound(grid, dim, 0), grid);
  report.rudolf_threshold_n = threshold_n(rudolf_failure_bound(grid, dim, 0), grid);
  return report;
}

Rational exact_failure_probability(const GridParams& grid, std::size_t dim, std::size_t n,
                                   const EnumerationGuard& guard, unsigned threads) {
  if (dim == 0) throw std::invalid_argument("dimension must be at least 1");
  const auto base = static_cast<std::uint64_t>(grid.size());
  const std::uint64_t outcomes = saturating_pow(base, static_cast<std::uint64_t>(dim) * n);
  check_guard(guard, outcomes, "outcomes");
  if (n == 0) return Rational(1);

  const Rational threshold = dyadic(1, static_cast<unsigned>(grid.k()));
  const std::size_t digits = dim * n;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(outcomes, 1024))));

  // Outcome index i encodes the flat coordinate vector in base 2^k - 1.
  const auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::int64_t> flat(digits);
    std::uint64_t rest = begin;
    for (std::size_t j = digits; j-- > 0;) {
      flat[j] = static_cast<std::int64_t>(rest % base) + 1;
      rest /= base;
    }
    SearchOptions options{SearchMode::pruned, EnumerationGuard::unlimited()};
    std::uint64_t failures = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      auto points = PointSet::grid(grid, dim);
      points.reserve(n);
      for (std::size_t j = 0; j < n; ++j) points.add(std::span(flat).subspan(j * dim, dim));
      if (has_empty_box_above(points, threshold, options)) ++failures;
      for (std::size_t j = digits; j-- > 0;) {
        if (flat[j] < grid.size()) {
          ++flat[j];
          break;
        }
        flat[j] = 1;
      }
    }
    return failures;
  };

  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::thread> workers;
  const std::uint64_t chunk = outcomes / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = t * chunk;
    const std::uint64_t end = t + 1 == threads ? outcomes : begin + chunk;
    if (threads == 1) {
      partial[t] = count_range(begin, end);
    } else {
      workers.emplace_back([&, t, begin, end] { partial[t] = count_range(begin, end); });
    }
  }
  for (auto& w : workers) w.join();

  std::uint64_t failures = 0;
  for (auto f : partial) failures += f;
  return Rational(BigInt(failures), BigInt(outcomes));
}

}  // namespace dispgrid
