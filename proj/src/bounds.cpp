#include "dispgrid/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dispgrid/partition.hpp"

namespace dispgrid {

namespace {

void check_dim(std::size_t dim) {
  if (dim < 2) throw std::domain_error("dimension must be at least 2, got " + std::to_string(dim));
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::domain_error("epsilon must lie in (0, 1/2), got " + std::to_string(eps));
  }
}

}  // namespace

std::uint64_t n_required(const GridParams& grid, std::size_t dim) {
  check_dim(dim);
  const double k = grid.k();
  const double value = 16.0 * k * std::ldexp(1.0, 2 * grid.k()) *
                       std::log2(std::ldexp(static_cast<double>(dim), grid.k() + 1));
  return static_cast<std::uint64_t>(std::ceil(value));
}

double n_theorem1(double eps, std::size_t dim) {
  check_eps(eps);
  check_dim(dim);
  const double l = 1.0 + std::log2(1.0 / eps);
  return 128.0 * std::log2(static_cast<double>(dim)) * l * l / (eps * eps);
}

double n_abstract(double eps, std::size_t dim) {
  check_eps(eps);
  check_dim(dim);
  const double q = std::log2(1.0 / eps) / eps;
  return 512.0 * std::log2(static_cast<double>(dim)) * q * q;
}

double n_rudolf(double eps, std::size_t dim) {
  check_eps(eps);
  check_dim(dim);
  return 64.0 * static_cast<double>(dim) * (1.0 + std::log2(1.0 / eps)) / eps;
}

double n_theorem1_intermediate(double eps, std::size_t dim) {
  check_eps(eps);
  check_dim(dim);
  return 64.0 * (1.0 + std::log2(1.0 / eps)) * std::log2(4.0 * static_cast<double>(dim) / eps) /
         (eps * eps);
}

double lower_bound_ahr(std::uint64_t n, std::size_t dim) {
  check_dim(dim);
  if (n == 0) throw std::domain_error("n must be at least 1");
  const double l = std::log2(static_cast<double>(dim));
  return l / (4.0 * (static_cast<double>(n) + l));
}

double disp_upper_from_n(double n, std::size_t dim) {
  check_dim(dim);
  const double top = std::nextafter(0.5, 0.0);
  if (n < n_theorem1(top, dim)) return 0.5;
  // n_theorem1 decreases strictly in eps: keep n_theorem1(hi) <= n < n_theorem1(lo).
  double hi = top;
  double lo = hi;
  while (n_theorem1(lo, dim) <= n) lo /= 2.0;
  while ((hi - lo) > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (n_theorem1(mid, dim) <= n) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double fit_corollary_constant(const std::vector<double>& n_values, const std::vector<std::size_t>& dims) {
  double c = 0.0;
  for (auto d : dims) {
    for (auto n : n_values) {
      if (n < 2) continue;
      const double shape = std::log2(n) * std::sqrt(std::log2(static_cast<double>(d)) / n);
      c = std::max(c, disp_upper_from_n(n, d) / shape);
    }
  }
  return c;
}

BoundsRow bounds_row(double eps, std::size_t dim) {
  BoundsRow row;
  row.eps = eps;
  row.d = dim;
  const GridParams grid = k_from_epsilon(eps);
  row.k = grid.k();
  row.n_required = n_required(grid, dim);
  row.n_theorem1 = n_theorem1(eps, dim);
  row.n_abstract = n_abstract(eps, dim);
  row.n_rudolf = n_rudolf(eps, dim);
  row.better = row.n_theorem1 <= row.n_rudolf ? "theorem1" : "rudolf";
  row.a_k = a_k(grid);
  row.a_k_exceeds_d = row.a_k > static_cast<double>(dim);
  return row;
}

std::vector<BoundsRow> bounds_table(const std::vector<double>& eps_list,
                                    const std::vector<std::size_t>& d_list) {
  std::vector<BoundsRow> rows;
  rows.reserve(eps_list.size() * d_list.size());
  for (auto eps : eps_list) {
    for (auto d : d_list) rows.push_back(bounds_row(eps, d));
  }
  return rows;
}

}  // namespace dispgrid
