#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dispgrid/grid.hpp"

namespace dispgrid {

/// ceil(2^4 k 2^{2k} log2(2^{k+1} d)), the sample size driving the union
/// failure bound below one. Requires d >= 2.
std::uint64_t n_required(const GridParams& grid, std::size_t dim);

// Closed-form sample sizes; eps in (0, 1/2), d >= 2, std::domain_error otherwise.

/// 2^7 log2(d) (1 + log2(1/eps))^2 / eps^2
double n_theorem1(double eps, std::size_t dim);
/// 2^9 log2(d) (log2(1/eps) / eps)^2
double n_abstract(double eps, std::size_t dim);
/// 2^6 d (1 + log2(1/eps)) / eps
double n_rudolf(double eps, std::size_t dim);
/// 2^6 (1 + log2(1/eps)) log2(4 d / eps) / eps^2, the step before n_theorem1.
double n_theorem1_intermediate(double eps, std::size_t dim);

/// log2(d) / (4 (n + log2(d))), a lower bound on the minimal dispersion.
double lower_bound_ahr(std::uint64_t n, std::size_t dim);

/// Smallest eps (relative precision 1e-9) with n_theorem1(eps, d) <= n, or 1/2
/// when n is too small for any eps below 1/2.
double disp_upper_from_n(double n, std::size_t dim);

/// Smallest c with disp_upper_from_n(n, d) <= c log2(n) sqrt(log2(d) / n) on the grid.
double fit_corollary_constant(const std::vector<double>& n_values, const std::vector<std::size_t>& dims);

struct BoundsRow {
  double eps = 0;
  std::size_t d = 0;
  int k = 0;
  std::uint64_t n_required = 0;
  double n_theorem1 = 0;
  double n_abstract = 0;
  double n_rudolf = 0;
  /// "theorem1" or "rudolf", whichever sample size is smaller.
  std::string better;
  double a_k = 0;
  bool a_k_exceeds_d = false;
};

BoundsRow bounds_row(double eps, std::size_t dim);
std::vector<BoundsRow> bounds_table(const std::vector<double>& eps_list,
                                    const std::vector<std::size_t>& d_list);

}  // namespace dispgrid
