#pragma once

#include <cstddef>
#include <vector>

namespace widenet {

double normal_cdf(double x);

// Survival function of the Kolmogorov distribution,
// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

struct KsResult {
  double statistic = 0.0;  // sup_x |F_n(x) - Phi(x)|
  double p_value = 1.0;
  std::size_t n = 0;
};

// One-sample two-sided KS test against the standard normal. The p-value uses
// the asymptotic distribution with the Stephens finite-n correction.
KsResult ks_test_standard_normal(std::vector<double> samples);

}  // namespace widenet
