#pragma once

#include <cstddef>
#include <vector>

namespace recourse {

/// Pairwise (cascade) summation: order-stable and insensitive to how the
/// inputs were produced, so parallel and sequential audits aggregate to
/// bit-identical results once records are sorted.
double pairwise_sum(const std::vector<double>& v);

double mean(const std::vector<double>& v);
/// Sample standard deviation (ddof = 1); 0 for fewer than two values.
double sample_sd(const std::vector<double>& v);

struct MeanCi {
  double mean = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 0;
};

/// Normal-approximation 95% confidence band: mean +/- 1.96 * sd / sqrt(n).
MeanCi mean_ci95(const std::vector<double>& v);

/// Linear-interpolation quantile (type 7), the usual boxplot convention.
double quantile_type7(std::vector<double> values, double q);

struct BoxStats {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_lo = 0.0;  // smallest value within 1.5 IQR below q1
  double whisker_hi = 0.0;  // largest value within 1.5 IQR above q3
  std::size_t n = 0;
  std::size_t outliers = 0;
};

BoxStats box_stats(std::vector<double> values);

}  // namespace recourse
