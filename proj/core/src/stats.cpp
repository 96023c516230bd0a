#include "recourse/stats.hpp"

#include <algorithm>
#include <cmath>

namespace recourse {

namespace {
double pairwise_sum_range(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise_sum_range(v, half) + pairwise_sum_range(v + half, n - half);
}
}  // namespace

double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum_range(v.data(), v.size());
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return pairwise_sum(v) / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean(v);
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - m) * (v[i] - m);
  return std::sqrt(pairwise_sum(sq) / static_cast<double>(v.size() - 1));
}

MeanCi mean_ci95(const std::vector<double>& v) {
  MeanCi out;
  out.n = v.size();
  if (v.empty()) return out;
  out.mean = mean(v);
  double half = 1.96 * sample_sd(v) / std::sqrt(static_cast<double>(v.size()));
  out.lo = out.mean - half;
  out.hi = out.mean + half;
  return out;
}

double quantile_type7(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  if (values.size() == 1) return values[0];
  double pos = q * static_cast<double>(values.size() - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, values.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

BoxStats box_stats(std::vector<double> values) {
  BoxStats s;
  s.n = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.q1 = quantile_type7(values, 0.25);
  s.median = quantile_type7(values, 0.50);
  s.q3 = quantile_type7(values, 0.75);
  double iqr = s.q3 - s.q1;
  double lo_fence = s.q1 - 1.5 * iqr;
  double hi_fence = s.q3 + 1.5 * iqr;
  s.whisker_lo = values.back();
  s.whisker_hi = values.front();
  for (double v : values) {
    if (v >= lo_fence) {
      s.whisker_lo = v;
      break;
    }
  }
  for (auto it = values.rbegin(); it != values.rend(); ++it) {
    if (*it <= hi_fence) {
      s.whisker_hi = *it;
      break;
    }
  }
  for (double v : values) s.outliers += (v < lo_fence || v > hi_fence);
  return s;
}

}  // namespace recourse
