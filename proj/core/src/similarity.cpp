#include "recourse/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "recourse/errors.hpp"

namespace recourse {

double feature_distance(double a, double b, FeatureKind kind, double range) {
  if (kind == FeatureKind::Categorical) return a == b ? 0.0 : 1.0;
  if (range <= 0.0) return 0.0;  // degenerate feature, contributes nothing
  return std::abs(a - b) / range;
}

DistanceMetric::DistanceMetric(const FeatureSchema& schema, DistanceNorm norm) : norm_(norm) {
  for (std::size_t i : schema.covariate_indices()) {
    const auto& col = schema.column(i);
    if (norm == DistanceNorm::L2 && col.kind == FeatureKind::Categorical)
      throw SchemaError("distance: l2 norm requires all-continuous covariates ('" + col.name +
                        "' is categorical)");
    idx_.push_back(i);
    kinds_.push_back(col.kind);
    ranges_.push_back(col.range());
    if (col.kind != FeatureKind::Categorical && col.range() <= 0.0 && !zero_range_warned_) {
      std::fprintf(stderr, "distance: feature '%s' has zero range; it contributes 0\n",
                   col.name.c_str());
      zero_range_warned_ = true;
    }
  }
}

double DistanceMetric::operator()(Instance a, Instance b) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    double d = feature_distance(a[idx_[k]], b[idx_[k]], kinds_[k], ranges_[k]);
    acc += norm_ == DistanceNorm::L1 ? d : d * d;
  }
  return norm_ == DistanceNorm::L1 ? acc : std::sqrt(acc);
}

double nearest_rank_quantile(std::vector<double> values, double q) {
  if (q <= 0.0 || q > 1.0) throw PreconditionError("quantile must be in (0, 1]");
  if (values.empty()) throw PreconditionError("quantile of empty set");
  std::size_t k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  k = std::min(std::max<std::size_t>(k, 1), values.size());
  std::nth_element(values.begin(), values.begin() + (k - 1), values.end());
  return values[k - 1];
}

Neighborhood build_neighborhood(const Dataset& data, std::size_t center, double q,
                                const DistanceMetric& metric, double protected_value) {
  Neighborhood nb;
  nb.center = center;
  nb.quantile = q;
  std::vector<double> dist(data.rows());
  Instance c = data.row(center);
  for (std::size_t r = 0; r < data.rows(); ++r) dist[r] = metric(c, data.row(r));
  nb.threshold = nearest_rank_quantile(dist, q);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    if (dist[r] > nb.threshold) continue;
    (data.sensitive(r) == protected_value ? nb.members_s0 : nb.members_s1).push_back(r);
  }
  return nb;
}

}  // namespace recourse
