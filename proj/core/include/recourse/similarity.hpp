#pragma once

#include <cstddef>
#include <vector>

#include "recourse/dataset.hpp"

namespace recourse {

enum class DistanceNorm { L1, L2 };

/// Per-feature distance in [0, 1]: normalized Manhattan for
/// continuous/ordinal features, 0/1 overlap for categorical ones.
/// A zero range makes the feature contribute 0 (warned once at metric
/// construction, not per call).
double feature_distance(double a, double b, FeatureKind kind, double range);

/// Mixed-type instance distance over a dataset's covariates: the sum of
/// per-feature distances (L1), or the Euclidean combination of them when the
/// norm is L2 (all-continuous schemas only).
class DistanceMetric {
public:
  DistanceMetric(const FeatureSchema& schema, DistanceNorm norm = DistanceNorm::L1);

  double operator()(Instance a, Instance b) const;

  const std::vector<std::size_t>& feature_indices() const { return idx_; }
  bool had_zero_range_warning() const { return zero_range_warned_; }

private:
  std::vector<std::size_t> idx_;
  std::vector<FeatureKind> kinds_;
  std::vector<double> ranges_;
  DistanceNorm norm_;
  bool zero_range_warned_ = false;
};

/// Situation-testing neighborhood around a center individual: all instances
/// whose distance from the center is within the empirical q-quantile
/// (nearest rank) of the center's distance vector. The center itself is a
/// member at distance 0. Members are split by the sensitive value.
struct Neighborhood {
  std::size_t center = 0;
  double quantile = 1.0;
  double threshold = 0.0;
  std::vector<std::size_t> members_s0;  // sensitive == protected_value
  std::vector<std::size_t> members_s1;
};

Neighborhood build_neighborhood(const Dataset& data, std::size_t center, double q,
                                const DistanceMetric& metric, double protected_value);

/// Nearest-rank empirical quantile: the ceil(q*n)-th smallest value.
/// Requires q in (0, 1].
double nearest_rank_quantile(std::vector<double> values, double q);

}  // namespace recourse
