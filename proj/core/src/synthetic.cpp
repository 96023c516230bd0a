#include "recourse/synthetic.hpp"

#include <cmath>
#include <string>

#include "recourse/classifier.hpp"
#include "recourse/rng.hpp"
#include "recourse/stats.hpp"

namespace recourse {

Dataset generate_synthetic(std::size_t n, double alpha, std::uint64_t seed) {
  ColumnRng r1(seed, "x1"), r2(seed, "x2"), r3(seed, "x3");

  std::vector<double> x1(n), x2(n), x3(n);
  for (std::size_t i = 0; i < n; ++i) x1[i] = r1.bernoulli(0.5) ? 1.0 : 0.0;
  for (std::size_t i = 0; i < n; ++i) x2[i] = alpha * x1[i] + r2.normal(3.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) x3[i] = r3.normal(0.0, 1.0);

  // y = 1 iff sigmoid(std(x2 + x3)) >= 0.5, standardized with the batch's
  // own mean/sd (deterministic threshold, not a Bernoulli draw).
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = x2[i] + x3[i];
  double m = mean(z);
  double var = 0.0;
  for (double v : z) var += (v - m) * (v - m);
  double sd = n ? std::sqrt(var / static_cast<double>(n)) : 1.0;
  if (sd == 0.0) sd = 1.0;

  std::vector<double> values;
  values.reserve(n * 4);
  for (std::size_t i = 0; i < n; ++i) {
    double y = sigmoid((z[i] - m) / sd) >= 0.5 ? 1.0 : 0.0;
    values.push_back(x1[i]);
    values.push_back(x2[i]);
    values.push_back(x3[i]);
    values.push_back(y);
  }

  FeatureSchema schema({
      {"x1", FeatureKind::Categorical, ColumnRole::Sensitive},
      {"x2", FeatureKind::Continuous, ColumnRole::Covariate},
      {"x3", FeatureKind::Continuous, ColumnRole::Covariate},
      {"y", FeatureKind::Categorical, ColumnRole::Outcome},
  });
  std::string provenance = "synthetic(n=" + std::to_string(n) +
                           ",alpha=" + std::to_string(alpha) +
                           ",seed=" + std::to_string(seed) + ")";
  return Dataset(std::move(schema), std::move(values), n, std::move(provenance), seed);
}

}  // namespace recourse
