#pragma once

#include <string>
#include <vector>

#include "recourse/dataset.hpp"

namespace recourse {

struct Prediction {
  int label = 0;     // 1 = favorable
  double score = 0;  // P(favorable), in the open interval (0, 1)
};

/// Logistic regression over standardized inputs. Immutable after fitting;
/// predict() is pure and thread-safe.
class Classifier {
public:
  Classifier() = default;
  Classifier(std::vector<std::string> features, std::vector<double> weights,
             double intercept, std::vector<double> mean, std::vector<double> sd,
             bool converged, double final_grad_norm, std::size_t iterations);

  const std::vector<std::string>& features() const { return features_; }
  const std::vector<double>& weights() const { return weights_; }
  double intercept() const { return intercept_; }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& sd() const { return sd_; }
  bool converged() const { return converged_; }
  double final_grad_norm() const { return final_grad_norm_; }
  std::size_t iterations() const { return iterations_; }

  /// Raw-unit weight d(logit)/d(x_j) for classifier feature j.
  double unit_weight(std::size_t j) const { return weights_[j] / sd_[j]; }

  double logit(const std::vector<double>& raw_features) const;
  Prediction predict_features(const std::vector<double>& raw_features) const;

  /// Predict from a schema row; features are picked out by name.
  Prediction predict(const FeatureSchema& schema, Instance x) const;
  std::vector<double> extract_features(const FeatureSchema& schema, Instance x) const;

private:
  std::vector<std::string> features_;
  std::vector<double> weights_;
  double intercept_ = 0.0;
  std::vector<double> mean_;
  std::vector<double> sd_;
  bool converged_ = false;
  double final_grad_norm_ = 0.0;
  std::size_t iterations_ = 0;
};

struct FitOptions {
  double l2_lambda = 1e-6;       // on weights only; keeps the optimum unique
  double tolerance = 1e-8;       // gradient max-norm
  std::size_t max_iterations = 10000;
  bool warn_on_nonconvergence = true;
};

/// Maximum-likelihood fit (mean log-loss + l2) by batch gradient descent with
/// backtracking line search. Deterministic: same data + options give
/// bit-identical weights. Standardization is computed on the training data
/// and frozen into the model. The fitted positive class (label 1, the
/// favorable side) is the rows whose label column equals favorable_label.
/// Throws FitError when labels are single-class.
Classifier fit_classifier(const Dataset& data, const std::vector<std::string>& features,
                          const std::string& label_column, const FitOptions& opts = {},
                          double favorable_label = 1.0);

/// Numerically stable sigmoid clamped to the open interval (0, 1).
double sigmoid(double z);

}  // namespace recourse
