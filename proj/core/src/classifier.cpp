#include "recourse/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "recourse/errors.hpp"

namespace recourse {

double sigmoid(double z) {
  double s;
  if (z >= 0) {
    s = 1.0 / (1.0 + std::exp(-z));
  } else {
    double e = std::exp(z);
    s = e / (1.0 + e);
  }
  // Keep the score in the open interval; saturation would otherwise round to
  // exactly 0 or 1 for |z| > ~37.
  const double lo = 1e-300;
  const double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2;
  return std::min(std::max(s, lo), hi);
}

Classifier::Classifier(std::vector<std::string> features, std::vector<double> weights,
                       double intercept, std::vector<double> mean, std::vector<double> sd,
                       bool converged, double final_grad_norm, std::size_t iterations)
    : features_(std::move(features)),
      weights_(std::move(weights)),
      intercept_(intercept),
      mean_(std::move(mean)),
      sd_(std::move(sd)),
      converged_(converged),
      final_grad_norm_(final_grad_norm),
      iterations_(iterations) {}

double Classifier::logit(const std::vector<double>& raw) const {
  if (raw.size() != weights_.size())
    throw SchemaError("classifier: expected " + std::to_string(weights_.size()) +
                      " features, got " + std::to_string(raw.size()));
  double z = intercept_;
  for (std::size_t j = 0; j < weights_.size(); ++j)
    z += weights_[j] * (raw[j] - mean_[j]) / sd_[j];
  return z;
}

Prediction Classifier::predict_features(const std::vector<double>& raw) const {
  double s = sigmoid(logit(raw));
  return Prediction{s >= 0.5 ? 1 : 0, s};
}

std::vector<double> Classifier::extract_features(const FeatureSchema& schema, Instance x) const {
  std::vector<double> raw(features_.size());
  for (std::size_t j = 0; j < features_.size(); ++j) raw[j] = x[schema.index_of(features_[j])];
  return raw;
}

Prediction Classifier::predict(const FeatureSchema& schema, Instance x) const {
  return predict_features(extract_features(schema, x));
}

Classifier fit_classifier(const Dataset& data, const std::vector<std::string>& features,
                          const std::string& label_column, const FitOptions& opts,
                          double favorable_label) {
  const std::size_t n = data.rows();
  const std::size_t d = features.size();
  const std::size_t ycol = data.schema().index_of(label_column);

  std::set<double> label_values;
  std::size_t pos = 0;
  for (std::size_t r = 0; r < n; ++r) {
    double y = data.at(r, ycol);
    label_values.insert(y);
    pos += y == favorable_label;
  }
  if (label_values.size() > 2)
    throw FitError("fit_classifier: labels must be binary, found " +
                   std::to_string(label_values.size()) + " distinct values");
  if (pos == 0 || pos == n)
    throw FitError("fit_classifier: degenerate labels (single class)");

  std::vector<std::size_t> cols(d);
  for (std::size_t j = 0; j < d; ++j) cols[j] = data.schema().index_of(features[j]);

  // Standardization statistics, frozen into the model.
  std::vector<double> mu(d, 0.0), sd(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += data.at(r, cols[j]);
    mu[j] = s / static_cast<double>(n);
    double v = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double c = data.at(r, cols[j]) - mu[j];
      v += c * c;
    }
    sd[j] = std::sqrt(v / static_cast<double>(n));
    if (sd[j] == 0.0) sd[j] = 1.0;  // constant feature carries no signal
  }

  std::vector<double> Z(n * d);
  std::vector<double> y(n);
  for (std::size_t r = 0; r < n; ++r) {
    y[r] = data.at(r, ycol) == favorable_label ? 1.0 : 0.0;
    for (std::size_t j = 0; j < d; ++j) Z[r * d + j] = (data.at(r, cols[j]) - mu[j]) / sd[j];
  }

  const double lam = opts.l2_lambda;
  std::vector<double> w(d, 0.0);
  double b = 0.0;

  auto loss = [&](const std::vector<double>& wv, double bv) {
    double L = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double t = bv;
      for (std::size_t j = 0; j < d; ++j) t += wv[j] * Z[r * d + j];
      double m = y[r] == 1.0 ? t : -t;
      // log(1 + exp(-m)), stable for large |m|
      L += m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
    }
    L /= static_cast<double>(n);
    double pen = 0.0;
    for (double v : wv) pen += v * v;
    return L + 0.5 * lam * pen;
  };

  std::vector<double> gw(d), w_try(d);
  double L = loss(w, b);
  double step = 1.0;
  double gnorm = std::numeric_limits<double>::infinity();
  std::size_t it = 0;
  for (; it < opts.max_iterations; ++it) {
    std::fill(gw.begin(), gw.end(), 0.0);
    double gb = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double t = b;
      for (std::size_t j = 0; j < d; ++j) t += w[j] * Z[r * d + j];
      double resid = sigmoid(t) - y[r];
      gb += resid;
      for (std::size_t j = 0; j < d; ++j) gw[j] += resid * Z[r * d + j];
    }
    gb /= static_cast<double>(n);
    gnorm = std::abs(gb);
    for (std::size_t j = 0; j < d; ++j) {
      gw[j] = gw[j] / static_cast<double>(n) + lam * w[j];
      gnorm = std::max(gnorm, std::abs(gw[j]));
    }
    if (gnorm < opts.tolerance) break;

    // Backtracking line search, Armijo condition; the accepted step seeds
    // the next iteration doubled.
    double g2 = gb * gb;
    for (std::size_t j = 0; j < d; ++j) g2 += gw[j] * gw[j];
    bool accepted = false;
    while (step > 1e-18) {
      for (std::size_t j = 0; j < d; ++j) w_try[j] = w[j] - step * gw[j];
      double b_try = b - step * gb;
      double L_try = loss(w_try, b_try);
      if (L_try <= L - 1e-4 * step * g2) {
        w.swap(w_try);
        b = b_try;
        L = L_try;
        step *= 2.0;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // step underflow: at numerical stationarity
  }

  bool converged = gnorm < opts.tolerance;
  if (!converged && opts.warn_on_nonconvergence)
    std::fprintf(stderr,
                 "fit_classifier: not converged after %zu iterations (gradient max-norm %.3e)\n",
                 it, gnorm);
  return Classifier(features, std::move(w), b, std::move(mu), std::move(sd), converged, gnorm,
                    it);
}

}  // namespace recourse
