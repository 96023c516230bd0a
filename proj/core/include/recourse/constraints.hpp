#pragma once

#include <limits>
#include <map>
#include <string>

#include "recourse/dataset.hpp"

namespace recourse {

enum class Actionability { Immutable, MutableNonActionable, Actionable };
enum class DirectionBound { Free, IncreaseOnly, DecreaseOnly };

struct NodeConstraint {
  Actionability actionability = Actionability::MutableNonActionable;
  DirectionBound direction = DirectionBound::Free;
  double delta_min = -std::numeric_limits<double>::infinity();
  double delta_max = std::numeric_limits<double>::infinity();
};

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double v, double slack = 0.0) const {
    return v >= lo - slack && v <= hi + slack;
  }
};

/// Feasibility classes and bounds (which features may be acted on, and how)
/// plus plausibility box bounds the counterfactual must satisfy.
/// The sensitive variable is never actionable; set_sensitive() enforces it.
class ConstraintSet {
public:
  void set(const std::string& node, NodeConstraint c);
  const NodeConstraint& get(const std::string& node) const;
  bool is_actionable(const std::string& node) const;

  /// Declares the sensitive node; downgrades any actionable marking and
  /// rejects later attempts to mark it actionable.
  void set_sensitive(const std::string& node);
  const std::string& sensitive() const { return sensitive_; }

  void set_plausibility(const std::string& node, Interval box);
  Interval plausibility(const std::string& node) const;  // unbounded when unset

  /// Plausibility boxes from the observed per-feature [min, max] of a
  /// dataset's covariates (the library default).
  void set_observed_plausibility(const Dataset& data);

  std::vector<std::string> actionable_nodes() const;

private:
  std::map<std::string, NodeConstraint> nodes_;
  std::map<std::string, Interval> plausibility_;
  std::string sensitive_;
};

/// Per-feature normalization for the action cost: cost(A) = sum of
/// weight_j * |delta_j| / range_j over the intervened features.
class CostSpec {
public:
  void set(const std::string& node, double range, double weight = 1.0);
  double range(const std::string& node) const;
  double weight(const std::string& node) const;
  bool covers(const std::string& node) const;

  /// Ranges from a dataset's observed covariate spans, unit weights.
  static CostSpec from_observed_ranges(const Dataset& data);

private:
  struct Entry {
    double range = 1.0;
    double weight = 1.0;
  };
  std::map<std::string, Entry> entries_;
};

}  // namespace recourse
