#include "recourse/constraints.hpp"

#include "recourse/errors.hpp"

namespace recourse {

void ConstraintSet::set(const std::string& node, NodeConstraint c) {
  if (node == sensitive_ && c.actionability == Actionability::Actionable)
    throw PreconditionError("constraints: sensitive variable '" + node +
                            "' can never be actionable");
  nodes_[node] = c;
}

const NodeConstraint& ConstraintSet::get(const std::string& node) const {
  static const NodeConstraint kDefault{};
  auto it = nodes_.find(node);
  return it == nodes_.end() ? kDefault : it->second;
}

bool ConstraintSet::is_actionable(const std::string& node) const {
  return get(node).actionability == Actionability::Actionable;
}

void ConstraintSet::set_sensitive(const std::string& node) {
  sensitive_ = node;
  auto it = nodes_.find(node);
  if (it == nodes_.end()) {
    NodeConstraint c;
    c.actionability = Actionability::Immutable;
    nodes_[node] = c;
  } else if (it->second.actionability == Actionability::Actionable) {
    it->second.actionability = Actionability::Immutable;
  }
}

void ConstraintSet::set_plausibility(const std::string& node, Interval box) {
  plausibility_[node] = box;
}

Interval ConstraintSet::plausibility(const std::string& node) const {
  auto it = plausibility_.find(node);
  return it == plausibility_.end() ? Interval{} : it->second;
}

void ConstraintSet::set_observed_plausibility(const Dataset& data) {
  for (std::size_t i : data.schema().covariate_indices()) {
    const auto& col = data.schema().column(i);
    set_plausibility(col.name, Interval{col.min, col.max});
  }
}

std::vector<std::string> ConstraintSet::actionable_nodes() const {
  std::vector<std::string> out;
  for (const auto& [node, c] : nodes_)
    if (c.actionability == Actionability::Actionable) out.push_back(node);
  return out;
}

void CostSpec::set(const std::string& node, double range, double weight) {
  if (range <= 0.0)
    throw PreconditionError("cost spec: range for '" + node + "' must be positive");
  if (weight <= 0.0)
    throw PreconditionError("cost spec: weight for '" + node + "' must be positive");
  entries_[node] = Entry{range, weight};
}

double CostSpec::range(const std::string& node) const {
  auto it = entries_.find(node);
  if (it == entries_.end())
    throw PreconditionError("cost spec: no entry for node '" + node + "'");
  return it->second.range;
}

double CostSpec::weight(const std::string& node) const {
  auto it = entries_.find(node);
  if (it == entries_.end())
    throw PreconditionError("cost spec: no entry for node '" + node + "'");
  return it->second.weight;
}

bool CostSpec::covers(const std::string& node) const { return entries_.count(node) > 0; }

CostSpec CostSpec::from_observed_ranges(const Dataset& data) {
  CostSpec spec;
  for (std::size_t i : data.schema().covariate_indices()) {
    const auto& col = data.schema().column(i);
    if (col.range() > 0.0) spec.set(col.name, col.range());
  }
  return spec;
}

}  // namespace recourse
