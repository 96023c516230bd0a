#pragma once

#include <map>
#include <string>
#include <vector>

#include "recourse/dataset.hpp"

namespace recourse {

/// Directed acyclic graph over covariate (and sensitive) nodes.
/// Nodes are referenced by column name; the stored order is a topological
/// sort, validated at construction.
class CausalGraph {
public:
  CausalGraph() = default;
  /// parents: node -> ordered parent list. Every node must appear as a key
  /// (roots map to an empty list). Throws SchemaError on cycles or unknown
  /// parent references.
  explicit CausalGraph(std::map<std::string, std::vector<std::string>> parents);

  const std::vector<std::string>& nodes() const { return topo_order_; }
  const std::vector<std::string>& parents(const std::string& node) const;
  bool has_node(const std::string& node) const;
  bool is_root(const std::string& node) const { return parents(node).empty(); }

  /// Nodes with `node` among their parents, in topological order.
  std::vector<std::string> children(const std::string& node) const;

private:
  std::map<std::string, std::vector<std::string>> parents_;
  std::vector<std::string> topo_order_;
};

/// child = intercept + coefficients . parents + u
struct StructuralEquation {
  std::string child;
  std::vector<double> coefficients;  // one per parent, in graph parent order
  double intercept = 0.0;
};

/// Exogenous values per node, in graph topological order.
using ExogenousVector = std::vector<double>;

/// Intervention set: node -> delta. The key set is J.
struct Action {
  std::map<std::string, double> deltas;

  bool empty() const { return deltas.empty(); }
};

/// Linear-Gaussian structural causal model fitted to a dataset.
/// Immutable after fitting; all member operations are pure.
class CausalModel {
public:
  CausalModel() = default;
  CausalModel(CausalGraph graph, std::map<std::string, StructuralEquation> equations,
              FeatureSchema schema);

  const CausalGraph& graph() const { return graph_; }
  const FeatureSchema& schema() const { return schema_; }
  bool has_equation(const std::string& node) const;
  const StructuralEquation& equation(const std::string& node) const;

  /// f_node(parent values): evaluates the structural equation.
  double mechanism(const std::string& node, const std::vector<double>& parent_values) const;

  /// Column index of a node in the schema.
  std::size_t column_of(const std::string& node) const;

private:
  CausalGraph graph_;
  std::map<std::string, StructuralEquation> equations_;
  FeatureSchema schema_;
};

/// OLS per non-root node on its parents (with intercept). Residuals define
/// the exogenous terms. Throws FitError naming the node when the design is
/// singular; falls back to a spectral pseudo-inverse when the Gram matrix
/// condition number exceeds 1e12.
CausalModel fit_causal_model(const Dataset& data, const CausalGraph& graph);

/// u_j = x_j - f_j(pa_j(x)) for non-root nodes; u_j = x_j for roots.
/// Ordered like graph().nodes().
ExogenousVector abduct(const CausalModel& model, Instance x);

/// Abduction-action-prediction. In topological order:
///   j in J:      x_j^SCF = x_j^F + delta_j              (severed from parents)
///   j not in J:  x_j^SCF = x_j^F + f_j(pa^SCF) - f_j(pa^F)
/// Columns not in the graph pass through unchanged. Throws PreconditionError
/// for deltas on nodes absent from the graph.
std::vector<double> counterfactual(const CausalModel& model, Instance x_factual,
                                   const Action& action);

}  // namespace recourse
