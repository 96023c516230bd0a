#include "recourse/scm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "recourse/errors.hpp"

namespace recourse {

namespace {

// Symmetric eigendecomposition by cyclic Jacobi rotations. The Gram matrices
// here are at most (parents + 1)^2 with parents <= 4, so robustness beats
// speed. A returns eigenvalues, V the column eigenvectors.
void jacobi_eigen(std::vector<std::vector<double>> a, std::vector<double>& eigenvalues,
                  std::vector<std::vector<double>>& eigenvectors) {
  const std::size_t n = a.size();
  eigenvectors.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) eigenvectors[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = eigenvectors[k][p], vkq = eigenvectors[k][q];
          eigenvectors[k][p] = c * vkp - s * vkq;
          eigenvectors[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a[i][i];
}

// Solves (X'X) beta = X'y for the OLS design [parents, 1]. Pseudo-inverse
// fallback above condition number 1e12; FitError on a genuinely singular
// design (rank-deficient Gram).
std::vector<double> solve_normal_equations(const std::vector<std::vector<double>>& design,
                                           const std::vector<double>& y,
                                           const std::string& node) {
  const std::size_t n = design.size();
  const std::size_t d = design.empty() ? 0 : design[0].size();
  std::vector<std::vector<double>> gram(d, std::vector<double>(d, 0.0));
  std::vector<double> rhs(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < d; ++i) {
      rhs[i] += design[r][i] * y[r];
      for (std::size_t j = i; j < d; ++j) gram[i][j] += design[r][i] * design[r][j];
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) gram[i][j] = gram[j][i];

  std::vector<double> eig;
  std::vector<std::vector<double>> vec;
  jacobi_eigen(gram, eig, vec);
  double emax = 0.0;
  for (double e : eig) emax = std::max(emax, std::abs(e));
  double emin = emax;
  for (double e : eig) emin = std::min(emin, std::abs(e));

  const double rank_tol = emax * 1e-14 + 1e-300;
  if (n < d || emin <= rank_tol)
    throw FitError("fit_causal_model: singular design for node '" + node +
                   "' (underdetermined or collinear parents)");

  const double cond = emax / emin;
  std::vector<double> beta(d, 0.0);
  // beta = V diag(1/eig) V' rhs; for cond > 1e12 treat tiny modes as zero.
  const bool pinv = cond > 1e12;
  for (std::size_t k = 0; k < d; ++k) {
    if (pinv && std::abs(eig[k]) < emax * 1e-12) continue;
    double proj = 0.0;
    for (std::size_t i = 0; i < d; ++i) proj += vec[i][k] * rhs[i];
    proj /= eig[k];
    for (std::size_t i = 0; i < d; ++i) beta[i] += vec[i][k] * proj;
  }
  return beta;
}

}  // namespace

CausalGraph::CausalGraph(std::map<std::string, std::vector<std::string>> parents)
    : parents_(std::move(parents)) {
  for (const auto& [node, plist] : parents_)
    for (const auto& p : plist)
      if (!parents_.count(p))
        throw SchemaError("graph: node '" + node + "' references unknown parent '" + p + "'");

  // Kahn's algorithm; deterministic order (std::map iteration is sorted).
  std::map<std::string, std::size_t> indegree;
  for (const auto& [node, plist] : parents_) indegree[node] = plist.size();
  std::vector<std::string> ready;
  for (const auto& [node, deg] : indegree)
    if (deg == 0) ready.push_back(node);
  while (!ready.empty()) {
    std::string node = ready.front();
    ready.erase(ready.begin());
    topo_order_.push_back(node);
    for (const auto& [child, plist] : parents_) {
      if (std::find(plist.begin(), plist.end(), node) == plist.end()) continue;
      if (--indegree[child] == 0) ready.push_back(child);
    }
  }
  if (topo_order_.size() != parents_.size()) throw SchemaError("graph: cycle detected");
}

const std::vector<std::string>& CausalGraph::parents(const std::string& node) const {
  auto it = parents_.find(node);
  if (it == parents_.end()) throw SchemaError("graph: unknown node '" + node + "'");
  return it->second;
}

bool CausalGraph::has_node(const std::string& node) const { return parents_.count(node) > 0; }

std::vector<std::string> CausalGraph::children(const std::string& node) const {
  std::vector<std::string> out;
  for (const auto& n : topo_order_) {
    const auto& plist = parents(n);
    if (std::find(plist.begin(), plist.end(), node) != plist.end()) out.push_back(n);
  }
  return out;
}

CausalModel::CausalModel(CausalGraph graph, std::map<std::string, StructuralEquation> equations,
                         FeatureSchema schema)
    : graph_(std::move(graph)), equations_(std::move(equations)), schema_(std::move(schema)) {
  for (const auto& node : graph_.nodes()) {
    if (graph_.is_root(node)) {
      if (equations_.count(node))
        throw SchemaError("scm: root node '" + node + "' must not carry an equation");
    } else {
      auto it = equations_.find(node);
      if (it == equations_.end())
        throw SchemaError("scm: non-root node '" + node + "' misses its equation");
      if (it->second.coefficients.size() != graph_.parents(node).size())
        throw SchemaError("scm: coefficient count mismatch for node '" + node + "'");
    }
  }
}

bool CausalModel::has_equation(const std::string& node) const { return equations_.count(node) > 0; }

const StructuralEquation& CausalModel::equation(const std::string& node) const {
  auto it = equations_.find(node);
  if (it == equations_.end()) throw SchemaError("scm: no equation for node '" + node + "'");
  return it->second;
}

double CausalModel::mechanism(const std::string& node,
                              const std::vector<double>& parent_values) const {
  const auto& eq = equation(node);
  double v = eq.intercept;
  for (std::size_t i = 0; i < eq.coefficients.size(); ++i) v += eq.coefficients[i] * parent_values[i];
  return v;
}

std::size_t CausalModel::column_of(const std::string& node) const {
  return schema_.index_of(node);
}

CausalModel fit_causal_model(const Dataset& data, const CausalGraph& graph) {
  std::size_t max_parents = 0;
  for (const auto& node : graph.nodes()) {
    data.schema().index_of(node);  // missing column -> SchemaError
    max_parents = std::max(max_parents, graph.parents(node).size());
  }
  if (data.rows() < max_parents + 2)
    throw FitError("fit_causal_model: needs at least " + std::to_string(max_parents + 2) +
                   " rows, dataset has " + std::to_string(data.rows()));

  std::map<std::string, StructuralEquation> equations;
  for (const auto& node : graph.nodes()) {
    const auto& parents = graph.parents(node);
    if (parents.empty()) continue;
    const std::size_t n = data.rows();
    const std::size_t d = parents.size() + 1;  // + intercept
    std::vector<std::vector<double>> design(n, std::vector<double>(d, 1.0));
    std::vector<std::size_t> pcol(parents.size());
    for (std::size_t j = 0; j < parents.size(); ++j) pcol[j] = data.schema().index_of(parents[j]);
    const std::size_t ycol = data.schema().index_of(node);
    std::vector<double> y(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < parents.size(); ++j) design[r][j] = data.at(r, pcol[j]);
      y[r] = data.at(r, ycol);
    }
    auto beta = solve_normal_equations(design, y, node);
    StructuralEquation eq;
    eq.child = node;
    eq.coefficients.assign(beta.begin(), beta.end() - 1);
    eq.intercept = beta.back();
    equations.emplace(node, std::move(eq));
  }
  return CausalModel(graph, std::move(equations), data.schema());
}

ExogenousVector abduct(const CausalModel& model, Instance x) {
  const auto& nodes = model.graph().nodes();
  ExogenousVector u(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    double xv = x[model.column_of(node)];
    if (model.graph().is_root(node)) {
      u[i] = xv;
    } else {
      const auto& parents = model.graph().parents(node);
      std::vector<double> pv(parents.size());
      for (std::size_t j = 0; j < parents.size(); ++j) pv[j] = x[model.column_of(parents[j])];
      u[i] = xv - model.mechanism(node, pv);
    }
  }
  return u;
}

std::vector<double> counterfactual(const CausalModel& model, Instance x_factual,
                                   const Action& action) {
  for (const auto& [node, delta] : action.deltas) {
    if (!model.graph().has_node(node))
      throw PreconditionError("counterfactual: delta on unknown node '" + node + "'");
    if (!std::isfinite(delta))
      throw PreconditionError("counterfactual: non-finite delta on '" + node + "'");
  }
  std::vector<double> scf(x_factual.begin(), x_factual.end());
  for (const auto& node : model.graph().nodes()) {
    const std::size_t col = model.column_of(node);
    auto it = action.deltas.find(node);
    if (it != action.deltas.end()) {
      // Intervened: severed from parents.
      scf[col] = x_factual[col] + it->second;
      continue;
    }
    if (model.graph().is_root(node)) continue;
    const auto& parents = model.graph().parents(node);
    std::vector<double> pf(parents.size()), pc(parents.size());
    for (std::size_t j = 0; j < parents.size(); ++j) {
      const std::size_t p = model.column_of(parents[j]);
      pf[j] = x_factual[p];
      pc[j] = scf[p];
    }
    scf[col] = x_factual[col] + model.mechanism(node, pc) - model.mechanism(node, pf);
  }
  return scf;
}

}  // namespace recourse
