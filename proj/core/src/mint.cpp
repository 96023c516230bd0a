#include "recourse/mint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "recourse/errors.hpp"

namespace recourse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasSlack = 1e-9;

// One linear inequality a . delta >= b, row-normalized by max |a_i|.
struct Row {
  std::vector<double> a;
  double b = 0.0;
};

struct Candidate {
  std::vector<double> delta;
  double cost = kInf;
  double l2 = kInf;
};

// Unit-delta propagation for intervention set J: the column of the affine
// map x^SCF = x + M delta belonging to `probe`. Every node in J is severed
// from its parents regardless of its probe value.
std::vector<double> propagate_unit(const CausalModel& model,
                                   const std::vector<std::string>& J, const std::string& probe) {
  std::vector<double> change(model.schema().size(), 0.0);
  for (const auto& node : model.graph().nodes()) {
    const std::size_t col = model.column_of(node);
    if (std::find(J.begin(), J.end(), node) != J.end()) {
      change[col] = node == probe ? 1.0 : 0.0;
      continue;
    }
    if (model.graph().is_root(node)) continue;
    const auto& parents = model.graph().parents(node);
    const auto& eq = model.equation(node);
    double acc = 0.0;
    for (std::size_t p = 0; p < parents.size(); ++p)
      acc += eq.coefficients[p] * change[model.column_of(parents[p])];
    change[col] = acc;
  }
  return change;
}

// Effective delta bounds for one node under its direction class.
Interval delta_bounds(const NodeConstraint& c) {
  Interval b{c.delta_min, c.delta_max};
  if (c.direction == DirectionBound::IncreaseOnly) b.lo = std::max(b.lo, 0.0);
  if (c.direction == DirectionBound::DecreaseOnly) b.hi = std::min(b.hi, 0.0);
  return b;
}

// Solves the k x k system A x = rhs by Gaussian elimination with partial
// pivoting. Returns false when singular within tolerance.
bool solve_square(std::vector<std::vector<double>> A, std::vector<double> rhs,
                  std::vector<double>& out) {
  const std::size_t k = A.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-12) return false;
    std::swap(A[piv], A[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      double f = A[r][col] / A[col][col];
      if (f == 0.0) continue;
      for (std::size_t c2 = col; c2 < k; ++c2) A[r][c2] -= f * A[col][c2];
      rhs[r] -= f * rhs[col];
    }
  }
  out.resize(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = rhs[i] / A[i][i];
  return true;
}

void combinations_rec(std::size_t n, std::size_t k, std::size_t start,
                      std::vector<std::size_t>& cur,
                      std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations_rec(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  combinations_rec(n, k, 0, cur, out);
  return out;
}

}  // namespace

double action_cost(const Action& action, const CostSpec& spec) {
  double c = 0.0;
  for (const auto& [node, delta] : action.deltas) {
    if (!spec.covers(node))
      throw PreconditionError("cost: no range declared for node '" + node + "'");
    c += spec.weight(node) * std::abs(delta) / spec.range(node);
  }
  return c;
}

MintResult solve_mint(const CausalModel& model, const Classifier& h, Instance x_factual,
                      const ConstraintSet& constraints, const CostSpec& spec,
                      const MintOptions& opts) {
  const FeatureSchema& schema = model.schema();
  Prediction factual = h.predict(schema, x_factual);
  if (factual.label != 0)
    throw PreconditionError("solve_mint: instance is already favorably classified");

  std::vector<std::string> actionable = constraints.actionable_nodes();
  std::erase_if(actionable, [&](const std::string& n) { return !model.graph().has_node(n); });
  std::sort(actionable.begin(), actionable.end());

  MintResult result;
  if (actionable.empty()) {
    result.reason = NoRecourseReason::Infeasible;
    return result;
  }

  const double target_logit =
      std::log((0.5 + opts.flip_margin) / (0.5 - opts.flip_margin));
  const double needed = target_logit - h.logit(h.extract_features(schema, x_factual));

  // Per-classifier-feature raw-unit weights, addressed by column.
  std::vector<double> unit_w(schema.size(), 0.0);
  for (std::size_t f = 0; f < h.features().size(); ++f)
    unit_w[schema.index_of(h.features()[f])] += h.unit_weight(f);

  bool any_unbounded_axis = false;
  Action best_action;
  double best_cost = kInf;
  double best_l2 = kInf;
  std::vector<double> best_scf;

  auto replay_ok = [&](const Action& act, std::vector<double>& scf_out) {
    scf_out = counterfactual(model, x_factual, act);
    Prediction p = h.predict(schema, Instance(scf_out.data(), scf_out.size()));
    if (p.label != 1) return false;
    for (std::size_t i : schema.covariate_indices()) {
      Interval box = constraints.plausibility(schema.column(i).name);
      double span = std::max(1.0, std::abs(scf_out[i]));
      if (!box.contains(scf_out[i], kFeasSlack * span)) return false;
    }
    for (const auto& [node, delta] : act.deltas) {
      Interval b = delta_bounds(constraints.get(node));
      double span = std::max(1.0, std::abs(delta));
      if (!b.contains(delta, kFeasSlack * span)) return false;
    }
    return true;
  };

  // Scan intervention subsets smallest-first; lexicographic inside one size,
  // so equal-cost ties resolve to the earliest subset.
  for (std::size_t size = 1; size <= actionable.size(); ++size) {
    for (const auto& combo : combinations(actionable.size(), size)) {
      std::vector<std::string> J(size);
      for (std::size_t i = 0; i < size; ++i) J[i] = actionable[combo[i]];

      // Affine map columns and the flip gradient g.
      std::vector<std::vector<double>> M(size);  // M[i] = column for J[i]
      std::vector<double> g(size, 0.0);
      for (std::size_t i = 0; i < size; ++i) {
        M[i] = propagate_unit(model, J, J[i]);
        for (std::size_t c = 0; c < schema.size(); ++c) g[i] += unit_w[c] * M[i][c];
      }

      std::vector<double> cost_coef(size);
      for (std::size_t i = 0; i < size; ++i) {
        if (!spec.covers(J[i]))
          throw PreconditionError("solve_mint: no cost range for '" + J[i] + "'");
        cost_coef[i] = spec.weight(J[i]) / spec.range(J[i]);
      }

      // Inequality rows a . delta >= b.
      std::vector<Row> rows;
      bool subset_infeasible = false;
      {
        Row flip;
        flip.a = g;
        flip.b = needed;
        rows.push_back(std::move(flip));
      }
      for (std::size_t i = 0; i < size; ++i) {
        Interval b = delta_bounds(constraints.get(J[i]));
        if (b.lo > b.hi) subset_infeasible = true;
        if (std::isfinite(b.lo)) {
          Row r;
          r.a.assign(size, 0.0);
          r.a[i] = 1.0;
          r.b = b.lo;
          rows.push_back(std::move(r));
        } else {
          any_unbounded_axis = true;
        }
        if (std::isfinite(b.hi)) {
          Row r;
          r.a.assign(size, 0.0);
          r.a[i] = -1.0;
          r.b = -b.hi;
          rows.push_back(std::move(r));
        } else {
          any_unbounded_axis = true;
        }
      }
      for (std::size_t c : schema.covariate_indices()) {
        Interval box = constraints.plausibility(schema.column(c).name);
        if (!std::isfinite(box.lo) && !std::isfinite(box.hi)) continue;
        std::vector<double> coef(size);
        bool moves = false;
        for (std::size_t i = 0; i < size; ++i) {
          coef[i] = M[i][c];
          moves = moves || coef[i] != 0.0;
        }
        double xc = x_factual[c];
        if (!moves) {
          if (!box.contains(xc, kFeasSlack * std::max(1.0, std::abs(xc))))
            subset_infeasible = true;
          continue;
        }
        if (std::isfinite(box.lo)) {
          Row r;
          r.a = coef;
          r.b = box.lo - xc;
          rows.push_back(std::move(r));
        }
        if (std::isfinite(box.hi)) {
          Row r;
          r.a.assign(size, 0.0);
          for (std::size_t i = 0; i < size; ++i) r.a[i] = -coef[i];
          r.b = xc - box.hi;
          rows.push_back(std::move(r));
        }
      }
      if (subset_infeasible) continue;

      // Row normalization so one feasibility slack fits all scales.
      for (auto& r : rows) {
        double scale = 0.0;
        for (double v : r.a) scale = std::max(scale, std::abs(v));
        if (scale > 0.0) {
          for (double& v : r.a) v /= scale;
          r.b /= scale;
        }
      }

      // Candidate points: intersections of `size` planes drawn from the
      // inequality rows (as equalities) and the coordinate kink planes
      // delta_i = 0. A weighted-L1 minimum over a polyhedron is attained at
      // such a point.
      const std::size_t n_planes = rows.size() + size;
      auto plane = [&](std::size_t p, std::vector<double>& a, double& b) {
        if (p < rows.size()) {
          a = rows[p].a;
          b = rows[p].b;
        } else {
          a.assign(size, 0.0);
          a[p - rows.size()] = 1.0;
          b = 0.0;
        }
      };

      Candidate best_local;
      for (const auto& pick : combinations(n_planes, size)) {
        std::vector<std::vector<double>> A(size);
        std::vector<double> rhs(size);
        for (std::size_t i = 0; i < size; ++i) plane(pick[i], A[i], rhs[i]);
        std::vector<double> delta;
        if (!solve_square(A, rhs, delta)) continue;
        // Exact zeros where a kink plane was chosen.
        for (std::size_t i = 0; i < size; ++i)
          if (pick[i] >= rows.size()) delta[pick[i] - rows.size()] = 0.0;
        bool feasible = true;
        for (const auto& r : rows) {
          double lhs = 0.0;
          for (std::size_t i = 0; i < size; ++i) lhs += r.a[i] * delta[i];
          double span = std::max({1.0, std::abs(lhs), std::abs(r.b)});
          if (lhs < r.b - kFeasSlack * span) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;
        double cost = 0.0, l2 = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
          cost += cost_coef[i] * std::abs(delta[i]);
          l2 += delta[i] * delta[i];
        }
        if (cost < best_local.cost - opts.tie_tolerance ||
            (std::abs(cost - best_local.cost) <= opts.tie_tolerance && l2 < best_local.l2)) {
          best_local.delta = delta;
          best_local.cost = cost;
          best_local.l2 = l2;
        }
      }
      if (best_local.delta.empty()) continue;

      Action act;
      for (std::size_t i = 0; i < size; ++i)
        if (best_local.delta[i] != 0.0) act.deltas[J[i]] = best_local.delta[i];
      // All deltas zero cannot flip (the factual is unfavorable), skip.
      if (act.deltas.empty()) continue;
      std::vector<double> scf;
      if (!replay_ok(act, scf)) continue;
      double cost = action_cost(act, spec);

      bool better = cost < best_cost - opts.tie_tolerance;
      if (!better && std::abs(cost - best_cost) <= opts.tie_tolerance) {
        if (act.deltas.size() < best_action.deltas.size())
          better = true;
        else if (act.deltas.size() == best_action.deltas.size() && best_local.l2 < best_l2)
          better = true;
      }
      if (better) {
        best_action = std::move(act);
        best_cost = cost;
        best_l2 = best_local.l2;
        best_scf = std::move(scf);
      }
    }
  }

  if (best_cost == kInf) {
    result.reason =
        any_unbounded_axis ? NoRecourseReason::SearchLimit : NoRecourseReason::Infeasible;
    return result;
  }
  result.solution = RecourseSolution{std::move(best_action), best_cost, std::move(best_scf)};
  result.reason = NoRecourseReason::None;
  return result;
}

std::optional<RecourseSolution> brute_force_oracle(const CausalModel& model, const Classifier& h,
                                                   Instance x_factual,
                                                   const ConstraintSet& constraints,
                                                   const CostSpec& spec,
                                                   const OracleOptions& opts) {
  const FeatureSchema& schema = model.schema();
  Prediction factual = h.predict(schema, x_factual);
  if (factual.label != 0)
    throw PreconditionError("brute_force_oracle: instance is already favorably classified");

  std::vector<std::string> axes = constraints.actionable_nodes();
  std::erase_if(axes, [&](const std::string& n) { return !model.graph().has_node(n); });
  std::sort(axes.begin(), axes.end());
  if (axes.size() > 3)
    throw PreconditionError("brute_force_oracle: refuses more than 3 actionable features");
  if (axes.empty()) return std::nullopt;

  std::vector<std::vector<double>> grids;
  for (const auto& node : axes) {
    Interval b = delta_bounds(constraints.get(node));
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi))
      throw PreconditionError("brute_force_oracle: unbounded delta box on '" + node + "'");
    std::vector<double> pts;
    const std::size_t k = std::max<std::size_t>(opts.grid_points_per_axis, 2);
    for (std::size_t i = 0; i < k; ++i)
      pts.push_back(b.lo + (b.hi - b.lo) * static_cast<double>(i) / static_cast<double>(k - 1));
    if (b.contains(0.0)) pts.push_back(0.0);  // delta = 0 means "not intervened"
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    grids.push_back(std::move(pts));
  }

  const double target_score = 0.5 + opts.flip_margin;
  std::optional<RecourseSolution> best;

  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    Action act;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      double d = grids[i][idx[i]];
      if (d != 0.0) act.deltas[axes[i]] = d;
    }
    if (!act.deltas.empty()) {
      std::vector<double> scf = counterfactual(model, x_factual, act);
      Prediction p = h.predict(schema, Instance(scf.data(), scf.size()));
      if (p.score >= target_score) {
        bool plausible = true;
        for (std::size_t c : schema.covariate_indices()) {
          if (!constraints.plausibility(schema.column(c).name).contains(scf[c])) {
            plausible = false;
            break;
          }
        }
        if (plausible) {
          double cost = action_cost(act, spec);
          if (!best || cost < best->cost)
            best = RecourseSolution{std::move(act), cost, std::move(scf)};
        }
      }
    }
    std::size_t i = 0;
    for (; i < axes.size(); ++i) {
      if (++idx[i] < grids[i].size()) break;
      idx[i] = 0;
    }
    if (i == axes.size()) break;
  }
  return best;
}

}  // namespace recourse
