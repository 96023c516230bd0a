#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recourse/classifier.hpp"
#include "recourse/constraints.hpp"
#include "recourse/scm.hpp"

namespace recourse {

/// cost(A) = sum_j weight_j * |delta_j| / R_j  (Action invariants checked
/// upstream; spec must cover every intervened node).
double action_cost(const Action& action, const CostSpec& spec);

struct RecourseSolution {
  Action action;
  double cost = 0.0;
  std::vector<double> x_scf;
};

enum class NoRecourseReason {
  None,         ///< a solution was found
  Infeasible,   ///< no feasible flipping action inside the bounds
  SearchLimit,  ///< unbounded action space, yet the boundary is unreachable
};

struct MintResult {
  std::optional<RecourseSolution> solution;
  NoRecourseReason reason = NoRecourseReason::None;

  bool found() const { return solution.has_value(); }
};

struct MintOptions {
  /// Strict flip margin on the favorable score above 0.5; avoids
  /// boundary-exact ambiguity across arithmetic orders.
  double flip_margin = 1e-6;
  /// Candidate costs within this of each other tie-break on
  /// (fewest features, lexicographic node order, smallest delta l2).
  double tie_tolerance = 1e-12;
};

/// Minimal-cost intervention whose structural counterfactual flips the
/// classifier to the favorable side, subject to feasibility (direction and
/// delta boxes) and plausibility (box on every covariate of x^SCF).
///
/// The SCM is linear and the classifier boundary is linear in standardized
/// features, so x^SCF is affine in delta: each intervention subset J reduces
/// to a weighted-L1 minimization over a polyhedron, solved exactly by
/// enumerating intersections of active constraint planes with the coordinate
/// kink planes. Subsets are scanned smallest-first; ties resolve
/// deterministically.
///
/// Precondition: x_factual is unfavorably classified (throws
/// PreconditionError otherwise). Returns an absent solution when no feasible
/// flipping action exists; this absence feeds the ratio of possible recourse.
MintResult solve_mint(const CausalModel& model, const Classifier& h, Instance x_factual,
                      const ConstraintSet& constraints, const CostSpec& spec,
                      const MintOptions& opts = {});

struct OracleOptions {
  std::size_t grid_points_per_axis = 101;  // includes delta = 0 by construction
  double flip_margin = 1e-6;
};

/// Exhaustive-grid reference optimum over the feasible delta boxes of the
/// actionable features (intervention set = nonzero support of the grid
/// point). Test oracle: refuses more than 3 actionable features and requires
/// finite delta boxes.
std::optional<RecourseSolution> brute_force_oracle(const CausalModel& model,
                                                   const Classifier& h, Instance x_factual,
                                                   const ConstraintSet& constraints,
                                                   const CostSpec& spec,
                                                   const OracleOptions& opts = {});

}  // namespace recourse
