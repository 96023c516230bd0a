#pragma once

#include <cstdint>

#include "recourse/dataset.hpp"

namespace recourse {

/// Three-covariate benchmark generator.
///   x1 ~ Bernoulli(0.5)                  (sensitive, root)
///   x2 = alpha * x1 + N(3, 1)            (proxy, actionable)
///   x3 = N(0, 1)                         (actionable, root)
///   y  = 1  iff  sigmoid(std(x2 + x3)) >= 0.5
/// std() standardizes with the generated batch's own mean/sd, so y is a
/// deterministic threshold at the batch mean of x2 + x3.
/// Columns: x1 (sensitive), x2, x3, y (outcome, favorable = 1).
Dataset generate_synthetic(std::size_t n, double alpha, std::uint64_t seed);

}  // namespace recourse
