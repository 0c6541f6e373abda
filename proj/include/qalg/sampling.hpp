#pragma once

#include <random>

#include "qalg/space.hpp"

namespace qalg {

// The standard sample grid: distances drawn from {1/4, 1/2, 1, 2} plus
// optionally infinity.
std::vector<Dist> grid_values(bool with_infinity);

// Seeded random space with 1..max_points points and grid distances
// (rejection sampling until the triangle inequality holds).
FiniteMetricSpace random_grid_space(std::mt19937_64& rng, int max_points,
                                    bool with_infinity = true);

// All labelled spaces with exactly n points and off-diagonal distances from
// `values` that satisfy the metric axioms.  Point labels are p0..p{n-1}.
std::vector<FiniteMetricSpace> enumerate_grid_spaces(int n, const std::vector<Dist>& values);

}  // namespace qalg
