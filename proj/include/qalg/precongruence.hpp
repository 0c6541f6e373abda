#pragma once

#include <utility>
#include <vector>

#include "qalg/space.hpp"

namespace qalg {

// The precongruence diagram of a space: its discrete underlying space
// together with, for every realized finite distance eps, the discrete
// relation space of all pairs at distance <= eps with the two projections.
// Larger eps give identical relations, so only realized values are kept.
struct PrecongruenceDiagram {
    struct Level {
        Dist eps;
        std::vector<std::pair<int, int>> pairs;  // (left, right) point indices
    };
    FiniteMetricSpace base;
    FiniteMetricSpace discrete;
    std::vector<Level> levels;  // sorted by eps ascending

    // discrete space of a level's pairs, labelled "(x,y)"
    FiniteMetricSpace level_space(int level) const;
};

PrecongruenceDiagram precongruence(const FiniteMetricSpace& m);

// The concrete content of the colimit property: a function on |M| is
// nonexpanding into X iff it satisfies every level's pair condition.
bool nonexpanding_via_levels(const PrecongruenceDiagram& d, const std::vector<int>& img,
                             const FiniteMetricSpace& x);

}  // namespace qalg
