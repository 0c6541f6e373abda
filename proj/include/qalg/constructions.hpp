#pragma once

#include <vector>

#include "qalg/space.hpp"

namespace qalg {

// Categorical product: pairs with the maximum metric.
FiniteMetricSpace product(const FiniteMetricSpace& a, const FiniteMetricSpace& b);

// n-fold product of b with itself (n = 0 gives the singleton).
FiniteMetricSpace power(const FiniteMetricSpace& b, int n);

// Tensor product: pairs with the (saturating) sum metric.
FiniteMetricSpace tensor(const FiniteMetricSpace& a, const FiniteMetricSpace& b);

// The space of all nonexpanding maps a -> b with the supremum metric,
// together with the maps themselves in enumeration order.
struct HomSpace {
    FiniteMetricSpace space;
    std::vector<NonexpandingMap> maps;
};
HomSpace hom_space(const FiniteMetricSpace& a, const FiniteMetricSpace& b);

// Enumerates the underlying functions of hom_space without building the
// metric (img vectors in the same lexicographic order).
std::vector<std::vector<int>> nonexpanding_assignments(const FiniteMetricSpace& a,
                                                       const FiniteMetricSpace& b);

bool check_ultrametric(const FiniteMetricSpace& a);

struct DistanceConstraint {
    std::string x, y;
    Dist delta;
};

// The pointwise-largest pseudometric bounded by the given constraints,
// i.e. the all-pairs shortest-path metric of the constraint graph.
FinitePseudometricSpace smallest_pseudometric(const std::vector<std::string>& points,
                                              const std::vector<DistanceConstraint>& constraints);

// Quotient of a pseudometric space merging zero-distance points.  class_of
// maps each input point to its class; the quotient map is distance preserving
// and surjective.
struct MetricReflection {
    FiniteMetricSpace space;
    std::vector<int> class_of;
};
MetricReflection metric_reflection(const FinitePseudometricSpace& p);

// Hausdorff distance between two subsets (point index sets) of m.
Dist hausdorff_distance(const FiniteMetricSpace& m, const std::vector<int>& a,
                        const std::vector<int>& b);

// Colimit of a finite chain d0 -> d1 -> ... -> dk together with its cocone.
// The terminal space realizes the infimum of the colimit conditions.
struct DirectedColimit {
    FiniteMetricSpace space;
    std::vector<NonexpandingMap> cocone;
};
DirectedColimit directed_colimit(const std::vector<FiniteMetricSpace>& chain,
                                 const std::vector<NonexpandingMap>& maps);

// Verifies the two colimit conditions (collective surjectivity and the
// infimum formula) for an arbitrary cocone over a chain.
bool colimit_conditions_hold(const std::vector<FiniteMetricSpace>& chain,
                             const std::vector<NonexpandingMap>& maps,
                             const FiniteMetricSpace& apex,
                             const std::vector<NonexpandingMap>& cocone);

}  // namespace qalg
