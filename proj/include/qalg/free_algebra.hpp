#pragma once

#include "qalg/equations.hpp"

namespace qalg {

struct FreeAlgebraOptions {
    std::size_t universe_budget = 200000;  // cap on distinct term classes
    std::size_t pass_cap_floor = 256;      // lower bound for the pass allowance
};

// Depth-bounded approximation of the free algebra of a variety on a metric
// space of generators.
//
// The engine maintains one canonical representative term per congruence
// class (the structurally least member) instead of the full set of terms of
// height <= depth: every such term evaluates to a class whose representative
// is at most as high, so the class universe carries the same quotient while
// staying polynomial where the raw term count is doubly exponential.
//
// The pseudometric is the greatest fixed point of the decreasing operator
// that applies axiom-instance bounds, operation congruence bounds and
// triangle closure, starting from the term metric.  Zero-distance classes
// are merged (metric reflection) and the whole process repeats until stable,
// so the reported quotient distances are certified upper bounds of the true
// free-algebra distances, exact when an oracle or depth-stability check
// certifies so.
struct FreeAlgebraApprox {
    Presentation presentation;
    FiniteMetricSpace generators;
    int depth = 0;

    std::vector<TermPtr> reps;           // canonical representative per class
    FinitePseudometricSpace pseudo;      // final fixed point on the representatives
    FiniteMetricSpace classes;           // its metric reflection (labels = printed reps)
    QuantAlgebra quotient;               // operations induced on classes (partial at
                                         // the depth boundary)
    std::vector<int> unit;               // generator point -> class
    bool exact = false;
    std::string exactness_source;        // "oracle:<name>" or "depth-stability"

    int class_of_term(const TermPtr& t) const;  // -1 when not representable
};

FreeAlgebraApprox free_algebra(const Presentation& p, const FiniteMetricSpace& generators,
                               int depth, const FreeAlgebraOptions& opts = {});

// Re-runs the construction at depth+1 and marks distances exact when every
// class pair present at both depths keeps its distance.
bool certify_depth_stability(FreeAlgebraApprox& f, const FreeAlgebraOptions& opts = {});

struct UniversalPropertyReport {
    bool precondition_ok = true;  // A satisfies the presentation
    bool exists = true;           // a homomorphism h with h . unit = f
    bool unique = true;           // among homomorphisms defined by the tables
    std::vector<std::string> notes;
    bool ok() const { return precondition_ok && exists && unique; }
};

// Checks the universal property of the quotient against a concrete algebra
// and generator interpretation.
UniversalPropertyReport universal_property_check(const FreeAlgebraApprox& f,
                                                 const QuantAlgebra& a,
                                                 const NonexpandingMap& interp);

}  // namespace qalg
