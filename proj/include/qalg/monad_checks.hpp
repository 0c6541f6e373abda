#pragma once

#include "qalg/monads.hpp"
#include "qalg/precongruence.hpp"

namespace qalg {

// "within budget" accounting: instances cap word lengths and set sizes, so
// checkers skip points where a composite leaves the caps and count them.
struct BudgetTag {
    int checked = 0;
    int skipped = 0;
    bool complete() const { return skipped == 0; }
};

struct LawReport {
    bool ok = true;
    BudgetTag budget;
    std::vector<std::string> failures;
};

struct LawCheckOptions {
    int samples = 200;   // sampled TTM / TTTM elements per space
    unsigned seed = 1;
};

// Unit laws and associativity, pointwise on element labels; naturality of
// unit and multiplication on the identity-like maps derived from samples.
LawReport check_monad_laws(const MonadInstance& t, const std::vector<FiniteMetricSpace>& spaces,
                           const LawCheckOptions& opts = {});

struct EnrichmentWitness {
    std::string f, g;  // hom-space labels
    Dist dfg, dTfTg;
};
struct EnrichReport {
    bool ok = true;
    BudgetTag budget;
    std::optional<EnrichmentWitness> witness;
};

// d(Tf, Tg) <= d(f, g) for every pair of nonexpanding maps a -> b.
EnrichReport check_enriched(const MonadInstance& t, const FiniteMetricSpace& a,
                            const FiniteMetricSpace& b);

struct SurjectionReport {
    bool ok = true;
    std::vector<std::string> missed;  // unhit elements of T(cod)
};
SurjectionReport check_preserves_surjections(const MonadInstance& t, const NonexpandingMap& e);

struct ColimitPreservationReport {
    std::vector<FiniteMetricSpace> stages;  // T(D_i)
    FiniteMetricSpace image_colimit;        // colim T(D_i), truncated
    FiniteMetricSpace t_of_colimit;         // T(colim D_i)
    bool comparison_bijective = false;
    bool comparison_isometric = false;
    bool cocone_conditions = false;
    bool preserved() const {
        return comparison_bijective && comparison_isometric && cocone_conditions;
    }
    // distance of two tracked labels per stage, for divergence trajectories
    std::vector<Dist> trajectory(const std::string& a, const std::string& b) const;
};
ColimitPreservationReport check_directed_colimit_preservation(
    const MonadInstance& t, const std::vector<FiniteMetricSpace>& chain,
    const std::vector<NonexpandingMap>& maps);

struct PrecongruencePair {
    std::string a, b;
    Dist eps;
    std::optional<std::string> witness;  // element of T(D_M^eps)
};
struct PrecongruenceReport {
    bool applicable = true;  // T of the identity |M| -> M is a point bijection
    bool passed = false;
    std::vector<PrecongruencePair> pairs;
    std::string note;
};

// Sufficient witness criterion for preservation of precongruence colimits:
// every pair of T M at realized finite distance eps must be the projection
// image of an element of T(D_M^eps).  Pass (plus accessibility) implies
// strong finitarity; failure is inconclusive for the abstract property.
PrecongruenceReport check_precongruence_preservation(const MonadInstance& t,
                                                     const FiniteMetricSpace& m);

}  // namespace qalg
