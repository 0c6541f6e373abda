#pragma once

#include <map>

#include "qalg/term.hpp"

namespace qalg {

// The depth-truncated term algebra over a metric space of generators,
// with the similarity metric.  In the generalized case only child tuples
// that are nonexpanding from the arity space are admitted.
class TermSpace {
public:
    TermSpace(Signature sig, FiniteMetricSpace generators, int depth,
              std::size_t budget = kDefaultBudget);

    static constexpr std::size_t kDefaultBudget = 200000;

    const Signature& signature() const { return sig_; }
    const FiniteMetricSpace& generators() const { return gens_; }
    int depth() const { return depth_; }
    const std::vector<TermPtr>& terms() const { return terms_; }

    std::optional<int> find(const TermPtr& t) const;
    int find_or_throw(const TermPtr& t) const;  // InputError when absent

    // similarity metric between two members (InputError for non-members)
    Dist distance(const TermPtr& a, const TermPtr& b) const;

    // materializes the full distance matrix as a metric space (labels are
    // the printed terms)
    FiniteMetricSpace as_space() const;

private:
    Signature sig_;
    FiniteMetricSpace gens_;
    int depth_;
    std::vector<TermPtr> terms_;
    std::map<std::string, int> index_;
};

TermSpace enumerate_terms(const Signature& sig, const FiniteMetricSpace& generators, int depth,
                          std::size_t budget = TermSpace::kDefaultBudget);

}  // namespace qalg
