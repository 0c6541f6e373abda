#pragma once

#include <functional>
#include <memory>
#include <random>

#include "qalg/equations.hpp"

namespace qalg {

// A computable monad (or plain functor) on finite spaces.
//
// Elements of TM are addressed by canonical labels built from the base
// space's point labels.  The structural layer (wrap, flatten, letterwise
// lifting) works on labels alone, so monad laws can be checked on sampled
// elements of TTTM without materializing those spaces; the derived layer
// materializes TM as a FiniteMetricSpace when its size is within budget.
//
// Word-length and subset caps are explicit parameters of each instance;
// checkers respect them and tag their results "within budget".
class MonadInstance {
public:
    using LetterFn = std::function<std::optional<std::string>(const std::string&)>;

    std::string name;
    bool is_monad = true;  // tensor_word is a plain functor
    std::size_t max_space = 100000;

    // element enumeration and metric of TM over a base space
    std::function<std::vector<std::string>(const FiniteMetricSpace&)> elements;
    std::function<Dist(const FiniteMetricSpace&, const std::string&, const std::string&)>
        element_dist;
    // unit at a point of the base space (may inspect the metric)
    std::function<std::string(const FiniteMetricSpace&, int)> unit_point;
    // string-only unit wrap, valid on the canonical carriers produced by the
    // instance itself (used for the inner unit in law checks)
    std::function<std::string(const std::string&)> wrap_label;
    // multiplication on one element label; nullopt when a cap is exceeded
    std::function<std::optional<std::string>(const std::string&)> flatten_label;
    // applies a function to every letter and re-canonicalizes
    std::function<std::optional<std::string>(const std::string&, const LetterFn&)> lift_letters;
    // functorial action on one element
    std::function<std::string(const FiniteMetricSpace&, const FiniteMetricSpace&,
                              const std::vector<int>&, const std::string&)>
        map_point;
    // free-algebra operation by arity (oracle comparison); nullopt when
    // inapplicable or out of budget
    std::function<std::optional<std::string>(int, const std::vector<std::string>&)> interpret;
    // one random T-layer over an alphabet of labels
    std::function<std::string(const std::vector<std::string>&, std::mt19937_64&)> random_over;

    FiniteMetricSpace on_space(const FiniteMetricSpace& m) const;
    NonexpandingMap on_map(const NonexpandingMap& f) const;
    NonexpandingMap unit(const FiniteMetricSpace& m) const;
    // materializes TTM -> TM; BudgetError when TTM is too large or a
    // flattening leaves the caps
    NonexpandingMap mult(const FiniteMetricSpace& m) const;

private:
    mutable std::shared_ptr<std::map<std::string, FiniteMetricSpace>> cache_ =
        std::make_shared<std::map<std::string, FiniteMetricSpace>>();
};

MonadInstance word_monad(int word_cap = 3);
MonadInstance commutative_word_monad(int word_cap = 3);
MonadInstance almost_commutative_monad(const Dist& eps, int word_cap = 4);
MonadInstance finite_hausdorff_monad();
MonadInstance quasi_discrete_reflection_monad();
MonadInstance tensor_word_functor(int word_cap = 8);

// registry for the CLI; InputError for unknown names
MonadInstance monad_by_name(const std::string& name, const Dist& eps, int cap);
std::vector<std::string> monad_names();

// Canonical map from free-algebra classes to oracle elements (generators to
// unit images, operations through the oracle); checks it is a
// distance-preserving bijection onto the reachable part and flags the
// approximation exact on success.
struct OracleReport {
    bool ok = true;
    std::vector<std::string> notes;
};
OracleReport compare_with_oracle(struct FreeAlgebraApprox& f, const MonadInstance& oracle);

struct PresentationFromMonadResult {
    Presentation presentation;
    bool truncated = false;
    std::vector<int> symbols_per_arity;  // indexed by n <= n_max
};
// Presentation of a monad by a signature of T(V_n) elements and the three
// equation families: realized distances, substitution, and projections.
// Restricted to n, m <= n_max; symbols beyond size_cap are truncated to the
// ones reachable from unit images under substitution.
PresentationFromMonadResult presentation_from_monad(const MonadInstance& t, int n_max,
                                                    std::size_t size_cap);

}  // namespace qalg
