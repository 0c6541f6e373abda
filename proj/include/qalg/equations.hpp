#pragma once

#include <variant>

#include "qalg/algebra.hpp"

namespace qalg {

// Unconditional quantitative equation l =[eps] r over discrete variables.
struct QuantEquation {
    std::vector<std::string> vars;  // V_n, in binding order
    TermPtr l, r;
    Dist eps;
};

// Basic quantitative equation M |- l =[eps] r with a metric context space.
struct BasicEquation {
    FiniteMetricSpace context;
    TermPtr l, r;
    Dist eps;
};

// Hypothesis-list form x ~[d1] y, ... |- l =[eps] r.
struct HypothesisListEquation {
    struct Hypothesis {
        std::string x, y;
        Dist delta;
    };
    std::vector<std::string> vars;
    std::vector<Hypothesis> hypotheses;
    TermPtr l, r;
    Dist eps;
};

using AnyEquation = std::variant<QuantEquation, BasicEquation, HypothesisListEquation>;

std::string equation_str(const Signature& sig, const AnyEquation& e);

struct Presentation {
    std::string name;
    Signature sig;
    std::vector<AnyEquation> equations;
};

// Deciders return a witness on failure: the lexicographically first
// violating interpretation together with the achieved distance.
struct SatWitness {
    std::vector<std::pair<std::string, int>> assignment;  // variable -> carrier point
    Dist achieved;
};
struct SatResult {
    bool ok = true;
    std::optional<SatWitness> witness;
    std::optional<std::string> eval_error;  // partial operation failures
};

// All set interpretations of the (discrete) variables.
SatResult satisfies(const QuantAlgebra& a, const QuantEquation& e);
// All nonexpanding interpretations of the context space.
SatResult satisfies_basic(const QuantAlgebra& a, const BasicEquation& e);
// Direct semantics: all interpretations obeying the hypothesis bounds.
SatResult satisfies_hyplist(const QuantAlgebra& a, const HypothesisListEquation& e);
SatResult satisfies_any(const QuantAlgebra& a, const AnyEquation& e);

// Translation of a hypothesis list into a basic equation: largest
// pseudometric under the bounds, metric reflection, image terms.
BasicEquation reflect_hypotheses(const Signature& sig, const HypothesisListEquation& e);

struct MembershipResult {
    bool ok = true;
    int failing_equation = -1;
    SatResult detail;
};
MembershipResult variety_membership(const QuantAlgebra& a, const Presentation& p);

struct ClosureCaps {
    std::size_t max_product_pairs = 40;
    std::size_t max_subalgebra_seeds = 64;
    std::size_t max_quotient_targets = 2000;
};
struct ClosureViolation {
    std::string construction;  // "product", "subalgebra", "image"
    std::string detail;
};
struct ClosureReport {
    int members_checked = 0;
    std::vector<ClosureViolation> violations;
    bool ok() const { return violations.empty(); }
};

// For every sample member satisfying p, checks that binary products,
// generated subalgebras and surjective-image quotients satisfy p again.
ClosureReport birkhoff_closure_check(const Presentation& p,
                                     const std::vector<QuantAlgebra>& sample,
                                     const ClosureCaps& caps = {});

// Quotients of a by every operation-compatible partition, carrying the
// largest pseudometric below the pushed-forward distances that keeps all
// operations nonexpanding.  Used by the closure check; exposed for tests.
std::vector<std::pair<QuantAlgebra, std::vector<int>>> quotient_algebras(
    const QuantAlgebra& a, std::size_t cap);

}  // namespace qalg
