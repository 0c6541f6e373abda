#pragma once

#include <functional>
#include <map>

#include "qalg/term.hpp"

namespace qalg {

// Operation table of one symbol.  Finitary symbols normally carry a total
// table over all carrier tuples; generalized symbols (and depth-truncated
// free-algebra quotients) carry a partial table keyed by explicit tuples.
struct OpTable {
    bool total = true;
    std::vector<int> flat;                              // total case: lex-ranked tuples
    std::map<std::vector<int>, int> partial;            // partial case

    std::optional<int> lookup(const std::vector<int>& tuple, int carrier_size) const;
};

class QuantAlgebra {
public:
    QuantAlgebra() = default;
    QuantAlgebra(Signature sig, FiniteMetricSpace carrier, std::vector<OpTable> ops);

    const Signature& signature() const { return sig_; }
    const FiniteMetricSpace& carrier() const { return carrier_; }
    const OpTable& table(int symbol) const { return ops_[(size_t)symbol]; }
    const std::vector<OpTable>& tables() const { return ops_; }

    // Applies a symbol; nullopt when the (partial) operation is undefined
    // on the tuple.
    std::optional<int> apply(int symbol, const std::vector<int>& tuple) const;

private:
    Signature sig_;
    FiniteMetricSpace carrier_;
    std::vector<OpTable> ops_;
};

struct NonexpansivenessViolation {
    int symbol;
    std::vector<int> a, b;   // argument tuples
    Dist lhs, rhs;           // d(op(a),op(b)) and the allowed bound
};
struct AlgebraReport {
    std::vector<NonexpansivenessViolation> violations;
    std::vector<std::string> domain_errors;  // shape or definedness problems
    bool ok() const { return violations.empty() && domain_errors.empty(); }
};

// Lists every violated nonexpansiveness instance; empty report iff valid.
// For generalized symbols the table domain must be exactly the nonexpanding
// tuples from the arity space.
AlgebraReport check_algebra(const QuantAlgebra& a);

struct HomomorphismReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

HomomorphismReport check_homomorphism(const std::vector<int>& map, const QuantAlgebra& a,
                                      const QuantAlgebra& b);

struct ProductAlgebra {
    QuantAlgebra algebra;
    std::vector<std::vector<int>> projections;  // one per factor
};
// Finitary signatures only; the empty product is the one-point algebra.
ProductAlgebra product_algebra(const Signature& sig, const std::vector<QuantAlgebra>& factors);

struct Subalgebra {
    QuantAlgebra algebra;
    std::vector<int> inclusion;  // subalgebra point -> parent point
};
Subalgebra subalgebra_generated(const QuantAlgebra& a, const std::vector<int>& seed);

struct ImageFactorization {
    QuantAlgebra image;
    std::vector<int> surjection;  // source point -> image point
    std::vector<int> embedding;   // image point -> target point
};
ImageFactorization image_factorization(const std::vector<int>& map, const QuantAlgebra& a,
                                       const QuantAlgebra& b);

// All operation-table assignments on the carrier that pass check_algebra,
// in deterministic order.  Finitary signatures only.
std::vector<QuantAlgebra> enumerate_algebras(const Signature& sig,
                                             const FiniteMetricSpace& carrier,
                                             std::size_t budget = 500000);

// Homomorphic extension of a generator interpretation to the term algebra:
// evaluates terms in A.  Throws EvalError (carrying the term) when a partial
// operation is undefined on the evaluated children.
class TermEvaluator {
public:
    TermEvaluator(const QuantAlgebra& a, std::vector<std::pair<std::string, int>> interpretation);
    int eval(const TermPtr& t) const;
    std::optional<int> try_eval(const TermPtr& t) const;

private:
    const QuantAlgebra& a_;
    std::vector<std::pair<std::string, int>> env_;
};

}  // namespace qalg
