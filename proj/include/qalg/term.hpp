#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qalg/space.hpp"

namespace qalg {

// Arity of an operation symbol: a natural number, or a metric space for
// generalized signatures.  A finitary arity n behaves exactly like the
// discrete space on n points; the empty space gives a constant.
struct Arity {
    int n = 0;
    std::optional<FiniteMetricSpace> space;  // engaged for generalized arities

    bool generalized() const { return space.has_value(); }
    int size() const { return generalized() ? space->size() : n; }
    static Arity finitary(int n) { return Arity{n, std::nullopt}; }
    static Arity metric(FiniteMetricSpace s) {
        Arity a;
        a.n = s.size();
        a.space = std::move(s);
        return a;
    }
    // pairwise bound for child tuples: d(arity_i, arity_j), infinite when finitary
    Dist bound(int i, int j) const {
        if (!generalized()) return i == j ? Dist::zero() : Dist::infinity();
        return space->dist(i, j);
    }
};

struct Symbol {
    std::string name;
    Arity arity;
};

class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);

    int size() const { return (int)symbols_.size(); }
    const Symbol& symbol(int i) const { return symbols_[(size_t)i]; }
    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::optional<int> find(const std::string& name) const;
    bool finitary() const;  // no generalized arities

private:
    std::vector<Symbol> symbols_;
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable term tree over a signature.  Variables carry the label of a
// generator point; applications carry a symbol index and one child per
// arity position.
class Term {
public:
    static TermPtr var(std::string label);
    static TermPtr app(int symbol, std::vector<TermPtr> kids);

    bool is_var() const { return symbol_ < 0; }
    const std::string& var_label() const { return var_; }
    int symbol() const { return symbol_; }
    const std::vector<TermPtr>& kids() const { return kids_; }

    int height() const { return height_; }  // variables 0, constants 1

    std::string str(const Signature& sig) const;

private:
    Term() = default;
    int symbol_ = -1;
    std::string var_;
    std::vector<TermPtr> kids_;
    int height_ = 0;
};

bool similar(const TermPtr& a, const TermPtr& b);
bool equal_terms(const TermPtr& a, const TermPtr& b);

// Similarity metric: infinite for non-similar terms, otherwise the maximum
// of the generator distances at corresponding leaves.
Dist term_distance(const TermPtr& a, const TermPtr& b, const FiniteMetricSpace& generators);

// Structural order used for canonical representatives: height, then
// variables before applications (variables ordered by generator index,
// applications by symbol index then childwise).
int structural_compare(const TermPtr& a, const TermPtr& b, const FiniteMetricSpace& generators);

// Capture-free substitution of variables by terms (Kleisli extension into
// the term algebra).  Unmapped variables are kept.
TermPtr substitute(const TermPtr& t,
                   const std::vector<std::pair<std::string, TermPtr>>& assignment);

std::vector<std::string> collect_vars(const TermPtr& t);  // in first-occurrence order

}  // namespace qalg
