#pragma once

#include <map>
#include <variant>

#include "qalg/equations.hpp"

namespace qalg {

// Diagnostics carry a position and the expected-token set.
struct Diagnostic {
    int line = 0, col = 0;
    std::string message;
    std::vector<std::string> expected;
    std::string render() const;
};

struct ParseError : std::runtime_error {
    Diagnostic diagnostic;
    explicit ParseError(Diagnostic d) : std::runtime_error(d.render()), diagnostic(std::move(d)) {}
};

// --- abstract syntax -------------------------------------------------------

struct TermAst {
    std::string head;
    bool app = false;  // bare names are variables / context points
    std::vector<TermAst> kids;
};

struct EquationAst {
    enum Kind { Plain, Context, HypList } kind = Plain;
    std::string space_ref;  // Context
    struct Hyp {
        std::string x, y;
        Dist delta;
    };
    std::vector<Hyp> hyps;  // HypList
    TermAst l, r;
    Dist eps;
};

struct SpaceAst {
    std::string name;
    std::vector<std::string> points;
    struct Entry {
        std::string a, b;
        Dist d;
    };
    std::vector<Entry> entries;
};

struct SignatureAst {
    std::string name;
    struct Sym {
        std::string name;
        bool generalized = false;
        int arity = 0;          // finitary
        std::string space_ref;  // generalized
    };
    std::vector<Sym> symbols;
};

struct AlgebraAst {
    std::string name, sig_ref, space_ref;
    struct Row {
        std::vector<std::string> args;
        std::string value;
    };
    struct Table {
        std::string symbol;
        std::vector<Row> rows;
    };
    std::vector<Table> tables;
};

struct PresentationAst {
    std::string name, sig_ref;
    std::vector<EquationAst> equations;
};

using BlockAst = std::variant<SpaceAst, SignatureAst, AlgebraAst, PresentationAst>;

struct Document {
    std::vector<BlockAst> blocks;
};

Document parse_document(const std::string& text);
std::string print_document(const Document& doc);

// --- resolution ------------------------------------------------------------

struct ResolvedDocument {
    std::map<std::string, FiniteMetricSpace> spaces;
    std::map<std::string, Signature> signatures;
    std::map<std::string, QuantAlgebra> algebras;
    std::map<std::string, Presentation> presentations;
    // raw hypothesis-list equations per presentation (reflect command)
    std::map<std::string, std::vector<HypothesisListEquation>> hyplists;
};

ResolvedDocument resolve(const Document& doc);

// term parsing against a signature (shared with the resolver); `context`
// restricts bare names when given
TermPtr term_from_ast(const TermAst& ast, const Signature& sig,
                      const std::vector<std::string>* context);

}  // namespace qalg
