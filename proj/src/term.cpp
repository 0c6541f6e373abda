#include "qalg/term.hpp"

#include <algorithm>
#include <set>

#include "qalg/errors.hpp"

namespace qalg {

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    std::set<std::string> names;
    for (const auto& s : symbols_)
        if (!names.insert(s.name).second) throw InputError("duplicate symbol '" + s.name + "'");
}

std::optional<int> Signature::find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (symbols_[(size_t)i].name == name) return i;
    return std::nullopt;
}

bool Signature::finitary() const {
    return std::none_of(symbols_.begin(), symbols_.end(),
                        [](const Symbol& s) { return s.arity.generalized(); });
}

TermPtr Term::var(std::string label) {
    auto t = std::shared_ptr<Term>(new Term());
    t->var_ = std::move(label);
    return t;
}

TermPtr Term::app(int symbol, std::vector<TermPtr> kids) {
    auto t = std::shared_ptr<Term>(new Term());
    t->symbol_ = symbol;
    t->kids_ = std::move(kids);
    int h = 0;
    for (const auto& k : t->kids_) h = std::max(h, k->height());
    t->height_ = h + 1;
    return t;
}

std::string Term::str(const Signature& sig) const {
    if (is_var()) return var_;
    std::string s = sig.symbol(symbol_).name + "(";
    for (size_t i = 0; i < kids_.size(); ++i) {
        if (i) s += ",";
        s += kids_[i]->str(sig);
    }
    return s + ")";
}

bool similar(const TermPtr& a, const TermPtr& b) {
    if (a->is_var()) return b->is_var();
    if (b->is_var() || a->symbol() != b->symbol()) return false;
    for (size_t i = 0; i < a->kids().size(); ++i)
        if (!similar(a->kids()[i], b->kids()[i])) return false;
    return true;
}

bool equal_terms(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->is_var() != b->is_var()) return false;
    if (a->is_var()) return a->var_label() == b->var_label();
    if (a->symbol() != b->symbol()) return false;
    for (size_t i = 0; i < a->kids().size(); ++i)
        if (!equal_terms(a->kids()[i], b->kids()[i])) return false;
    return true;
}

Dist term_distance(const TermPtr& a, const TermPtr& b, const FiniteMetricSpace& generators) {
    if (a->is_var() && b->is_var())
        return generators.dist(generators.index_or_throw(a->var_label()),
                               generators.index_or_throw(b->var_label()));
    if (a->is_var() || b->is_var() || a->symbol() != b->symbol()) return Dist::infinity();
    Dist d = Dist::zero();
    for (size_t i = 0; i < a->kids().size(); ++i) {
        d = max(d, term_distance(a->kids()[i], b->kids()[i], generators));
        if (d.is_infinite()) break;
    }
    return d;
}

int structural_compare(const TermPtr& a, const TermPtr& b, const FiniteMetricSpace& generators) {
    if (a->height() != b->height()) return a->height() < b->height() ? -1 : 1;
    if (a->is_var() != b->is_var()) return a->is_var() ? -1 : 1;
    if (a->is_var()) {
        int ia = generators.index_or_throw(a->var_label());
        int ib = generators.index_or_throw(b->var_label());
        return ia == ib ? 0 : (ia < ib ? -1 : 1);
    }
    if (a->symbol() != b->symbol()) return a->symbol() < b->symbol() ? -1 : 1;
    for (size_t i = 0; i < a->kids().size(); ++i)
        if (int c = structural_compare(a->kids()[i], b->kids()[i], generators)) return c;
    return 0;
}

TermPtr substitute(const TermPtr& t,
                   const std::vector<std::pair<std::string, TermPtr>>& assignment) {
    if (t->is_var()) {
        for (const auto& [v, s] : assignment)
            if (v == t->var_label()) return s;
        return t;
    }
    std::vector<TermPtr> kids;
    kids.reserve(t->kids().size());
    for (const auto& k : t->kids()) kids.push_back(substitute(k, assignment));
    return Term::app(t->symbol(), std::move(kids));
}

namespace {
void collect(const TermPtr& t, std::vector<std::string>& out) {
    if (t->is_var()) {
        if (std::find(out.begin(), out.end(), t->var_label()) == out.end())
            out.push_back(t->var_label());
        return;
    }
    for (const auto& k : t->kids()) collect(k, out);
}
}  // namespace

std::vector<std::string> collect_vars(const TermPtr& t) {
    std::vector<std::string> out;
    collect(t, out);
    return out;
}

}  // namespace qalg
