#include "qalg/term_space.hpp"

#include "qalg/errors.hpp"

namespace qalg {

TermSpace::TermSpace(Signature sig, FiniteMetricSpace generators, int depth, std::size_t budget)
    : sig_(std::move(sig)), gens_(std::move(generators)), depth_(depth) {
    if (depth < 0) throw InputError("depth must be nonnegative");
    auto push = [&](const TermPtr& t) {
        if (terms_.size() >= budget)
            throw BudgetError("term universe exceeds budget of " + std::to_string(budget));
        index_[t->str(sig_)] = (int)terms_.size();
        terms_.push_back(t);
    };
    for (const auto& l : gens_.labels()) push(Term::var(l));
    for (int h = 1; h <= depth_; ++h) {
        size_t level_end = terms_.size();
        for (int s = 0; s < sig_.size(); ++s) {
            const Arity& ar = sig_.symbol(s).arity;
            int k = ar.size();
            // tuples of existing terms with at least one child of maximal
            // height h-1, so each term is built exactly once
            std::vector<size_t> tuple((size_t)k, 0);
            auto admissible = [&]() {
                bool has_top = false;
                for (size_t i = 0; i < (size_t)k; ++i) {
                    if (terms_[tuple[i]]->height() == h - 1) has_top = true;
                    if (terms_[tuple[i]]->height() > h - 1) return false;
                }
                if (!has_top && k > 0) return false;
                if (ar.generalized()) {
                    for (int i = 0; i < k; ++i)
                        for (int j = i + 1; j < k; ++j)
                            if (term_distance(terms_[tuple[(size_t)i]], terms_[tuple[(size_t)j]],
                                              gens_) > ar.bound(i, j))
                                return false;
                }
                return true;
            };
            if (k == 0) {
                if (h == 1) push(Term::app(s, {}));
                continue;
            }
            bool done = false;
            while (!done) {
                if (admissible()) {
                    std::vector<TermPtr> kids;
                    for (size_t i : tuple) kids.push_back(terms_[i]);
                    push(Term::app(s, std::move(kids)));
                }
                // odometer over term indices below level_end
                int pos = k - 1;
                while (pos >= 0) {
                    if (++tuple[(size_t)pos] < level_end) break;
                    tuple[(size_t)pos] = 0;
                    --pos;
                }
                if (pos < 0) done = true;
            }
        }
    }
}

std::optional<int> TermSpace::find(const TermPtr& t) const {
    auto it = index_.find(t->str(sig_));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int TermSpace::find_or_throw(const TermPtr& t) const {
    auto i = find(t);
    if (!i) throw InputError("term " + t->str(sig_) + " is not in the enumerated universe");
    return *i;
}

Dist TermSpace::distance(const TermPtr& a, const TermPtr& b) const {
    find_or_throw(a);
    find_or_throw(b);
    return term_distance(a, b, gens_);
}

FiniteMetricSpace TermSpace::as_space() const {
    std::vector<std::string> labels;
    for (const auto& t : terms_) labels.push_back(t->str(sig_));
    int n = (int)terms_.size();
    std::vector<Dist> e((size_t)n * (size_t)n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            e[(size_t)(i * n + j)] = term_distance(terms_[(size_t)i], terms_[(size_t)j], gens_);
    return FiniteMetricSpace(std::move(labels), std::move(e));
}

TermSpace enumerate_terms(const Signature& sig, const FiniteMetricSpace& generators, int depth,
                          std::size_t budget) {
    return TermSpace(sig, generators, depth, budget);
}

}  // namespace qalg
