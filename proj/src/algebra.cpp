#include "qalg/algebra.hpp"

#include <algorithm>
#include <set>

#include "qalg/constructions.hpp"
#include "qalg/errors.hpp"

namespace qalg {

namespace {

std::size_t int_pow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::size_t rank(const std::vector<int>& tuple, int carrier_size) {
    std::size_t r = 0;
    for (int v : tuple) r = r * (size_t)carrier_size + (size_t)v;
    return r;
}

// all tuples of length n over {0..c-1} in lexicographic order
std::vector<std::vector<int>> all_tuples(int n, int c) {
    std::vector<std::vector<int>> out;
    std::vector<int> t((size_t)n, 0);
    if (n == 0) {
        out.push_back(t);
        return out;
    }
    if (c == 0) return out;
    while (true) {
        out.push_back(t);
        int pos = n - 1;
        while (pos >= 0 && ++t[(size_t)pos] == c) t[(size_t)pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

}  // namespace

std::optional<int> OpTable::lookup(const std::vector<int>& tuple, int carrier_size) const {
    if (total) {
        std::size_t r = rank(tuple, carrier_size);
        if (r >= flat.size()) return std::nullopt;
        return flat[r];
    }
    auto it = partial.find(tuple);
    if (it == partial.end()) return std::nullopt;
    return it->second;
}

QuantAlgebra::QuantAlgebra(Signature sig, FiniteMetricSpace carrier, std::vector<OpTable> ops)
    : sig_(std::move(sig)), carrier_(std::move(carrier)), ops_(std::move(ops)) {
    if ((int)ops_.size() != sig_.size()) throw InputError("one table per symbol required");
    for (int s = 0; s < sig_.size(); ++s) {
        const auto& sym = sig_.symbol(s);
        const auto& tab = ops_[(size_t)s];
        if (tab.total) {
            if (sym.arity.generalized())
                throw InputError("generalized symbol '" + sym.name + "' needs a partial table");
            std::size_t want = int_pow((size_t)carrier_.size(), sym.arity.n);
            if (tab.flat.size() != want)
                throw InputError("table for '" + sym.name + "' has wrong size");
            for (int v : tab.flat)
                if (v < 0 || v >= carrier_.size())
                    throw InputError("table value out of range for '" + sym.name + "'");
        } else {
            for (const auto& [tuple, v] : tab.partial) {
                if ((int)tuple.size() != sym.arity.size())
                    throw InputError("tuple arity mismatch for '" + sym.name + "'");
                for (int x : tuple)
                    if (x < 0 || x >= carrier_.size())
                        throw InputError("tuple entry out of range for '" + sym.name + "'");
                if (v < 0 || v >= carrier_.size())
                    throw InputError("table value out of range for '" + sym.name + "'");
            }
        }
    }
}

std::optional<int> QuantAlgebra::apply(int symbol, const std::vector<int>& tuple) const {
    return ops_[(size_t)symbol].lookup(tuple, carrier_.size());
}

AlgebraReport check_algebra(const QuantAlgebra& a) {
    AlgebraReport rep;
    const auto& c = a.carrier();
    for (int s = 0; s < a.signature().size(); ++s) {
        const auto& sym = a.signature().symbol(s);
        int k = sym.arity.size();
        // collect the defined tuples
        std::vector<std::vector<int>> dom;
        if (a.table(s).total) {
            dom = all_tuples(k, c.size());
        } else {
            for (const auto& [t, v] : a.table(s).partial) dom.push_back(t);
            if (sym.arity.generalized()) {
                // domain must be exactly the nonexpanding tuples
                auto want = nonexpanding_assignments(*sym.arity.space, c);
                std::set<std::vector<int>> have(dom.begin(), dom.end());
                for (const auto& t : want)
                    if (!have.count(t))
                        rep.domain_errors.push_back("'" + sym.name +
                                                    "' undefined on a nonexpanding tuple");
                for (const auto& t : dom) {
                    bool ok = true;
                    for (int i = 0; ok && i < k; ++i)
                        for (int j = 0; ok && j < k; ++j)
                            if (c.dist(t[(size_t)i], t[(size_t)j]) > sym.arity.bound(i, j))
                                ok = false;
                    if (!ok)
                        rep.domain_errors.push_back("'" + sym.name +
                                                    "' defined on a non-admissible tuple");
                }
            }
        }
        // nonexpansiveness: the hypothesis distance is the sup metric of the
        // argument tuples (positionwise maximum) in both cases
        for (size_t i = 0; i < dom.size(); ++i)
            for (size_t j = i + 1; j < dom.size(); ++j) {
                auto va = a.apply(s, dom[i]);
                auto vb = a.apply(s, dom[j]);
                if (!va || !vb) continue;
                Dist bound = Dist::zero();
                for (int x = 0; x < k; ++x)
                    bound = max(bound, c.dist(dom[i][(size_t)x], dom[j][(size_t)x]));
                if (c.dist(*va, *vb) > bound)
                    rep.violations.push_back({s, dom[i], dom[j], c.dist(*va, *vb), bound});
            }
    }
    return rep;
}

HomomorphismReport check_homomorphism(const std::vector<int>& map, const QuantAlgebra& a,
                                      const QuantAlgebra& b) {
    HomomorphismReport rep;
    const auto& ca = a.carrier();
    const auto& cb = b.carrier();
    if ((int)map.size() != ca.size()) {
        rep.problems.push_back("map has wrong domain size");
        return rep;
    }
    for (int i = 0; i < ca.size(); ++i)
        for (int j = 0; j < ca.size(); ++j)
            if (cb.dist(map[(size_t)i], map[(size_t)j]) > ca.dist(i, j)) {
                rep.problems.push_back("not nonexpanding on (" + ca.label(i) + "," + ca.label(j) +
                                       ")");
                return rep;
            }
    for (int s = 0; s < a.signature().size(); ++s) {
        const auto& sym = a.signature().symbol(s);
        int k = sym.arity.size();
        std::vector<std::vector<int>> dom;
        if (a.table(s).total)
            dom = all_tuples(k, ca.size());
        else
            for (const auto& [t, v] : a.table(s).partial) dom.push_back(t);
        for (const auto& t : dom) {
            auto va = a.apply(s, t);
            if (!va) continue;
            std::vector<int> mt(t.size());
            for (size_t x = 0; x < t.size(); ++x) mt[x] = map[(size_t)t[x]];
            auto vb = b.apply(s, mt);
            if (!vb) {
                rep.problems.push_back("'" + sym.name + "' undefined on a mapped tuple");
                continue;
            }
            if (*vb != map[(size_t)*va])
                rep.problems.push_back("square for '" + sym.name + "' does not commute");
        }
    }
    return rep;
}

ProductAlgebra product_algebra(const Signature& sig, const std::vector<QuantAlgebra>& factors) {
    if (!sig.finitary()) throw InputError("products need a finitary signature");
    for (const auto& f : factors)
        if (f.signature().size() != sig.size())
            throw InputError("product factors must share the signature");
    // carrier: iterated product space (max metric); point = tuple of factor points
    std::vector<std::vector<int>> points;  // each: one index per factor
    points.push_back({});
    for (const auto& f : factors) {
        std::vector<std::vector<int>> next;
        for (const auto& p : points)
            for (int i = 0; i < f.carrier().size(); ++i) {
                auto q = p;
                q.push_back(i);
                next.push_back(std::move(q));
            }
        points = std::move(next);
    }
    std::vector<std::string> labels;
    for (const auto& p : points) {
        if (p.empty()) {
            labels.push_back("*");
            continue;
        }
        std::string l = "(";
        for (size_t i = 0; i < p.size(); ++i) {
            if (i) l += ",";
            l += factors[i].carrier().label(p[i]);
        }
        labels.push_back(l + ")");
    }
    int n = (int)points.size();
    std::vector<Dist> e((size_t)n * (size_t)n, Dist::zero());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Dist d = Dist::zero();
            for (size_t f = 0; f < factors.size(); ++f)
                d = max(d, factors[f].carrier().dist(points[(size_t)i][f], points[(size_t)j][f]));
            e[(size_t)(i * n + j)] = d;
        }
    FiniteMetricSpace carrier(labels, std::move(e));
    std::vector<OpTable> ops;
    for (int s = 0; s < sig.size(); ++s) {
        int k = sig.symbol(s).arity.n;
        OpTable tab;
        tab.total = true;
        for (const auto& tuple : all_tuples(k, n)) {
            std::vector<int> res_point;
            for (size_t f = 0; f < factors.size(); ++f) {
                std::vector<int> args;
                for (int x : tuple) args.push_back(points[(size_t)x][f]);
                res_point.push_back(*factors[f].apply(s, args));
            }
            int out = (int)(std::find(points.begin(), points.end(), res_point) - points.begin());
            tab.flat.push_back(out);
        }
        ops.push_back(std::move(tab));
    }
    ProductAlgebra out{QuantAlgebra(sig, carrier, std::move(ops)), {}};
    for (size_t f = 0; f < factors.size(); ++f) {
        std::vector<int> proj;
        for (const auto& p : points) proj.push_back(p[f]);
        out.projections.push_back(std::move(proj));
    }
    return out;
}

Subalgebra subalgebra_generated(const QuantAlgebra& a, const std::vector<int>& seed) {
    std::set<int> members(seed.begin(), seed.end());
    bool grew = true;
    while (grew) {
        grew = false;
        for (int s = 0; s < a.signature().size(); ++s) {
            int k = a.signature().symbol(s).arity.size();
            std::vector<int> base(members.begin(), members.end());
            for (const auto& tuple_ix : all_tuples(k, (int)base.size())) {
                std::vector<int> tuple;
                for (int t : tuple_ix) tuple.push_back(base[(size_t)t]);
                auto v = a.apply(s, tuple);
                if (v && !members.count(*v)) {
                    members.insert(*v);
                    grew = true;
                }
            }
        }
    }
    std::vector<int> incl(members.begin(), members.end());
    std::vector<int> back((size_t)a.carrier().size(), -1);
    for (size_t i = 0; i < incl.size(); ++i) back[(size_t)incl[i]] = (int)i;
    FiniteMetricSpace carrier = a.carrier().subspace(incl);
    std::vector<OpTable> ops;
    for (int s = 0; s < a.signature().size(); ++s) {
        int k = a.signature().symbol(s).arity.size();
        if (a.table(s).total) {
            OpTable tab;
            tab.total = true;
            for (const auto& tuple_ix : all_tuples(k, (int)incl.size())) {
                std::vector<int> tuple;
                for (int t : tuple_ix) tuple.push_back(incl[(size_t)t]);
                tab.flat.push_back(back[(size_t)*a.apply(s, tuple)]);
            }
            ops.push_back(std::move(tab));
        } else {
            OpTable tab;
            tab.total = false;
            for (const auto& [tuple, v] : a.table(s).partial) {
                bool inside = back[(size_t)v] >= 0;
                std::vector<int> sub;
                for (int x : tuple) {
                    if (back[(size_t)x] < 0) {
                        inside = false;
                        break;
                    }
                    sub.push_back(back[(size_t)x]);
                }
                if (inside) tab.partial[sub] = back[(size_t)v];
            }
            ops.push_back(std::move(tab));
        }
    }
    return Subalgebra{QuantAlgebra(a.signature(), carrier, std::move(ops)), incl};
}

ImageFactorization image_factorization(const std::vector<int>& map, const QuantAlgebra& a,
                                       const QuantAlgebra& b) {
    auto rep = check_homomorphism(map, a, b);
    if (!rep.ok()) throw InputError("image_factorization needs a valid homomorphism");
    std::vector<int> image_points;
    std::vector<int> back((size_t)b.carrier().size(), -1);
    for (int v : map)
        if (back[(size_t)v] < 0) {
            back[(size_t)v] = (int)image_points.size();
            image_points.push_back(v);
        }
    FiniteMetricSpace carrier = b.carrier().subspace(image_points);
    std::vector<OpTable> ops;
    for (int s = 0; s < a.signature().size(); ++s) {
        int k = a.signature().symbol(s).arity.size();
        if (b.table(s).total) {
            OpTable tab;
            tab.total = true;
            bool closed = true;
            for (const auto& tuple_ix : all_tuples(k, (int)image_points.size())) {
                std::vector<int> tuple;
                for (int x : tuple_ix) tuple.push_back(image_points[(size_t)x]);
                int v = *b.apply(s, tuple);
                if (back[(size_t)v] < 0) closed = false;
                tab.flat.push_back(back[(size_t)v]);
            }
            if (!closed) throw InputError("image is not closed under operations");
            ops.push_back(std::move(tab));
        } else {
            OpTable tab;
            tab.total = false;
            for (const auto& [tuple, v] : b.table(s).partial) {
                bool inside = back[(size_t)v] >= 0;
                std::vector<int> sub;
                for (int x : tuple) {
                    if (back[(size_t)x] < 0) {
                        inside = false;
                        break;
                    }
                    sub.push_back(back[(size_t)x]);
                }
                if (inside) tab.partial[sub] = back[(size_t)v];
            }
            ops.push_back(std::move(tab));
        }
    }
    ImageFactorization out;
    out.image = QuantAlgebra(a.signature(), carrier, std::move(ops));
    out.surjection.resize(map.size());
    for (size_t i = 0; i < map.size(); ++i) out.surjection[i] = back[(size_t)map[i]];
    out.embedding = image_points;
    return out;
}

std::vector<QuantAlgebra> enumerate_algebras(const Signature& sig,
                                             const FiniteMetricSpace& carrier,
                                             std::size_t budget) {
    if (!sig.finitary()) throw InputError("enumerate_algebras needs a finitary signature");
    int c = carrier.size();
    // per-symbol valid tables
    std::vector<std::vector<OpTable>> choices;
    for (int s = 0; s < sig.size(); ++s) {
        int k = sig.symbol(s).arity.n;
        auto tuples = all_tuples(k, c);
        std::vector<OpTable> valid;
        if (c == 0) {
            if (tuples.empty() || k > 0) {
                OpTable t;
                t.total = true;
                valid.push_back(t);  // vacuous table on the empty carrier
            }
            choices.push_back(std::move(valid));
            continue;
        }
        std::vector<int> assign(tuples.size(), 0);
        while (true) {
            // nonexpansiveness filter
            bool ok = true;
            for (size_t i = 0; ok && i < tuples.size(); ++i)
                for (size_t j = i + 1; ok && j < tuples.size(); ++j) {
                    Dist bound = Dist::zero();
                    for (int x = 0; x < k; ++x)
                        bound = max(bound, carrier.dist(tuples[i][(size_t)x], tuples[j][(size_t)x]));
                    if (carrier.dist(assign[i], assign[j]) > bound) ok = false;
                }
            if (ok) {
                OpTable t;
                t.total = true;
                t.flat = assign;
                valid.push_back(std::move(t));
                if (valid.size() > budget) throw BudgetError("algebra enumeration budget exceeded");
            }
            int pos = (int)assign.size() - 1;
            while (pos >= 0 && ++assign[(size_t)pos] == c) assign[(size_t)pos--] = 0;
            if (pos < 0) break;
        }
        choices.push_back(std::move(valid));
    }
    // cartesian product over symbols
    std::vector<QuantAlgebra> out;
    std::vector<size_t> pick(choices.size(), 0);
    std::size_t count = 1;
    for (const auto& ch : choices) {
        count *= ch.size();
        if (count > budget) throw BudgetError("algebra enumeration budget exceeded");
        if (ch.empty()) return out;
    }
    if (choices.empty()) {
        out.emplace_back(sig, carrier, std::vector<OpTable>{});
        return out;
    }
    while (true) {
        std::vector<OpTable> ops;
        for (size_t s = 0; s < choices.size(); ++s) ops.push_back(choices[s][pick[s]]);
        out.emplace_back(sig, carrier, std::move(ops));
        int pos = (int)pick.size() - 1;
        while (pos >= 0 && ++pick[(size_t)pos] == choices[(size_t)pos].size())
            pick[(size_t)pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

TermEvaluator::TermEvaluator(const QuantAlgebra& a,
                             std::vector<std::pair<std::string, int>> interpretation)
    : a_(a), env_(std::move(interpretation)) {}

std::optional<int> TermEvaluator::try_eval(const TermPtr& t) const {
    if (t->is_var()) {
        for (const auto& [v, p] : env_)
            if (v == t->var_label()) return p;
        return std::nullopt;
    }
    std::vector<int> args;
    for (const auto& k : t->kids()) {
        auto v = try_eval(k);
        if (!v) return std::nullopt;
        args.push_back(*v);
    }
    return a_.apply(t->symbol(), args);
}

int TermEvaluator::eval(const TermPtr& t) const {
    auto v = try_eval(t);
    if (!v) throw EvalError("operation undefined", t->str(a_.signature()));
    return *v;
}

}  // namespace qalg
