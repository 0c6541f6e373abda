#include "qalg/equations.hpp"

#include <algorithm>

#include "qalg/constructions.hpp"
#include "qalg/errors.hpp"

namespace qalg {

std::string equation_str(const Signature& sig, const AnyEquation& e) {
    if (const auto* q = std::get_if<QuantEquation>(&e))
        return q->l->str(sig) + " =[" + q->eps.str() + "] " + q->r->str(sig);
    if (const auto* b = std::get_if<BasicEquation>(&e))
        return "<context> |- " + b->l->str(sig) + " =[" + b->eps.str() + "] " + b->r->str(sig);
    const auto& h = std::get<HypothesisListEquation>(e);
    std::string s;
    for (size_t i = 0; i < h.hypotheses.size(); ++i) {
        if (i) s += ", ";
        s += h.hypotheses[i].x + " ~[" + h.hypotheses[i].delta.str() + "] " + h.hypotheses[i].y;
    }
    return s + " |- " + h.l->str(sig) + " =[" + h.eps.str() + "] " + h.r->str(sig);
}

namespace {

// Runs body over all assignments of points to the variables, in
// lexicographic order; stops when body returns false.
void for_each_assignment(int vars, int carrier,
                         const std::function<bool(const std::vector<int>&)>& body) {
    if (vars == 0) {
        body({});
        return;
    }
    if (carrier == 0) return;
    std::vector<int> a((size_t)vars, 0);
    while (true) {
        if (!body(a)) return;
        int pos = vars - 1;
        while (pos >= 0 && ++a[(size_t)pos] == carrier) a[(size_t)pos--] = 0;
        if (pos < 0) return;
    }
}

SatResult decide(const QuantAlgebra& alg, const std::vector<std::string>& vars,
                 const std::vector<std::vector<int>>& assignments, const TermPtr& l,
                 const TermPtr& r, const Dist& eps) {
    SatResult res;
    for (const auto& img : assignments) {
        std::vector<std::pair<std::string, int>> env;
        for (size_t i = 0; i < vars.size(); ++i) env.emplace_back(vars[i], img[i]);
        TermEvaluator ev(alg, env);
        auto vl = ev.try_eval(l);
        auto vr = ev.try_eval(r);
        if (!vl || !vr) {
            res.ok = false;
            res.eval_error = "operation undefined on " + (vl ? r : l)->str(alg.signature());
            return res;
        }
        Dist d = alg.carrier().dist(*vl, *vr);
        if (d > eps) {
            res.ok = false;
            res.witness = SatWitness{env, d};
            return res;
        }
    }
    return res;
}

}  // namespace

SatResult satisfies(const QuantAlgebra& a, const QuantEquation& e) {
    std::vector<std::vector<int>> assignments;
    for_each_assignment((int)e.vars.size(), a.carrier().size(),
                        [&](const std::vector<int>& img) {
                            assignments.push_back(img);
                            return true;
                        });
    return decide(a, e.vars, assignments, e.l, e.r, e.eps);
}

SatResult satisfies_basic(const QuantAlgebra& a, const BasicEquation& e) {
    auto assignments = nonexpanding_assignments(e.context, a.carrier());
    return decide(a, e.context.labels(), assignments, e.l, e.r, e.eps);
}

SatResult satisfies_hyplist(const QuantAlgebra& a, const HypothesisListEquation& e) {
    std::vector<std::vector<int>> assignments;
    const auto& c = a.carrier();
    for_each_assignment((int)e.vars.size(), c.size(), [&](const std::vector<int>& img) {
        for (const auto& h : e.hypotheses) {
            auto ix = std::find(e.vars.begin(), e.vars.end(), h.x) - e.vars.begin();
            auto iy = std::find(e.vars.begin(), e.vars.end(), h.y) - e.vars.begin();
            if (c.dist(img[(size_t)ix], img[(size_t)iy]) > h.delta) return true;
        }
        assignments.push_back(img);
        return true;
    });
    return decide(a, e.vars, assignments, e.l, e.r, e.eps);
}

SatResult satisfies_any(const QuantAlgebra& a, const AnyEquation& e) {
    if (const auto* q = std::get_if<QuantEquation>(&e)) return satisfies(a, *q);
    if (const auto* b = std::get_if<BasicEquation>(&e)) return satisfies_basic(a, *b);
    // hypothesis lists are decided through their reflected basic form
    return satisfies_basic(a, reflect_hypotheses(a.signature(),
                                                 std::get<HypothesisListEquation>(e)));
}

BasicEquation reflect_hypotheses(const Signature& sig, const HypothesisListEquation& e) {
    (void)sig;
    std::vector<DistanceConstraint> cs;
    for (const auto& h : e.hypotheses) cs.push_back({h.x, h.y, h.delta});
    auto pseudo = smallest_pseudometric(e.vars, cs);
    auto refl = metric_reflection(pseudo);
    std::vector<std::pair<std::string, TermPtr>> subst;
    for (size_t i = 0; i < e.vars.size(); ++i)
        subst.emplace_back(e.vars[i], Term::var(refl.space.label(refl.class_of[i])));
    return BasicEquation{refl.space, substitute(e.l, subst), substitute(e.r, subst), e.eps};
}

MembershipResult variety_membership(const QuantAlgebra& a, const Presentation& p) {
    MembershipResult out;
    for (size_t i = 0; i < p.equations.size(); ++i) {
        auto r = satisfies_any(a, p.equations[i]);
        if (!r.ok) {
            out.ok = false;
            out.failing_equation = (int)i;
            out.detail = std::move(r);
            return out;
        }
    }
    return out;
}

namespace {

// canonical set-partition enumeration via restricted growth strings
std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> rgs((size_t)n, 0);
    while (true) {
        out.push_back(rgs);
        int pos = n - 1;
        for (; pos > 0; --pos) {
            int cap = *std::max_element(rgs.begin(), rgs.begin() + pos) + 1;
            if (rgs[(size_t)pos] < cap) break;
        }
        if (pos == 0) break;
        ++rgs[(size_t)pos];
        std::fill(rgs.begin() + pos + 1, rgs.end(), 0);
    }
    return out;
}

}  // namespace

std::vector<std::pair<QuantAlgebra, std::vector<int>>> quotient_algebras(const QuantAlgebra& a,
                                                                         std::size_t cap) {
    std::vector<std::pair<QuantAlgebra, std::vector<int>>> out;
    if (!a.signature().finitary()) throw InputError("quotients need a finitary signature");
    int n = a.carrier().size();
    for (const auto& part : all_partitions(n)) {
        if (out.size() >= cap) break;
        int classes = part.empty() ? 0 : *std::max_element(part.begin(), part.end()) + 1;
        // operation compatibility: the class of op(tuple) must only depend on
        // the classes of the tuple
        bool congruent = true;
        std::vector<OpTable> ops;
        for (int s = 0; congruent && s < a.signature().size(); ++s) {
            int k = a.signature().symbol(s).arity.n;
            std::map<std::vector<int>, int> induced;
            std::function<void(std::vector<int>&)> walk = [&](std::vector<int>& tuple) {
                if (!congruent) return;
                if ((int)tuple.size() == k) {
                    auto v = *a.apply(s, tuple);
                    std::vector<int> key;
                    for (int x : tuple) key.push_back(part[(size_t)x]);
                    auto it = induced.find(key);
                    if (it == induced.end())
                        induced[key] = part[(size_t)v];
                    else if (it->second != part[(size_t)v])
                        congruent = false;
                    return;
                }
                for (int x = 0; x < n && congruent; ++x) {
                    tuple.push_back(x);
                    walk(tuple);
                    tuple.pop_back();
                }
            };
            std::vector<int> tuple;
            walk(tuple);
            if (!congruent) break;
            OpTable tab;
            tab.total = true;
            std::vector<int> ct((size_t)k, 0);
            std::vector<int> flat;
            std::function<void(int)> emit = [&](int pos) {
                if (pos == k) {
                    std::vector<int> key(ct.begin(), ct.end());
                    flat.push_back(induced.at(key));
                    return;
                }
                for (int x = 0; x < classes; ++x) {
                    ct[(size_t)pos] = x;
                    emit(pos + 1);
                }
            };
            if (classes > 0 || k == 0) emit(0);
            tab.flat = std::move(flat);
            ops.push_back(std::move(tab));
        }
        if (!congruent) continue;
        // largest pseudometric below the pushed-forward distances keeping all
        // operations nonexpanding
        std::vector<Dist> d((size_t)classes * (size_t)classes, Dist::infinity());
        for (int i = 0; i < classes; ++i) d[(size_t)(i * classes + i)] = Dist::zero();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                Dist& e = d[(size_t)(part[(size_t)x] * classes + part[(size_t)y])];
                if (a.carrier().dist(x, y) < e) e = a.carrier().dist(x, y);
            }
        bool changed = true;
        while (changed) {
            changed = false;
            // triangle
            for (int k2 = 0; k2 < classes; ++k2)
                for (int i = 0; i < classes; ++i)
                    for (int j = 0; j < classes; ++j) {
                        Dist via = d[(size_t)(i * classes + k2)] + d[(size_t)(k2 * classes + j)];
                        Dist& e = d[(size_t)(i * classes + j)];
                        if (via < e) {
                            e = via;
                            changed = true;
                        }
                    }
            // congruence of operations
            for (int s = 0; s < a.signature().size(); ++s) {
                int k = a.signature().symbol(s).arity.n;
                std::vector<std::vector<int>> tuples;
                std::vector<int> t((size_t)k, 0);
                std::function<void(int)> gen = [&](int pos) {
                    if (pos == k) {
                        tuples.push_back(t);
                        return;
                    }
                    for (int x = 0; x < classes; ++x) {
                        t[(size_t)pos] = x;
                        gen(pos + 1);
                    }
                };
                if (classes > 0 || k == 0) gen(0);
                for (size_t i = 0; i < tuples.size(); ++i)
                    for (size_t j = i + 1; j < tuples.size(); ++j) {
                        Dist bound = Dist::zero();
                        for (int x = 0; x < k; ++x)
                            bound = max(bound, d[(size_t)(tuples[i][(size_t)x] * classes +
                                                          tuples[j][(size_t)x])]);
                        auto vi = ops[(size_t)s].lookup(tuples[i], classes);
                        auto vj = ops[(size_t)s].lookup(tuples[j], classes);
                        Dist& e = d[(size_t)(*vi * classes + *vj)];
                        if (bound < e) {
                            e = bound;
                            Dist& e2 = d[(size_t)(*vj * classes + *vi)];
                            e2 = bound;
                            changed = true;
                        }
                    }
            }
        }
        // a proper metric quotient must not identify further points
        bool separated = true;
        for (int i = 0; separated && i < classes; ++i)
            for (int j = i + 1; separated && j < classes; ++j)
                if (d[(size_t)(i * classes + j)].is_zero()) separated = false;
        if (!separated) continue;
        std::vector<std::string> labels;
        for (int csl = 0; csl < classes; ++csl) {
            std::string l = "{";
            bool first = true;
            for (int x = 0; x < n; ++x)
                if (part[(size_t)x] == csl) {
                    if (!first) l += ",";
                    l += a.carrier().label(x);
                    first = false;
                }
            labels.push_back(l + "}");
        }
        QuantAlgebra q(a.signature(), FiniteMetricSpace(labels, d), ops);
        out.emplace_back(std::move(q), part);
    }
    return out;
}

ClosureReport birkhoff_closure_check(const Presentation& p,
                                     const std::vector<QuantAlgebra>& sample,
                                     const ClosureCaps& caps) {
    ClosureReport rep;
    std::vector<const QuantAlgebra*> members;
    for (const auto& a : sample)
        if (variety_membership(a, p).ok) members.push_back(&a);
    rep.members_checked = (int)members.size();
    std::size_t product_pairs = 0;
    for (size_t i = 0; i < members.size(); ++i) {
        const QuantAlgebra& a = *members[i];
        // binary products with other members
        for (size_t j = i; j < members.size() && product_pairs < caps.max_product_pairs; ++j) {
            ++product_pairs;
            auto prod = product_algebra(p.sig, {a, *members[j]});
            if (!variety_membership(prod.algebra, p).ok)
                rep.violations.push_back(
                    {"product", a.carrier().label(0) + " sized " +
                                    std::to_string(a.carrier().size()) + " x member " +
                                    std::to_string(j)});
        }
        // generated subalgebras from every seed subset
        int n = a.carrier().size();
        std::size_t seeds = std::min<std::size_t>((std::size_t)1 << n, caps.max_subalgebra_seeds);
        for (std::size_t mask = 0; mask < seeds; ++mask) {
            std::vector<int> seed;
            for (int b = 0; b < n; ++b)
                if (mask & (1u << b)) seed.push_back(b);
            auto sub = subalgebra_generated(a, seed);
            if (!variety_membership(sub.algebra, p).ok)
                rep.violations.push_back({"subalgebra", "seed mask " + std::to_string(mask)});
        }
        // surjective-image quotients
        for (const auto& [q, part] : quotient_algebras(a, caps.max_quotient_targets)) {
            if (!variety_membership(q, p).ok)
                rep.violations.push_back({"image", "partition of size " +
                                                       std::to_string(q.carrier().size())});
        }
    }
    return rep;
}

}  // namespace qalg
