#include "qalg/free_algebra.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qalg/constructions.hpp"
#include "qalg/errors.hpp"

namespace qalg {

namespace {

struct Node {
    int symbol;             // -1 for a generator
    int gen;                // generator index when symbol < 0
    std::vector<int> kids;  // class ids (canonical as of the last rebuild)
};

class Engine {
public:
    Engine(const Presentation& p, const FiniteMetricSpace& m, int depth,
           const FreeAlgebraOptions& opts)
        : pres_(p), gens_(m), depth_(depth), opts_(opts) {
        for (int i = 0; i < gens_.size(); ++i) {
            Node n{-1, i, {}};
            add_node(std::move(n));
        }
        rebuild();
        dist_.assign(classes_.size() * classes_.size(), Dist::infinity());
        for (size_t i = 0; i < classes_.size(); ++i) dref(i, i) = Dist::zero();
        for (int i = 0; i < gens_.size(); ++i)
            for (int j = 0; j < gens_.size(); ++j)
                dref(cls_index_[(size_t)find(i)], cls_index_[(size_t)find(j)]) = gens_.dist(i, j);
    }

    void run() {
        bool outer_changed = true;
        while (outer_changed) {
            outer_changed = false;
            if (grow_universe()) outer_changed = true;
            if (zero_layer()) outer_changed = true;
            if (distance_fixed_point()) outer_changed = true;
        }
        // one more pass must be a no-op (fixed point sanity)
        if (distance_pass_once())
            throw ConvergenceError("fixed point not stable after final pass");
    }

    FreeAlgebraApprox result() {
        FreeAlgebraApprox out;
        out.presentation = pres_;
        out.generators = gens_;
        out.depth = depth_;
        for (int c : classes_) out.reps.push_back(rep_[(size_t)c]);
        std::vector<std::string> labels;
        for (int c : classes_) labels.push_back(rep_[(size_t)c]->str(pres_.sig));
        out.pseudo = FinitePseudometricSpace(labels, dist_);
        // the engine already merged every zero pair, so the reflection is
        // the identity and the representative labels can be kept
        out.classes = FiniteMetricSpace(labels, dist_);
        std::vector<OpTable> ops((size_t)pres_.sig.size());
        for (auto& t : ops) t.total = false;
        // nodes merged into another class still define table entries
        for (size_t n = 0; n < nodes_.size(); ++n) {
            const Node& nd = nodes_[n];
            if (nd.symbol < 0) continue;
            std::vector<int> tuple;
            for (int k : nd.kids) tuple.push_back(cls_index_[(size_t)find(k)]);
            ops[(size_t)nd.symbol].partial[tuple] = cls_index_[(size_t)find((int)n)];
        }
        out.quotient = QuantAlgebra(pres_.sig, out.classes, std::move(ops));
        for (int i = 0; i < gens_.size(); ++i)
            out.unit.push_back(cls_index_[(size_t)find(i)]);
        return out;
    }

private:
    // --- union-find over node ids ---
    int find(int x) const {
        while (uf_[(size_t)x] != x) x = uf_[(size_t)x];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) uf_[(size_t)std::max(a, b)] = std::min(a, b);
    }

    int add_node(Node n) {
        auto key = node_key(n);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        if (nodes_.size() >= opts_.universe_budget)
            throw BudgetError("free-algebra universe exceeds budget");
        nodes_.push_back(n);
        uf_.push_back((int)nodes_.size() - 1);
        memo_[key] = (int)nodes_.size() - 1;
        return (int)nodes_.size() - 1;
    }

    std::vector<int> node_key(const Node& n) const {
        std::vector<int> k{n.symbol, n.symbol < 0 ? n.gen : 0};
        for (int c : n.kids) k.push_back(c);
        return k;
    }

    Dist& dref(size_t i, size_t j) { return dist_[i * classes_.size() + j]; }
    const Dist& dval(size_t i, size_t j) const { return dist_[i * classes_.size() + j]; }

    // Recomputes canonical kids, merges congruent nodes, recomputes class
    // list, representatives and the distance matrix (minimum over merged
    // entries).  Safe to call with dist_ empty (initialization).
    void rebuild() {
        bool again = true;
        while (again) {
            again = false;
            std::map<std::vector<int>, int> m2;
            for (size_t n = 0; n < nodes_.size(); ++n) {
                Node& nd = nodes_[n];
                for (int& k : nd.kids) k = find(k);
                auto key = node_key(nd);
                auto it = m2.find(key);
                if (it == m2.end()) {
                    m2[key] = find((int)n);
                } else if (find(it->second) != find((int)n)) {
                    unite(it->second, (int)n);
                    again = true;
                }
            }
            if (!again) {
                memo_.clear();
                for (size_t n = 0; n < nodes_.size(); ++n) memo_[node_key(nodes_[n])] = find((int)n);
            }
        }
        // class list and dense index
        std::vector<int> old_classes = classes_;
        std::vector<int> old_index = cls_index_;
        std::vector<Dist> old_dist = dist_;
        classes_.clear();
        cls_index_.assign(nodes_.size(), -1);
        for (size_t n = 0; n < nodes_.size(); ++n)
            if (find((int)n) == (int)n) {
                cls_index_[n] = (int)classes_.size();
                classes_.push_back((int)n);
            }
        recompute_reps();
        if (!old_dist.empty()) {
            size_t nn = classes_.size();
            std::vector<Dist> nd(nn * nn, Dist::infinity());
            for (size_t i = 0; i < nn; ++i) nd[i * nn + i] = Dist::zero();
            for (size_t i = 0; i < old_classes.size(); ++i)
                for (size_t j = 0; j < old_classes.size(); ++j) {
                    int a = cls_index_[(size_t)find(old_classes[i])];
                    int b = cls_index_[(size_t)find(old_classes[j])];
                    const Dist& v = old_dist[i * old_classes.size() + j];
                    if (v < nd[(size_t)a * nn + (size_t)b]) nd[(size_t)a * nn + (size_t)b] = v;
                }
            dist_ = std::move(nd);
        }
    }

    void recompute_reps() {
        rep_.assign(nodes_.size(), nullptr);
        rep_height_.assign(nodes_.size(), -1);
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t n = 0; n < nodes_.size(); ++n) {
                const Node& nd = nodes_[n];
                int root = find((int)n);
                int h;
                if (nd.symbol < 0) {
                    h = 0;
                } else {
                    h = 0;
                    bool all = true;
                    for (int k : nd.kids) {
                        int rk = find(k);
                        if (rep_height_[(size_t)rk] < 0) {
                            all = false;
                            break;
                        }
                        h = std::max(h, rep_height_[(size_t)rk]);
                    }
                    if (!all) continue;
                    h += 1;
                }
                if (rep_height_[(size_t)root] < 0 || h < rep_height_[(size_t)root]) {
                    rep_height_[(size_t)root] = h;
                    changed = true;
                }
            }
        }
        // build actual representative terms, least first by height
        bool built = true;
        while (built) {
            built = false;
            for (size_t n = 0; n < nodes_.size(); ++n) {
                const Node& nd = nodes_[n];
                int root = find((int)n);
                TermPtr cand;
                if (nd.symbol < 0) {
                    cand = Term::var(gens_.label(nd.gen));
                } else {
                    std::vector<TermPtr> kids;
                    bool all = true;
                    for (int k : nd.kids) {
                        const TermPtr& rk = rep_[(size_t)find(k)];
                        if (!rk) {
                            all = false;
                            break;
                        }
                        kids.push_back(rk);
                    }
                    if (!all) continue;
                    cand = Term::app(nd.symbol, std::move(kids));
                }
                const TermPtr& cur = rep_[(size_t)root];
                if (!cur || structural_compare(cand, cur, gens_) < 0) {
                    rep_[(size_t)root] = cand;
                    built = true;
                }
            }
        }
    }

    int class_height(int cls_node) const { return rep_height_[(size_t)find(cls_node)]; }

    // Adds every application of every symbol over current classes whose
    // height stays within the depth bound (and, for generalized arities,
    // whose tuple is nonexpanding for the current pseudometric).
    bool grow_universe() {
        bool grew = false;
        size_t node_count = nodes_.size();
        for (int s = 0; s < pres_.sig.size(); ++s) {
            const Arity& ar = pres_.sig.symbol(s).arity;
            int k = ar.size();
            if (k == 0) {
                if (depth_ >= 1) {
                    size_t before = nodes_.size();
                    add_node(Node{s, 0, {}});
                    if (nodes_.size() != before) grew = true;
                }
                continue;
            }
            std::vector<int> tuple((size_t)k, 0);
            std::vector<int> roots = classes_;
            std::function<void(int, int)> walk = [&](int pos, int hmax) {
                if (1 + hmax > depth_ && pos > 0) return;  // prune as we go
                if (pos == k) {
                    if (1 + hmax > depth_) return;
                    if (ar.generalized()) {
                        for (int i = 0; i < k; ++i)
                            for (int j = i + 1; j < k; ++j) {
                                if (dval((size_t)cls_index_[(size_t)tuple[(size_t)i]],
                                         (size_t)cls_index_[(size_t)tuple[(size_t)j]]) >
                                    ar.bound(i, j))
                                    return;
                            }
                    }
                    std::vector<int> kids(tuple.begin(), tuple.end());
                    size_t before = nodes_.size();
                    add_node(Node{s, 0, std::move(kids)});
                    if (nodes_.size() != before) grew = true;
                    return;
                }
                for (int c : roots) {
                    int h = class_height(c);
                    if (h < 0 || 1 + std::max(hmax, h) > depth_) continue;
                    tuple[(size_t)pos] = c;
                    walk(pos + 1, std::max(hmax, h));
                }
            };
            walk(0, 0);
        }
        if (grew) {
            rebuild();
            (void)node_count;
        }
        return grew;
    }

    // Evaluates a term under an assignment of variables to classes; null when
    // some application is not in the universe.
    std::optional<int> eval(const TermPtr& t,
                            const std::vector<std::pair<std::string, int>>& env) const {
        if (t->is_var()) {
            for (const auto& [v, c] : env)
                if (v == t->var_label()) return find(c);
            return std::nullopt;
        }
        Node n{t->symbol(), 0, {}};
        for (const auto& k : t->kids()) {
            auto v = eval(k, env);
            if (!v) return std::nullopt;
            n.kids.push_back(*v);
        }
        auto it = memo_.find(node_key(n));
        if (it == memo_.end()) return std::nullopt;
        return find(it->second);
    }

    // per-variable height budget so that both substituted sides can stay
    // within the depth bound
    static void occurrence_depths(const TermPtr& t, int depth_here,
                                  std::map<std::string, int>& out) {
        if (t->is_var()) {
            auto it = out.find(t->var_label());
            if (it == out.end() || it->second < depth_here) out[t->var_label()] = depth_here;
            return;
        }
        for (const auto& k : t->kids()) occurrence_depths(k, depth_here + 1, out);
    }

    std::map<std::string, int> var_budgets(const TermPtr& l, const TermPtr& r,
                                           const std::vector<std::string>& vars) const {
        std::map<std::string, int> occ;
        occurrence_depths(l, 0, occ);
        occurrence_depths(r, 0, occ);
        std::map<std::string, int> budget;
        for (const auto& v : vars) {
            auto it = occ.find(v);
            budget[v] = it == occ.end() ? depth_ : depth_ - it->second;
        }
        return budget;
    }

    // Applies the clauses of one unconditional equation with zero epsilon by
    // merging; returns whether anything was united.
    bool apply_zero_axiom(const QuantEquation& e) {
        bool merged = false;
        auto budget = var_budgets(e.l, e.r, e.vars);
        std::vector<std::vector<int>> pools;
        for (const auto& v : e.vars) {
            std::vector<int> pool;
            for (int c : classes_)
                if (class_height(c) <= budget[v]) pool.push_back(c);
            pools.push_back(std::move(pool));
        }
        std::vector<std::pair<std::string, int>> env(e.vars.size());
        std::function<void(size_t)> walk = [&](size_t pos) {
            if (pos == e.vars.size()) {
                auto a = eval(e.l, env);
                auto b = eval(e.r, env);
                if (a && b && *a != *b) {
                    unite(*a, *b);
                    merged = true;
                }
                return;
            }
            for (int c : pools[pos]) {
                env[pos] = {e.vars[pos], c};
                walk(pos + 1);
            }
        };
        walk(0);
        return merged;
    }

    // Saturates all zero-epsilon unconditional equations together with
    // congruence closure; no distances involved.
    bool zero_layer() {
        bool any = false;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& eq : pres_.equations) {
                const auto* q = std::get_if<QuantEquation>(&eq);
                if (!q || !q->eps.is_zero()) continue;
                if (apply_zero_axiom(*q)) changed = true;
            }
            if (changed) {
                rebuild();
                any = true;
            }
        }
        return any;
    }

    bool relax(int ca, int cb, const Dist& bound, bool& zero_found) {
        size_t a = (size_t)cls_index_[(size_t)find(ca)];
        size_t b = (size_t)cls_index_[(size_t)find(cb)];
        if (dval(a, b) <= bound) return false;
        dref(a, b) = bound;
        dref(b, a) = bound;
        if (bound.is_zero() && a != b) zero_found = true;
        return true;
    }

    bool distance_pass_once() {
        bool changed = false;
        bool zero_found = false;
        // (a) axiom instances
        for (const auto& eq : pres_.equations) {
            if (const auto* q = std::get_if<QuantEquation>(&eq)) {
                if (q->eps.is_zero()) continue;  // handled by the zero layer
                auto budget = var_budgets(q->l, q->r, q->vars);
                std::vector<std::pair<std::string, int>> env(q->vars.size());
                std::function<void(size_t)> walk = [&](size_t pos) {
                    if (pos == q->vars.size()) {
                        auto a = eval(q->l, env);
                        auto b = eval(q->r, env);
                        if (a && b && relax(*a, *b, q->eps, zero_found)) changed = true;
                        return;
                    }
                    for (int c : classes_) {
                        if (class_height(c) > budget[q->vars[pos]]) continue;
                        env[pos] = {q->vars[pos], c};
                        walk(pos + 1);
                    }
                };
                walk(0);
            } else if (const auto* b = std::get_if<BasicEquation>(&eq)) {
                apply_basic(*b, changed, zero_found);
            } else {
                // hypothesis lists act through their reflected basic form
                auto refl = reflect_hypotheses(pres_.sig, std::get<HypothesisListEquation>(eq));
                apply_basic(refl, changed, zero_found);
            }
        }
        // (b) congruence: same-symbol applications (one per canonical key;
        // the key lists the kid classes after "symbol, tag")
        for (int s = 0; s < pres_.sig.size(); ++s) {
            std::vector<const std::vector<int>*> keys;
            std::vector<int> roots;
            for (const auto& [key, root] : memo_)
                if (key[0] == s) {
                    keys.push_back(&key);
                    roots.push_back(root);
                }
            for (size_t i = 0; i < keys.size(); ++i)
                for (size_t j = i + 1; j < keys.size(); ++j) {
                    Dist bound = Dist::zero();
                    for (size_t k = 2; k < keys[i]->size(); ++k) {
                        bound = max(bound,
                                    dval((size_t)cls_index_[(size_t)find((*keys[i])[k])],
                                         (size_t)cls_index_[(size_t)find((*keys[j])[k])]));
                        if (bound.is_infinite()) break;
                    }
                    if (!bound.is_infinite() && relax(roots[i], roots[j], bound, zero_found))
                        changed = true;
                }
        }
        // (c) triangle closure
        size_t n = classes_.size();
        for (size_t k = 0; k < n; ++k)
            for (size_t i = 0; i < n; ++i) {
                const Dist& dik = dval(i, k);
                if (dik.is_infinite()) continue;
                for (size_t j = 0; j < n; ++j) {
                    const Dist& dkj = dval(k, j);
                    if (dkj.is_infinite()) continue;
                    Dist via = dik + dkj;
                    if (via < dval(i, j)) {
                        dref(i, j) = via;
                        changed = true;
                        if (via.is_zero() && i != j) zero_found = true;
                    }
                }
            }
        if (zero_found) {
            // metric-reflection step: merge zero-distance classes and rerun
            for (size_t i = 0; i < n; ++i)
                for (size_t j = i + 1; j < n; ++j)
                    if (dval(i, j).is_zero()) unite(classes_[i], classes_[j]);
            rebuild();
        }
        return changed;
    }

    void apply_basic(const BasicEquation& be, bool& changed, bool& zero_found) {
        auto budget = var_budgets(be.l, be.r, be.context.labels());
        int nv = be.context.size();
        std::vector<std::pair<std::string, int>> env((size_t)nv);
        std::function<void(int)> walk = [&](int pos) {
            if (pos == nv) {
                auto a = eval(be.l, env);
                auto b = eval(be.r, env);
                if (a && b && relax(*a, *b, be.eps, zero_found)) changed = true;
                return;
            }
            for (int c : classes_) {
                if (class_height(c) > budget[be.context.label(pos)]) continue;
                // nonexpanding for the current pseudometric, re-examined
                // every pass as distances shrink
                bool ok = true;
                for (int q = 0; q < pos && ok; ++q)
                    if (dval((size_t)cls_index_[(size_t)find(c)],
                             (size_t)cls_index_[(size_t)find(env[(size_t)q].second)]) >
                        be.context.dist(pos, q))
                        ok = false;
                if (!ok) continue;
                env[(size_t)pos] = {be.context.label(pos), c};
                walk(pos + 1);
            }
        };
        walk(0);
    }

    bool distance_fixed_point() {
        bool any = false;
        std::size_t pairs = classes_.size() * (classes_.size() + 1) / 2;
        std::size_t cap = std::max(opts_.pass_cap_floor, pairs * pairs);
        std::size_t passes = 0;
        while (distance_pass_once()) {
            any = true;
            if (++passes > cap)
                throw ConvergenceError("distance fixed point exceeded its pass allowance");
        }
        return any;
    }

    const Presentation& pres_;
    const FiniteMetricSpace& gens_;
    int depth_;
    FreeAlgebraOptions opts_;

    std::vector<Node> nodes_;
    std::vector<int> uf_;
    std::map<std::vector<int>, int> memo_;

    std::vector<int> classes_;    // canonical node id per class
    std::vector<int> cls_index_;  // node id -> dense class index (roots only)
    std::vector<TermPtr> rep_;    // per root node
    std::vector<int> rep_height_;
    std::vector<Dist> dist_;      // dense matrix over classes_
};

}  // namespace

int FreeAlgebraApprox::class_of_term(const TermPtr& t) const {
    // evaluate through the quotient tables
    std::vector<std::pair<std::string, int>> env;
    for (int i = 0; i < generators.size(); ++i) env.emplace_back(generators.label(i), unit[(size_t)i]);
    TermEvaluator ev(quotient, env);
    auto v = ev.try_eval(t);
    return v ? *v : -1;
}

FreeAlgebraApprox free_algebra(const Presentation& p, const FiniteMetricSpace& generators,
                               int depth, const FreeAlgebraOptions& opts) {
    Engine e(p, generators, depth, opts);
    e.run();
    return e.result();
}

bool certify_depth_stability(FreeAlgebraApprox& f, const FreeAlgebraOptions& opts) {
    FreeAlgebraApprox deeper = free_algebra(f.presentation, f.generators, f.depth + 1, opts);
    for (size_t i = 0; i < f.reps.size(); ++i)
        for (size_t j = 0; j < f.reps.size(); ++j) {
            int a = deeper.class_of_term(f.reps[i]);
            int b = deeper.class_of_term(f.reps[j]);
            if (a < 0 || b < 0) return false;
            if (deeper.classes.dist(a, b) != f.classes.dist((int)i, (int)j)) return false;
        }
    f.exact = true;
    f.exactness_source = "depth-stability";
    return true;
}

UniversalPropertyReport universal_property_check(const FreeAlgebraApprox& f,
                                                 const QuantAlgebra& a,
                                                 const NonexpandingMap& interp) {
    UniversalPropertyReport rep;
    auto membership = variety_membership(a, f.presentation);
    if (!membership.ok) {
        rep.precondition_ok = false;
        rep.notes.push_back("target algebra does not satisfy the presentation (equation " +
                            std::to_string(membership.failing_equation) + ")");
        return rep;
    }
    // h([t]) = interpretation of the representative
    std::vector<std::pair<std::string, int>> env;
    for (int i = 0; i < f.generators.size(); ++i)
        env.emplace_back(f.generators.label(i), interp.img[(size_t)i]);
    TermEvaluator ev(a, env);
    std::vector<int> h;
    for (const auto& r : f.reps) {
        auto v = ev.try_eval(r);
        if (!v) {
            rep.exists = false;
            rep.notes.push_back("representative " + r->str(f.presentation.sig) +
                                " is not evaluable in the target");
            return rep;
        }
        h.push_back(*v);
    }
    // h . unit = interp
    for (int i = 0; i < f.generators.size(); ++i)
        if (h[(size_t)f.unit[(size_t)i]] != interp.img[(size_t)i]) {
            rep.exists = false;
            rep.notes.push_back("h does not extend the interpretation at " +
                                f.generators.label(i));
        }
    // homomorphism squares on every defined table entry
    for (int s = 0; s < f.presentation.sig.size(); ++s)
        for (const auto& [tuple, out] : f.quotient.table(s).partial) {
            std::vector<int> mapped;
            for (int c : tuple) mapped.push_back(h[(size_t)c]);
            auto va = a.apply(s, mapped);
            if (!va) {
                rep.notes.push_back("operation '" + f.presentation.sig.symbol(s).name +
                                    "' undefined on a mapped tuple (depth obstruction)");
                continue;
            }
            if (*va != h[(size_t)out]) {
                rep.exists = false;
                rep.notes.push_back("square for '" + f.presentation.sig.symbol(s).name +
                                    "' does not commute");
            }
        }
    // nonexpansiveness with respect to the quotient metric
    for (int i = 0; i < f.classes.size(); ++i)
        for (int j = 0; j < f.classes.size(); ++j)
            if (a.carrier().dist(h[(size_t)i], h[(size_t)j]) > f.classes.dist(i, j)) {
                rep.exists = false;
                rep.notes.push_back("h is not nonexpanding on classes " + std::to_string(i) +
                                    "," + std::to_string(j));
            }
    // uniqueness: every class is reached from the unit image by operations
    std::set<int> reached(f.unit.begin(), f.unit.end());
    bool grew = true;
    while (grew) {
        grew = false;
        for (int s = 0; s < f.presentation.sig.size(); ++s)
            for (const auto& [tuple, out] : f.quotient.table(s).partial) {
                bool all = std::all_of(tuple.begin(), tuple.end(),
                                       [&](int c) { return reached.count(c) > 0; });
                if (all && reached.insert(out).second) grew = true;
            }
    }
    if ((int)reached.size() != f.classes.size()) {
        rep.unique = false;
        rep.notes.push_back("some classes are not generated from the unit image; uniqueness "
                            "cannot be certified at this depth");
    }
    return rep;
}

}  // namespace qalg
