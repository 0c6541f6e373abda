#include "qalg/monads.hpp"

#include <algorithm>
#include <sstream>

#include "qalg/constructions.hpp"
#include "qalg/errors.hpp"
#include "qalg/free_algebra.hpp"

namespace qalg {

namespace {

std::string space_key(const FiniteMetricSpace& m) {
    std::string k;
    for (const auto& l : m.labels()) k += l + ";";
    k += "|";
    for (const auto& d : m.entries()) k += d.str() + ",";
    return k;
}

// splits the inside of a container label at top-level commas
std::vector<std::string> split_top(const std::string& inner) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : inner) {
        if (c == '[' || c == '{' || c == '(') ++depth;
        if (c == ']' || c == '}' || c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<std::string> decode_container(const std::string& label, char open, char close) {
    if (label.size() < 2 || label.front() != open || label.back() != close)
        throw InputError("malformed element label '" + label + "'");
    return split_top(label.substr(1, label.size() - 2));
}

std::string encode_container(std::vector<std::string> parts, char open, char close, bool sort,
                             bool dedupe) {
    if (sort) std::sort(parts.begin(), parts.end());
    if (dedupe) parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    std::string s(1, open);
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += parts[i];
    }
    s += close;
    return s;
}

// words / multisets over the points of m, lengths 0..cap, lexicographic
std::vector<std::string> enumerate_words(const FiniteMetricSpace& m, int cap, bool sorted) {
    std::vector<std::string> out;
    std::vector<std::vector<int>> level = {{}};
    auto emit = [&](const std::vector<int>& w) {
        std::vector<std::string> parts;
        for (int i : w) parts.push_back(m.label(i));
        std::string lab = encode_container(parts, '[', ']', sorted, false);
        if (std::find(out.begin(), out.end(), lab) == out.end()) out.push_back(lab);
    };
    emit({});
    for (int len = 1; len <= cap; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : level)
            for (int i = 0; i < m.size(); ++i) {
                auto w2 = w;
                w2.push_back(i);
                next.push_back(std::move(w2));
            }
        for (const auto& w : next) emit(w);
        level = std::move(next);
    }
    return out;
}

Dist word_distance(const FiniteMetricSpace& m, const std::string& a, const std::string& b) {
    auto wa = decode_container(a, '[', ']');
    auto wb = decode_container(b, '[', ']');
    if (wa.size() != wb.size()) return Dist::infinity();
    Dist d = Dist::zero();
    for (size_t i = 0; i < wa.size(); ++i)
        d = max(d, m.dist(m.index_or_throw(wa[i]), m.index_or_throw(wb[i])));
    return d;
}

Dist multiset_distance(const FiniteMetricSpace& m, const std::string& a, const std::string& b) {
    auto wa = decode_container(a, '[', ']');
    auto wb = decode_container(b, '[', ']');
    if (wa.size() != wb.size()) return Dist::infinity();
    std::vector<int> ia, ib;
    for (const auto& l : wa) ia.push_back(m.index_or_throw(l));
    for (const auto& l : wb) ib.push_back(m.index_or_throw(l));
    std::sort(ib.begin(), ib.end());
    Dist best = Dist::infinity();
    do {
        Dist d = Dist::zero();
        for (size_t i = 0; i < ia.size(); ++i) d = max(d, m.dist(ia[i], ib[i]));
        best = min(best, d);
    } while (std::next_permutation(ib.begin(), ib.end()));
    if (ia.empty()) return Dist::zero();
    return best;
}

MonadInstance make_word_like(const std::string& name, int cap, bool sorted, bool tensor) {
    MonadInstance t;
    t.name = name;
    t.is_monad = !tensor;
    t.elements = [cap, sorted](const FiniteMetricSpace& m) {
        return enumerate_words(m, cap, sorted);
    };
    t.element_dist = [sorted, tensor](const FiniteMetricSpace& m, const std::string& a,
                                      const std::string& b) {
        if (tensor) {
            auto wa = decode_container(a, '[', ']');
            auto wb = decode_container(b, '[', ']');
            if (wa.size() != wb.size()) return Dist::infinity();
            Dist d = Dist::zero();
            for (size_t i = 0; i < wa.size(); ++i)
                d = d + m.dist(m.index_or_throw(wa[i]), m.index_or_throw(wb[i]));
            return d;
        }
        return sorted ? multiset_distance(m, a, b) : word_distance(m, a, b);
    };
    t.unit_point = [](const FiniteMetricSpace& m, int i) { return "[" + m.label(i) + "]"; };
    t.wrap_label = [](const std::string& l) { return "[" + l + "]"; };
    t.flatten_label = [cap, sorted](const std::string& l) -> std::optional<std::string> {
        std::vector<std::string> flat;
        for (const auto& w : decode_container(l, '[', ']'))
            for (auto& x : decode_container(w, '[', ']')) flat.push_back(std::move(x));
        if ((int)flat.size() > cap) return std::nullopt;
        return encode_container(std::move(flat), '[', ']', sorted, false);
    };
    t.lift_letters = [sorted](const std::string& l,
                              const MonadInstance::LetterFn& fn) -> std::optional<std::string> {
        std::vector<std::string> parts;
        for (const auto& w : decode_container(l, '[', ']')) {
            auto r = fn(w);
            if (!r) return std::nullopt;
            parts.push_back(*r);
        }
        return encode_container(std::move(parts), '[', ']', sorted, false);
    };
    t.map_point = [t](const FiniteMetricSpace& dom, const FiniteMetricSpace& cod,
                      const std::vector<int>& img, const std::string& l) {
        auto r = t.lift_letters(l, [&](const std::string& letter) -> std::optional<std::string> {
            return cod.label(img[(size_t)dom.index_or_throw(letter)]);
        });
        return *r;
    };
    t.interpret = [cap, sorted, tensor](int arity, const std::vector<std::string>& args)
        -> std::optional<std::string> {
        if (tensor) return std::nullopt;
        if (arity == 0) return std::string("[]");
        if (arity != 2) return std::nullopt;
        std::vector<std::string> flat;
        for (const auto& a : args)
            for (auto& x : decode_container(a, '[', ']')) flat.push_back(std::move(x));
        if ((int)flat.size() > cap) return std::nullopt;
        return encode_container(std::move(flat), '[', ']', sorted, false);
    };
    t.random_over = [cap, sorted](const std::vector<std::string>& alphabet,
                                  std::mt19937_64& rng) {
        std::vector<std::string> parts;
        if (!alphabet.empty()) {
            int len = (int)(rng() % (std::uint64_t)(cap + 1));
            for (int i = 0; i < len; ++i)
                parts.push_back(alphabet[(size_t)(rng() % alphabet.size())]);
        }
        return encode_container(std::move(parts), '[', ']', sorted, false);
    };
    return t;
}

}  // namespace

FiniteMetricSpace MonadInstance::on_space(const FiniteMetricSpace& m) const {
    std::string key = space_key(m);
    auto it = cache_->find(key);
    if (it != cache_->end()) return it->second;
    auto labels = elements(m);
    if (labels.size() > max_space)
        throw BudgetError("T applied to '" + (m.size() ? m.label(0) : std::string("empty")) +
                          "...' exceeds the space budget");
    int n = (int)labels.size();
    std::vector<Dist> e((size_t)n * (size_t)n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            e[(size_t)(i * n + j)] =
                i == j ? Dist::zero() : element_dist(m, labels[(size_t)i], labels[(size_t)j]);
    FiniteMetricSpace out(labels, std::move(e));
    cache_->emplace(key, out);
    return out;
}

NonexpandingMap MonadInstance::on_map(const NonexpandingMap& f) const {
    FiniteMetricSpace ta = on_space(f.dom);
    FiniteMetricSpace tb = on_space(f.cod);
    std::vector<int> img;
    for (const auto& l : ta.labels())
        img.push_back(tb.index_or_throw(map_point(f.dom, f.cod, f.img, l)));
    return NonexpandingMap(ta, tb, std::move(img));
}

NonexpandingMap MonadInstance::unit(const FiniteMetricSpace& m) const {
    if (!is_monad) throw InputError("'" + name + "' is a plain functor without a unit");
    FiniteMetricSpace tm = on_space(m);
    std::vector<int> img;
    for (int i = 0; i < m.size(); ++i) img.push_back(tm.index_or_throw(unit_point(m, i)));
    return NonexpandingMap(m, tm, std::move(img));
}

NonexpandingMap MonadInstance::mult(const FiniteMetricSpace& m) const {
    if (!is_monad) throw InputError("'" + name + "' is a plain functor without a multiplication");
    FiniteMetricSpace tm = on_space(m);
    FiniteMetricSpace ttm = on_space(tm);
    std::vector<int> img;
    for (const auto& l : ttm.labels()) {
        auto r = flatten_label(l);
        if (!r) throw BudgetError("multiplication leaves the cap on " + l);
        img.push_back(tm.index_or_throw(*r));
    }
    return NonexpandingMap(ttm, tm, std::move(img));
}

MonadInstance word_monad(int cap) { return make_word_like("word", cap, false, false); }

MonadInstance commutative_word_monad(int cap) {
    return make_word_like("commutative_word", cap, true, false);
}

MonadInstance tensor_word_functor(int cap) {
    return make_word_like("tensor_word", cap, false, true);
}

MonadInstance almost_commutative_monad(const Dist& eps, int cap) {
    MonadInstance t = make_word_like("almost_commutative", cap, false, false);
    // same word carrier; the metric is the free-algebra metric of the
    // almost-commutative presentation
    auto fa_cache =
        std::make_shared<std::map<std::string, std::shared_ptr<FreeAlgebraApprox>>>();
    int depth = 1;
    while ((1 << depth) < cap) ++depth;
    t.element_dist = [eps, depth, fa_cache](const FiniteMetricSpace& m, const std::string& a,
                                            const std::string& b) {
        std::string key = space_key(m);
        auto it = fa_cache->find(key);
        if (it == fa_cache->end()) {
            Signature sig({{"mul", Arity::finitary(2)}, {"e", Arity::finitary(0)}});
            auto V = [](const std::string& s) { return Term::var(s); };
            auto Mu = [](TermPtr x, TermPtr y) { return Term::app(0, {x, y}); };
            TermPtr E = Term::app(1, {});
            Presentation p;
            p.name = "almost_commutative";
            p.sig = sig;
            p.equations = {
                QuantEquation{{"x", "y", "z"}, Mu(Mu(V("x"), V("y")), V("z")),
                              Mu(V("x"), Mu(V("y"), V("z"))), Dist::zero()},
                QuantEquation{{"x"}, Mu(E, V("x")), V("x"), Dist::zero()},
                QuantEquation{{"x"}, Mu(V("x"), E), V("x"), Dist::zero()},
                QuantEquation{{"x", "y"}, Mu(V("x"), V("y")), Mu(V("y"), V("x")), eps},
            };
            auto fa = std::make_shared<FreeAlgebraApprox>(free_algebra(p, m, depth));
            it = fa_cache->emplace(key, std::move(fa)).first;
        }
        const FreeAlgebraApprox& fa = *it->second;
        auto term_of = [&](const std::string& label) {
            std::function<TermPtr(int, int, const std::vector<std::string>&)> build =
                [&](int lo, int hi, const std::vector<std::string>& w) -> TermPtr {
                if (lo == hi) return Term::app(1, {});
                if (hi - lo == 1) return Term::var(w[(size_t)lo]);
                int mid = (lo + hi) / 2;
                return Term::app(0, {build(lo, mid, w), build(mid, hi, w)});
            };
            auto w = decode_container(label, '[', ']');
            return build(0, (int)w.size(), w);
        };
        int ca = fa.class_of_term(term_of(a));
        int cb = fa.class_of_term(term_of(b));
        if (ca < 0 || cb < 0) throw BudgetError("word beyond the almost_commutative depth");
        return fa.classes.dist(ca, cb);
    };
    return t;
}

MonadInstance finite_hausdorff_monad() {
    MonadInstance t;
    t.name = "finite_hausdorff";
    t.elements = [](const FiniteMetricSpace& m) {
        if (m.size() > 12) throw BudgetError("finite_hausdorff limited to 12 points");
        std::vector<std::string> out;
        for (std::size_t mask = 0; mask < ((std::size_t)1 << m.size()); ++mask) {
            std::vector<std::string> parts;
            for (int i = 0; i < m.size(); ++i)
                if (mask & ((std::size_t)1 << i)) parts.push_back(m.label(i));
            out.push_back(encode_container(std::move(parts), '{', '}', true, true));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    t.element_dist = [](const FiniteMetricSpace& m, const std::string& a, const std::string& b) {
        std::vector<int> ia, ib;
        for (const auto& l : decode_container(a, '{', '}')) ia.push_back(m.index_or_throw(l));
        for (const auto& l : decode_container(b, '{', '}')) ib.push_back(m.index_or_throw(l));
        return hausdorff_distance(m, ia, ib);
    };
    t.unit_point = [](const FiniteMetricSpace& m, int i) { return "{" + m.label(i) + "}"; };
    t.wrap_label = [](const std::string& l) { return "{" + l + "}"; };
    t.flatten_label = [](const std::string& l) -> std::optional<std::string> {
        std::vector<std::string> members;
        for (const auto& s : decode_container(l, '{', '}'))
            for (auto& x : decode_container(s, '{', '}')) members.push_back(std::move(x));
        return encode_container(std::move(members), '{', '}', true, true);
    };
    t.lift_letters = [](const std::string& l,
                        const MonadInstance::LetterFn& fn) -> std::optional<std::string> {
        std::vector<std::string> parts;
        for (const auto& s : decode_container(l, '{', '}')) {
            auto r = fn(s);
            if (!r) return std::nullopt;
            parts.push_back(*r);
        }
        return encode_container(std::move(parts), '{', '}', true, true);
    };
    t.map_point = [t](const FiniteMetricSpace& dom, const FiniteMetricSpace& cod,
                      const std::vector<int>& img, const std::string& l) {
        auto r = t.lift_letters(l, [&](const std::string& letter) -> std::optional<std::string> {
            return cod.label(img[(size_t)dom.index_or_throw(letter)]);
        });
        return *r;
    };
    t.interpret = [](int arity, const std::vector<std::string>& args)
        -> std::optional<std::string> {
        if (arity == 0) return std::string("{}");
        if (arity != 2) return std::nullopt;
        std::vector<std::string> members;
        for (const auto& a : args)
            for (auto& x : decode_container(a, '{', '}')) members.push_back(std::move(x));
        return encode_container(std::move(members), '{', '}', true, true);
    };
    t.random_over = [](const std::vector<std::string>& alphabet, std::mt19937_64& rng) {
        std::vector<std::string> parts;
        for (const auto& a : alphabet)
            if (rng() % 2) parts.push_back(a);
        if (!parts.empty() && parts.size() > 4) parts.resize(4);
        return encode_container(std::move(parts), '{', '}', true, true);
    };
    return t;
}

namespace {

MetricReflection quasi_discrete_classes(const FiniteMetricSpace& m) {
    std::vector<Dist> d = m.entries();
    int n = m.size();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Dist& e = d[(size_t)(i * n + j)];
                if (!e.is_zero() && e <= Dist(1, 1)) {
                    e = Dist::zero();
                    changed = true;
                }
            }
        if (!changed) break;
        // shortest-path closure after the merges
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Dist via = d[(size_t)(i * n + k)] + d[(size_t)(k * n + j)];
                    Dist& e = d[(size_t)(i * n + j)];
                    if (via < e) e = via;
                }
    }
    return metric_reflection(FinitePseudometricSpace(m.labels(), std::move(d)));
}

}  // namespace

MonadInstance quasi_discrete_reflection_monad() {
    MonadInstance t;
    t.name = "quasi_discrete_reflection";
    t.elements = [](const FiniteMetricSpace& m) {
        return quasi_discrete_classes(m).space.labels();
    };
    t.element_dist = [](const FiniteMetricSpace& m, const std::string& a, const std::string& b) {
        auto refl = quasi_discrete_classes(m);
        return refl.space.dist(refl.space.index_or_throw(a), refl.space.index_or_throw(b));
    };
    t.unit_point = [](const FiniteMetricSpace& m, int i) {
        auto refl = quasi_discrete_classes(m);
        return refl.space.label(refl.class_of[(size_t)i]);
    };
    // the carriers this wraps are already quasi-discrete, so classes are
    // singletons
    t.wrap_label = [](const std::string& l) { return "{" + l + "}"; };
    t.flatten_label = [](const std::string& l) -> std::optional<std::string> {
        auto members = decode_container(l, '{', '}');
        return members.empty() ? std::string("{}") : members.front();
    };
    t.lift_letters = [](const std::string& l,
                        const MonadInstance::LetterFn& fn) -> std::optional<std::string> {
        std::vector<std::string> parts;
        for (const auto& s : decode_container(l, '{', '}')) {
            auto r = fn(s);
            if (!r) return std::nullopt;
            parts.push_back(*r);
        }
        return encode_container(std::move(parts), '{', '}', true, true);
    };
    t.map_point = [](const FiniteMetricSpace& dom, const FiniteMetricSpace& cod,
                     const std::vector<int>& img, const std::string& l) {
        auto members = decode_container(l, '{', '}');
        int p = dom.index_or_throw(members.front());
        auto refl = quasi_discrete_classes(cod);
        return refl.space.label(refl.class_of[(size_t)img[(size_t)p]]);
    };
    t.interpret = [](int, const std::vector<std::string>&) -> std::optional<std::string> {
        return std::nullopt;
    };
    t.random_over = [](const std::vector<std::string>& alphabet, std::mt19937_64& rng) {
        if (alphabet.empty()) return std::string("{}");
        return "{" + alphabet[(size_t)(rng() % alphabet.size())] + "}";
    };
    return t;
}

MonadInstance monad_by_name(const std::string& name, const Dist& eps, int cap) {
    if (name == "word") return word_monad(cap);
    if (name == "commutative_word") return commutative_word_monad(cap);
    if (name == "almost_commutative") return almost_commutative_monad(eps, cap);
    if (name == "finite_hausdorff") return finite_hausdorff_monad();
    if (name == "quasi_discrete_reflection") return quasi_discrete_reflection_monad();
    if (name == "tensor_word") return tensor_word_functor(cap);
    throw InputError("unknown monad instance '" + name + "'");
}

std::vector<std::string> monad_names() {
    return {"word", "commutative_word", "almost_commutative", "finite_hausdorff",
            "quasi_discrete_reflection", "tensor_word"};
}

OracleReport compare_with_oracle(FreeAlgebraApprox& f, const MonadInstance& oracle) {
    OracleReport rep;
    FiniteMetricSpace tm = oracle.on_space(f.generators);
    // canonical map: fold representatives through unit images and the
    // oracle's operations
    std::vector<std::string> image;
    std::function<std::optional<std::string>(const TermPtr&)> fold =
        [&](const TermPtr& t) -> std::optional<std::string> {
        if (t->is_var())
            return oracle.unit_point(f.generators, f.generators.index_or_throw(t->var_label()));
        std::vector<std::string> args;
        for (const auto& k : t->kids()) {
            auto v = fold(k);
            if (!v) return std::nullopt;
            args.push_back(*v);
        }
        return oracle.interpret((int)args.size(), args);
    };
    for (const auto& r : f.reps) {
        auto v = fold(r);
        if (!v) {
            rep.ok = false;
            rep.notes.push_back("representative " + r->str(f.presentation.sig) +
                                " has no oracle value (cap or arity)");
            return rep;
        }
        image.push_back(*v);
    }
    // injectivity
    for (size_t i = 0; i < image.size(); ++i)
        for (size_t j = i + 1; j < image.size(); ++j)
            if (image[i] == image[j]) {
                rep.ok = false;
                rep.notes.push_back("classes " + std::to_string(i) + " and " + std::to_string(j) +
                                    " collide on oracle element " + image[i]);
            }
    // distance preservation
    for (size_t i = 0; i < image.size(); ++i)
        for (size_t j = 0; j < image.size(); ++j) {
            Dist want = oracle.element_dist(f.generators, image[i], image[j]);
            if (i == j) want = Dist::zero();
            if (f.classes.dist((int)i, (int)j) != want) {
                rep.ok = false;
                rep.notes.push_back("distance mismatch on (" + image[i] + "," + image[j] +
                                    "): quotient " + f.classes.dist((int)i, (int)j).str() +
                                    " vs oracle " + want.str());
            }
        }
    if (rep.ok) {
        f.exact = true;
        f.exactness_source = "oracle:" + oracle.name;
    }
    return rep;
}

PresentationFromMonadResult presentation_from_monad(const MonadInstance& t, int n_max,
                                                    std::size_t size_cap) {
    PresentationFromMonadResult out;
    if (!t.is_monad) throw InputError("'" + t.name + "' is not a monad");
    // discrete variable spaces V_n and their T-images
    std::vector<FiniteMetricSpace> vs;
    std::vector<FiniteMetricSpace> tvs;
    std::vector<std::vector<std::string>> retained;
    for (int n = 0; n <= n_max; ++n) {
        std::vector<std::string> vars;
        for (int i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i));
        vs.push_back(FiniteMetricSpace::discrete(vars));
        tvs.push_back(t.on_space(vs.back()));
        std::vector<std::string> syms(tvs.back().labels());
        if (syms.size() > size_cap) {
            // keep the symbols reachable from unit images under substitution
            out.truncated = true;
            std::vector<std::string> keep;
            for (int i = 0; i < n; ++i) keep.push_back(t.unit_point(vs.back(), i));
            std::sort(keep.begin(), keep.end());
            keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
            bool grew = true;
            while (grew && keep.size() < size_cap) {
                grew = false;
                for (const auto& sigma : std::vector<std::string>(keep)) {
                    // substitute unit images (identity substitution step) and
                    // any pair products via interpret when available
                    auto two = t.interpret(2, {sigma, sigma});
                    if (two && keep.size() < size_cap &&
                        std::find(keep.begin(), keep.end(), *two) == keep.end()) {
                        keep.push_back(*two);
                        grew = true;
                    }
                }
            }
            std::sort(keep.begin(), keep.end());
            syms = keep;
        }
        retained.push_back(syms);
        out.symbols_per_arity.push_back((int)syms.size());
    }
    // signature: one symbol per retained element of T(V_n)
    std::vector<Symbol> symbols;
    std::map<std::pair<int, std::string>, int> sym_index;
    auto sanitize = [](const std::string& s) {
        std::string r;
        for (char c : s)
            r += (std::isalnum((unsigned char)c) || c == '_') ? c : '_';
        return r;
    };
    for (int n = 0; n <= n_max; ++n)
        for (const auto& lab : retained[(size_t)n]) {
            sym_index[{n, lab}] = (int)symbols.size();
            symbols.push_back({"t" + std::to_string(n) + "_" + sanitize(lab), Arity::finitary(n)});
        }
    Presentation p;
    p.name = t.name + "_presentation";
    p.sig = Signature(symbols);
    auto var_terms = [&](int n) {
        std::vector<TermPtr> xs;
        for (int i = 0; i < n; ++i) xs.push_back(Term::var("x" + std::to_string(i)));
        return xs;
    };
    auto vars_of = [&](int n) {
        std::vector<std::string> v;
        for (int i = 0; i < n; ++i) v.push_back("x" + std::to_string(i));
        return v;
    };
    // family (1): realized finite distances in T(V_n), tightest epsilon per
    // off-diagonal pair
    for (int n = 0; n <= n_max; ++n) {
        const auto& syms = retained[(size_t)n];
        for (size_t i = 0; i < syms.size(); ++i)
            for (size_t j = i + 1; j < syms.size(); ++j) {
                Dist d = t.element_dist(vs[(size_t)n], syms[i], syms[j]);
                if (d.is_infinite()) continue;
                auto xs = var_terms(n);
                p.equations.push_back(
                    QuantEquation{vars_of(n), Term::app(sym_index[{n, syms[i]}], xs),
                                  Term::app(sym_index[{n, syms[j]}], xs), d});
            }
    }
    // family (2): substitution; k ranges over maps V_n -> retained T(V_m)
    for (int n = 0; n <= n_max; ++n)
        for (int m = 0; m <= n_max; ++m) {
            const auto& source = retained[(size_t)n];
            const auto& target = retained[(size_t)m];
            if (target.empty() && n > 0) continue;
            std::vector<size_t> pick((size_t)n, 0);
            while (true) {
                // k as a point map V_n -> T(V_m)
                std::vector<int> k_img;
                for (size_t i = 0; i < (size_t)n; ++i)
                    k_img.push_back((int)tvs[(size_t)m].index_or_throw(target[pick[i]]));
                for (const auto& sigma : source) {
                    // k*(sigma) = flatten(Tk(sigma))
                    std::string tk = t.map_point(vs[(size_t)n], tvs[(size_t)m], k_img, sigma);
                    auto flat = t.flatten_label(tk);
                    if (!flat) {
                        out.truncated = true;
                        continue;
                    }
                    auto it = sym_index.find({m, *flat});
                    if (it == sym_index.end()) {
                        out.truncated = true;
                        continue;
                    }
                    auto xs = var_terms(m);
                    std::vector<TermPtr> inner;
                    for (size_t i = 0; i < (size_t)n; ++i)
                        inner.push_back(Term::app(sym_index[{m, target[pick[i]]}], xs));
                    p.equations.push_back(QuantEquation{
                        vars_of(m), Term::app(it->second, xs),
                        Term::app(sym_index[{n, sigma}], inner), Dist::zero()});
                }
                // odometer over target choices
                int pos = n - 1;
                while (pos >= 0 && ++pick[(size_t)pos] == target.size()) pick[(size_t)pos--] = 0;
                if (pos < 0 || n == 0) break;
            }
        }
    // family (3): unit symbols project
    for (int n = 0; n <= n_max; ++n)
        for (int i = 0; i < n; ++i) {
            std::string eta = t.unit_point(vs[(size_t)n], i);
            auto it = sym_index.find({n, eta});
            if (it == sym_index.end()) {
                out.truncated = true;
                continue;
            }
            p.equations.push_back(QuantEquation{vars_of(n),
                                                Term::app(it->second, var_terms(n)),
                                                Term::var("x" + std::to_string(i)), Dist::zero()});
        }
    out.presentation = std::move(p);
    return out;
}

}  // namespace qalg
