#include "qalg/constructions.hpp"

#include <map>

#include "qalg/errors.hpp"

namespace qalg {

FiniteMetricSpace product(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    std::vector<std::string> labels;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
    int n = (int)labels.size();
    std::vector<Dist> e((size_t)(n * n));
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            for (int k = 0; k < a.size(); ++k)
                for (int l = 0; l < b.size(); ++l)
                    e[(size_t)((i * b.size() + j) * n + (k * b.size() + l))] =
                        max(a.dist(i, k), b.dist(j, l));
    return FiniteMetricSpace(std::move(labels), std::move(e));
}

FiniteMetricSpace power(const FiniteMetricSpace& b, int n) {
    FiniteMetricSpace acc = FiniteMetricSpace::singleton("*");
    for (int i = 0; i < n; ++i) acc = product(acc, b);
    return acc;
}

FiniteMetricSpace tensor(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    std::vector<std::string> labels;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
    int n = (int)labels.size();
    std::vector<Dist> e((size_t)(n * n));
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            for (int k = 0; k < a.size(); ++k)
                for (int l = 0; l < b.size(); ++l)
                    e[(size_t)((i * b.size() + j) * n + (k * b.size() + l))] =
                        a.dist(i, k) + b.dist(j, l);
    return FiniteMetricSpace(std::move(labels), std::move(e));
}

std::vector<std::vector<int>> nonexpanding_assignments(const FiniteMetricSpace& a,
                                                       const FiniteMetricSpace& b) {
    std::vector<std::vector<int>> out;
    int n = a.size();
    if (n == 0) {
        out.push_back({});
        return out;
    }
    if (b.size() == 0) return out;
    std::vector<int> img((size_t)n, 0);
    // depth-first odometer with incremental nonexpansiveness pruning
    int pos = 0;
    std::vector<int> choice((size_t)n, -1);
    while (pos >= 0) {
        if (pos == n) {
            out.push_back(img);
            --pos;
            continue;
        }
        int next = choice[(size_t)pos] + 1;
        choice[(size_t)pos] = next;
        if (next >= b.size()) {
            choice[(size_t)pos] = -1;
            --pos;
            continue;
        }
        img[(size_t)pos] = next;
        bool ok = true;
        for (int j = 0; ok && j <= pos; ++j)
            if (b.dist(next, img[(size_t)j]) > a.dist(pos, j)) ok = false;
        if (ok) ++pos;
    }
    return out;
}

HomSpace hom_space(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    auto assigns = nonexpanding_assignments(a, b);
    std::vector<std::string> labels;
    for (const auto& img : assigns) {
        std::string l = "[";
        for (int i = 0; i < a.size(); ++i) {
            if (i) l += ",";
            l += a.label(i) + "->" + b.label(img[(size_t)i]);
        }
        l += "]";
        labels.push_back(l);
    }
    int n = (int)assigns.size();
    std::vector<Dist> e((size_t)n * (size_t)n, Dist::zero());
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g) {
            Dist d = Dist::zero();
            for (int x = 0; x < a.size(); ++x)
                d = max(d, b.dist(assigns[(size_t)f][(size_t)x], assigns[(size_t)g][(size_t)x]));
            e[(size_t)(f * n + g)] = d;
        }
    HomSpace hs{FiniteMetricSpace(std::move(labels), std::move(e)), {}};
    for (auto& img : assigns) hs.maps.emplace_back(a, b, std::move(img));
    return hs;
}

bool check_ultrametric(const FiniteMetricSpace& a) {
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            for (int k = 0; k < a.size(); ++k)
                if (max(a.dist(i, j), a.dist(j, k)) < a.dist(i, k)) return false;
    return true;
}

namespace {

// all-pairs shortest paths, skipping infinite rows for speed
void min_plus_closure(std::vector<Dist>& d, int n) {
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            const Dist& dik = d[(size_t)(i * n + k)];
            if (dik.is_infinite()) continue;
            for (int j = 0; j < n; ++j) {
                const Dist& dkj = d[(size_t)(k * n + j)];
                if (dkj.is_infinite()) continue;
                Dist via = dik + dkj;
                Dist& dij = d[(size_t)(i * n + j)];
                if (via < dij) dij = via;
            }
        }
}

}  // namespace

FinitePseudometricSpace smallest_pseudometric(const std::vector<std::string>& points,
                                              const std::vector<DistanceConstraint>& cs) {
    int n = (int)points.size();
    std::map<std::string, int> idx;
    for (int i = 0; i < n; ++i) idx[points[(size_t)i]] = i;
    if ((int)idx.size() != n) throw InputError("duplicate point labels");
    std::vector<Dist> d((size_t)n * (size_t)n, Dist::infinity());
    for (int i = 0; i < n; ++i) d[(size_t)(i * n + i)] = Dist::zero();
    for (const auto& c : cs) {
        auto ix = idx.find(c.x), iy = idx.find(c.y);
        if (ix == idx.end()) throw InputError("unknown point label '" + c.x + "' in constraint");
        if (iy == idx.end()) throw InputError("unknown point label '" + c.y + "' in constraint");
        Dist& e1 = d[(size_t)(ix->second * n + iy->second)];
        if (c.delta < e1) e1 = c.delta;
        Dist& e2 = d[(size_t)(iy->second * n + ix->second)];
        if (c.delta < e2) e2 = c.delta;
    }
    min_plus_closure(d, n);
    return FinitePseudometricSpace(points, std::move(d));
}

MetricReflection metric_reflection(const FinitePseudometricSpace& p) {
    int n = p.size();
    std::vector<int> cls((size_t)n, -1);
    std::vector<int> reps;
    for (int i = 0; i < n; ++i) {
        if (cls[(size_t)i] >= 0) continue;
        int c = (int)reps.size();
        reps.push_back(i);
        cls[(size_t)i] = c;
        for (int j = i + 1; j < n; ++j)
            if (p.dist(i, j).is_zero()) cls[(size_t)j] = c;
    }
    std::vector<std::string> labels;
    for (int r : reps) {
        std::string l = "{";
        bool first = true;
        for (int i = 0; i < n; ++i)
            if (cls[(size_t)i] == cls[(size_t)r]) {
                if (!first) l += ",";
                l += p.label(i);
                first = false;
            }
        l += "}";
        labels.push_back(l);
    }
    int m = (int)reps.size();
    std::vector<Dist> e((size_t)m * (size_t)m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) e[(size_t)(a * m + b)] = p.dist(reps[(size_t)a], reps[(size_t)b]);
    return MetricReflection{FiniteMetricSpace(std::move(labels), std::move(e)), std::move(cls)};
}

Dist hausdorff_distance(const FiniteMetricSpace& m, const std::vector<int>& a,
                        const std::vector<int>& b) {
    if (a.empty() && b.empty()) return Dist::zero();
    if (a.empty() || b.empty()) return Dist::infinity();
    auto directed = [&](const std::vector<int>& from, const std::vector<int>& to) {
        Dist worst = Dist::zero();
        for (int x : from) {
            Dist best = Dist::infinity();
            for (int y : to) best = min(best, m.dist(x, y));
            worst = max(worst, best);
        }
        return worst;
    };
    return max(directed(a, b), directed(b, a));
}

DirectedColimit directed_colimit(const std::vector<FiniteMetricSpace>& chain,
                                 const std::vector<NonexpandingMap>& maps) {
    if (chain.empty()) throw InputError("empty chain");
    if (maps.size() + 1 != chain.size()) throw InputError("chain needs one map per step");
    for (size_t i = 0; i < maps.size(); ++i)
        if (!(maps[i].dom == chain[i]) || !(maps[i].cod == chain[i + 1]))
            throw InputError("chain maps are not composable at step " + std::to_string(i));
    DirectedColimit out;
    out.space = chain.back();
    for (size_t i = 0; i < chain.size(); ++i) {
        NonexpandingMap c = NonexpandingMap::identity(chain[i]);
        for (size_t j = i; j < maps.size(); ++j) c = c.then(maps[j]);
        out.cocone.push_back(std::move(c));
    }
    return out;
}

bool colimit_conditions_hold(const std::vector<FiniteMetricSpace>& chain,
                             const std::vector<NonexpandingMap>& maps,
                             const FiniteMetricSpace& apex,
                             const std::vector<NonexpandingMap>& cocone) {
    // (1) collectively surjective
    std::vector<bool> hit((size_t)apex.size(), false);
    for (const auto& c : cocone)
        for (int v : c.img) hit[(size_t)v] = true;
    for (bool h : hit)
        if (!h) return false;
    // (2) cocone distances realize the minimum over later stages
    for (size_t i = 0; i < chain.size(); ++i) {
        const auto& di = chain[i];
        for (int y = 0; y < di.size(); ++y)
            for (int y2 = 0; y2 < di.size(); ++y2) {
                Dist inf = Dist::infinity();
                int a = y, b = y2;
                for (size_t j = i;; ++j) {
                    inf = min(inf, chain[j].dist(a, b));
                    if (j >= maps.size()) break;
                    a = maps[j].img[(size_t)a];
                    b = maps[j].img[(size_t)b];
                }
                if (apex.dist(cocone[i].img[(size_t)y], cocone[i].img[(size_t)y2]) != inf)
                    return false;
            }
    }
    return true;
}

}  // namespace qalg
