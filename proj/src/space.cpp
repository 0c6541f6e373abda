#include "qalg/space.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qalg/errors.hpp"

namespace qalg {

std::string MetricViolation::describe(const std::vector<std::string>& labels) const {
    auto L = [&](int i) { return labels[(size_t)i]; };
    switch (kind) {
        case Reflexivity: return "d(" + L(x) + "," + L(x) + ") != 0";
        case Symmetry: return "d(" + L(x) + "," + L(y) + ") != d(" + L(y) + "," + L(x) + ")";
        case Triangle:
            return "d(" + L(x) + "," + L(z) + ") > d(" + L(x) + "," + L(y) + ") + d(" + L(y) +
                   "," + L(z) + ")";
        case Separation: return "distinct points " + L(x) + "," + L(y) + " at distance 0";
    }
    return "";
}

std::vector<MetricViolation> FinitePseudometricSpace::violations(const std::vector<Dist>& e,
                                                                 int n, bool require_separation) {
    std::vector<MetricViolation> out;
    auto d = [&](int i, int j) -> const Dist& { return e[(size_t)(i * n + j)]; };
    for (int i = 0; i < n; ++i)
        if (!d(i, i).is_zero()) out.push_back({MetricViolation::Reflexivity, i, i, -1});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (d(i, j) != d(j, i)) out.push_back({MetricViolation::Symmetry, i, j, -1});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (d(i, j) + d(j, k) < d(i, k))
                    out.push_back({MetricViolation::Triangle, i, j, k});
    if (require_separation)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (d(i, j).is_zero()) out.push_back({MetricViolation::Separation, i, j, -1});
    return out;
}

FinitePseudometricSpace::FinitePseudometricSpace(std::vector<std::string> labels,
                                                 std::vector<Dist> entries)
    : labels_(std::move(labels)), entries_(std::move(entries)) {
    int n = (int)labels_.size();
    if ((int)entries_.size() != n * n) throw InputError("distance matrix has wrong shape");
    {
        std::set<std::string> seen(labels_.begin(), labels_.end());
        if ((int)seen.size() != n) throw InputError("duplicate point labels");
    }
    auto v = violations(entries_, n, false);
    if (!v.empty()) throw InputError("not a pseudometric: " + v.front().describe(labels_));
}

std::optional<int> FinitePseudometricSpace::index(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels_[(size_t)i] == label) return i;
    return std::nullopt;
}

int FinitePseudometricSpace::index_or_throw(const std::string& label) const {
    auto i = index(label);
    if (!i) throw InputError("unknown point label '" + label + "'");
    return *i;
}

bool FinitePseudometricSpace::is_metric() const {
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            if (dist(i, j).is_zero()) return false;
    return true;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<Dist> entries)
    : FinitePseudometricSpace(std::move(labels), std::move(entries)) {
    auto v = violations(entries_, size(), true);
    if (!v.empty()) throw InputError("not a metric: " + v.front().describe(labels_));
}

FiniteMetricSpace FiniteMetricSpace::discrete(std::vector<std::string> labels) {
    int n = (int)labels.size();
    std::vector<Dist> e((size_t)(n * n), Dist::infinity());
    for (int i = 0; i < n; ++i) e[(size_t)(i * n + i)] = Dist::zero();
    return FiniteMetricSpace(std::move(labels), std::move(e));
}

FiniteMetricSpace FiniteMetricSpace::singleton(const std::string& label) {
    return discrete({label});
}

FiniteMetricSpace FiniteMetricSpace::underlying_discrete() const { return discrete(labels_); }

FiniteMetricSpace FiniteMetricSpace::subspace(const std::vector<int>& points) const {
    std::vector<std::string> ls;
    std::vector<Dist> e;
    for (int i : points) ls.push_back(label(i));
    for (int i : points)
        for (int j : points) e.push_back(dist(i, j));
    return FiniteMetricSpace(std::move(ls), std::move(e));
}

NonexpandingMap::NonexpandingMap(FiniteMetricSpace dom_, FiniteMetricSpace cod_,
                                 std::vector<int> img_)
    : dom(std::move(dom_)), cod(std::move(cod_)), img(std::move(img_)) {
    if ((int)img.size() != dom.size()) throw InputError("map has wrong domain size");
    for (int v : img)
        if (v < 0 || v >= cod.size()) throw InputError("map image out of range");
    for (int i = 0; i < dom.size(); ++i)
        for (int j = 0; j < dom.size(); ++j)
            if (dom.dist(i, j) < cod.dist(img[(size_t)i], img[(size_t)j]))
                throw InputError("map is not nonexpanding on (" + dom.label(i) + "," +
                                 dom.label(j) + ")");
}

NonexpandingMap NonexpandingMap::identity(const FiniteMetricSpace& a) {
    std::vector<int> img(a.size());
    std::iota(img.begin(), img.end(), 0);
    return NonexpandingMap(a, a, img);
}

NonexpandingMap NonexpandingMap::by_labels(const FiniteMetricSpace& dom,
                                           const FiniteMetricSpace& cod) {
    std::vector<int> img;
    for (const auto& l : dom.labels()) img.push_back(cod.index_or_throw(l));
    return NonexpandingMap(dom, cod, img);
}

bool NonexpandingMap::is_surjective() const {
    std::vector<bool> hit((size_t)cod.size(), false);
    for (int v : img) hit[(size_t)v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool NonexpandingMap::is_isometric_embedding() const {
    for (int i = 0; i < dom.size(); ++i)
        for (int j = 0; j < dom.size(); ++j) {
            if (i != j && img[(size_t)i] == img[(size_t)j]) return false;
            if (dom.dist(i, j) != cod.dist(img[(size_t)i], img[(size_t)j])) return false;
        }
    return true;
}

NonexpandingMap NonexpandingMap::then(const NonexpandingMap& g) const {
    if (!(cod == g.dom)) throw InputError("maps are not composable");
    std::vector<int> h(img.size());
    for (size_t i = 0; i < img.size(); ++i) h[i] = g.img[(size_t)img[i]];
    return NonexpandingMap(dom, g.cod, h);
}

bool isometric(const FiniteMetricSpace& a, const FiniteMetricSpace& b, bool label_respecting) {
    if (a.size() != b.size()) return false;
    int n = a.size();
    if (label_respecting) {
        std::vector<int> perm;
        for (const auto& l : a.labels()) {
            auto i = b.index(l);
            if (!i) return false;
            perm.push_back(*i);
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (a.dist(i, j) != b.dist(perm[(size_t)i], perm[(size_t)j])) return false;
        return true;
    }
    if (n > 8) throw BudgetError("isometry search limited to 8 points");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; ok && i < n; ++i)
            for (int j = 0; ok && j < n; ++j)
                if (a.dist(i, j) != b.dist(perm[(size_t)i], perm[(size_t)j])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace qalg
