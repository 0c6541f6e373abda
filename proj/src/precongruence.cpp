#include "qalg/precongruence.hpp"

#include <algorithm>
#include <set>

namespace qalg {

FiniteMetricSpace PrecongruenceDiagram::level_space(int level) const {
    std::vector<std::string> labels;
    for (auto [l, r] : levels[(size_t)level].pairs)
        labels.push_back("(" + base.label(l) + "," + base.label(r) + ")");
    return FiniteMetricSpace::discrete(std::move(labels));
}

PrecongruenceDiagram precongruence(const FiniteMetricSpace& m) {
    PrecongruenceDiagram d;
    d.base = m;
    d.discrete = m.underlying_discrete();
    std::set<Dist> realized;
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j)
            if (!m.dist(i, j).is_infinite()) realized.insert(m.dist(i, j));
    for (const Dist& eps : realized) {
        PrecongruenceDiagram::Level lv;
        lv.eps = eps;
        for (int i = 0; i < m.size(); ++i)
            for (int j = 0; j < m.size(); ++j)
                if (m.dist(i, j) <= eps) lv.pairs.emplace_back(i, j);
        d.levels.push_back(std::move(lv));
    }
    return d;
}

bool nonexpanding_via_levels(const PrecongruenceDiagram& d, const std::vector<int>& img,
                             const FiniteMetricSpace& x) {
    for (const auto& lv : d.levels)
        for (auto [l, r] : lv.pairs)
            if (x.dist(img[(size_t)l], img[(size_t)r]) > lv.eps) return false;
    return true;
}

}  // namespace qalg
