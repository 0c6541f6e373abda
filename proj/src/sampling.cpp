#include "qalg/sampling.hpp"

namespace qalg {

std::vector<Dist> grid_values(bool with_infinity) {
    std::vector<Dist> v = {Dist(1, 4), Dist(1, 2), Dist(1, 1), Dist(2, 1)};
    if (with_infinity) v.push_back(Dist::infinity());
    return v;
}

FiniteMetricSpace random_grid_space(std::mt19937_64& rng, int max_points, bool with_infinity) {
    auto values = grid_values(with_infinity);
    int n = 1 + (int)(rng() % (std::uint64_t)max_points);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Dist> e((size_t)n * (size_t)n, Dist::zero());
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Dist d = values[(size_t)(rng() % values.size())];
                e[(size_t)(i * n + j)] = d;
                e[(size_t)(j * n + i)] = d;
            }
        if (FinitePseudometricSpace::violations(e, n, true).empty())
            return FiniteMetricSpace(labels, std::move(e));
    }
    return FiniteMetricSpace::discrete(labels);
}

std::vector<FiniteMetricSpace> enumerate_grid_spaces(int n, const std::vector<Dist>& values) {
    std::vector<FiniteMetricSpace> out;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    int pairs = n * (n - 1) / 2;
    std::vector<size_t> pick((size_t)pairs, 0);
    while (true) {
        std::vector<Dist> e((size_t)n * (size_t)n, Dist::zero());
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                e[(size_t)(i * n + j)] = values[pick[(size_t)k]];
                e[(size_t)(j * n + i)] = values[pick[(size_t)k]];
                ++k;
            }
        if (FinitePseudometricSpace::violations(e, n, true).empty())
            out.emplace_back(labels, std::move(e));
        int pos = pairs - 1;
        while (pos >= 0 && ++pick[(size_t)pos] == values.size()) pick[(size_t)pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

}  // namespace qalg
