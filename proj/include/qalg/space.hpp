#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qalg/dist.hpp"

namespace qalg {

struct MetricViolation {
    enum Kind { Reflexivity, Symmetry, Triangle, Separation } kind;
    int x, y, z;  // z only meaningful for Triangle
    std::string describe(const std::vector<std::string>& labels) const;
};

// Finite pseudometric space: labelled points with a symmetric matrix of
// extended rational distances.  Reflexivity, symmetry and the (saturating)
// triangle inequality are enforced at construction.
class FinitePseudometricSpace {
public:
    FinitePseudometricSpace() = default;
    // Throws InputError listing the first violation when the matrix is not a
    // pseudometric.  `entries` is an n*n row-major matrix.
    FinitePseudometricSpace(std::vector<std::string> labels, std::vector<Dist> entries);

    static std::vector<MetricViolation> violations(const std::vector<Dist>& entries, int n,
                                                   bool require_separation);

    int size() const { return (int)labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[(size_t)i]; }
    const Dist& dist(int i, int j) const { return entries_[(size_t)(i * size() + j)]; }
    const std::vector<Dist>& entries() const { return entries_; }
    std::optional<int> index(const std::string& label) const;
    int index_or_throw(const std::string& label) const;
    bool is_metric() const;  // no distinct points at distance 0

protected:
    std::vector<std::string> labels_;
    std::vector<Dist> entries_;
};

// Finite extended metric space: a pseudometric space that also separates
// points (d(x,y) = 0 implies x = y).
class FiniteMetricSpace : public FinitePseudometricSpace {
public:
    FiniteMetricSpace() = default;
    FiniteMetricSpace(std::vector<std::string> labels, std::vector<Dist> entries);

    // all off-diagonal distances infinite
    static FiniteMetricSpace discrete(std::vector<std::string> labels);
    static FiniteMetricSpace singleton(const std::string& label);
    // the discrete space on the same points
    FiniteMetricSpace underlying_discrete() const;
    // subspace on the given point indices, labels kept
    FiniteMetricSpace subspace(const std::vector<int>& points) const;

    bool operator==(const FiniteMetricSpace& o) const {
        return labels_ == o.labels_ && entries_ == o.entries_;
    }
};

// Nonexpanding map between finite metric spaces; validated at construction.
struct NonexpandingMap {
    FiniteMetricSpace dom, cod;
    std::vector<int> img;  // point index in dom -> point index in cod

    NonexpandingMap() = default;
    NonexpandingMap(FiniteMetricSpace dom, FiniteMetricSpace cod, std::vector<int> img);

    static NonexpandingMap identity(const FiniteMetricSpace& a);
    // by matching labels; InputError if a label of dom is absent in cod
    static NonexpandingMap by_labels(const FiniteMetricSpace& dom, const FiniteMetricSpace& cod);

    int operator()(int i) const { return img[(size_t)i]; }
    bool is_surjective() const;
    bool is_isometric_embedding() const;
    NonexpandingMap then(const NonexpandingMap& g) const;  // this;g
};

// Brute-force isometry search (<= 8 points).  `label_respecting` demands the
// identity on labels, otherwise all bijections are tried.
bool isometric(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
               bool label_respecting = false);

}  // namespace qalg
