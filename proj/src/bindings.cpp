#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qalg/constructions.hpp"
#include "qalg/dsl.hpp"
#include "qalg/free_algebra.hpp"
#include "qalg/monad_checks.hpp"
#include "qalg/monads.hpp"
#include "qalg/sampling.hpp"
#include "qalg/term_space.hpp"

namespace py = pybind11;
using namespace qalg;

namespace {

FiniteMetricSpace space_from_dict(const std::vector<std::string>& points,
                                  const std::map<std::pair<std::string, std::string>,
                                                 std::string>& distances) {
    int n = (int)points.size();
    std::vector<Dist> e((size_t)n * (size_t)n, Dist::infinity());
    auto idx = [&](const std::string& p) {
        auto it = std::find(points.begin(), points.end(), p);
        if (it == points.end()) throw InputError("unknown point '" + p + "'");
        return (int)(it - points.begin());
    };
    for (int i = 0; i < n; ++i) e[(size_t)(i * n + i)] = Dist::zero();
    for (const auto& [pair, d] : distances) {
        int a = idx(pair.first), b = idx(pair.second);
        Dist v = Dist::parse(d);
        e[(size_t)(a * n + b)] = v;
        e[(size_t)(b * n + a)] = v;
    }
    return FiniteMetricSpace(points, std::move(e));
}

py::dict space_to_dict(const FiniteMetricSpace& m) {
    py::dict out;
    out["points"] = m.labels();
    py::dict d;
    for (int i = 0; i < m.size(); ++i)
        for (int j = i + 1; j < m.size(); ++j)
            d[py::make_tuple(m.label(i), m.label(j))] = m.dist(i, j).str();
    out["distances"] = d;
    return out;
}

}  // namespace

PYBIND11_MODULE(_qalg, m) {
    m.doc() = "quantitative algebras over finite metric spaces";

    py::register_exception<InputError>(m, "InputError");
    py::register_exception<BudgetError>(m, "BudgetError");

    py::class_<FiniteMetricSpace>(m, "Space")
        .def(py::init(&space_from_dict), py::arg("points"), py::arg("distances"))
        .def_static("discrete", [](std::vector<std::string> pts) {
            return FiniteMetricSpace::discrete(std::move(pts));
        })
        .def("size", &FiniteMetricSpace::size)
        .def("labels", &FiniteMetricSpace::labels)
        .def("dist",
             [](const FiniteMetricSpace& s, const std::string& a, const std::string& b) {
                 return s.dist(s.index_or_throw(a), s.index_or_throw(b)).str();
             })
        .def("to_dict", &space_to_dict)
        .def("__repr__", [](const FiniteMetricSpace& s) {
            return "<Space with " + std::to_string(s.size()) + " points>";
        });

    m.def("product", &product);
    m.def("tensor", &tensor);
    m.def("is_ultrametric", &check_ultrametric);
    m.def("hom_space", [](const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
        return hom_space(a, b).space;
    });
    m.def("hausdorff_distance",
          [](const FiniteMetricSpace& s, const std::vector<std::string>& a,
             const std::vector<std::string>& b) {
              std::vector<int> ia, ib;
              for (const auto& l : a) ia.push_back(s.index_or_throw(l));
              for (const auto& l : b) ib.push_back(s.index_or_throw(l));
              return hausdorff_distance(s, ia, ib).str();
          });
    m.def("smallest_pseudometric",
          [](const std::vector<std::string>& points,
             const std::vector<std::tuple<std::string, std::string, std::string>>& constraints) {
              std::vector<DistanceConstraint> cs;
              for (const auto& [x, y, d] : constraints) cs.push_back({x, y, Dist::parse(d)});
              auto p = smallest_pseudometric(points, cs);
              py::dict out;
              for (int i = 0; i < p.size(); ++i)
                  for (int j = i + 1; j < p.size(); ++j)
                      out[py::make_tuple(p.label(i), p.label(j))] = p.dist(i, j).str();
              return out;
          });
    m.def("metric_reflection", [](const std::vector<std::string>& points,
                                  const std::map<std::pair<std::string, std::string>,
                                                 std::string>& distances) {
        int n = (int)points.size();
        std::vector<Dist> e((size_t)n * (size_t)n, Dist::infinity());
        for (int i = 0; i < n; ++i) e[(size_t)(i * n + i)] = Dist::zero();
        for (const auto& [pair, d] : distances) {
            auto ia = std::find(points.begin(), points.end(), pair.first) - points.begin();
            auto ib = std::find(points.begin(), points.end(), pair.second) - points.begin();
            Dist v = Dist::parse(d);
            e[(size_t)(ia * n + ib)] = v;
            e[(size_t)(ib * n + ia)] = v;
        }
        auto r = metric_reflection(FinitePseudometricSpace(points, std::move(e)));
        return py::make_tuple(space_to_dict(r.space), r.class_of);
    });

    m.def("parse", [](const std::string& text) {
        auto doc = parse_document(text);
        auto resolved = resolve(doc);
        py::dict out;
        py::list spaces, sigs, algebras, presentations;
        for (const auto& [n, s] : resolved.spaces) spaces.append(n);
        for (const auto& [n, s] : resolved.signatures) sigs.append(n);
        for (const auto& [n, s] : resolved.algebras) algebras.append(n);
        for (const auto& [n, s] : resolved.presentations) presentations.append(n);
        out["spaces"] = spaces;
        out["signatures"] = sigs;
        out["algebras"] = algebras;
        out["presentations"] = presentations;
        out["printed"] = print_document(doc);
        return out;
    });

    m.def("check_sat", [](const std::string& text, const std::string& algebra,
                          const std::string& presentation) {
        auto resolved = resolve(parse_document(text));
        auto ait = resolved.algebras.find(algebra);
        if (ait == resolved.algebras.end()) throw InputError("unknown algebra");
        auto pit = resolved.presentations.find(presentation);
        if (pit == resolved.presentations.end()) throw InputError("unknown presentation");
        auto r = variety_membership(ait->second, pit->second);
        py::dict out;
        out["satisfied"] = r.ok;
        if (!r.ok && r.detail.witness) {
            py::dict w;
            for (const auto& [v, p] : r.detail.witness->assignment)
                w[py::str(v)] = ait->second.carrier().label(p);
            out["witness"] = w;
            out["achieved"] = r.detail.witness->achieved.str();
        }
        return out;
    });

    m.def(
        "free_algebra",
        [](const std::string& text, const std::string& presentation, const std::string& space,
           int depth) {
            auto resolved = resolve(parse_document(text));
            auto pit = resolved.presentations.find(presentation);
            if (pit == resolved.presentations.end()) throw InputError("unknown presentation");
            auto sit = resolved.spaces.find(space);
            if (sit == resolved.spaces.end()) throw InputError("unknown space");
            auto f = free_algebra(pit->second, sit->second, depth);
            py::dict out;
            out["classes"] = f.classes.labels();
            py::dict d;
            for (int i = 0; i < f.classes.size(); ++i)
                for (int j = i + 1; j < f.classes.size(); ++j)
                    d[py::make_tuple(f.classes.label(i), f.classes.label(j))] =
                        f.classes.dist(i, j).str();
            out["distances"] = d;
            py::dict u;
            for (int i = 0; i < f.generators.size(); ++i)
                u[py::str(f.generators.label(i))] = f.classes.label(f.unit[(size_t)i]);
            out["unit"] = u;
            out["exact"] = f.exact;
            return out;
        },
        py::arg("text"), py::arg("presentation"), py::arg("space"), py::arg("depth") = 3);

    m.def("monad_names", &monad_names);
    m.def(
        "check_monad_laws",
        [](const std::string& name, int spaces, unsigned seed, int cap) {
            MonadInstance t = monad_by_name(name, Dist(1, 1), cap);
            std::mt19937_64 rng(seed);
            std::vector<FiniteMetricSpace> sample;
            for (int i = 0; i < spaces; ++i) sample.push_back(random_grid_space(rng, 4));
            auto rep = check_monad_laws(t, sample);
            py::dict out;
            out["ok"] = rep.ok;
            out["checked"] = rep.budget.checked;
            out["skipped"] = rep.budget.skipped;
            out["failures"] = rep.failures;
            return out;
        },
        py::arg("name"), py::arg("spaces") = 5, py::arg("seed") = 1, py::arg("cap") = 2);
}
