#include "qalg/runner.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qalg/constructions.hpp"
#include "qalg/dsl.hpp"
#include "qalg/errors.hpp"
#include "qalg/free_algebra.hpp"
#include "qalg/monad_checks.hpp"
#include "qalg/monads.hpp"
#include "qalg/sampling.hpp"
#include "qalg/term_space.hpp"

namespace qalg {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

struct CommandOutput {
    int code = 0;
    json report;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace((unsigned char)c)) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

json space_json(const FiniteMetricSpace& m) {
    json j;
    j["points"] = m.labels();
    json d = json::array();
    for (int i = 0; i < m.size(); ++i)
        for (int k = i + 1; k < m.size(); ++k)
            d.push_back({{"a", m.label(i)}, {"b", m.label(k)}, {"d", m.dist(i, k).str()}});
    j["distances"] = d;
    return j;
}

json witness_json(const SatWitness& w, const FiniteMetricSpace& carrier) {
    json j;
    json a = json::object();
    for (const auto& [v, p] : w.assignment) a[v] = carrier.label(p);
    j["assignment"] = a;
    j["achieved"] = w.achieved.str();
    return j;
}

const FiniteMetricSpace& need_space(const ResolvedDocument& doc, const std::string& name) {
    auto it = doc.spaces.find(name);
    if (it == doc.spaces.end()) throw InputError("unknown space '" + name + "'");
    return it->second;
}

const Presentation& need_presentation(const ResolvedDocument& doc, const std::string& name) {
    auto it = doc.presentations.find(name);
    if (it == doc.presentations.end()) throw InputError("unknown presentation '" + name + "'");
    return it->second;
}

const QuantAlgebra& need_algebra(const ResolvedDocument& doc, const std::string& name) {
    auto it = doc.algebras.find(name);
    if (it == doc.algebras.end()) throw InputError("unknown algebra '" + name + "'");
    return it->second;
}

// --- commands ---------------------------------------------------------------

CommandOutput cmd_check_sat(const std::string& file, const std::string& algebra,
                            const std::string& presentation) {
    auto doc = resolve(parse_document(slurp(file)));
    std::vector<std::pair<std::string, const QuantAlgebra*>> algebras;
    std::vector<std::pair<std::string, const Presentation*>> pres;
    if (!algebra.empty())
        algebras.emplace_back(algebra, &need_algebra(doc, algebra));
    else
        for (const auto& [n, a] : doc.algebras) algebras.emplace_back(n, &a);
    if (!presentation.empty())
        pres.emplace_back(presentation, &need_presentation(doc, presentation));
    else
        for (const auto& [n, p] : doc.presentations) pres.emplace_back(n, &p);
    if (algebras.empty()) throw InputError("document contains no algebra");
    if (pres.empty()) throw InputError("document contains no presentation");

    CommandOutput out;
    out.report["results"] = json::array();
    bool any_refuted = false;
    for (const auto& [an, a] : algebras)
        for (const auto& [pn, p] : pres) {
            auto r = variety_membership(*a, *p);
            json e = {{"algebra", an}, {"presentation", pn}, {"satisfied", r.ok}};
            if (!r.ok) {
                any_refuted = true;
                e["failing_equation"] = equation_str(p->sig, p->equations[(size_t)r.failing_equation]);
                if (r.detail.witness) e["witness"] = witness_json(*r.detail.witness, a->carrier());
                if (r.detail.eval_error) throw InputError(*r.detail.eval_error);
            }
            out.report["results"].push_back(std::move(e));
        }
    out.code = any_refuted ? 1 : 0;
    return out;
}

json free_algebra_json(const FreeAlgebraApprox& f) {
    json j;
    j["depth"] = f.depth;
    j["classes"] = f.classes.labels();
    json d = json::array();
    for (int i = 0; i < f.classes.size(); ++i)
        for (int k = i + 1; k < f.classes.size(); ++k)
            d.push_back({{"a", f.classes.label(i)},
                         {"b", f.classes.label(k)},
                         {"d", f.classes.dist(i, k).str()},
                         {"exact", f.exact}});
    j["distances"] = d;
    json u = json::object();
    for (int i = 0; i < f.generators.size(); ++i)
        u[f.generators.label(i)] = f.classes.label(f.unit[(size_t)i]);
    j["unit"] = u;
    j["exact"] = f.exact;
    j["exactness_source"] = f.exactness_source;
    return j;
}

CommandOutput cmd_free(const std::string& file, const std::string& presentation,
                       const std::string& space, int depth, const std::string& oracle,
                       const Dist& eps, int cap, std::size_t budget, bool stability) {
    auto doc = resolve(parse_document(slurp(file)));
    const auto& p = need_presentation(doc, presentation);
    const auto& m = need_space(doc, space);
    FreeAlgebraOptions opts;
    opts.universe_budget = budget;
    FreeAlgebraApprox f = free_algebra(p, m, depth, opts);
    CommandOutput out;
    if (stability) certify_depth_stability(f, opts);
    if (!oracle.empty()) {
        MonadInstance t = monad_by_name(oracle, eps, cap);
        auto rep = compare_with_oracle(f, t);
        out.report["oracle"] = {{"name", oracle}, {"match", rep.ok}, {"notes", rep.notes}};
        if (!rep.ok) out.code = 1;
    }
    out.report["free_algebra"] = free_algebra_json(f);
    return out;
}

CommandOutput cmd_reflect(const std::string& file, const std::string& presentation,
                          const std::string& check_algebra) {
    auto doc = resolve(parse_document(slurp(file)));
    const auto& p = need_presentation(doc, presentation);
    auto it = doc.hyplists.find(presentation);
    if (it == doc.hyplists.end() || it->second.empty())
        throw InputError("presentation '" + presentation + "' has no hypothesis-list equations");
    CommandOutput out;
    out.report["reflections"] = json::array();
    bool refuted = false;
    for (const auto& h : it->second) {
        BasicEquation be = reflect_hypotheses(p.sig, h);
        json e;
        e["equation"] = equation_str(p.sig, AnyEquation(h));
        e["context"] = space_json(be.context);
        e["reflected"] = be.l->str(p.sig) + " =[" + be.eps.str() + "] " + be.r->str(p.sig);
        if (!check_algebra.empty()) {
            const auto& a = need_algebra(doc, check_algebra);
            auto r = satisfies_basic(a, be);
            e["satisfied"] = r.ok;
            if (!r.ok) {
                refuted = true;
                if (r.witness) e["witness"] = witness_json(*r.witness, a.carrier());
            }
        }
        out.report["reflections"].push_back(std::move(e));
    }
    out.code = refuted ? 1 : 0;
    return out;
}

MonadInstance corrupted(MonadInstance t, const std::string& mode) {
    if (mode.empty()) return t;
    if (mode != "mult-drop") throw InputError("unknown corruption mode '" + mode + "'");
    auto base = t.flatten_label;
    // drop the last letter of every flattened word: breaks associativity
    t.flatten_label = [base](const std::string& l) -> std::optional<std::string> {
        auto r = base(l);
        if (!r || r->size() < 2) return r;
        std::string inner = r->substr(1, r->size() - 2);
        auto pos = inner.rfind(',');
        char open = r->front(), close = r->back();
        if (inner.empty()) return r;
        if (pos == std::string::npos) return std::string(1, open) + std::string(1, close);
        return open + inner.substr(0, pos) + close;
    };
    t.name += "(corrupted)";
    return t;
}

CommandOutput cmd_monad_laws(const std::string& name, const Dist& eps, int cap,
                             const std::string& file, int random_spaces, int samples,
                             unsigned seed, const std::string& corrupt) {
    MonadInstance t = corrupted(monad_by_name(name, eps, cap), corrupt);
    std::vector<FiniteMetricSpace> spaces;
    if (!file.empty()) {
        auto doc = resolve(parse_document(slurp(file)));
        for (const auto& [n, s] : doc.spaces) spaces.push_back(s);
    } else {
        std::mt19937_64 rng(seed);
        for (int i = 0; i < random_spaces; ++i) spaces.push_back(random_grid_space(rng, 4));
    }
    if (spaces.empty()) throw InputError("no spaces to check the laws on");
    LawCheckOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    auto rep = check_monad_laws(t, spaces, opts);
    CommandOutput out;
    out.report["monad"] = t.name;
    out.report["spaces"] = (int)spaces.size();
    out.report["ok"] = rep.ok;
    out.report["within_budget"] = rep.budget.complete();
    out.report["checked"] = rep.budget.checked;
    out.report["skipped"] = rep.budget.skipped;
    out.report["failures"] = std::vector<std::string>(
        rep.failures.begin(), rep.failures.begin() + std::min<size_t>(rep.failures.size(), 10));
    out.code = rep.ok ? 0 : 1;
    return out;
}

CommandOutput cmd_monad_check(const std::string& name, const Dist& eps, int cap,
                              const std::string& check, const std::string& file,
                              const std::string& a, const std::string& b,
                              const std::string& from, const std::string& to,
                              const std::string& map_str, const std::string& space,
                              const std::string& chain, const std::string& track) {
    MonadInstance t = monad_by_name(name, eps, cap);
    CommandOutput out;
    out.report["monad"] = t.name;
    out.report["check"] = check;
    if (check == "enriched") {
        auto doc = resolve(parse_document(slurp(file)));
        auto rep = check_enriched(t, need_space(doc, a), need_space(doc, b));
        out.report["ok"] = rep.ok;
        if (rep.witness)
            out.report["witness"] = {{"f", rep.witness->f},
                                     {"g", rep.witness->g},
                                     {"d_fg", rep.witness->dfg.str()},
                                     {"d_TfTg", rep.witness->dTfTg.str()}};
        out.code = rep.ok ? 0 : 1;
    } else if (check == "surjections") {
        auto doc = resolve(parse_document(slurp(file)));
        const auto& dom = need_space(doc, from);
        const auto& cod = need_space(doc, to);
        std::vector<int> img((size_t)dom.size(), -1);
        for (const auto& pair : split_commas(map_str)) {
            auto arrow = pair.find("->");
            if (arrow == std::string::npos)
                throw InputError("--map entries look like 'a->x', got '" + pair + "'");
            img[(size_t)dom.index_or_throw(pair.substr(0, arrow))] =
                cod.index_or_throw(pair.substr(arrow + 2));
        }
        for (int v : img)
            if (v < 0) throw InputError("--map does not cover the whole domain");
        NonexpandingMap e(dom, cod, img);
        auto rep = check_preserves_surjections(t, e);
        out.report["ok"] = rep.ok;
        out.report["missed"] = rep.missed;
        out.code = rep.ok ? 0 : 1;
    } else if (check == "precongruence") {
        auto doc = resolve(parse_document(slurp(file)));
        auto rep = check_precongruence_preservation(t, need_space(doc, space));
        out.report["applicable"] = rep.applicable;
        out.report["ok"] = rep.passed;
        if (!rep.note.empty()) out.report["note"] = rep.note;
        json pairs = json::array();
        for (const auto& pr : rep.pairs) {
            json e = {{"a", pr.a}, {"b", pr.b}, {"eps", pr.eps.str()}};
            if (pr.witness) e["witness"] = *pr.witness;
            pairs.push_back(std::move(e));
        }
        out.report["pairs"] = pairs;
        out.code = rep.passed ? 0 : 1;
    } else if (check == "colimit") {
        auto doc = resolve(parse_document(slurp(file)));
        auto names = split_commas(chain);
        if (names.size() < 2) throw InputError("--chain needs at least two spaces");
        std::vector<FiniteMetricSpace> spaces;
        for (const auto& n : names) spaces.push_back(need_space(doc, n));
        std::vector<NonexpandingMap> maps;
        for (size_t i = 0; i + 1 < spaces.size(); ++i)
            maps.push_back(NonexpandingMap::by_labels(spaces[i], spaces[i + 1]));
        auto rep = check_directed_colimit_preservation(t, spaces, maps);
        out.report["preserved"] = rep.preserved();
        out.report["comparison_bijective"] = rep.comparison_bijective;
        out.report["comparison_isometric"] = rep.comparison_isometric;
        out.report["cocone_conditions"] = rep.cocone_conditions;
        json sizes = json::array();
        for (const auto& s : rep.stages) sizes.push_back(s.size());
        out.report["stage_sizes"] = sizes;
        if (!track.empty()) {
            auto pts = split_commas(track);
            if (pts.size() != 2) throw InputError("--track wants 'elemA,elemB'");
            json tr = json::array();
            for (const auto& d : rep.trajectory(pts[0], pts[1])) tr.push_back(d.str());
            out.report["trajectory"] = tr;
        }
        out.code = rep.preserved() ? 0 : 1;
    } else {
        throw InputError("unknown check '" + check +
                         "' (enriched, surjections, precongruence, colimit)");
    }
    return out;
}

CommandOutput cmd_hausdorff(const std::string& file, const std::string& space,
                            const std::string& left, const std::string& right,
                            const std::string& expect) {
    auto doc = resolve(parse_document(slurp(file)));
    const auto& m = need_space(doc, space);
    std::vector<int> a, b;
    for (const auto& l : split_commas(left)) a.push_back(m.index_or_throw(l));
    for (const auto& l : split_commas(right)) b.push_back(m.index_or_throw(l));
    Dist d = hausdorff_distance(m, a, b);
    CommandOutput out;
    out.report["space"] = space;
    out.report["distance"] = d.str();
    if (!expect.empty()) {
        Dist want = Dist::parse(expect);
        out.report["expected"] = want.str();
        out.code = d == want ? 0 : 1;
    }
    return out;
}

CommandOutput cmd_colimit(const std::string& file, const std::string& chain,
                          const std::string& expect_space) {
    auto doc = resolve(parse_document(slurp(file)));
    auto names = split_commas(chain);
    if (names.empty()) throw InputError("--chain needs at least one space");
    std::vector<FiniteMetricSpace> spaces;
    for (const auto& n : names) spaces.push_back(need_space(doc, n));
    std::vector<NonexpandingMap> maps;
    for (size_t i = 0; i + 1 < spaces.size(); ++i)
        maps.push_back(NonexpandingMap::by_labels(spaces[i], spaces[i + 1]));
    auto col = directed_colimit(spaces, maps);
    CommandOutput out;
    out.report["colimit"] = space_json(col.space);
    out.report["conditions_hold"] =
        colimit_conditions_hold(spaces, maps, col.space, col.cocone);
    if (!expect_space.empty()) {
        const auto& want = need_space(doc, expect_space);
        bool match = isometric(col.space, want, true);
        out.report["expected"] = expect_space;
        out.report["match"] = match;
        out.code = match ? 0 : 1;
    }
    return out;
}

CommandOutput cmd_enumerate_terms(const std::string& file, const std::string& signature,
                                  const std::string& space, int depth, std::size_t budget,
                                  long long expect_count) {
    auto doc = resolve(parse_document(slurp(file)));
    auto it = doc.signatures.find(signature);
    if (it == doc.signatures.end()) throw InputError("unknown signature '" + signature + "'");
    const auto& m = need_space(doc, space);
    TermSpace ts = enumerate_terms(it->second, m, depth, budget);
    CommandOutput out;
    out.report["count"] = ts.terms().size();
    json sample = json::array();
    for (size_t i = 0; i < std::min<size_t>(ts.terms().size(), 50); ++i)
        sample.push_back(ts.terms()[i]->str(it->second));
    out.report["terms"] = sample;
    if (expect_count >= 0) {
        out.report["expected_count"] = expect_count;
        out.code = (long long)ts.terms().size() == expect_count ? 0 : 1;
    }
    return out;
}

// renders a generated presentation back to the surface syntax
std::string presentation_text(const Presentation& p, const std::string& sig_name) {
    Document doc;
    SignatureAst sig;
    sig.name = sig_name;
    for (const auto& s : p.sig.symbols()) sig.symbols.push_back({s.name, false, s.arity.n, ""});
    doc.blocks.push_back(sig);
    PresentationAst pres;
    pres.name = p.name;
    pres.sig_ref = sig_name;
    std::function<TermAst(const TermPtr&)> ast = [&](const TermPtr& t) {
        TermAst a;
        if (t->is_var()) {
            a.head = t->var_label();
            return a;
        }
        a.app = true;
        a.head = p.sig.symbol(t->symbol()).name;
        for (const auto& k : t->kids()) a.kids.push_back(ast(k));
        return a;
    };
    for (const auto& e : p.equations) {
        const auto& q = std::get<QuantEquation>(e);
        EquationAst ea;
        ea.kind = EquationAst::Plain;
        ea.l = ast(q.l);
        ea.r = ast(q.r);
        ea.eps = q.eps;
        pres.equations.push_back(std::move(ea));
    }
    doc.blocks.push_back(pres);
    return print_document(doc);
}

CommandOutput cmd_presentation_from_monad(const std::string& name, const Dist& eps, int cap,
                                          int nmax, std::size_t size_cap,
                                          long long expect_symbols) {
    MonadInstance t = monad_by_name(name, eps, cap);
    auto res = presentation_from_monad(t, nmax, size_cap);
    CommandOutput out;
    out.report["monad"] = t.name;
    out.report["truncated"] = res.truncated;
    out.report["symbols_per_arity"] = res.symbols_per_arity;
    out.report["equations"] = res.presentation.equations.size();
    out.report["document"] = presentation_text(res.presentation, name + "_sig");
    long long total = 0;
    for (int c : res.symbols_per_arity) total += c;
    out.report["symbols"] = total;
    if (expect_symbols >= 0) out.code = total == expect_symbols ? 0 : 1;
    return out;
}

void emit(const CommandOutput& out, const std::string& command, bool as_json) {
    json j = out.report;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["exit_code"] = out.code;
    j["status"] = out.code == 0   ? "ok"
                  : out.code == 1 ? "refuted"
                  : out.code == 2 ? "input_error"
                                  : "budget_exceeded";
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << command << ": " << j["status"].get<std::string>() << "\n";
        for (auto& [k, v] : j.items())
            if (k != "schema_version" && k != "command" && k != "status" && k != "exit_code")
                std::cout << "  " << k << " = " << v.dump() << "\n";
    }
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"workbench for quantitative algebras over finite metric spaces"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit a structured JSON report");

    std::string file, algebra, presentation, space, oracle, check, a, b, from, to, map_str,
        chain, track, left, right, expect, expect_space, corrupt, signature, monad;
    int depth = 3, cap = 3, nmax = 2, random_spaces = 5, samples = 200;
    unsigned seed = 1;
    std::size_t budget = 200000, size_cap = 64;
    long long expect_count = -1, expect_symbols = -1;
    std::string eps_str = "1";
    bool stability = false;

    auto* sat = app.add_subcommand("check-sat", "decide satisfaction of presentations");
    sat->add_option("file", file)->required();
    sat->add_option("--algebra", algebra);
    sat->add_option("--presentation", presentation);

    auto* fr = app.add_subcommand("free", "free algebra of a presentation on a space");
    fr->add_option("file", file)->required();
    fr->add_option("--presentation", presentation)->required();
    fr->add_option("--space", space)->required();
    fr->add_option("--depth", depth);
    fr->add_option("--oracle", oracle);
    fr->add_option("--eps", eps_str);
    fr->add_option("--cap", cap);
    fr->add_option("--budget", budget);
    fr->add_flag("--stability", stability);

    auto* re = app.add_subcommand("reflect", "reflect hypothesis lists into context spaces");
    re->add_option("file", file)->required();
    re->add_option("--presentation", presentation)->required();
    re->add_option("--and-check", algebra);

    auto* ml = app.add_subcommand("monad-laws", "unit and associativity laws of an instance");
    ml->add_option("monad", monad)->required();
    ml->add_option("--file", file);
    ml->add_option("--eps", eps_str);
    ml->add_option("--cap", cap);
    ml->add_option("--random", random_spaces);
    ml->add_option("--samples", samples);
    ml->add_option("--seed", seed);
    ml->add_option("--corrupt", corrupt);

    auto* mc = app.add_subcommand("monad-check", "enrichment / surjections / precongruence / "
                                                 "colimit preservation");
    mc->add_option("monad", monad)->required();
    mc->add_option("--check", check)->required();
    mc->add_option("--file", file);
    mc->add_option("--a", a);
    mc->add_option("--b", b);
    mc->add_option("--from", from);
    mc->add_option("--to", to);
    mc->add_option("--map", map_str);
    mc->add_option("--space", space);
    mc->add_option("--chain", chain);
    mc->add_option("--track", track);
    mc->add_option("--eps", eps_str);
    mc->add_option("--cap", cap);

    auto* hd = app.add_subcommand("hausdorff", "Hausdorff distance between two subsets");
    hd->add_option("file", file)->required();
    hd->add_option("--space", space)->required();
    hd->add_option("--left", left);
    hd->add_option("--right", right);
    hd->add_option("--expect", expect);

    auto* cl = app.add_subcommand("colimit", "colimit of a chain of spaces");
    cl->add_option("file", file)->required();
    cl->add_option("--chain", chain)->required();
    cl->add_option("--expect-space", expect_space);

    auto* et = app.add_subcommand("enumerate-terms", "depth-bounded term universe");
    et->add_option("file", file)->required();
    et->add_option("--signature", signature)->required();
    et->add_option("--space", space)->required();
    et->add_option("--depth", depth);
    et->add_option("--budget", budget);
    et->add_option("--expect-count", expect_count);

    auto* pm = app.add_subcommand("presentation-from-monad",
                                  "signature and equations of a monad instance");
    pm->add_option("monad", monad)->required();
    pm->add_option("--nmax", nmax);
    pm->add_option("--size-cap", size_cap);
    pm->add_option("--eps", eps_str);
    pm->add_option("--cap", cap);
    pm->add_option("--expect-symbols", expect_symbols);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::string cmd_name;
    try {
        Dist eps = Dist::parse(eps_str);
        CommandOutput out;
        if (sat->parsed()) {
            cmd_name = "check-sat";
            out = cmd_check_sat(file, algebra, presentation);
        } else if (fr->parsed()) {
            cmd_name = "free";
            out = cmd_free(file, presentation, space, depth, oracle, eps, cap, budget, stability);
        } else if (re->parsed()) {
            cmd_name = "reflect";
            out = cmd_reflect(file, presentation, algebra);
        } else if (ml->parsed()) {
            cmd_name = "monad-laws";
            out = cmd_monad_laws(monad, eps, cap, file, random_spaces, samples, seed, corrupt);
        } else if (mc->parsed()) {
            cmd_name = "monad-check";
            out = cmd_monad_check(monad, eps, cap, check, file, a, b, from, to, map_str, space,
                                  chain, track);
        } else if (hd->parsed()) {
            cmd_name = "hausdorff";
            out = cmd_hausdorff(file, space, left, right, expect);
        } else if (cl->parsed()) {
            cmd_name = "colimit";
            out = cmd_colimit(file, chain, expect_space);
        } else if (et->parsed()) {
            cmd_name = "enumerate-terms";
            out = cmd_enumerate_terms(file, signature, space, depth, budget, expect_count);
        } else if (pm->parsed()) {
            cmd_name = "presentation-from-monad";
            out = cmd_presentation_from_monad(monad, eps, cap, nmax, size_cap, expect_symbols);
        }
        emit(out, cmd_name, as_json);
        return out.code;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        CommandOutput out;
        out.code = 2;
        out.report["error"] = e.what();
        emit(out, cmd_name.empty() ? "parse" : cmd_name, as_json);
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        CommandOutput out;
        out.code = 3;
        out.report["error"] = e.what();
        emit(out, cmd_name, as_json);
        return 3;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        CommandOutput out;
        out.code = 3;
        out.report["error"] = e.what();
        emit(out, cmd_name, as_json);
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        CommandOutput out;
        out.code = 2;
        out.report["error"] = e.what();
        emit(out, cmd_name.empty() ? "input" : cmd_name, as_json);
        return 2;
    }
}

}  // namespace qalg
