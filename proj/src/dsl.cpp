#include "qalg/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "qalg/constructions.hpp"
#include "qalg/errors.hpp"

namespace qalg {

std::string Diagnostic::render() const {
    std::string s = "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " +
                    message;
    if (!expected.empty()) {
        s += " (expected ";
        for (size_t i = 0; i < expected.size(); ++i) {
            if (i) s += ", ";
            s += expected[i];
        }
        s += ")";
    }
    return s;
}

namespace {

struct Token {
    enum Kind { Ident, Int, Punct, End } kind = End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace((unsigned char)c)) {
                ++col_;
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
        tok_ = Token{Token::End, "", line_, col_};
        if (pos_ >= text_.size()) return;
        char c = text_[pos_];
        int start_col = col_;
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::string s;
            while (pos_ < text_.size() &&
                   (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_' ||
                    text_[pos_] == '\'')) {
                s += text_[pos_++];
                ++col_;
            }
            tok_ = Token{Token::Ident, s, line_, start_col};
            return;
        }
        if (std::isdigit((unsigned char)c)) {
            std::string s;
            while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
                s += text_[pos_++];
                ++col_;
            }
            // a decimal point is a grammar error worth a precise message
            if (pos_ < text_.size() && text_[pos_] == '.')
                throw ParseError(
                    Diagnostic{line_, col_, "rational p/q expected, decimals are not part of "
                                            "the grammar",
                               {}});
            tok_ = Token{Token::Int, s, line_, start_col};
            return;
        }
        // two-character punctuation first
        if (pos_ + 1 < text_.size()) {
            std::string two = text_.substr(pos_, 2);
            if (two == "|-" || two == "->") {
                pos_ += 2;
                col_ += 2;
                tok_ = Token{Token::Punct, two, line_, start_col};
                return;
            }
        }
        static const std::string singles = "{}():,@/=[]~";
        if (singles.find(c) != std::string::npos) {
            ++pos_;
            ++col_;
            tok_ = Token{Token::Punct, std::string(1, c), line_, start_col};
            return;
        }
        throw ParseError(Diagnostic{line_, start_col, std::string("unexpected character '") + c +
                                                          "'",
                                    {}});
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    Document parse() {
        Document doc;
        while (lex_.peek().kind != Token::End) {
            const Token& t = lex_.peek();
            if (t.kind != Token::Ident)
                fail("block keyword", {"space", "signature", "algebra", "presentation"});
            if (t.text == "space")
                doc.blocks.push_back(parse_space());
            else if (t.text == "signature")
                doc.blocks.push_back(parse_signature());
            else if (t.text == "algebra")
                doc.blocks.push_back(parse_algebra());
            else if (t.text == "presentation")
                doc.blocks.push_back(parse_presentation());
            else
                fail("block keyword", {"space", "signature", "algebra", "presentation"});
        }
        return doc;
    }

private:
    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) {
        const Token& t = lex_.peek();
        std::string got = t.kind == Token::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(
            Diagnostic{t.line, t.col, "unexpected " + got + " while reading " + what,
                       std::move(expected)});
    }

    std::string expect_ident(const std::string& what) {
        if (lex_.peek().kind != Token::Ident) fail(what, {"identifier"});
        return lex_.take().text;
    }

    void expect_punct(const std::string& p) {
        if (lex_.peek().kind != Token::Punct || lex_.peek().text != p) fail("'" + p + "'", {p});
        lex_.take();
    }

    bool at_punct(const std::string& p) {
        return lex_.peek().kind == Token::Punct && lex_.peek().text == p;
    }

    bool at_ident(const std::string& s) {
        return lex_.peek().kind == Token::Ident && lex_.peek().text == s;
    }

    Dist parse_dist() {
        if (at_ident("inf")) {
            lex_.take();
            return Dist::infinity();
        }
        if (lex_.peek().kind != Token::Int) fail("distance", {"p/q", "inf"});
        std::int64_t num = std::stoll(lex_.take().text);
        if (at_punct("/")) {
            lex_.take();
            if (lex_.peek().kind != Token::Int) fail("denominator", {"integer"});
            std::int64_t den = std::stoll(lex_.take().text);
            if (den == 0) fail("nonzero denominator", {"positive integer"});
            return Dist(num, den);
        }
        return Dist(num, 1);
    }

    SpaceAst parse_space() {
        lex_.take();  // space
        SpaceAst s;
        s.name = expect_ident("space name");
        expect_punct("{");
        // points until the entry list or the closing brace; inside a space
        // body the name 'd' followed by '(' starts a distance entry
        while (lex_.peek().kind == Token::Ident) {
            if (lex_.peek().text == "d") break;
            s.points.push_back(lex_.take().text);
        }
        while (at_ident("d")) {
            lex_.take();
            expect_punct("(");
            SpaceAst::Entry e;
            e.a = expect_ident("point");
            expect_punct(",");
            e.b = expect_ident("point");
            expect_punct(")");
            expect_punct("=");
            e.d = parse_dist();
            s.entries.push_back(std::move(e));
        }
        expect_punct("}");
        return s;
    }

    SignatureAst parse_signature() {
        lex_.take();
        SignatureAst s;
        s.name = expect_ident("signature name");
        expect_punct("{");
        while (lex_.peek().kind == Token::Ident) {
            SignatureAst::Sym sym;
            sym.name = lex_.take().text;
            expect_punct(":");
            if (at_punct("@")) {
                lex_.take();
                sym.generalized = true;
                sym.space_ref = expect_ident("arity space name");
            } else {
                if (lex_.peek().kind != Token::Int) fail("arity", {"integer", "@space"});
                sym.arity = (int)std::stoll(lex_.take().text);
            }
            s.symbols.push_back(std::move(sym));
        }
        expect_punct("}");
        return s;
    }

    AlgebraAst parse_algebra() {
        lex_.take();
        AlgebraAst a;
        a.name = expect_ident("algebra name");
        expect_punct(":");
        a.sig_ref = expect_ident("signature name");
        if (!at_ident("on")) fail("'on'", {"on"});
        lex_.take();
        a.space_ref = expect_ident("space name");
        expect_punct("{");
        while (lex_.peek().kind == Token::Ident) {
            AlgebraAst::Table t;
            t.symbol = lex_.take().text;
            expect_punct("{");
            while (at_punct("(")) {
                lex_.take();
                AlgebraAst::Row row;
                if (!at_punct(")")) {
                    row.args.push_back(expect_ident("argument point"));
                    while (at_punct(",")) {
                        lex_.take();
                        row.args.push_back(expect_ident("argument point"));
                    }
                }
                expect_punct(")");
                expect_punct("->");
                row.value = expect_ident("value point");
                t.rows.push_back(std::move(row));
            }
            expect_punct("}");
            a.tables.push_back(std::move(t));
        }
        expect_punct("}");
        return a;
    }

    TermAst parse_term() {
        TermAst t;
        t.head = expect_ident("term");
        if (at_punct("(")) {
            t.app = true;
            lex_.take();
            if (!at_punct(")")) {
                t.kids.push_back(parse_term());
                while (at_punct(",")) {
                    lex_.take();
                    t.kids.push_back(parse_term());
                }
            }
            expect_punct(")");
        }
        return t;
    }

    Dist parse_eps_bracket() {
        expect_punct("=");
        expect_punct("[");
        Dist d = parse_dist();
        expect_punct("]");
        return d;
    }

    EquationAst parse_equation() {
        EquationAst e;
        // lookahead: NAME '~' starts a hypothesis list; NAME '|-' a context
        TermAst first = parse_term();
        if (!first.app && at_punct("~")) {
            e.kind = EquationAst::HypList;
            std::string x = first.head;
            while (true) {
                expect_punct("~");
                expect_punct("[");
                Dist delta = parse_dist();
                expect_punct("]");
                std::string y = expect_ident("hypothesis point");
                e.hyps.push_back({x, y, delta});
                if (at_punct(",")) {
                    lex_.take();
                    x = expect_ident("hypothesis point");
                    continue;
                }
                break;
            }
            expect_punct("|-");
            e.l = parse_term();
            e.eps = parse_eps_bracket();
            e.r = parse_term();
            return e;
        }
        if (!first.app && at_punct("|-")) {
            e.kind = EquationAst::Context;
            e.space_ref = first.head;
            lex_.take();
            e.l = parse_term();
            e.eps = parse_eps_bracket();
            e.r = parse_term();
            return e;
        }
        e.kind = EquationAst::Plain;
        e.l = std::move(first);
        e.eps = parse_eps_bracket();
        e.r = parse_term();
        return e;
    }

    PresentationAst parse_presentation() {
        lex_.take();
        PresentationAst p;
        p.name = expect_ident("presentation name");
        expect_punct(":");
        p.sig_ref = expect_ident("signature name");
        expect_punct("{");
        while (!at_punct("}")) p.equations.push_back(parse_equation());
        expect_punct("}");
        return p;
    }

    Lexer lex_;
};

std::string print_term(const TermAst& t) {
    if (!t.app) return t.head;
    std::string s = t.head + "(";
    for (size_t i = 0; i < t.kids.size(); ++i) {
        if (i) s += ", ";
        s += print_term(t.kids[i]);
    }
    return s + ")";
}

std::string print_equation(const EquationAst& e) {
    std::string s;
    if (e.kind == EquationAst::Context) s += e.space_ref + " |- ";
    if (e.kind == EquationAst::HypList) {
        for (size_t i = 0; i < e.hyps.size(); ++i) {
            if (i) s += ", ";
            s += e.hyps[i].x + " ~[" + e.hyps[i].delta.str() + "] " + e.hyps[i].y;
        }
        s += " |- ";
    }
    s += print_term(e.l) + " =[" + e.eps.str() + "] " + print_term(e.r);
    return s;
}

}  // namespace

Document parse_document(const std::string& text) { return Parser(text).parse(); }

std::string print_document(const Document& doc) {
    std::ostringstream out;
    bool first = true;
    for (const auto& block : doc.blocks) {
        if (!first) out << "\n";
        first = false;
        if (const auto* s = std::get_if<SpaceAst>(&block)) {
            out << "space " << s->name << " {\n  ";
            for (size_t i = 0; i < s->points.size(); ++i) {
                if (i) out << " ";
                out << s->points[i];
            }
            out << "\n";
            for (const auto& e : s->entries)
                out << "  d(" << e.a << "," << e.b << ") = " << e.d.str() << "\n";
            out << "}\n";
        } else if (const auto* g = std::get_if<SignatureAst>(&block)) {
            out << "signature " << g->name << " {\n";
            for (const auto& sym : g->symbols) {
                out << "  " << sym.name << " : ";
                if (sym.generalized)
                    out << "@" << sym.space_ref;
                else
                    out << sym.arity;
                out << "\n";
            }
            out << "}\n";
        } else if (const auto* a = std::get_if<AlgebraAst>(&block)) {
            out << "algebra " << a->name << " : " << a->sig_ref << " on " << a->space_ref
                << " {\n";
            for (const auto& t : a->tables) {
                out << "  " << t.symbol << " {\n";
                for (const auto& row : t.rows) {
                    out << "    (";
                    for (size_t i = 0; i < row.args.size(); ++i) {
                        if (i) out << ", ";
                        out << row.args[i];
                    }
                    out << ") -> " << row.value << "\n";
                }
                out << "  }\n";
            }
            out << "}\n";
        } else if (const auto* p = std::get_if<PresentationAst>(&block)) {
            out << "presentation " << p->name << " : " << p->sig_ref << " {\n";
            for (const auto& e : p->equations) out << "  " << print_equation(e) << "\n";
            out << "}\n";
        }
    }
    return out.str();
}

TermPtr term_from_ast(const TermAst& ast, const Signature& sig,
                      const std::vector<std::string>* context) {
    if (!ast.app) {
        if (sig.find(ast.head))
            throw InputError("'" + ast.head +
                             "' names an operation symbol; write '" + ast.head + "()'");
        if (context && std::find(context->begin(), context->end(), ast.head) == context->end())
            throw InputError("variable '" + ast.head + "' is not a point of the context space");
        return Term::var(ast.head);
    }
    auto s = sig.find(ast.head);
    if (!s) throw InputError("unknown operation symbol '" + ast.head + "'");
    int want = sig.symbol(*s).arity.size();
    if ((int)ast.kids.size() != want)
        throw InputError("'" + ast.head + "' expects " + std::to_string(want) + " arguments, got " +
                         std::to_string(ast.kids.size()));
    std::vector<TermPtr> kids;
    for (const auto& k : ast.kids) kids.push_back(term_from_ast(k, sig, context));
    return Term::app(*s, std::move(kids));
}

namespace {

void collect_ast_vars(const TermAst& t, const Signature& sig, std::vector<std::string>& out) {
    if (!t.app) {
        if (!sig.find(t.head) && std::find(out.begin(), out.end(), t.head) == out.end())
            out.push_back(t.head);
        return;
    }
    for (const auto& k : t.kids) collect_ast_vars(k, sig, out);
}

}  // namespace

ResolvedDocument resolve(const Document& doc) {
    ResolvedDocument r;
    for (const auto& block : doc.blocks) {
        if (const auto* s = std::get_if<SpaceAst>(&block)) {
            if (r.spaces.count(s->name)) throw InputError("duplicate space '" + s->name + "'");
            int n = (int)s->points.size();
            std::vector<Dist> e((size_t)n * (size_t)n, Dist::infinity());
            auto idx = [&](const std::string& p) {
                auto it = std::find(s->points.begin(), s->points.end(), p);
                if (it == s->points.end())
                    throw InputError("space '" + s->name + "': unknown point '" + p + "'");
                return (int)(it - s->points.begin());
            };
            for (int i = 0; i < n; ++i) e[(size_t)(i * n + i)] = Dist::zero();
            for (const auto& en : s->entries) {
                int a = idx(en.a), b = idx(en.b);
                e[(size_t)(a * n + b)] = en.d;
                e[(size_t)(b * n + a)] = en.d;
            }
            r.spaces.emplace(s->name, FiniteMetricSpace(s->points, std::move(e)));
        } else if (const auto* g = std::get_if<SignatureAst>(&block)) {
            if (r.signatures.count(g->name))
                throw InputError("duplicate signature '" + g->name + "'");
            std::vector<Symbol> symbols;
            for (const auto& sym : g->symbols) {
                if (sym.generalized) {
                    auto it = r.spaces.find(sym.space_ref);
                    if (it == r.spaces.end())
                        throw InputError("signature '" + g->name + "': unknown arity space '" +
                                         sym.space_ref + "'");
                    symbols.push_back({sym.name, Arity::metric(it->second)});
                } else {
                    symbols.push_back({sym.name, Arity::finitary(sym.arity)});
                }
            }
            r.signatures.emplace(g->name, Signature(std::move(symbols)));
        } else if (const auto* a = std::get_if<AlgebraAst>(&block)) {
            if (r.algebras.count(a->name)) throw InputError("duplicate algebra '" + a->name + "'");
            auto sit = r.signatures.find(a->sig_ref);
            if (sit == r.signatures.end())
                throw InputError("algebra '" + a->name + "': unknown signature '" + a->sig_ref +
                                 "'");
            auto spit = r.spaces.find(a->space_ref);
            if (spit == r.spaces.end())
                throw InputError("algebra '" + a->name + "': unknown space '" + a->space_ref +
                                 "'");
            const Signature& sig = sit->second;
            const FiniteMetricSpace& carrier = spit->second;
            std::vector<OpTable> ops((size_t)sig.size());
            std::vector<bool> seen((size_t)sig.size(), false);
            for (const auto& t : a->tables) {
                auto sy = sig.find(t.symbol);
                if (!sy)
                    throw InputError("algebra '" + a->name + "': unknown symbol '" + t.symbol +
                                     "'");
                if (seen[(size_t)*sy])
                    throw InputError("algebra '" + a->name + "': duplicate table for '" +
                                     t.symbol + "'");
                seen[(size_t)*sy] = true;
                OpTable tab;
                tab.total = false;
                const Arity& ar = sig.symbol(*sy).arity;
                for (const auto& row : t.rows) {
                    if ((int)row.args.size() != ar.size())
                        throw InputError("algebra '" + a->name + "': row for '" + t.symbol +
                                         "' has " + std::to_string(row.args.size()) +
                                         " arguments, arity is " + std::to_string(ar.size()));
                    std::vector<int> tuple;
                    for (const auto& arg : row.args)
                        tuple.push_back(carrier.index_or_throw(arg));
                    tab.partial[tuple] = carrier.index_or_throw(row.value);
                }
                if (!ar.generalized()) {
                    // finitary tables must be total
                    std::size_t want = 1;
                    for (int i = 0; i < ar.n; ++i) want *= (std::size_t)carrier.size();
                    if (tab.partial.size() != want)
                        throw InputError("algebra '" + a->name + "': table for '" + t.symbol +
                                         "' must cover all " + std::to_string(want) + " tuples");
                    OpTable total;
                    total.total = true;
                    for (const auto& [tuple, v] : tab.partial) total.flat.push_back(v);
                    ops[(size_t)*sy] = std::move(total);
                } else {
                    ops[(size_t)*sy] = std::move(tab);
                }
            }
            for (int s2 = 0; s2 < sig.size(); ++s2)
                if (!seen[(size_t)s2])
                    throw InputError("algebra '" + a->name + "': missing table for '" +
                                     sig.symbol(s2).name + "'");
            r.algebras.emplace(a->name, QuantAlgebra(sig, carrier, std::move(ops)));
        } else if (const auto* p = std::get_if<PresentationAst>(&block)) {
            if (r.presentations.count(p->name))
                throw InputError("duplicate presentation '" + p->name + "'");
            auto sit = r.signatures.find(p->sig_ref);
            if (sit == r.signatures.end())
                throw InputError("presentation '" + p->name + "': unknown signature '" +
                                 p->sig_ref + "'");
            Presentation pres;
            pres.name = p->name;
            pres.sig = sit->second;
            for (const auto& e : p->equations) {
                if (e.kind == EquationAst::Plain) {
                    std::vector<std::string> vars;
                    collect_ast_vars(e.l, pres.sig, vars);
                    collect_ast_vars(e.r, pres.sig, vars);
                    pres.equations.push_back(
                        QuantEquation{vars, term_from_ast(e.l, pres.sig, nullptr),
                                      term_from_ast(e.r, pres.sig, nullptr), e.eps});
                } else if (e.kind == EquationAst::Context) {
                    auto spit = r.spaces.find(e.space_ref);
                    if (spit == r.spaces.end())
                        throw InputError("presentation '" + p->name + "': unknown context space '" +
                                         e.space_ref + "'");
                    const auto& ctx = spit->second;
                    pres.equations.push_back(
                        BasicEquation{ctx, term_from_ast(e.l, pres.sig, &ctx.labels()),
                                      term_from_ast(e.r, pres.sig, &ctx.labels()), e.eps});
                } else {
                    HypothesisListEquation h;
                    for (const auto& hy : e.hyps) {
                        if (std::find(h.vars.begin(), h.vars.end(), hy.x) == h.vars.end())
                            h.vars.push_back(hy.x);
                        if (std::find(h.vars.begin(), h.vars.end(), hy.y) == h.vars.end())
                            h.vars.push_back(hy.y);
                        h.hypotheses.push_back({hy.x, hy.y, hy.delta});
                    }
                    std::vector<std::string> tv;
                    collect_ast_vars(e.l, pres.sig, tv);
                    collect_ast_vars(e.r, pres.sig, tv);
                    for (const auto& v : tv)
                        if (std::find(h.vars.begin(), h.vars.end(), v) == h.vars.end())
                            h.vars.push_back(v);
                    h.l = term_from_ast(e.l, pres.sig, nullptr);
                    h.r = term_from_ast(e.r, pres.sig, nullptr);
                    h.eps = e.eps;
                    r.hyplists[p->name].push_back(h);
                    pres.equations.push_back(std::move(h));
                }
            }
            r.presentations.emplace(p->name, std::move(pres));
        }
    }
    return r;
}

}  // namespace qalg
