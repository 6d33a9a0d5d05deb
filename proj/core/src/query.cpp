#include "codo/query.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "codo/error.hpp"

namespace codo {

// ---- lexer ---------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { Word, Var, Iri, String, Number, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    std::string datatype; // String with ^^ suffix, already expanded? no: raw
    std::size_t line = 1;
};

const std::set<std::string>& unsupportedKeywords() {
    static const std::set<std::string> kws = {
        "OPTIONAL", "UNION",  "CONSTRUCT", "ASK",   "DESCRIBE", "SERVICE",
        "BIND",     "VALUES", "MINUS",     "GRAPH", "HAVING",   "EXISTS",
    };
    return kws;
}

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

bool qnameChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' ||
           c == '.';
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error("syntax", "query line " + std::to_string(tok_.line) + ": " + msg);
    }

private:
    void advance() {
        if (pendingDot_) {
            pendingDot_ = false;
            tok_ = Token{Token::Kind::Punct, ".", "", line_};
            return;
        }
        skipWs();
        tok_.line = line_;
        tok_.datatype.clear();
        if (pos_ >= text_.size()) {
            tok_.kind = Token::Kind::End;
            tok_.text.clear();
            return;
        }
        char c = text_[pos_];
        if (c == '?' || c == '$') {
            ++pos_;
            tok_.kind = Token::Kind::Var;
            tok_.text = readWhile([](char ch) {
                return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
            });
            if (tok_.text.empty()) fail("empty variable name");
            return;
        }
        // '<' opens an IRI only when it looks like one; otherwise it is a
        // comparison operator inside FILTER
        bool iriStart = c == '<' && pos_ + 1 < text_.size() && text_[pos_ + 1] != '=' &&
                        !std::isspace(static_cast<unsigned char>(text_[pos_ + 1])) &&
                        text_[pos_ + 1] != '?' && text_[pos_ + 1] != '"';
        if (iriStart) {
            ++pos_;
            std::string iri;
            while (pos_ < text_.size() && text_[pos_] != '>') iri.push_back(text_[pos_++]);
            if (pos_ >= text_.size()) fail("unterminated IRI");
            ++pos_;
            tok_.kind = Token::Kind::Iri;
            tok_.text = std::move(iri);
            return;
        }
        if (c == '"' || c == '\'') {
            char q = c;
            ++pos_;
            std::string s;
            while (pos_ < text_.size() && text_[pos_] != q) {
                if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
                    ++pos_;
                    char e = text_[pos_];
                    s.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
                } else {
                    s.push_back(text_[pos_]);
                }
                ++pos_;
            }
            if (pos_ >= text_.size()) fail("unterminated string");
            ++pos_;
            tok_.kind = Token::Kind::String;
            tok_.text = std::move(s);
            if (pos_ + 1 < text_.size() && text_[pos_] == '^' && text_[pos_ + 1] == '^') {
                pos_ += 2;
                if (pos_ < text_.size() && text_[pos_] == '<') {
                    ++pos_;
                    while (pos_ < text_.size() && text_[pos_] != '>')
                        tok_.datatype.push_back(text_[pos_++]);
                    if (pos_ >= text_.size()) fail("unterminated datatype IRI");
                    ++pos_;
                    tok_.datatype = "<" + tok_.datatype + ">";
                } else {
                    tok_.datatype = readWhile(qnameChar);
                }
            }
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            ((c == '-' || c == '+') && pos_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            tok_.kind = Token::Kind::Number;
            tok_.text.clear();
            tok_.text.push_back(text_[pos_++]);
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
                if (text_[pos_] == '.' &&
                    (pos_ + 1 >= text_.size() ||
                     !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))))
                    break;
                tok_.text.push_back(text_[pos_++]);
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok_.kind = Token::Kind::Word;
            tok_.text = readWhile(qnameChar);
            // a trailing '.' terminates the pattern, it is not part of the name
            if (tok_.text.size() > 1 && tok_.text.back() == '.') {
                tok_.text.pop_back();
                pendingDot_ = true;
            }
            return;
        }
        // punctuation, two-char operators first
        static const char* twoChar[] = {"&&", "||", "!=", "<=", ">="};
        for (const char* op : twoChar) {
            if (text_.compare(pos_, 2, op) == 0) {
                tok_.kind = Token::Kind::Punct;
                tok_.text = op;
                pos_ += 2;
                return;
            }
        }
        tok_.kind = Token::Kind::Punct;
        tok_.text = std::string(1, c);
        ++pos_;
    }

    template <typename Pred>
    std::string readWhile(Pred pred) {
        std::string out;
        while (pos_ < text_.size() && pred(text_[pos_])) out.push_back(text_[pos_++]);
        return out;
    }

    void skipWs() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') { ++line_; ++pos_; }
            else if (std::isspace(static_cast<unsigned char>(c))) ++pos_;
            else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else break;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    bool pendingDot_ = false;
    Token tok_;
};

// ---- parser --------------------------------------------------------------

class Parser {
public:
    Parser(std::string_view text, const PrefixMap* base) : lx_(text) {
        ast_.prefixes = base ? *base : PrefixMap::defaults();
    }

    QueryAst parse() {
        while (isKeyword("PREFIX")) {
            lx_.take();
            Token name = lx_.take();
            if (name.kind != Token::Kind::Word || name.text.back() != ':')
                lx_.fail("PREFIX expects 'name:'");
            Token iri = lx_.take();
            if (iri.kind != Token::Kind::Iri) lx_.fail("PREFIX expects an IRI");
            ast_.prefixes.add(name.text.substr(0, name.text.size() - 1), iri.text);
        }
        expectKeyword("SELECT");
        if (isKeyword("DISTINCT")) {
            lx_.take();
            ast_.distinct = true;
        }
        parseProjection();
        expectKeyword("WHERE");
        expectPunct("{");
        parseGroup();
        parseModifiers();
        if (lx_.peek().kind != Token::Kind::End) {
            checkUnsupported(lx_.peek());
            lx_.fail("unexpected trailing token '" + lx_.peek().text + "'");
        }
        if (!ast_.groupBy.empty()) {
            for (const Projection& p : ast_.projection)
                if (std::holds_alternative<Variable>(p) &&
                    std::find(ast_.groupBy.begin(), ast_.groupBy.end(), std::get<Variable>(p)) ==
                        ast_.groupBy.end())
                    lx_.fail("projected variable ?" + std::get<Variable>(p).name +
                             " is not in GROUP BY");
        }
        return std::move(ast_);
    }

private:
    bool isKeyword(const char* kw) const {
        return lx_.peek().kind == Token::Kind::Word && upper(lx_.peek().text) == kw;
    }
    void expectKeyword(const char* kw) {
        if (!isKeyword(kw)) {
            checkUnsupported(lx_.peek());
            lx_.fail(std::string("expected ") + kw + ", got '" + lx_.peek().text + "'");
        }
        lx_.take();
    }
    void expectPunct(const char* p) {
        if (lx_.peek().kind != Token::Kind::Punct || lx_.peek().text != p)
            lx_.fail(std::string("expected '") + p + "', got '" + lx_.peek().text + "'");
        lx_.take();
    }
    void checkUnsupported(const Token& t) const {
        if (t.kind == Token::Kind::Word && unsupportedKeywords().count(upper(t.text)))
            throw Error("unsupported-feature", upper(t.text) + " is outside the supported subset");
    }

    void parseProjection() {
        while (true) {
            const Token& t = lx_.peek();
            if (t.kind == Token::Kind::Var) {
                ast_.projection.emplace_back(Variable{lx_.take().text});
            } else if (t.kind == Token::Kind::Punct && t.text == "(") {
                lx_.take();
                expectKeyword("COUNT");
                expectPunct("(");
                Aggregate agg;
                if (isKeyword("DISTINCT")) {
                    lx_.take();
                    agg.distinct = true;
                }
                if (lx_.peek().kind != Token::Kind::Var) lx_.fail("COUNT expects a variable");
                agg.var = Variable{lx_.take().text};
                expectPunct(")");
                expectKeyword("AS");
                if (lx_.peek().kind != Token::Kind::Var) lx_.fail("AS expects a variable");
                agg.alias = Variable{lx_.take().text};
                expectPunct(")");
                ast_.projection.emplace_back(std::move(agg));
            } else {
                break;
            }
        }
        if (ast_.projection.empty()) lx_.fail("SELECT needs at least one variable");
    }

    Term tokenToTerm(const Token& t) {
        switch (t.kind) {
            case Token::Kind::Iri:
                return Term::iri(t.text);
            case Token::Kind::String: {
                if (t.datatype.empty()) return Term::literal(t.text);
                std::string dt = t.datatype;
                if (dt.front() == '<') dt = dt.substr(1, dt.size() - 2);
                else dt = ast_.prefixes.expand(dt);
                return Term::literal(t.text, dt);
            }
            case Token::Kind::Number:
                return Term::literal(t.text, xsd::decimal_);
            case Token::Kind::Word: {
                if (t.text == "a") return Term::iri(ns::rdf + "type");
                if (t.text == "true" || t.text == "false")
                    return Term::literal(t.text, xsd::boolean_);
                checkUnsupported(t);
                return Term::iri(ast_.prefixes.expand(t.text));
            }
            default:
                lx_.fail("unexpected token '" + t.text + "' in pattern");
        }
    }

    PatternTerm parsePatternTerm() {
        if (lx_.peek().kind == Token::Kind::Var) return Variable{lx_.take().text};
        return tokenToTerm(lx_.take());
    }

    void parseGroup() {
        while (true) {
            const Token& t = lx_.peek();
            if (t.kind == Token::Kind::Punct && t.text == "}") {
                lx_.take();
                return;
            }
            if (t.kind == Token::Kind::End) lx_.fail("unterminated WHERE group");
            if (isKeyword("FILTER")) {
                lx_.take();
                expectPunct("(");
                ast_.filters.push_back(parseOr());
                expectPunct(")");
                continue;
            }
            checkUnsupported(t);
            TriplePattern pat{parsePatternTerm(), parsePatternTerm(), parsePatternTerm()};
            ast_.patterns.push_back(std::move(pat));
            if (lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == ".") lx_.take();
        }
    }

    FilterExpr parseOr() {
        FilterExpr left = parseAnd();
        while (lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == "||") {
            lx_.take();
            FilterExpr node{FilterExpr::Op::Or};
            node.args.push_back(std::move(left));
            node.args.push_back(parseAnd());
            left = std::move(node);
        }
        return left;
    }
    FilterExpr parseAnd() {
        FilterExpr left = parseUnary();
        while (lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == "&&") {
            lx_.take();
            FilterExpr node{FilterExpr::Op::And};
            node.args.push_back(std::move(left));
            node.args.push_back(parseUnary());
            left = std::move(node);
        }
        return left;
    }
    FilterExpr parseUnary() {
        if (lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == "!") {
            lx_.take();
            FilterExpr node{FilterExpr::Op::Not};
            node.args.push_back(parseUnary());
            return node;
        }
        if (lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == "(") {
            lx_.take();
            FilterExpr inner = parseOr();
            expectPunct(")");
            return maybeComparison(std::move(inner));
        }
        return maybeComparison(parseOperand());
    }
    FilterExpr parseOperand() {
        if (lx_.peek().kind == Token::Kind::Var) {
            FilterExpr e{FilterExpr::Op::Var};
            e.var = Variable{lx_.take().text};
            return e;
        }
        FilterExpr e{FilterExpr::Op::Const};
        e.constant = tokenToTerm(lx_.take());
        return e;
    }
    FilterExpr maybeComparison(FilterExpr left) {
        const Token& t = lx_.peek();
        if (t.kind != Token::Kind::Punct) return left;
        FilterExpr::Op op;
        if (t.text == "=") op = FilterExpr::Op::Eq;
        else if (t.text == "!=") op = FilterExpr::Op::Ne;
        else if (t.text == "<") op = FilterExpr::Op::Lt;
        else if (t.text == "<=") op = FilterExpr::Op::Le;
        else if (t.text == ">") op = FilterExpr::Op::Gt;
        else if (t.text == ">=") op = FilterExpr::Op::Ge;
        else return left;
        lx_.take();
        FilterExpr node{op};
        node.args.push_back(std::move(left));
        node.args.push_back(parseOperand());
        return node;
    }

    void parseModifiers() {
        if (isKeyword("GROUP")) {
            lx_.take();
            expectKeyword("BY");
            while (lx_.peek().kind == Token::Kind::Var)
                ast_.groupBy.push_back(Variable{lx_.take().text});
            if (ast_.groupBy.empty()) lx_.fail("GROUP BY needs at least one variable");
        }
        if (isKeyword("ORDER")) {
            lx_.take();
            expectKeyword("BY");
            while (true) {
                if (isKeyword("ASC") || isKeyword("DESC")) {
                    bool desc = upper(lx_.peek().text) == "DESC";
                    lx_.take();
                    expectPunct("(");
                    if (lx_.peek().kind != Token::Kind::Var) lx_.fail("ORDER BY expects a variable");
                    ast_.orderBy.push_back(OrderKey{Variable{lx_.take().text}, desc});
                    expectPunct(")");
                } else if (lx_.peek().kind == Token::Kind::Var) {
                    ast_.orderBy.push_back(OrderKey{Variable{lx_.take().text}, false});
                } else {
                    break;
                }
            }
            if (ast_.orderBy.empty()) lx_.fail("ORDER BY needs at least one key");
        }
        if (isKeyword("LIMIT")) {
            lx_.take();
            if (lx_.peek().kind != Token::Kind::Number) lx_.fail("LIMIT expects a number");
            ast_.limit = std::stoull(lx_.take().text);
        }
        if (isKeyword("OFFSET")) {
            lx_.take();
            if (lx_.peek().kind != Token::Kind::Number) lx_.fail("OFFSET expects a number");
            ast_.offset = std::stoull(lx_.take().text);
        }
    }

    Lexer lx_;
    QueryAst ast_;
};

} // namespace

QueryAst parseQuery(std::string_view text, const PrefixMap* base) {
    return Parser(text, base).parse();
}

// ---- evaluation ----------------------------------------------------------

namespace {

using Binding = std::map<std::string, Term>;

int boundScore(const TriplePattern& p, const Binding& b) {
    int score = 0;
    for (const PatternTerm* pt : {&p.s, &p.p, &p.o}) {
        if (std::holds_alternative<Term>(*pt)) ++score;
        else if (b.count(std::get<Variable>(*pt).name)) ++score;
    }
    return score;
}

std::optional<Term> resolved(const PatternTerm& pt, const Binding& b) {
    if (std::holds_alternative<Term>(pt)) return std::get<Term>(pt);
    auto it = b.find(std::get<Variable>(pt).name);
    if (it == b.end()) return std::nullopt;
    return it->second;
}

void joinPatterns(const Graph& g, std::vector<const TriplePattern*> remaining, Binding& binding,
                  std::vector<Binding>& out) {
    if (remaining.empty()) {
        out.push_back(binding);
        return;
    }
    // greedy: most-bound pattern first
    std::size_t best = 0;
    int bestScore = -1;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
        int s = boundScore(*remaining[i], binding);
        if (s > bestScore) {
            bestScore = s;
            best = i;
        }
    }
    const TriplePattern& pat = *remaining[best];
    remaining.erase(remaining.begin() + best);

    auto s = resolved(pat.s, binding);
    auto p = resolved(pat.p, binding);
    auto o = resolved(pat.o, binding);
    for (const Triple& t : g.match(s, p, o)) {
        Binding extended = binding;
        bool ok = true;
        auto bind = [&](const PatternTerm& pt, const Term& val) {
            if (!std::holds_alternative<Variable>(pt)) return;
            const std::string& name = std::get<Variable>(pt).name;
            auto it = extended.find(name);
            if (it == extended.end()) extended.emplace(name, val);
            else if (!(it->second == val)) ok = false;
        };
        bind(pat.s, t.s);
        bind(pat.p, t.p);
        bind(pat.o, t.o);
        if (ok) joinPatterns(g, remaining, extended, out);
    }
}

enum class Tri { True, False, Err };

int literalCategory(const Term& t) {
    if (t.datatype == xsd::decimal_) return 1;
    if (t.datatype == xsd::boolean_) return 2;
    if (t.datatype == xsd::dateTime_) return 3;
    return 0; // string-ish
}

Tri compareTerms(FilterExpr::Op op, const Term& a, const Term& b) {
    if (op == FilterExpr::Op::Eq || op == FilterExpr::Op::Ne) {
        if (a.kind != b.kind) return op == FilterExpr::Op::Ne ? Tri::True : Tri::False;
        if (a.isLiteral() && literalCategory(a) != literalCategory(b)) return Tri::Err;
        bool eq;
        if (a.isLiteral() && literalCategory(a) == 1)
            eq = std::stold(a.value) == std::stold(b.value);
        else
            eq = a == b;
        return (eq == (op == FilterExpr::Op::Eq)) ? Tri::True : Tri::False;
    }
    // ordering comparisons need two literals of the same category
    if (!a.isLiteral() || !b.isLiteral()) return Tri::Err;
    int cat = literalCategory(a);
    if (cat != literalCategory(b)) return Tri::Err;
    int cmp;
    if (cat == 1) {
        long double x = std::stold(a.value), y = std::stold(b.value);
        cmp = x < y ? -1 : x > y ? 1 : 0;
    } else if (cat == 2) {
        int x = a.value == "true", y = b.value == "true";
        cmp = x - y; // false < true
    } else {
        cmp = a.value.compare(b.value);
        cmp = cmp < 0 ? -1 : cmp > 0 ? 1 : 0;
    }
    switch (op) {
        case FilterExpr::Op::Lt: return cmp < 0 ? Tri::True : Tri::False;
        case FilterExpr::Op::Le: return cmp <= 0 ? Tri::True : Tri::False;
        case FilterExpr::Op::Gt: return cmp > 0 ? Tri::True : Tri::False;
        case FilterExpr::Op::Ge: return cmp >= 0 ? Tri::True : Tri::False;
        default: return Tri::Err;
    }
}

Tri evalFilter(const FilterExpr& e, const Binding& b) {
    switch (e.op) {
        case FilterExpr::Op::Var: {
            auto it = b.find(e.var.name);
            if (it == b.end() || !it->second.isLiteral() ||
                it->second.datatype != xsd::boolean_)
                return Tri::Err;
            return it->second.value == "true" ? Tri::True : Tri::False;
        }
        case FilterExpr::Op::Const:
            if (e.constant.isLiteral() && e.constant.datatype == xsd::boolean_)
                return e.constant.value == "true" ? Tri::True : Tri::False;
            return Tri::Err;
        case FilterExpr::Op::And: {
            Tri l = evalFilter(e.args[0], b), r = evalFilter(e.args[1], b);
            if (l == Tri::False || r == Tri::False) return Tri::False;
            if (l == Tri::Err || r == Tri::Err) return Tri::Err;
            return Tri::True;
        }
        case FilterExpr::Op::Or: {
            Tri l = evalFilter(e.args[0], b), r = evalFilter(e.args[1], b);
            if (l == Tri::True || r == Tri::True) return Tri::True;
            if (l == Tri::Err || r == Tri::Err) return Tri::Err;
            return Tri::False;
        }
        case FilterExpr::Op::Not: {
            Tri v = evalFilter(e.args[0], b);
            if (v == Tri::Err) return Tri::Err;
            return v == Tri::True ? Tri::False : Tri::True;
        }
        default: {
            auto operand = [&](const FilterExpr& x) -> std::optional<Term> {
                if (x.op == FilterExpr::Op::Const) return x.constant;
                if (x.op == FilterExpr::Op::Var) {
                    auto it = b.find(x.var.name);
                    if (it == b.end()) return std::nullopt;
                    return it->second;
                }
                return std::nullopt;
            };
            auto l = operand(e.args[0]);
            auto r = operand(e.args[1]);
            if (!l || !r) return Tri::Err;
            return compareTerms(e.op, *l, *r);
        }
    }
}

// ORDER BY semantics: typed comparison where coherent, canonical term
// order otherwise.
bool orderLess(const Term& a, const Term& b) {
    if (a.isLiteral() && b.isLiteral() && literalCategory(a) == literalCategory(b)) {
        Tri lt = compareTerms(FilterExpr::Op::Lt, a, b);
        Tri gt = compareTerms(FilterExpr::Op::Gt, a, b);
        if (lt == Tri::True) return true;
        if (gt == Tri::True) return false;
        return false;
    }
    return a < b;
}

} // namespace

SolutionTable evaluate(const QueryAst& ast, const Graph& graph) {
    SolutionTable table;

    std::vector<const TriplePattern*> patterns;
    for (const TriplePattern& p : ast.patterns) patterns.push_back(&p);
    std::vector<Binding> solutions;
    Binding empty;
    joinPatterns(graph, patterns, empty, solutions);

    bool filterWarned = false;
    std::vector<Binding> filtered;
    for (const Binding& b : solutions) {
        bool keep = true;
        for (const FilterExpr& f : ast.filters) {
            Tri v = evalFilter(f, b);
            if (v == Tri::Err && !filterWarned) {
                table.warnings.push_back("type-incoherent FILTER comparison treated as false");
                filterWarned = true;
            }
            if (v != Tri::True) {
                keep = false;
                break;
            }
        }
        if (keep) filtered.push_back(b);
    }

    for (const Projection& p : ast.projection)
        table.vars.push_back(std::holds_alternative<Variable>(p)
                                 ? std::get<Variable>(p).name
                                 : std::get<Aggregate>(p).alias.name);

    bool hasAggregate = std::any_of(ast.projection.begin(), ast.projection.end(),
                                    [](const Projection& p) {
                                        return std::holds_alternative<Aggregate>(p);
                                    });
    if (hasAggregate || !ast.groupBy.empty()) {
        std::map<std::vector<Term>, std::vector<const Binding*>> groups;
        for (const Binding& b : filtered) {
            std::vector<Term> key;
            for (const Variable& v : ast.groupBy) {
                auto it = b.find(v.name);
                key.push_back(it == b.end() ? Term{} : it->second);
            }
            groups[key].push_back(&b);
        }
        if (groups.empty() && ast.groupBy.empty()) groups[{}] = {};
        for (const auto& [key, members] : groups) {
            std::vector<Term> row;
            for (const Projection& p : ast.projection) {
                if (std::holds_alternative<Variable>(p)) {
                    const Variable& v = std::get<Variable>(p);
                    auto it = std::find(ast.groupBy.begin(), ast.groupBy.end(), v);
                    row.push_back(key[static_cast<std::size_t>(it - ast.groupBy.begin())]);
                } else {
                    const Aggregate& agg = std::get<Aggregate>(p);
                    std::size_t count;
                    if (agg.distinct) {
                        std::set<Term> values;
                        for (const Binding* b : members) {
                            auto it = b->find(agg.var.name);
                            if (it != b->end()) values.insert(it->second);
                        }
                        count = values.size();
                    } else {
                        count = 0;
                        for (const Binding* b : members)
                            if (b->count(agg.var.name)) ++count;
                    }
                    row.push_back(Term::literal(std::to_string(count), xsd::decimal_));
                }
            }
            table.rows.push_back(std::move(row));
        }
    } else {
        for (const Binding& b : filtered) {
            std::vector<Term> row;
            for (const Projection& p : ast.projection) {
                const Variable& v = std::get<Variable>(p);
                auto it = b.find(v.name);
                row.push_back(it == b.end() ? Term{} : it->second);
            }
            table.rows.push_back(std::move(row));
        }
    }

    if (ast.distinct) {
        std::set<std::vector<Term>> seen;
        std::vector<std::vector<Term>> unique;
        for (auto& row : table.rows)
            if (seen.insert(row).second) unique.push_back(std::move(row));
        table.rows = std::move(unique);
    }

    std::vector<std::size_t> orderIdx;
    for (const OrderKey& k : ast.orderBy) {
        auto it = std::find(table.vars.begin(), table.vars.end(), k.var.name);
        if (it == table.vars.end())
            throw Error("syntax", "ORDER BY variable ?" + k.var.name + " is not projected");
        orderIdx.push_back(static_cast<std::size_t>(it - table.vars.begin()));
    }
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [&](const std::vector<Term>& a, const std::vector<Term>& b) {
                         for (std::size_t i = 0; i < orderIdx.size(); ++i) {
                             const Term& x = a[orderIdx[i]];
                             const Term& y = b[orderIdx[i]];
                             if (x == y) continue;
                             bool less = orderLess(x, y);
                             bool greater = orderLess(y, x);
                             if (!less && !greater) continue;
                             return ast.orderBy[i].descending ? greater : less;
                         }
                         return a < b; // canonical tiebreak
                     });

    std::size_t offset = ast.offset.value_or(0);
    if (offset >= table.rows.size()) table.rows.clear();
    else table.rows.erase(table.rows.begin(), table.rows.begin() + static_cast<long>(offset));
    if (ast.limit && table.rows.size() > *ast.limit) table.rows.resize(*ast.limit);

    return table;
}

// ---- serializations ------------------------------------------------------

std::string toJsonResults(const SolutionTable& table) {
    nlohmann::ordered_json doc;
    doc["head"]["vars"] = table.vars;
    auto& bindings = doc["results"]["bindings"];
    bindings = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json b = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < table.vars.size(); ++i) {
            const Term& t = row[i];
            if (t.value.empty() && t.datatype.empty() && t.kind == TermKind::Iri)
                continue; // unbound
            nlohmann::ordered_json cell;
            switch (t.kind) {
                case TermKind::Iri:
                    cell["type"] = "uri";
                    cell["value"] = t.value;
                    break;
                case TermKind::Blank:
                    cell["type"] = "bnode";
                    cell["value"] = t.value;
                    break;
                case TermKind::Literal:
                    cell["type"] = "literal";
                    cell["value"] = t.value;
                    if (t.datatype != xsd::string_) cell["datatype"] = t.datatype;
                    break;
            }
            b[table.vars[i]] = std::move(cell);
        }
        bindings.push_back(std::move(b));
    }
    return doc.dump();
}

std::string SolutionTable::toText(const PrefixMap* prefixes) const {
    auto render = [&](const Term& t) -> std::string {
        switch (t.kind) {
            case TermKind::Iri: {
                if (prefixes) {
                    std::string q = prefixes->compact(t.value);
                    if (!q.empty()) return q;
                }
                return "<" + t.value + ">";
            }
            case TermKind::Blank:
                return "_:" + t.value;
            case TermKind::Literal:
                return t.datatype == xsd::string_ ? "\"" + t.value + "\"" : t.value;
        }
        return {};
    };
    std::vector<std::size_t> widths;
    for (const std::string& v : vars) widths.push_back(v.size() + 1);
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < row.size(); ++i) {
            out.push_back(render(row[i]));
            widths[i] = std::max(widths[i], out.back().size());
        }
        cells.push_back(std::move(out));
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < vars.size(); ++i)
        os << "?" << vars[i] << std::string(widths[i] - vars[i].size(), ' ')
           << (i + 1 < vars.size() ? " " : "");
    os << "\n";
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << std::string(widths[i] + 1 - row[i].size(), ' ')
               << (i + 1 < row.size() ? " " : "");
        os << "\n";
    }
    return os.str();
}

} // namespace codo
