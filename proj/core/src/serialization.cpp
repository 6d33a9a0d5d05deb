#include "codo/serialization.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>

#include "codo/error.hpp"

namespace codo {

namespace {

// ---- escaping ------------------------------------------------------------

void appendUtf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Decodes one UTF-8 sequence starting at i; advances i past it.
std::uint32_t nextCodepoint(const std::string& s, std::size_t& i) {
    unsigned char c = s[i];
    std::uint32_t cp;
    int extra;
    if (c < 0x80) { cp = c; extra = 0; }
    else if ((c & 0xE0) == 0xC0) { cp = c & 0x1F; extra = 1; }
    else if ((c & 0xF0) == 0xE0) { cp = c & 0x0F; extra = 2; }
    else { cp = c & 0x07; extra = 3; }
    ++i;
    for (int k = 0; k < extra && i < s.size(); ++k, ++i)
        cp = (cp << 6) | (static_cast<unsigned char>(s[i]) & 0x3F);
    return cp;
}

std::string escapeLiteral(const std::string& s, bool asciiOnly) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        switch (c) {
            case '\\': out += "\\\\"; ++i; continue;
            case '"': out += "\\\""; ++i; continue;
            case '\n': out += "\\n"; ++i; continue;
            case '\r': out += "\\r"; ++i; continue;
            case '\t': out += "\\t"; ++i; continue;
            default: break;
        }
        auto uc = static_cast<unsigned char>(c);
        if (uc < 0x20 || (asciiOnly && uc > 0x7E)) {
            std::uint32_t cp = nextCodepoint(s, i);
            char buf[16];
            if (cp <= 0xFFFF)
                std::snprintf(buf, sizeof buf, "\\u%04X", cp);
            else
                std::snprintf(buf, sizeof buf, "\\U%08X", cp);
            out += buf;
        } else {
            out.push_back(c);
            ++i;
        }
    }
    return out;
}

std::string escapeIri(const std::string& s, bool asciiOnly) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        auto uc = static_cast<unsigned char>(s[i]);
        if (asciiOnly && uc > 0x7E) {
            std::uint32_t cp = nextCodepoint(s, i);
            char buf[16];
            if (cp <= 0xFFFF)
                std::snprintf(buf, sizeof buf, "\\u%04X", cp);
            else
                std::snprintf(buf, sizeof buf, "\\U%08X", cp);
            out += buf;
        } else {
            out.push_back(s[i]);
            ++i;
        }
    }
    return out;
}

std::string ntTerm(const Term& t, const std::map<std::string, std::string>& blankLabels) {
    switch (t.kind) {
        case TermKind::Iri:
            return "<" + escapeIri(t.value, true) + ">";
        case TermKind::Blank: {
            auto it = blankLabels.find(t.value);
            return "_:" + (it == blankLabels.end() ? t.value : it->second);
        }
        case TermKind::Literal: {
            std::string out = "\"" + escapeLiteral(t.value, true) + "\"";
            if (t.datatype != xsd::string_) out += "^^<" + escapeIri(t.datatype, true) + ">";
            return out;
        }
    }
    return {};
}

std::string turtleTerm(const Term& t, const PrefixMap& prefixes,
                       const std::map<std::string, std::string>& blankLabels) {
    switch (t.kind) {
        case TermKind::Iri: {
            std::string q = prefixes.compact(t.value);
            return q.empty() ? "<" + escapeIri(t.value, false) + ">" : q;
        }
        case TermKind::Blank: {
            auto it = blankLabels.find(t.value);
            return "_:" + (it == blankLabels.end() ? t.value : it->second);
        }
        case TermKind::Literal: {
            std::string out = "\"" + escapeLiteral(t.value, false) + "\"";
            if (t.datatype != xsd::string_) {
                std::string q = prefixes.compact(t.datatype);
                out += "^^" + (q.empty() ? "<" + escapeIri(t.datatype, false) + ">" : q);
            }
            return out;
        }
    }
    return {};
}

// Relabels blank nodes _:b0... in first-encounter order over the
// canonically sorted triple sequence, so output does not depend on
// insertion history.
std::map<std::string, std::string> canonicalBlankLabels(const std::vector<Triple>& sorted) {
    std::map<std::string, std::string> labels;
    std::size_t n = 0;
    auto visit = [&](const Term& t) {
        if (t.isBlank() && !labels.count(t.value))
            labels[t.value] = "b" + std::to_string(n++);
    };
    for (const Triple& t : sorted) {
        visit(t.s);
        visit(t.o);
    }
    return labels;
}

std::vector<Triple> sortedTriples(const Graph& g) {
    std::vector<Triple> ts = g.triples();
    std::map<std::string, std::string> noLabels;
    std::sort(ts.begin(), ts.end(), [&](const Triple& a, const Triple& b) {
        auto key = [&](const Triple& t) {
            return ntTerm(t.s, noLabels) + " " + ntTerm(t.p, noLabels) + " " + ntTerm(t.o, noLabels);
        };
        return key(a) < key(b);
    });
    return ts;
}

// ---- N-Triples parsing ---------------------------------------------------

struct LineCursor {
    std::string_view line;
    std::size_t pos = 0;
    std::size_t lineNo;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error("syntax", "line " + std::to_string(lineNo) + ": " + msg);
    }
    void skipWs() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    }
    bool atEnd() {
        skipWs();
        return pos >= line.size() || line[pos] == '#';
    }
};

std::uint32_t parseHex(LineCursor& c, int digits) {
    std::uint32_t v = 0;
    for (int i = 0; i < digits; ++i) {
        if (c.pos >= c.line.size()) c.fail("truncated \\u escape");
        char ch = c.line[c.pos++];
        v <<= 4;
        if (ch >= '0' && ch <= '9') v |= ch - '0';
        else if (ch >= 'a' && ch <= 'f') v |= ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F') v |= ch - 'A' + 10;
        else c.fail("bad hex digit in escape");
    }
    return v;
}

std::string parseQuoted(LineCursor& c) {
    // cursor sits just past the opening quote
    std::string out;
    while (true) {
        if (c.pos >= c.line.size()) c.fail("unterminated string literal");
        char ch = c.line[c.pos++];
        if (ch == '"') return out;
        if (ch != '\\') { out.push_back(ch); continue; }
        if (c.pos >= c.line.size()) c.fail("truncated escape");
        char e = c.line[c.pos++];
        switch (e) {
            case 't': out.push_back('\t'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            case 'b': out.push_back('\b'); break;
            case 'f': out.push_back('\f'); break;
            case '"': out.push_back('"'); break;
            case '\'': out.push_back('\''); break;
            case '\\': out.push_back('\\'); break;
            case 'u': appendUtf8(out, parseHex(c, 4)); break;
            case 'U': appendUtf8(out, parseHex(c, 8)); break;
            default: c.fail(std::string("unknown escape \\") + e);
        }
    }
}

std::string parseIriRef(LineCursor& c) {
    // cursor sits just past '<'
    std::string out;
    while (true) {
        if (c.pos >= c.line.size()) c.fail("unterminated IRI");
        char ch = c.line[c.pos++];
        if (ch == '>') return out;
        if (ch == '\\') {
            if (c.pos >= c.line.size()) c.fail("truncated escape");
            char e = c.line[c.pos++];
            if (e == 'u') appendUtf8(out, parseHex(c, 4));
            else if (e == 'U') appendUtf8(out, parseHex(c, 8));
            else c.fail(std::string("unknown IRI escape \\") + e);
        } else if (ch == ' ') {
            c.fail("space inside IRI");
        } else {
            out.push_back(ch);
        }
    }
}

bool blankNameChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

Term parseNtTerm(LineCursor& c, bool allowLiteral) {
    c.skipWs();
    if (c.pos >= c.line.size()) c.fail("unexpected end of line");
    char ch = c.line[c.pos];
    if (ch == '<') {
        ++c.pos;
        return Term::iri(parseIriRef(c));
    }
    if (ch == '_') {
        if (c.pos + 1 >= c.line.size() || c.line[c.pos + 1] != ':') c.fail("bad blank node");
        c.pos += 2;
        std::string id;
        while (c.pos < c.line.size() && blankNameChar(c.line[c.pos])) id.push_back(c.line[c.pos++]);
        if (id.empty()) c.fail("empty blank node label");
        return Term::blank(std::move(id));
    }
    if (ch == '"') {
        if (!allowLiteral) c.fail("literal not allowed in this position");
        ++c.pos;
        std::string lex = parseQuoted(c);
        if (c.pos + 1 < c.line.size() && c.line[c.pos] == '^' && c.line[c.pos + 1] == '^') {
            c.pos += 2;
            if (c.pos >= c.line.size() || c.line[c.pos] != '<') c.fail("datatype must be an IRI");
            ++c.pos;
            std::string dt = parseIriRef(c);
            return Term::literal(std::move(lex), std::move(dt));
        }
        if (c.pos < c.line.size() && c.line[c.pos] == '@') c.fail("language tags unsupported");
        return Term::literal(std::move(lex));
    }
    c.fail(std::string("unexpected character '") + ch + "'");
}

} // namespace

ParseReport parseNTriples(std::string_view text, Graph& graph, bool strict) {
    ParseReport report;
    std::size_t lineNo = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        LineCursor c{line, 0, lineNo};
        if (c.atEnd()) continue;
        try {
            Term s = parseNtTerm(c, false);
            c.skipWs();
            if (c.pos >= c.line.size() || c.line[c.pos] != '<') c.fail("predicate must be an IRI");
            ++c.pos;
            Term p = Term::iri(parseIriRef(c));
            Term o = parseNtTerm(c, true);
            c.skipWs();
            if (c.pos >= c.line.size() || c.line[c.pos] != '.') c.fail("missing terminating '.'");
            ++c.pos;
            if (!c.atEnd()) c.fail("trailing content after '.'");
            if (graph.insert(Triple{std::move(s), std::move(p), std::move(o)}))
                ++report.tripleCount;
        } catch (const Error& e) {
            if (strict) throw;
            report.lineErrors.emplace_back(lineNo, e.what());
        }
    }
    return report;
}

// ---- Turtle subset -------------------------------------------------------

namespace {

struct TurtleLexer {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t lineNo = 1;

    [[noreturn]] void fail(const std::string& kind, const std::string& msg) const {
        throw Error(kind, "line " + std::to_string(lineNo) + ": " + msg);
    }
    void skip() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '\n') { ++lineNo; ++pos; }
            else if (std::isspace(static_cast<unsigned char>(c))) ++pos;
            else if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else break;
        }
    }
    bool atEnd() { skip(); return pos >= text.size(); }
    char peek() { skip(); return pos < text.size() ? text[pos] : '\0'; }
};

bool nameChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == '%';
}

// Reads a prefixed name or bareword; stops before a '.' followed by
// whitespace/end (statement terminator).
std::string readName(TurtleLexer& lx) {
    std::string out;
    while (lx.pos < lx.text.size()) {
        char c = lx.text[lx.pos];
        if (c == ':') { out.push_back(c); ++lx.pos; continue; }
        if (!nameChar(c)) break;
        if (c == '.') {
            std::size_t next = lx.pos + 1;
            if (next >= lx.text.size() || !nameChar(lx.text[next])) break;
        }
        out.push_back(c);
        ++lx.pos;
    }
    return out;
}

Term readTurtleTerm(TurtleLexer& lx, const PrefixMap& prefixes, bool allowLiteral) {
    char c = lx.peek();
    if (c == '(')
        lx.fail("unsupported-construct", "collections '( ... )' are outside the Turtle subset");
    if (c == '[')
        lx.fail("unsupported-construct", "blank-node property lists '[ ... ]' are outside the Turtle subset");
    if (c == '<') {
        ++lx.pos;
        std::string iri;
        while (lx.pos < lx.text.size() && lx.text[lx.pos] != '>') {
            if (lx.text[lx.pos] == '\n') lx.fail("syntax", "unterminated IRI");
            iri.push_back(lx.text[lx.pos++]);
        }
        if (lx.pos >= lx.text.size()) lx.fail("syntax", "unterminated IRI");
        ++lx.pos;
        return Term::iri(std::move(iri));
    }
    if (c == '_') {
        if (lx.pos + 1 >= lx.text.size() || lx.text[lx.pos + 1] != ':')
            lx.fail("syntax", "bad blank node label");
        lx.pos += 2;
        std::string id = readName(lx);
        if (id.empty()) lx.fail("syntax", "empty blank node label");
        return Term::blank(std::move(id));
    }
    if (c == '"') {
        if (!allowLiteral) lx.fail("syntax", "literal not allowed in this position");
        ++lx.pos;
        LineCursor lc{lx.text, lx.pos, lx.lineNo};
        std::string lex = parseQuoted(lc);
        lx.pos = lc.pos;
        if (lx.pos + 1 < lx.text.size() && lx.text[lx.pos] == '^' && lx.text[lx.pos + 1] == '^') {
            lx.pos += 2;
            Term dt = readTurtleTerm(lx, prefixes, false);
            return Term::literal(std::move(lex), dt.value);
        }
        if (lx.pos < lx.text.size() && lx.text[lx.pos] == '@')
            lx.fail("syntax", "language tags unsupported");
        return Term::literal(std::move(lex));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
        std::string num;
        num.push_back(lx.text[lx.pos++]);
        while (lx.pos < lx.text.size()) {
            char d = lx.text[lx.pos];
            if (std::isdigit(static_cast<unsigned char>(d))) { num.push_back(d); ++lx.pos; continue; }
            if (d == '.' && lx.pos + 1 < lx.text.size() &&
                std::isdigit(static_cast<unsigned char>(lx.text[lx.pos + 1]))) {
                num.push_back(d);
                ++lx.pos;
                continue;
            }
            break;
        }
        return Term::literal(std::move(num), xsd::decimal_);
    }
    std::string name = readName(lx);
    if (name.empty()) lx.fail("syntax", std::string("unexpected character '") + c + "'");
    if (name == "a") return Term::iri(ns::rdf + "type");
    if (name == "true" || name == "false") return Term::literal(name, xsd::boolean_);
    if (name.find(':') == std::string::npos)
        lx.fail("syntax", "bareword '" + name + "' is not a prefixed name");
    try {
        return Term::iri(prefixes.expand(name));
    } catch (const Error& e) {
        lx.fail("unresolved-prefix", e.what());
    }
}

} // namespace

ParseReport parseTurtleSubset(std::string_view text, Graph& graph) {
    ParseReport report;
    TurtleLexer lx{text};
    PrefixMap prefixes = graph.prefixes();
    while (!lx.atEnd()) {
        if (lx.peek() == '@') {
            ++lx.pos;
            std::string kw = readName(lx);
            if (kw != "prefix") lx.fail("syntax", "unknown directive @" + kw);
            lx.skip();
            std::string name = readName(lx);
            if (name.empty() || name.back() != ':') lx.fail("syntax", "bad prefix name in @prefix");
            name.pop_back();
            Term iri = readTurtleTerm(lx, prefixes, false);
            if (!iri.isIri()) lx.fail("syntax", "@prefix expects an IRI");
            if (lx.peek() != '.') lx.fail("syntax", "@prefix missing terminating '.'");
            ++lx.pos;
            prefixes.add(name, iri.value);
            graph.prefixes().add(name, iri.value);
            continue;
        }
        Term subject = readTurtleTerm(lx, prefixes, false);
        while (true) { // predicate list
            Term predicate = readTurtleTerm(lx, prefixes, false);
            if (!predicate.isIri()) lx.fail("syntax", "predicate must be an IRI");
            while (true) { // object list
                Term object = readTurtleTerm(lx, prefixes, true);
                if (graph.insert(Triple{subject, predicate, std::move(object)}))
                    ++report.tripleCount;
                if (lx.peek() == ',') { ++lx.pos; continue; }
                break;
            }
            if (lx.peek() == ';') {
                ++lx.pos;
                if (lx.peek() == '.') break; // tolerate trailing ';'
                continue;
            }
            break;
        }
        if (lx.peek() != '.') lx.fail("syntax", "statement missing terminating '.'");
        ++lx.pos;
    }
    return report;
}

std::string serializeNTriples(const Graph& graph) {
    std::vector<Triple> ts = sortedTriples(graph);
    auto labels = canonicalBlankLabels(ts);
    std::vector<std::string> lines;
    lines.reserve(ts.size());
    for (const Triple& t : ts)
        lines.push_back(ntTerm(t.s, labels) + " " + ntTerm(t.p, labels) + " " + ntTerm(t.o, labels) + " .");
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const std::string& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

std::string serializeTurtleSubset(const Graph& graph) {
    std::ostringstream out;
    for (const auto& [prefix, iri] : graph.prefixes().entries())
        out << "@prefix " << prefix << ": <" << iri << "> .\n";
    out << "\n";
    std::vector<Triple> ts = sortedTriples(graph);
    auto labels = canonicalBlankLabels(ts);
    std::vector<std::string> lines;
    lines.reserve(ts.size());
    const PrefixMap& p = graph.prefixes();
    for (const Triple& t : ts)
        lines.push_back(turtleTerm(t.s, p, labels) + " " + turtleTerm(t.p, p, labels) + " " +
                        turtleTerm(t.o, p, labels) + " .");
    std::sort(lines.begin(), lines.end());
    for (const std::string& l : lines) out << l << "\n";
    return out.str();
}

} // namespace codo
