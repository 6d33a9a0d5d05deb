#include "codo/term.hpp"

#include <cctype>
#include <cstdio>

#include "codo/error.hpp"

namespace codo {

Term Term::iri(std::string v) {
    Term t;
    t.kind = TermKind::Iri;
    t.value = std::move(v);
    return t;
}

Term Term::literal(std::string lexical, std::string datatype) {
    Term t;
    t.kind = TermKind::Literal;
    if (datatype.empty()) datatype = xsd::string_;
    if (datatype == xsd::boolean_) lexical = normalizeBooleanLexical(lexical);
    if (datatype == xsd::dateTime_) lexical = normalizeDateTimeLexical(lexical);
    t.value = std::move(lexical);
    t.datatype = std::move(datatype);
    return t;
}

Term Term::boolean(bool b) {
    return literal(b ? "true" : "false", xsd::boolean_);
}

Term Term::blank(std::string id) {
    Term t;
    t.kind = TermKind::Blank;
    t.value = std::move(id);
    return t;
}

std::string normalizeBooleanLexical(const std::string& lexical) {
    std::string low;
    for (char c : lexical) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (low == "true" || low == "1") return "true";
    if (low == "false" || low == "0") return "false";
    throw Error("bad-literal", "not a boolean lexical form: '" + lexical + "'");
}

namespace {

bool allDigits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

// Accepts "YYYY-MM-DD", "YYYY-MM-DDT", "YYYY-MM-DDThh:mm" and
// "YYYY-MM-DDThh:mm:ss"; missing time parts are completed to midnight /
// zero seconds. The source sheets truncate the time part ("2020-03-09T").
std::string normalizeDateTimeLexical(const std::string& lexical) {
    std::string_view s = lexical;
    auto fail = [&] { throw Error("bad-literal", "not a dateTime lexical form: '" + lexical + "'"); };
    if (s.size() < 10) fail();
    std::string_view date = s.substr(0, 10);
    if (!allDigits(date.substr(0, 4)) || date[4] != '-' ||
        !allDigits(date.substr(5, 2)) || date[7] != '-' ||
        !allDigits(date.substr(8, 2)))
        fail();
    std::string_view rest = s.substr(10);
    if (rest.empty() || rest == "T") return std::string(date) + "T00:00:00";
    if (rest[0] != 'T') fail();
    std::string_view time = rest.substr(1);
    auto okPair = [&](size_t pos) {
        return time.size() >= pos + 2 && allDigits(time.substr(pos, 2));
    };
    if (time.size() == 5 && okPair(0) && time[2] == ':' && okPair(3))
        return std::string(date) + "T" + std::string(time) + ":00";
    if (time.size() == 8 && okPair(0) && time[2] == ':' && okPair(3) && time[5] == ':' && okPair(6))
        return std::string(date) + "T" + std::string(time);
    fail();
    return {};
}

std::string PrefixMap::expand(const std::string& qname) const {
    auto colon = qname.find(':');
    if (colon == std::string::npos)
        throw Error("unresolved-prefix", "not a prefixed name: '" + qname + "'");
    std::string prefix = qname.substr(0, colon);
    auto it = map_.find(prefix);
    if (it == map_.end())
        throw Error("unresolved-prefix", "unknown prefix '" + prefix + "'");
    return it->second + qname.substr(colon + 1);
}

std::string PrefixMap::compact(const std::string& iri) const {
    for (const auto& [prefix, nsIri] : map_) {
        if (iri.size() > nsIri.size() && iri.compare(0, nsIri.size(), nsIri) == 0) {
            std::string local = iri.substr(nsIri.size());
            bool ok = !local.empty();
            for (char c : local)
                if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
                    ok = false;
            if (ok && local.back() != '.') return prefix + ":" + local;
        }
    }
    return {};
}

PrefixMap PrefixMap::defaults() {
    PrefixMap m;
    m.add("codo", ns::codo);
    m.add("rdf", ns::rdf);
    m.add("rdfs", ns::rdfs);
    m.add("owl", ns::owl);
    m.add("foaf", ns::foaf);
    m.add("schema", ns::schema);
    m.add("xsd", ns::xsd);
    return m;
}

Term resolveTerm(std::string_view text, const PrefixMap& prefixes) {
    if (text.empty()) throw Error("syntax", "empty term");
    if (text.front() == '<') {
        if (text.back() != '>') throw Error("syntax", "unterminated IRI: " + std::string(text));
        return Term::iri(std::string(text.substr(1, text.size() - 2)));
    }
    if (text.substr(0, 2) == "_:") return Term::blank(std::string(text.substr(2)));
    if (text.front() == '"') {
        auto close = text.rfind('"');
        if (close == 0) throw Error("syntax", "unterminated literal: " + std::string(text));
        std::string lexical(text.substr(1, close - 1));
        std::string_view rest = text.substr(close + 1);
        if (rest.empty()) return Term::literal(std::move(lexical));
        if (rest.substr(0, 2) != "^^")
            throw Error("syntax", "bad literal suffix: " + std::string(text));
        Term dt = resolveTerm(rest.substr(2), prefixes);
        return Term::literal(std::move(lexical), dt.value);
    }
    if (text == "true" || text == "false")
        return Term::literal(std::string(text), xsd::boolean_);
    return Term::iri(prefixes.expand(std::string(text)));
}

} // namespace codo
