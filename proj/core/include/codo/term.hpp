#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>

namespace codo {

namespace ns {
inline const std::string codo   = "http://www.isibang.ac.in/ns/codo#";
inline const std::string rdf    = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string rdfs   = "http://www.w3.org/2000/01/rdf-schema#";
inline const std::string owl    = "http://www.w3.org/2002/07/owl#";
inline const std::string xsd    = "http://www.w3.org/2001/XMLSchema#";
inline const std::string foaf   = "http://xmlns.com/foaf/0.1/";
inline const std::string schema = "https://schema.org/";
} // namespace ns

namespace xsd {
inline const std::string string_   = ns::xsd + "string";
inline const std::string decimal_  = ns::xsd + "decimal";
inline const std::string boolean_  = ns::xsd + "boolean";
inline const std::string dateTime_ = ns::xsd + "dateTime";
} // namespace xsd

enum class TermKind { Iri, Literal, Blank };

// A graph atom: IRI, typed literal, or blank node. Value semantics,
// equality over all fields. IRIs are always stored fully expanded.
struct Term {
    TermKind kind = TermKind::Iri;
    std::string value;    // IRI string / literal lexical form / blank id
    std::string datatype; // literal datatype IRI; empty for iri and blank

    static Term iri(std::string v);
    // Normalizes booleans to true/false and dateTimes to ISO-8601 with
    // seconds precision. Empty datatype defaults to xsd:string.
    static Term literal(std::string lexical, std::string datatype = "");
    static Term boolean(bool b);
    static Term blank(std::string id);

    bool isIri() const { return kind == TermKind::Iri; }
    bool isLiteral() const { return kind == TermKind::Literal; }
    bool isBlank() const { return kind == TermKind::Blank; }

    auto operator<=>(const Term&) const = default;
};

struct Triple {
    Term s, p, o;
    auto operator<=>(const Triple&) const = default;
};

// prefix -> namespace IRI
class PrefixMap {
public:
    void add(const std::string& prefix, const std::string& iri) { map_[prefix] = iri; }
    bool has(const std::string& prefix) const { return map_.count(prefix) != 0; }
    // throws Error("unresolved-prefix") on an unknown prefix
    std::string expand(const std::string& qname) const;
    // best-effort reverse lookup; returns qname or empty when no prefix applies
    std::string compact(const std::string& iri) const;
    const std::map<std::string, std::string>& entries() const { return map_; }

    static PrefixMap defaults();

private:
    std::map<std::string, std::string> map_;
};

// Parses "<iri>", a prefixed name, a quoted literal with optional
// ^^datatype, or a bare true/false into a fully-expanded Term.
Term resolveTerm(std::string_view text, const PrefixMap& prefixes);

// Lexical normalization used by Term::literal; exposed for coercion checks.
std::string normalizeBooleanLexical(const std::string& lexical);  // throws on garbage
std::string normalizeDateTimeLexical(const std::string& lexical); // throws on garbage

} // namespace codo
