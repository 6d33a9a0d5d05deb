#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "codo/graph.hpp"

namespace codo {

struct CellRef {
    std::string column; // letters A..Z+
    bool wildcard = true;
    int row = 0; // when !wildcard
    auto operator<=>(const CellRef&) const = default;
};

// literal-or-cellRef piece of the subject label template
using LabelPart = std::variant<std::string, CellRef>;

struct SubjectSpec {
    CellRef cell;
    std::string iriFunction;             // e.g. "mm:hashEncode"; may be empty
    std::vector<LabelPart> labelTemplate; // joined with single spaces
};

struct FactSpec {
    std::string propertyName; // quoted label, bareword, or prefixed name
    bool quoted = false;      // quoted names resolve via rdfs:label only
    CellRef cell;
    std::string coercion; // datatype IRI; empty means object-valued
};

struct MappingRule {
    SubjectSpec subject;
    std::vector<std::string> types; // name references, resolved at apply time
    std::vector<FactSpec> facts;
};

// Grammar:
//   rule    := "Individual:" subject "Types:" names "Facts:" facts
//   subject := cellRef ["(" function [labelAnnotation] ")"]
//   cellRef := "@" LETTERS ("*" | DIGITS)
//   labelAnnotation := "rdfs:label" "=" "(" (string|cellRef) ("," ...)* ")"
//   facts   := fact ("," fact)*
//   fact    := propName cellRef ["(" datatype ")"]
// Throws Error("syntax") with position, Error("unsupported-coercion")
// for datatypes outside {xsd:dateTime, xsd:decimal, xsd:boolean}.
MappingRule parseMappingRule(std::string_view text);

// Figure-5-style case sheet. Rows are right-padded to rectangular;
// columns are addressed by letters A, B, ... positionally.
struct CaseTable {
    std::vector<std::string> header; // empty when the sheet has no header row
    std::vector<std::vector<std::string>> rows;

    // comma-separated, double-quote quoting, UTF-8; the first row is
    // treated as a header when its first cell is "Case"
    static CaseTable fromCsv(std::string_view text);

    static std::size_t columnIndex(const std::string& letters);
    // empty string for out-of-range columns
    const std::string& cell(std::size_t row, const std::string& letters) const;
};

struct IngestConfig {
    enum class Naming { Padded, Hash };
    Naming naming = Naming::Padded;
    bool sentinelFilter = true;
};

struct SkipEntry {
    std::size_t row; // 1-based data row
    std::string column;
    std::string reason;
};

struct IngestReport {
    std::size_t rowsProcessed = 0;
    std::size_t rowsSkipped = 0;
    std::size_t individualsCreated = 0;
    std::size_t factsEmitted = 0;
    std::size_t factsSkipped = 0;
    std::size_t triplesAdded = 0;
    std::vector<SkipEntry> skips;

    std::string summary() const;  // plain-text block
    std::string logLines() const; // one machine-readable line per skip
};

// Applies the rule row by row, inserting triples into `graph` (which
// must already hold the vocabulary for label resolution). All property
// and type names are resolved before any row runs; an unresolvable name
// throws Error("unknown-label") and nothing is inserted. Cell coercion
// failures skip the cell, log it, and continue.
IngestReport applyMapping(const MappingRule& rule, const CaseTable& table, Graph& graph,
                          const IngestConfig& config = {});

// Deterministic individual IRI in the codo namespace. Padded mode:
// "p" + case number zero-padded to 6 digits. Hash mode: lowercase hex
// FNV-1a 64 of the cell text. Throws Error("empty-cell") on an empty cell.
Term makeIndividualIri(const SubjectSpec& spec, const CaseTable& table, std::size_t row,
                       const IngestConfig& config = {});

std::uint64_t fnv1a64(std::string_view text);

struct ReasonParse {
    enum class Kind { Travel, Relationship, Opaque };
    Kind kind = Kind::Opaque;
    std::vector<std::string> places;  // Travel: "From X/Y" path segments in order
    std::string relationProperty;     // Relationship: property IRI
    std::string text;                 // original cell text
};

// "From X[/Y...]" -> travel; known kinship/contact word -> relationship;
// anything else degrades to opaque.
ReasonParse normalizeReasonCell(const std::string& text);

struct LinkReport {
    std::size_t triplesAdded = 0;
    std::vector<std::string> log; // dangling references etc.
};

// Reads the Reason ("H") and parent-case ("P"/"K") columns: a kinship
// reason with P = n > 0 emits <patient(n), kind, patient(thisRow)>;
// travel reasons emit travelledFrom; other non-empty reasons are stored
// as suspectedReasonOfInfection literals.
LinkReport linkRelationships(const CaseTable& table, Graph& graph,
                             const IngestConfig& config = {});

} // namespace codo
