#include "codo/mapping.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>

#include "codo/error.hpp"
#include "codo/schema.hpp"

namespace codo {

// ---- rule grammar --------------------------------------------------------

namespace {

struct RuleLexer {
    std::string_view text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error("syntax", "mapping rule, offset " + std::to_string(pos) + ": " + msg);
    }
    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool atEnd() { skip(); return pos >= text.size(); }
    char peek() { skip(); return pos < text.size() ? text[pos] : '\0'; }

    // bareword / prefixed name / keyword, colon included
    std::string word() {
        skip();
        std::string out;
        while (pos < text.size()) {
            char c = text[pos];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' || c == '-') {
                out.push_back(c);
                ++pos;
            } else {
                break;
            }
        }
        if (out.empty()) fail("expected a name");
        return out;
    }

    std::string quoted(char q) {
        // cursor on the opening quote
        ++pos;
        std::string out;
        while (pos < text.size() && text[pos] != q) out.push_back(text[pos++]);
        if (pos >= text.size()) fail("unterminated quoted name");
        ++pos;
        return out;
    }

    CellRef cellRef() {
        skip();
        if (peek() != '@') fail("expected a cell reference '@COL*'");
        ++pos;
        CellRef ref;
        while (pos < text.size() && std::isupper(static_cast<unsigned char>(text[pos])))
            ref.column.push_back(text[pos++]);
        if (ref.column.empty()) fail("cell reference needs column letters A-Z");
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
            ref.wildcard = true;
        } else if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ref.wildcard = false;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                ref.row = ref.row * 10 + (text[pos++] - '0');
        } else {
            fail("cell reference needs '*' or a row number");
        }
        return ref;
    }

    void expect(char c, const std::string& what) {
        if (peek() != c) fail("expected '" + std::string(1, c) + "' " + what);
        ++pos;
    }
};

std::string coercionIri(const std::string& name, RuleLexer& lx) {
    if (name == "xsd:dateTime") return xsd::dateTime_;
    if (name == "xsd:decimal") return xsd::decimal_;
    if (name == "xsd:boolean") return xsd::boolean_;
    (void)lx;
    throw Error("unsupported-coercion", "datatype '" + name + "' is not supported");
}

} // namespace

MappingRule parseMappingRule(std::string_view text) {
    RuleLexer lx{text};
    MappingRule rule;

    if (lx.word() != "Individual:") lx.fail("rule must start with 'Individual:'");
    rule.subject.cell = lx.cellRef();
    if (!rule.subject.cell.wildcard) lx.fail("subject cell reference must use the row wildcard '*'");
    if (lx.peek() == '(') {
        ++lx.pos;
        rule.subject.iriFunction = lx.word();
        if (lx.peek() != ')') {
            std::string kw = lx.word();
            if (kw != "rdfs:label") lx.fail("expected 'rdfs:label' annotation, got '" + kw + "'");
            lx.expect('=', "after rdfs:label");
            lx.expect('(', "to open the label template");
            while (true) {
                char c = lx.peek();
                if (c == '"')
                    rule.subject.labelTemplate.emplace_back(lx.quoted('"'));
                else if (c == '@')
                    rule.subject.labelTemplate.emplace_back(lx.cellRef());
                else
                    lx.fail("label template expects a string or cell reference");
                if (lx.peek() == ',') { ++lx.pos; continue; }
                break;
            }
            lx.expect(')', "to close the label template");
        }
        lx.expect(')', "to close the subject spec");
    }

    std::string kw = lx.word();
    if (kw == "Facts:") lx.fail("'Types:' must come before 'Facts:'");
    if (kw != "Types:") lx.fail("expected 'Types:', got '" + kw + "'");
    while (true) {
        char c = lx.peek();
        std::string name;
        if (c == '\'') name = lx.quoted('\'');
        else name = lx.word();
        if (name == "Facts:") break;
        rule.types.push_back(name);
        if (lx.peek() == ',') ++lx.pos;
    }
    if (rule.types.empty()) lx.fail("at least one type is required");

    while (true) {
        FactSpec fact;
        char c = lx.peek();
        if (c == '\'') {
            fact.propertyName = lx.quoted('\'');
            fact.quoted = true;
        } else {
            fact.propertyName = lx.word();
        }
        fact.cell = lx.cellRef();
        if (lx.peek() == '(') {
            ++lx.pos;
            fact.coercion = coercionIri(lx.word(), lx);
            lx.expect(')', "to close the datatype coercion");
        }
        rule.facts.push_back(std::move(fact));
        if (lx.peek() == ',') { ++lx.pos; continue; }
        break;
    }
    if (!lx.atEnd()) lx.fail("trailing content after the fact list");
    return rule;
}

// ---- case tables ---------------------------------------------------------

CaseTable CaseTable::fromCsv(std::string_view text) {
    CaseTable table;
    std::vector<std::string> row;
    std::string cell;
    bool inQuotes = false;
    std::size_t maxWidth = 0;

    auto endCell = [&] {
        row.push_back(cell);
        cell.clear();
    };
    auto endRow = [&] {
        endCell();
        bool allEmpty = std::all_of(row.begin(), row.end(),
                                    [](const std::string& s) { return s.empty(); });
        if (!allEmpty) {
            maxWidth = std::max(maxWidth, row.size());
            table.rows.push_back(row);
        }
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (inQuotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    inQuotes = false;
                }
            } else {
                cell.push_back(c);
            }
        } else if (c == '"') {
            inQuotes = true;
        } else if (c == ',') {
            endCell();
        } else if (c == '\n') {
            if (!cell.empty() && cell.back() == '\r') cell.pop_back();
            endRow();
        } else {
            cell.push_back(c);
        }
    }
    if (!cell.empty() || !row.empty()) endRow();

    for (auto& r : table.rows) r.resize(maxWidth);
    if (!table.rows.empty() && !table.rows[0].empty() && table.rows[0][0] == "Case") {
        table.header = table.rows[0];
        table.rows.erase(table.rows.begin());
    }
    return table;
}

std::size_t CaseTable::columnIndex(const std::string& letters) {
    std::size_t idx = 0;
    for (char c : letters) idx = idx * 26 + (c - 'A' + 1);
    return idx - 1;
}

const std::string& CaseTable::cell(std::size_t row, const std::string& letters) const {
    static const std::string empty;
    std::size_t col = columnIndex(letters);
    if (row >= rows.size() || col >= rows[row].size()) return empty;
    return rows[row][col];
}

// ---- reports -------------------------------------------------------------

std::string IngestReport::summary() const {
    std::ostringstream out;
    out << "rows processed:      " << rowsProcessed << "\n"
        << "rows skipped:        " << rowsSkipped << "\n"
        << "individuals created: " << individualsCreated << "\n"
        << "facts emitted:       " << factsEmitted << "\n"
        << "facts skipped:       " << factsSkipped << "\n"
        << "triples added:       " << triplesAdded << "\n";
    return out.str();
}

std::string IngestReport::logLines() const {
    std::ostringstream out;
    for (const SkipEntry& e : skips)
        out << "skip\trow=" << e.row << "\tcol=" << e.column << "\t" << e.reason << "\n";
    return out.str();
}

// ---- ingestion helpers ---------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

bool allDigits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c);
    });
}

bool isNumeric(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool digit = false, dot = false;
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) digit = true;
        else if (s[i] == '.' && !dot) dot = true;
        else return false;
    }
    return digit;
}

std::string slugify(const std::string& s) {
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.') out.push_back(static_cast<char>(c));
        else if (c == ' ') out.push_back('_');
        else {
            char buf[4];
            std::snprintf(buf, sizeof buf, "%%%02X", c);
            out += buf;
        }
    }
    return out;
}

Term namedIndividualFor(const std::string& text, const std::string& rangeClass, Graph& g,
                        std::size_t* triplesAdded) {
    Term ind = Term::iri(ns::codo + slugify(text));
    if (!rangeClass.empty() && rangeClass.compare(0, ns::xsd.size(), ns::xsd) != 0)
        if (g.insert(Triple{ind, Term::iri(voc::rdfType), Term::iri(rangeClass)}) && triplesAdded)
            ++*triplesAdded;
    if (g.match(ind, Term::iri(voc::rdfsLabel), std::nullopt).empty())
        if (g.insert(Triple{ind, Term::iri(voc::rdfsLabel), Term::literal(text)}) && triplesAdded)
            ++*triplesAdded;
    return ind;
}

std::string rangeOf(const Graph& g, const std::string& property) {
    for (const Triple& t : g.match(Term::iri(property), Term::iri(voc::rdfsRange), std::nullopt))
        if (t.o.isIri()) return t.o.value;
    return "";
}

Term individualIriFromCell(const std::string& cellText, const IngestConfig& config) {
    std::string text = trim(cellText);
    if (text.empty()) throw Error("empty-cell", "empty subject cell");
    if (config.naming == IngestConfig::Naming::Padded && allDigits(text)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "p%06llu",
                      static_cast<unsigned long long>(std::stoull(text)));
        return Term::iri(ns::codo + buf);
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(text)));
    return Term::iri(ns::codo + buf);
}

Term resolvePropertyName(const FactSpec& fact, const Graph& g) {
    if (fact.quoted) return resolveByLabel(fact.propertyName, g);
    if (fact.propertyName.find(':') != std::string::npos)
        return Term::iri(g.prefixes().expand(fact.propertyName));
    return resolveByLabel(fact.propertyName, g);
}

const std::map<std::string, const std::string*>& relationKeywords() {
    static const std::map<std::string, const std::string*> m = {
        {"spouse", &voc::hasSpouse},       {"wife", &voc::hasSpouse},
        {"husband", &voc::hasSpouse},      {"daughter", &voc::hasDaughter},
        {"son", &voc::hasSon},             {"child", &voc::hasChild},
        {"mother", &voc::hasParent},       {"father", &voc::hasParent},
        {"parent", &voc::hasParent},       {"co-worker", &voc::hasCoWorker},
        {"coworker", &voc::hasCoWorker},   {"colleague", &voc::hasCoWorker},
        {"roommate", &voc::hasRoommate},   {"room-mate", &voc::hasRoommate},
        {"aunt", &voc::hasAuntOrUncle},    {"uncle", &voc::hasAuntOrUncle},
        {"niece", &voc::hasNieceOrNephew}, {"nephew", &voc::hasNieceOrNephew},
        {"relative", &voc::hasRelationship}, {"contact", &voc::hasRelationship},
        {"friend", &voc::hasRelationship},   {"neighbour", &voc::hasRelationship},
        {"neighbor", &voc::hasRelationship},
    };
    return m;
}

} // namespace

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

Term makeIndividualIri(const SubjectSpec& spec, const CaseTable& table, std::size_t row,
                       const IngestConfig& config) {
    return individualIriFromCell(table.cell(row, spec.cell.column), config);
}

ReasonParse normalizeReasonCell(const std::string& text) {
    ReasonParse parse;
    parse.text = trim(text);
    std::string low = lower(parse.text);
    if (low.compare(0, 5, "from ") == 0) {
        parse.kind = ReasonParse::Kind::Travel;
        std::string path = trim(parse.text.substr(5));
        std::size_t start = 0;
        while (start <= path.size()) {
            std::size_t slash = path.find('/', start);
            std::string seg = trim(path.substr(start, slash == std::string::npos
                                                          ? std::string::npos
                                                          : slash - start));
            if (!seg.empty()) parse.places.push_back(seg);
            if (slash == std::string::npos) break;
            start = slash + 1;
        }
        if (parse.places.empty()) parse.kind = ReasonParse::Kind::Opaque;
        return parse;
    }
    auto it = relationKeywords().find(low);
    if (it != relationKeywords().end()) {
        parse.kind = ReasonParse::Kind::Relationship;
        parse.relationProperty = *it->second;
    }
    return parse;
}

IngestReport applyMapping(const MappingRule& rule, const CaseTable& table, Graph& g,
                          const IngestConfig& config) {
    IngestReport report;

    // all-or-nothing name resolution before any row runs
    std::vector<Term> typeTerms;
    for (const std::string& name : rule.types) {
        if (name.find(':') != std::string::npos)
            typeTerms.push_back(Term::iri(g.prefixes().expand(name)));
        else
            typeTerms.push_back(resolveByLabel(name, g));
    }
    std::vector<Term> factProps;
    for (const FactSpec& f : rule.facts) factProps.push_back(resolvePropertyName(f, g));

    auto addTriple = [&](Triple t) {
        if (g.insert(std::move(t))) ++report.triplesAdded;
    };
    auto skip = [&](std::size_t row, const std::string& col, const std::string& reason) {
        ++report.factsSkipped;
        report.skips.push_back(SkipEntry{row + 1, col, reason});
    };

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        std::string subjectCell = trim(table.cell(r, rule.subject.cell.column));
        if (subjectCell.empty()) {
            ++report.rowsProcessed;
            ++report.rowsSkipped;
            report.skips.push_back(SkipEntry{r + 1, rule.subject.cell.column, "empty subject cell, row skipped"});
            continue;
        }
        ++report.rowsProcessed;
        Term subject = individualIriFromCell(subjectCell, config);
        ++report.individualsCreated;

        for (const Term& type : typeTerms)
            addTriple(Triple{subject, Term::iri(voc::rdfType), type});
        if (!rule.subject.labelTemplate.empty()) {
            std::string label;
            for (const LabelPart& part : rule.subject.labelTemplate) {
                if (!label.empty()) label += " ";
                if (std::holds_alternative<std::string>(part))
                    label += std::get<std::string>(part);
                else
                    label += trim(table.cell(r, std::get<CellRef>(part).column));
            }
            addTriple(Triple{subject, Term::iri(voc::rdfsLabel), Term::literal(label)});
        }

        for (std::size_t f = 0; f < rule.facts.size(); ++f) {
            const FactSpec& fact = rule.facts[f];
            const Term& prop = factProps[f];
            std::string cell = trim(table.cell(r, fact.cell.column));
            if (cell.empty()) {
                skip(r, fact.cell.column, "missing value");
                continue;
            }
            if (config.sentinelFilter) {
                if (fact.coercion == xsd::decimal_ && cell == "0") {
                    skip(r, fact.cell.column, "sentinel zero");
                    continue;
                }
                if (fact.coercion == xsd::dateTime_ && cell.compare(0, 10, "1900-01-01") == 0) {
                    skip(r, fact.cell.column, "sentinel date 1900-01-01");
                    continue;
                }
            }

            if (fact.coercion == xsd::dateTime_) {
                try {
                    addTriple(Triple{subject, prop, Term::literal(cell, xsd::dateTime_)});
                    ++report.factsEmitted;
                } catch (const Error&) {
                    skip(r, fact.cell.column, "not a dateTime: '" + cell + "'");
                }
            } else if (fact.coercion == xsd::decimal_) {
                if (!isNumeric(cell)) {
                    skip(r, fact.cell.column, "not a decimal: '" + cell + "'");
                    continue;
                }
                addTriple(Triple{subject, prop, Term::literal(cell, xsd::decimal_)});
                ++report.factsEmitted;
            } else if (fact.coercion == xsd::boolean_) {
                if (cell == "true" || cell == "false") {
                    addTriple(Triple{subject, prop, Term::literal(cell, xsd::boolean_)});
                } else if (isNumeric(cell)) {
                    double n = std::stod(cell);
                    addTriple(Triple{subject, prop, Term::boolean(n > 0)});
                    // keep the raw secondary-infection count alongside the flag
                    if (prop.value == voc::hasCausedSecondaryInfections)
                        addTriple(Triple{subject, Term::iri(voc::secondaryInfectionCount),
                                         Term::literal(cell, xsd::decimal_)});
                } else {
                    skip(r, fact.cell.column, "not a boolean: '" + cell + "'");
                    continue;
                }
                ++report.factsEmitted;
            } else {
                // object-valued
                if (prop.value == voc::travelledFrom) {
                    ReasonParse parse = normalizeReasonCell(cell);
                    std::string range = rangeOf(g, prop.value);
                    if (parse.kind == ReasonParse::Kind::Travel) {
                        for (const std::string& place : parse.places)
                            addTriple(Triple{subject, prop,
                                             namedIndividualFor(place, range, g, &report.triplesAdded)});
                    } else {
                        addTriple(Triple{subject, prop,
                                         namedIndividualFor(cell, range, g, &report.triplesAdded)});
                    }
                    ++report.factsEmitted;
                } else if (prop.value == voc::hasGender) {
                    std::string low = lower(cell);
                    Term gender = (low == "male" || low == "m")   ? Term::iri(voc::Male)
                                  : (low == "female" || low == "f") ? Term::iri(voc::Female)
                                  : namedIndividualFor(cell, voc::GenderType, g, &report.triplesAdded);
                    addTriple(Triple{subject, prop, gender});
                    ++report.factsEmitted;
                } else {
                    std::string range = rangeOf(g, prop.value);
                    if (range.compare(0, ns::xsd.size(), ns::xsd) == 0) {
                        // datatype-ranged property without an explicit coercion
                        addTriple(Triple{subject, prop,
                                         range == xsd::string_ ? Term::literal(cell)
                                                               : Term::literal(cell, range)});
                    } else {
                        addTriple(Triple{subject, prop,
                                         namedIndividualFor(cell, range, g,
                                                            &report.triplesAdded)});
                    }
                    ++report.factsEmitted;
                }
            }
        }
    }
    return report;
}

LinkReport linkRelationships(const CaseTable& table, Graph& g, const IngestConfig& config) {
    LinkReport report;
    std::string caseCol = "A", reasonCol = "H", parentCol = "K";
    if (!table.header.empty()) {
        for (std::size_t i = 0; i < table.header.size(); ++i) {
            std::string colLetters;
            for (std::size_t v = i + 1; v > 0; v = (v - 1) / 26)
                colLetters.insert(colLetters.begin(), static_cast<char>('A' + (v - 1) % 26));
            if (table.header[i] == "Case") caseCol = colLetters;
            if (table.header[i] == "Reason") reasonCol = colLetters;
            if (table.header[i] == "P") parentCol = colLetters;
        }
    }

    std::set<std::string> knownCases;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        std::string c = trim(table.cell(r, caseCol));
        if (!c.empty()) knownCases.insert(c);
    }

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        std::string subjectCell = trim(table.cell(r, caseCol));
        if (subjectCell.empty()) continue;
        Term subject = individualIriFromCell(subjectCell, config);

        ReasonParse parse = normalizeReasonCell(table.cell(r, reasonCol));
        switch (parse.kind) {
            case ReasonParse::Kind::Relationship: {
                std::string pCell = trim(table.cell(r, parentCol));
                if (!allDigits(pCell)) break;
                long n = std::stol(pCell);
                if (n <= 0) break; // zero sentinel: no parent case
                std::string ref = std::to_string(n);
                if (!knownCases.count(ref)) {
                    report.log.push_back("row " + std::to_string(r + 1) +
                                         ": dangling case reference " + ref);
                    break;
                }
                Term parent = individualIriFromCell(ref, config);
                if (g.insert(Triple{parent, Term::iri(parse.relationProperty), subject}))
                    ++report.triplesAdded;
                break;
            }
            case ReasonParse::Kind::Travel: {
                std::string range = rangeOf(g, voc::travelledFrom);
                for (const std::string& place : parse.places)
                    if (g.insert(Triple{subject, Term::iri(voc::travelledFrom),
                                        namedIndividualFor(place, range, g, nullptr)}))
                        ++report.triplesAdded;
                break;
            }
            case ReasonParse::Kind::Opaque: {
                if (parse.text.empty()) break;
                if (g.insert(Triple{subject, Term::iri(voc::suspectedReasonOfInfection),
                                    Term::literal(parse.text)}))
                    ++report.triplesAdded;
                break;
            }
        }
    }
    return report;
}

} // namespace codo
