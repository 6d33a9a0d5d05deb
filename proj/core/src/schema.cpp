#include "codo/schema.hpp"

#include <algorithm>

#include "codo/error.hpp"

namespace codo {

void SchemaAxioms::addInverse(const std::string& a, const std::string& b) {
    inverseOf.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
}

namespace {

std::set<std::string> reach(const std::set<std::pair<std::string, std::string>>& edges,
                            const std::string& start, bool forward) {
    std::set<std::string> seen;
    std::vector<std::string> stack{start};
    while (!stack.empty()) {
        std::string cur = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : edges) {
            const std::string& from = forward ? a : b;
            const std::string& to = forward ? b : a;
            if (from == cur && seen.insert(to).second) stack.push_back(to);
        }
    }
    return seen;
}

} // namespace

std::set<std::string> SchemaAxioms::superPropertiesOf(const std::string& prop) const {
    auto s = reach(subPropertyOf, prop, true);
    s.erase(prop);
    return s;
}

std::set<std::string> SchemaAxioms::subPropertiesOf(const std::string& prop) const {
    auto s = reach(subPropertyOf, prop, false);
    s.insert(prop);
    return s;
}

std::set<std::string> SchemaAxioms::superClassesOf(const std::string& cls) const {
    auto s = reach(subClassOf, cls, true);
    s.erase(cls);
    return s;
}

bool SchemaAxioms::sameAxioms(const SchemaAxioms& o) const {
    return subClassOf == o.subClassOf && subPropertyOf == o.subPropertyOf &&
           inverseOf == o.inverseOf && transitiveProps == o.transitiveProps &&
           symmetricProps == o.symmetricProps && domains == o.domains && ranges == o.ranges &&
           definedClasses == o.definedClasses;
}

std::size_t SchemaAxioms::axiomCount() const {
    return subClassOf.size() + subPropertyOf.size() + inverseOf.size() + transitiveProps.size() +
           symmetricProps.size() + domains.size() + ranges.size() + definedClasses.size();
}

// ---- vocabulary construction --------------------------------------------

namespace {

class Builder {
public:
    Graph g;
    SchemaAxioms ax;

    Term iri(const std::string& s) { return Term::iri(s); }

    void add(const std::string& s, const std::string& p, const Term& o) {
        g.insert(Triple{Term::iri(s), Term::iri(p), o});
    }
    void label(const std::string& s, const std::string& text) {
        add(s, voc::rdfsLabel, Term::literal(text));
    }
    void cls(const std::string& c, const std::string& lbl) {
        add(c, voc::rdfType, iri(voc::owlClass));
        if (!lbl.empty()) label(c, lbl);
    }
    void subClass(const std::string& sub, const std::string& super) {
        add(sub, voc::rdfsSubClassOf, iri(super));
        ax.subClassOf.emplace(sub, super);
    }
    void objProp(const std::string& p, const std::string& lbl) {
        add(p, voc::rdfType, iri(voc::owlObjectProperty));
        label(p, lbl);
    }
    void dataProp(const std::string& p, const std::string& lbl, const std::string& range) {
        add(p, voc::rdfType, iri(voc::owlDatatypeProperty));
        label(p, lbl);
        add(p, voc::rdfsRange, iri(range));
        ax.ranges[p] = range;
    }
    void subProp(const std::string& sub, const std::string& super) {
        add(sub, voc::rdfsSubPropertyOf, iri(super));
        ax.subPropertyOf.emplace(sub, super);
    }
    void inverse(const std::string& a, const std::string& b) {
        add(a, voc::owlInverseOf, iri(b));
        ax.addInverse(a, b);
    }
    void symmetric(const std::string& p) {
        add(p, voc::rdfType, iri(voc::owlSymmetricProperty));
        ax.symmetricProps.insert(p);
    }
    void domainRange(const std::string& p, const std::string& d, const std::string& r) {
        add(p, voc::rdfsDomain, iri(d));
        add(p, voc::rdfsRange, iri(r));
        ax.domains[p] = d;
        ax.ranges[p] = r;
    }
    void individual(const std::string& i, const std::string& type, const std::string& lbl) {
        add(i, voc::rdfType, iri(type));
        label(i, lbl);
    }

    Term freshBlank() { return Term::blank("v" + std::to_string(blank_++)); }

    void defined(const DefinedClass& d) {
        Term equiv = freshBlank();
        g.insert(Triple{Term::iri(d.cls), Term::iri(voc::owlEquivalentClass), equiv});
        g.insert(Triple{equiv, Term::iri(voc::rdfType), iri(voc::owlClass)});
        Term node = freshBlank();
        g.insert(Triple{equiv, Term::iri(voc::owlIntersectionOf), node});
        for (std::size_t i = 0; i < d.conjuncts.size(); ++i) {
            const Conjunct& c = d.conjuncts[i];
            Term elem;
            if (c.kind == Conjunct::Kind::NamedClass) {
                elem = iri(c.cls);
            } else {
                elem = freshBlank();
                g.insert(Triple{elem, Term::iri(voc::rdfType), iri(voc::owlRestriction)});
                g.insert(Triple{elem, Term::iri(voc::owlOnProperty), iri(c.property)});
                if (c.kind == Conjunct::Kind::SomeValuesFrom)
                    g.insert(Triple{elem, Term::iri(voc::owlSomeValuesFrom), iri(c.cls)});
                else
                    g.insert(Triple{elem, Term::iri(voc::owlHasValue), c.value});
            }
            g.insert(Triple{node, Term::iri(voc::rdfFirst), elem});
            Term next = (i + 1 == d.conjuncts.size()) ? iri(voc::rdfNil) : freshBlank();
            g.insert(Triple{node, Term::iri(voc::rdfRest), next});
            node = next;
        }
        ax.definedClasses.push_back(d);
    }

private:
    std::size_t blank_ = 0;
};

} // namespace

std::pair<Graph, SchemaAxioms> buildCodoVocabulary() {
    Builder b;

    // class tree
    b.cls(voc::Person, "Person");
    b.cls(voc::Organization, "Organization");
    b.cls(voc::SchemaPatient, "Patient (schema.org)");
    b.cls(voc::GenderType, "Gender type");
    b.cls(voc::Patient, "Patient");
    b.cls(voc::CovidDedicatedFacility, "Covid dedicated facility");
    b.cls(voc::CovidCareCentre, "Covid care centre");
    b.cls(voc::DedicatedCovidHealthCentre, "Dedicated covid health centre");
    b.cls(voc::DedicatedCovidHospital, "Dedicated covid hospital");
    b.cls(voc::Disease, "Disease");
    b.cls(voc::MildOrVeryMildCovid19, "Mild or very mild covid-19");
    b.cls(voc::ModerateCovid19, "Moderate covid-19");
    b.cls(voc::SevereCovid19, "Severe covid-19");
    b.cls(voc::Diagnosis, "Diagnosis");
    b.cls(voc::Covid19Diagnosis, "COVID-19 diagnosis");
    b.cls(voc::Symptom, "Symptom");
    b.cls(voc::Place, "Place");
    b.cls(voc::City, "City");
    b.cls(voc::State, "State");
    b.cls(voc::Country, "Country");
    b.cls(voc::StatusValue, "Status value");
    b.cls(voc::DiagnosedWithCovid, "Diagnosed with covid");
    b.cls(voc::UrgentlyNeedsCovidTest, "Urgently needs covid test");

    b.subClass(voc::Patient, voc::Person);
    b.subClass(voc::Patient, voc::SchemaPatient);
    b.subClass(voc::SchemaPatient, voc::Person);
    b.subClass(voc::CovidDedicatedFacility, voc::Organization);
    b.subClass(voc::CovidCareCentre, voc::CovidDedicatedFacility);
    b.subClass(voc::DedicatedCovidHealthCentre, voc::CovidDedicatedFacility);
    b.subClass(voc::DedicatedCovidHospital, voc::CovidDedicatedFacility);
    b.subClass(voc::MildOrVeryMildCovid19, voc::Disease);
    b.subClass(voc::ModerateCovid19, voc::Disease);
    b.subClass(voc::SevereCovid19, voc::Disease);
    b.subClass(voc::Covid19Diagnosis, voc::Diagnosis);
    b.subClass(voc::City, voc::Place);
    b.subClass(voc::State, voc::Place);
    b.subClass(voc::Country, voc::Place);

    // relationship property tree; close vs non-close split follows the
    // prose: parents/children/co-workers/roommates are close contacts,
    // aunts/uncles and nieces/nephews are not
    b.objProp(voc::hasRelationship, "has relationship");
    b.objProp(voc::hasCloseRelationship, "has close relationship");
    b.objProp(voc::hasChild, "has child");
    b.objProp(voc::hasDaughter, "has daughter");
    b.objProp(voc::hasSon, "has son");
    b.objProp(voc::hasSpouse, "has spouse");
    b.objProp(voc::hasCoWorker, "has co-worker");
    b.objProp(voc::hasRoommate, "has roommate");
    b.objProp(voc::hasParent, "has parent");
    b.objProp(voc::hasAuntOrUncle, "has aunt or uncle");
    b.objProp(voc::hasNieceOrNephew, "has niece or nephew");

    b.subProp(voc::hasCloseRelationship, voc::hasRelationship);
    b.subProp(voc::hasChild, voc::hasCloseRelationship);
    b.subProp(voc::hasDaughter, voc::hasChild);
    b.subProp(voc::hasSon, voc::hasChild);
    b.subProp(voc::hasSpouse, voc::hasCloseRelationship);
    b.subProp(voc::hasCoWorker, voc::hasCloseRelationship);
    b.subProp(voc::hasRoommate, voc::hasCloseRelationship);
    b.subProp(voc::hasParent, voc::hasCloseRelationship);
    b.subProp(voc::hasAuntOrUncle, voc::hasRelationship);
    b.subProp(voc::hasNieceOrNephew, voc::hasRelationship);

    b.inverse(voc::hasChild, voc::hasParent);
    b.inverse(voc::hasNieceOrNephew, voc::hasAuntOrUncle);

    b.symmetric(voc::hasRelationship);
    b.symmetric(voc::hasSpouse);
    b.symmetric(voc::hasCoWorker);
    b.symmetric(voc::hasRoommate);

    b.domainRange(voc::hasRelationship, voc::Person, voc::Person);

    // other object properties
    b.objProp(voc::hasGender, "has gender");
    b.domainRange(voc::hasGender, voc::Person, voc::GenderType);
    b.objProp(voc::city, "city");
    b.domainRange(voc::city, voc::Person, voc::City);
    b.objProp(voc::state, "state");
    b.domainRange(voc::state, voc::Person, voc::State);
    b.objProp(voc::travelledFrom, "travelled from");
    b.domainRange(voc::travelledFrom, voc::Person, voc::Place);
    b.objProp(voc::hasDiagnosis, "has diagnosis");
    b.domainRange(voc::hasDiagnosis, voc::Person, voc::Diagnosis);
    b.objProp(voc::hasSymptom, "has symptom");
    b.domainRange(voc::hasSymptom, voc::Person, voc::Symptom);
    b.objProp(voc::status, "status");
    b.domainRange(voc::status, voc::Person, voc::StatusValue);

    // data properties
    b.dataProp(voc::diagnosedOn, "diagnosed on", xsd::dateTime_);
    b.dataProp(voc::age, "age", xsd::decimal_);
    b.dataProp(voc::hadCovidTest, "had covid test", xsd::boolean_);
    b.dataProp(voc::hasCausedSecondaryInfections, "has caused any secondary infections",
               xsd::boolean_);
    b.dataProp(voc::nationality, "nationality", xsd::string_);
    b.dataProp(voc::suspectedReasonOfInfection, "suspected reason of infection", xsd::string_);
    b.dataProp(voc::secondaryInfectionCount, "secondary infection count", xsd::decimal_);

    // individuals
    b.individual(voc::Recovered, voc::StatusValue, "Recovered");
    b.individual(voc::Deceased, voc::StatusValue, "Deceased");
    b.individual(voc::Hospitalized, voc::StatusValue, "Hospitalized");
    b.individual(voc::Male, voc::GenderType, "Male");
    b.individual(voc::Female, voc::GenderType, "Female");

    // defined classes
    b.defined(DefinedClass{
        voc::DiagnosedWithCovid,
        {Conjunct{Conjunct::Kind::NamedClass, voc::Person, "", {}},
         Conjunct{Conjunct::Kind::SomeValuesFrom, voc::Covid19Diagnosis, voc::hasDiagnosis, {}}}});
    b.defined(DefinedClass{
        voc::UrgentlyNeedsCovidTest,
        {Conjunct{Conjunct::Kind::NamedClass, voc::Person, "", {}},
         Conjunct{Conjunct::Kind::SomeValuesFrom, voc::DiagnosedWithCovid,
                  voc::hasCloseRelationship, {}},
         Conjunct{Conjunct::Kind::HasValue, "", voc::hadCovidTest, Term::boolean(false)}}});

    std::sort(b.ax.definedClasses.begin(), b.ax.definedClasses.end(),
              [](const DefinedClass& a, const DefinedClass& c) { return a.cls < c.cls; });
    return {std::move(b.g), std::move(b.ax)};
}

// ---- extraction ----------------------------------------------------------

namespace {

void checkAcyclic(const std::set<std::pair<std::string, std::string>>& edges,
                  const std::string& what) {
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [a, b] : edges)
        if (a != b) adj[a].push_back(b); // reflexive edges are fine
    std::map<std::string, int> color; // 0 new, 1 on stack, 2 done
    std::vector<std::string> path;
    std::function<void(const std::string&)> dfs = [&](const std::string& n) {
        color[n] = 1;
        path.push_back(n);
        for (const auto& m : adj[n]) {
            if (color[m] == 1) {
                std::string cycle;
                auto it = std::find(path.begin(), path.end(), m);
                for (; it != path.end(); ++it) cycle += *it + " -> ";
                throw Error("cycle", what + " cycle: " + cycle + m);
            }
            if (color[m] == 0) dfs(m);
        }
        color[n] = 2;
        path.pop_back();
    };
    for (const auto& [a, b] : edges) {
        (void)b;
        if (color[a] == 0) dfs(a);
    }
}

std::optional<Term> single(const Graph& g, const Term& s, const std::string& p) {
    auto hits = g.match(s, Term::iri(p), std::nullopt);
    if (hits.size() != 1) return std::nullopt;
    return hits[0].o;
}

} // namespace

SchemaAxioms extractSchema(const Graph& g) {
    SchemaAxioms ax;
    auto P = [](const std::string& s) { return std::optional<Term>(Term::iri(s)); };

    for (const Triple& t : g.match(std::nullopt, P(voc::rdfsSubClassOf), std::nullopt)) {
        if (t.s.isIri() && t.o.isIri())
            ax.subClassOf.emplace(t.s.value, t.o.value);
        else
            ax.unrecognized.push_back("subClassOf with non-IRI operand on " + t.s.value);
    }
    for (const Triple& t : g.match(std::nullopt, P(voc::rdfsSubPropertyOf), std::nullopt)) {
        if (t.s.isIri() && t.o.isIri())
            ax.subPropertyOf.emplace(t.s.value, t.o.value);
        else
            ax.unrecognized.push_back("subPropertyOf with non-IRI operand");
    }
    for (const Triple& t : g.match(std::nullopt, P(voc::owlInverseOf), std::nullopt)) {
        if (t.s.isIri() && t.o.isIri())
            ax.addInverse(t.s.value, t.o.value);
        else
            ax.unrecognized.push_back("inverseOf with non-IRI operand");
    }
    for (const Triple& t : g.match(std::nullopt, P(voc::rdfType), P(voc::owlTransitiveProperty)))
        ax.transitiveProps.insert(t.s.value);
    for (const Triple& t : g.match(std::nullopt, P(voc::rdfType), P(voc::owlSymmetricProperty)))
        ax.symmetricProps.insert(t.s.value);
    for (const Triple& t : g.match(std::nullopt, P(voc::rdfsDomain), std::nullopt)) {
        if (t.s.isIri() && t.o.isIri())
            ax.domains[t.s.value] = t.o.value;
        else
            ax.unrecognized.push_back("domain with non-IRI operand");
    }
    for (const Triple& t : g.match(std::nullopt, P(voc::rdfsRange), std::nullopt)) {
        if (t.s.isIri() && t.o.isIri())
            ax.ranges[t.s.value] = t.o.value;
        else
            ax.unrecognized.push_back("range with non-IRI operand");
    }

    for (const Triple& t : g.match(std::nullopt, P(voc::owlEquivalentClass), std::nullopt)) {
        if (!t.s.isIri() || !t.o.isBlank()) {
            ax.unrecognized.push_back("equivalentClass without intersection on " + t.s.value);
            continue;
        }
        auto listHead = single(g, t.o, voc::owlIntersectionOf);
        if (!listHead) {
            ax.unrecognized.push_back("equivalentClass without intersectionOf on " + t.s.value);
            continue;
        }
        DefinedClass d{t.s.value, {}};
        bool ok = true;
        Term node = *listHead;
        while (!(node.isIri() && node.value == voc::rdfNil)) {
            auto first = single(g, node, voc::rdfFirst);
            auto rest = single(g, node, voc::rdfRest);
            if (!first || !rest) { ok = false; break; }
            if (first->isIri()) {
                d.conjuncts.push_back(Conjunct{Conjunct::Kind::NamedClass, first->value, "", {}});
            } else if (first->isBlank()) {
                auto prop = single(g, *first, voc::owlOnProperty);
                auto some = single(g, *first, voc::owlSomeValuesFrom);
                auto hasv = single(g, *first, voc::owlHasValue);
                if (prop && prop->isIri() && some && some->isIri()) {
                    d.conjuncts.push_back(
                        Conjunct{Conjunct::Kind::SomeValuesFrom, some->value, prop->value, {}});
                } else if (prop && prop->isIri() && hasv && hasv->isLiteral()) {
                    d.conjuncts.push_back(
                        Conjunct{Conjunct::Kind::HasValue, "", prop->value, *hasv});
                } else {
                    ok = false;
                    break;
                }
            } else {
                ok = false;
                break;
            }
            node = *rest;
        }
        if (ok && !d.conjuncts.empty())
            ax.definedClasses.push_back(std::move(d));
        else
            ax.unrecognized.push_back("unreadable intersection for " + t.s.value);
    }
    std::sort(ax.definedClasses.begin(), ax.definedClasses.end(),
              [](const DefinedClass& a, const DefinedClass& b) { return a.cls < b.cls; });

    checkAcyclic(ax.subClassOf, "subClassOf");
    checkAcyclic(ax.subPropertyOf, "subPropertyOf");
    return ax;
}

Term resolveByLabel(const std::string& label, const Graph& g) {
    auto hits = g.match(std::nullopt, Term::iri(voc::rdfsLabel), Term::literal(label));
    std::set<Term> subjects;
    for (const Triple& t : hits) subjects.insert(t.s);
    if (subjects.empty()) throw Error("unknown-label", "no entity labeled '" + label + "'");
    if (subjects.size() > 1) {
        std::string msg = "label '" + label + "' is ambiguous:";
        for (const Term& s : subjects) msg += " " + s.value;
        throw Error("ambiguous-label", msg);
    }
    return *subjects.begin();
}

} // namespace codo
