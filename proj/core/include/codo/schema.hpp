#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "codo/graph.hpp"

namespace codo {

// Well-known CODO / reused vocabulary IRIs.
namespace voc {
// classes
inline const std::string Person = ns::foaf + "Person";
inline const std::string Organization = ns::foaf + "Organization";
inline const std::string SchemaPatient = ns::schema + "Patient";
inline const std::string GenderType = ns::schema + "GenderType";
inline const std::string Male = ns::schema + "Male";
inline const std::string Female = ns::schema + "Female";
inline const std::string Patient = ns::codo + "Patient";
inline const std::string CovidDedicatedFacility = ns::codo + "CovidDedicatedFacility";
inline const std::string CovidCareCentre = ns::codo + "CovidCareCentre";
inline const std::string DedicatedCovidHealthCentre = ns::codo + "DedicatedCovidHealthCentre";
inline const std::string DedicatedCovidHospital = ns::codo + "DedicatedCovidHospital";
inline const std::string Disease = ns::codo + "Disease";
inline const std::string MildOrVeryMildCovid19 = ns::codo + "MildOrVeryMildCovid19";
inline const std::string ModerateCovid19 = ns::codo + "ModerateCovid19";
inline const std::string SevereCovid19 = ns::codo + "SevereCovid19";
inline const std::string Diagnosis = ns::codo + "Diagnosis";
inline const std::string Covid19Diagnosis = ns::codo + "COVID-19Diagnosis";
inline const std::string Symptom = ns::codo + "Symptom";
inline const std::string Place = ns::codo + "Place";
inline const std::string City = ns::codo + "City";
inline const std::string State = ns::codo + "State";
inline const std::string Country = ns::codo + "Country";
inline const std::string StatusValue = ns::codo + "StatusValue";
inline const std::string DiagnosedWithCovid = ns::codo + "DiagnosedWithCovid";
inline const std::string UrgentlyNeedsCovidTest = ns::codo + "UrgentlyNeedsCovidTest";
// object properties
inline const std::string hasRelationship = ns::codo + "hasRelationship";
inline const std::string hasCloseRelationship = ns::codo + "hasCloseRelationship";
inline const std::string hasChild = ns::codo + "hasChild";
inline const std::string hasDaughter = ns::codo + "hasDaughter";
inline const std::string hasSon = ns::codo + "hasSon";
inline const std::string hasSpouse = ns::codo + "hasSpouse";
inline const std::string hasCoWorker = ns::codo + "hasCoWorker";
inline const std::string hasRoommate = ns::codo + "hasRoommate";
inline const std::string hasParent = ns::codo + "hasParent";
inline const std::string hasAuntOrUncle = ns::codo + "hasAuntOrUncle";
inline const std::string hasNieceOrNephew = ns::codo + "hasNieceOrNephew";
inline const std::string hasGender = ns::codo + "hasGender";
inline const std::string city = ns::codo + "city";
inline const std::string state = ns::codo + "state";
inline const std::string travelledFrom = ns::codo + "travelledFrom";
inline const std::string hasDiagnosis = ns::codo + "hasDiagnosis";
inline const std::string hasSymptom = ns::codo + "hasSymptom";
inline const std::string status = ns::codo + "status";
// data properties
inline const std::string diagnosedOn = ns::codo + "diagnosedOn";
inline const std::string age = ns::codo + "age";
inline const std::string hadCovidTest = ns::codo + "hadCovidTest";
inline const std::string hasCausedSecondaryInfections = ns::codo + "hasCausedSecondaryInfections";
inline const std::string nationality = ns::codo + "nationality";
inline const std::string suspectedReasonOfInfection = ns::codo + "suspectedReasonOfInfection";
inline const std::string secondaryInfectionCount = ns::codo + "secondaryInfectionCount";
// status individuals
inline const std::string Recovered = ns::codo + "Recovered";
inline const std::string Deceased = ns::codo + "Deceased";
inline const std::string Hospitalized = ns::codo + "Hospitalized";
// rdf/rdfs/owl
inline const std::string rdfType = ns::rdf + "type";
inline const std::string rdfFirst = ns::rdf + "first";
inline const std::string rdfRest = ns::rdf + "rest";
inline const std::string rdfNil = ns::rdf + "nil";
inline const std::string rdfsLabel = ns::rdfs + "label";
inline const std::string rdfsSubClassOf = ns::rdfs + "subClassOf";
inline const std::string rdfsSubPropertyOf = ns::rdfs + "subPropertyOf";
inline const std::string rdfsDomain = ns::rdfs + "domain";
inline const std::string rdfsRange = ns::rdfs + "range";
inline const std::string owlClass = ns::owl + "Class";
inline const std::string owlObjectProperty = ns::owl + "ObjectProperty";
inline const std::string owlDatatypeProperty = ns::owl + "DatatypeProperty";
inline const std::string owlTransitiveProperty = ns::owl + "TransitiveProperty";
inline const std::string owlSymmetricProperty = ns::owl + "SymmetricProperty";
inline const std::string owlNamedIndividual = ns::owl + "NamedIndividual";
inline const std::string owlInverseOf = ns::owl + "inverseOf";
inline const std::string owlEquivalentClass = ns::owl + "equivalentClass";
inline const std::string owlIntersectionOf = ns::owl + "intersectionOf";
inline const std::string owlRestriction = ns::owl + "Restriction";
inline const std::string owlOnProperty = ns::owl + "onProperty";
inline const std::string owlSomeValuesFrom = ns::owl + "someValuesFrom";
inline const std::string owlHasValue = ns::owl + "hasValue";
} // namespace voc

struct Conjunct {
    enum class Kind { NamedClass, SomeValuesFrom, HasValue };
    Kind kind;
    std::string cls;      // NamedClass target / SomeValuesFrom filler
    std::string property; // SomeValuesFrom / HasValue property
    Term value;           // HasValue literal

    auto operator<=>(const Conjunct&) const = default;
};

struct DefinedClass {
    std::string cls;
    std::vector<Conjunct> conjuncts;
    auto operator<=>(const DefinedClass&) const = default;
};

// Structured view of the axioms the reasoner consumes. Inverse pairs are
// stored normalized (lexicographically smaller IRI first).
struct SchemaAxioms {
    std::set<std::pair<std::string, std::string>> subClassOf;    // (sub, super)
    std::set<std::pair<std::string, std::string>> subPropertyOf; // (sub, super)
    std::set<std::pair<std::string, std::string>> inverseOf;
    std::set<std::string> transitiveProps;
    std::set<std::string> symmetricProps;
    std::map<std::string, std::string> domains; // property -> class
    std::map<std::string, std::string> ranges;  // property -> class or datatype
    std::vector<DefinedClass> definedClasses;   // sorted by class IRI
    std::vector<std::string> unrecognized;      // axiom patterns we could not read

    void addInverse(const std::string& a, const std::string& b);

    // reflexive-transitive closures
    std::set<std::string> superPropertiesOf(const std::string& prop) const; // excl. prop
    std::set<std::string> subPropertiesOf(const std::string& prop) const;   // incl. prop
    std::set<std::string> superClassesOf(const std::string& cls) const;     // excl. cls

    bool sameAxioms(const SchemaAxioms& other) const; // ignores `unrecognized`
    std::size_t axiomCount() const;
};

// Constructs the CODO vocabulary as triples plus the structured axiom
// view; extractSchema on the returned graph reproduces the axioms.
std::pair<Graph, SchemaAxioms> buildCodoVocabulary();

// Reads subClassOf / subPropertyOf / inverseOf / Transitive / Symmetric /
// domain / range / equivalentClass-intersection patterns out of a graph.
// Throws Error("cycle") when the subClassOf or subPropertyOf graph is
// cyclic.
SchemaAxioms extractSchema(const Graph& graph);

// Unique entity carrying the given rdfs:label. Throws
// Error("unknown-label") / Error("ambiguous-label").
Term resolveByLabel(const std::string& label, const Graph& graph);

} // namespace codo
