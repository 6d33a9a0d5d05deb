#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "codo/error.hpp"
#include "codo/schema.hpp"
#include "codo/serialization.hpp"

#include "common.hpp"

using namespace codo;

TEST_CASE("vocabulary contains the published hierarchy") {
    auto [g, ax] = buildCodoVocabulary();

    CHECK(ax.subPropertyOf.count({voc::hasDaughter, voc::hasChild}));
    CHECK(ax.subPropertyOf.count({voc::hasChild, voc::hasCloseRelationship}));
    CHECK(ax.subPropertyOf.count({voc::hasCloseRelationship, voc::hasRelationship}));
    CHECK(ax.subClassOf.count({voc::CovidCareCentre, voc::CovidDedicatedFacility}));
    CHECK(ax.subClassOf.count({voc::Patient, voc::Person}));
    CHECK(ax.subClassOf.count({voc::Covid19Diagnosis, voc::Diagnosis}));

    // the sub-property path hasDaughter -> hasChild -> hasCloseRelationship
    // -> hasRelationship exists and has length 3
    auto supers = ax.superPropertiesOf(voc::hasDaughter);
    CHECK(supers == std::set<std::string>{voc::hasChild, voc::hasCloseRelationship,
                                          voc::hasRelationship});

    CHECK(ax.inverseOf.count({voc::hasChild, voc::hasParent}));
    CHECK(ax.symmetricProps.count(voc::hasSpouse));
    CHECK(ax.domains.at(voc::hasRelationship) == voc::Person);
    CHECK(ax.ranges.at(voc::diagnosedOn) == xsd::dateTime_);

    REQUIRE(ax.definedClasses.size() == 2);
    const DefinedClass* urgent = nullptr;
    for (const DefinedClass& d : ax.definedClasses)
        if (d.cls == voc::UrgentlyNeedsCovidTest) urgent = &d;
    REQUIRE(urgent != nullptr);
    CHECK(urgent->conjuncts.size() == 3);
}

TEST_CASE("every IRI used in an axiom is declared in the vocabulary graph") {
    auto [g, ax] = buildCodoVocabulary();
    auto declared = [&](const std::string& iri) {
        return !g.match(Term::iri(iri), Term::iri(voc::rdfType), std::nullopt).empty();
    };
    for (const auto& [a, b] : ax.subClassOf) {
        CHECK(declared(a));
        CHECK(declared(b));
    }
    for (const auto& [a, b] : ax.subPropertyOf) {
        CHECK(declared(a));
        CHECK(declared(b));
    }
    for (const auto& [p, c] : ax.domains) {
        CHECK(declared(p));
        CHECK(declared(c));
    }
}

TEST_CASE("build -> extract round trip is the identity on axioms") {
    auto [g, ax] = buildCodoVocabulary();
    SchemaAxioms extracted = extractSchema(g);
    CHECK(extracted.sameAxioms(ax));
    CHECK(extracted.unrecognized.empty());
}

TEST_CASE("checked-in turtle vocabulary extracts to the built axioms") {
    auto [g, ax] = buildCodoVocabulary();
    Graph loaded;
    parseTurtleSubset(testutil::slurp(testutil::dataPath("codo.ttl")), loaded);
    CHECK(loaded.size() == g.size());
    CHECK(extractSchema(loaded).sameAxioms(ax));
}

TEST_CASE("cyclic hierarchies are rejected") {
    Graph g;
    parseTurtleSubset("codo:A rdfs:subClassOf codo:B . codo:B rdfs:subClassOf codo:A .", g);
    try {
        extractSchema(g);
        FAIL("expected cycle error");
    } catch (const Error& e) {
        CHECK(e.kind() == "cycle");
        CHECK(std::string(e.what()).find("codo#A") != std::string::npos);
    }

    // reflexive edges are tolerated
    Graph r;
    parseTurtleSubset("codo:A rdfs:subClassOf codo:A .", r);
    CHECK_NOTHROW(extractSchema(r));
}

TEST_CASE("hand-written defined class extracts with 2 conjuncts") {
    Graph g;
    parseTurtleSubset(
        "codo:Risky owl:equivalentClass _:e .\n"
        "_:e a owl:Class ; owl:intersectionOf _:l1 .\n"
        "_:l1 rdf:first foaf:Person ; rdf:rest _:l2 .\n"
        "_:l2 rdf:first _:r ; rdf:rest rdf:nil .\n"
        "_:r a owl:Restriction ; owl:onProperty codo:hasDiagnosis ;\n"
        "    owl:someValuesFrom codo:COVID-19Diagnosis .\n",
        g);
    SchemaAxioms ax = extractSchema(g);
    REQUIRE(ax.definedClasses.size() == 1);
    CHECK(ax.definedClasses[0].cls == ns::codo + "Risky");
    REQUIRE(ax.definedClasses[0].conjuncts.size() == 2);
    CHECK(ax.definedClasses[0].conjuncts[0].kind == Conjunct::Kind::NamedClass);
    CHECK(ax.definedClasses[0].conjuncts[1].kind == Conjunct::Kind::SomeValuesFrom);
    CHECK(ax.definedClasses[0].conjuncts[1].property == voc::hasDiagnosis);
}

TEST_CASE("unrecognized axiom patterns are reported, not dropped") {
    Graph g;
    parseTurtleSubset("codo:Odd owl:equivalentClass codo:Other .", g);
    SchemaAxioms ax = extractSchema(g);
    CHECK(ax.definedClasses.empty());
    CHECK(ax.unrecognized.size() == 1);
}

TEST_CASE("resolveByLabel finds mapping-rule names") {
    auto [g, ax] = buildCodoVocabulary();
    CHECK(resolveByLabel("diagnosed on", g) == Term::iri(voc::diagnosedOn));
    CHECK(resolveByLabel("has gender", g) == Term::iri(voc::hasGender));
    CHECK(resolveByLabel("has caused any secondary infections", g) ==
          Term::iri(voc::hasCausedSecondaryInfections));
    CHECK(resolveByLabel("travelled from", g) == Term::iri(voc::travelledFrom));
    CHECK(resolveByLabel("Patient", g) == Term::iri(voc::Patient));

    try {
        resolveByLabel("no such label", g);
        FAIL("expected unknown-label");
    } catch (const Error& e) {
        CHECK(e.kind() == "unknown-label");
    }

    g.insert({Term::iri(ns::codo + "other"), Term::iri(voc::rdfsLabel),
              Term::literal("diagnosed on")});
    try {
        resolveByLabel("diagnosed on", g);
        FAIL("expected ambiguous-label");
    } catch (const Error& e) {
        CHECK(e.kind() == "ambiguous-label");
        CHECK(std::string(e.what()).find("other") != std::string::npos);
    }
}
