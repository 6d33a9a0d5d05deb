#include "codo/reasoner.hpp"

#include <algorithm>

#include "codo/error.hpp"

namespace codo {

namespace {

struct RuleContext {
    std::map<std::string, std::vector<std::string>> propSupers;  // direct supers
    std::map<std::string, std::vector<std::string>> classSupers; // direct supers
    std::map<std::string, std::vector<std::string>> inverses;
    const SchemaAxioms* ax;

    explicit RuleContext(const SchemaAxioms& axioms) : ax(&axioms) {
        // direct edges only: derivation chains stay stepwise, so each
        // provenance record is licensed by a single declared axiom
        for (const auto& [a, b] : axioms.subPropertyOf) propSupers[a].push_back(b);
        for (const auto& [a, b] : axioms.subClassOf) classSupers[a].push_back(b);
        for (const auto& [a, b] : axioms.inverseOf) {
            inverses[a].push_back(b);
            inverses[b].push_back(a);
        }
    }
};

bool isDatatypeIri(const std::string& iri) {
    return iri.compare(0, ns::xsd.size(), ns::xsd) == 0;
}

const Term& rdfType() {
    static const Term t = Term::iri(ns::rdf + "type");
    return t;
}

} // namespace

InferenceReport materialize(Graph& g, const SchemaAxioms& axioms,
                            std::map<Triple, Derivation>* provenance) {
    RuleContext ctx(axioms);
    InferenceReport report;
    report.assertedCount = g.size();

    std::vector<Triple> frontier = g.triples();
    std::vector<Triple> next;

    auto derive = [&](Triple conclusion, const char* rule, std::vector<Triple> premises) {
        if (g.insert(conclusion)) {
            if (provenance)
                provenance->emplace(conclusion, Derivation{conclusion, rule, std::move(premises)});
            next.push_back(std::move(conclusion));
        }
    };

    const std::size_t cap = std::max<std::size_t>(50, 10 * axioms.axiomCount());
    while (!frontier.empty()) {
        if (++report.iterations > cap)
            throw Error("divergence",
                        "fixpoint not reached after " + std::to_string(cap) +
                            " passes; axiom extraction is likely broken");
        next.clear();

        for (const Triple& t : frontier) {
            // R1: sub-property propagation
            if (auto it = ctx.propSupers.find(t.p.value); it != ctx.propSupers.end())
                for (const std::string& q : it->second)
                    derive(Triple{t.s, Term::iri(q), t.o}, "R1", {t});
            // R2: inverses
            if (!t.o.isLiteral())
                if (auto it = ctx.inverses.find(t.p.value); it != ctx.inverses.end())
                    for (const std::string& q : it->second)
                        derive(Triple{t.o, Term::iri(q), t.s}, "R2", {t});
            // R3: symmetry
            if (!t.o.isLiteral() && axioms.symmetricProps.count(t.p.value))
                derive(Triple{t.o, t.p, t.s}, "R3", {t});
            // R4: transitivity, joining the new triple on both sides
            if (!t.o.isLiteral() && axioms.transitiveProps.count(t.p.value)) {
                for (const Triple& r : g.match(t.o, t.p, std::nullopt))
                    if (!r.o.isLiteral()) derive(Triple{t.s, t.p, r.o}, "R4", {t, r});
                for (const Triple& l : g.match(std::nullopt, t.p, t.s))
                    derive(Triple{l.s, t.p, t.o}, "R4", {l, t});
            }
            // R5: subClassOf type propagation
            if (t.p == rdfType() && t.o.isIri())
                if (auto it = ctx.classSupers.find(t.o.value); it != ctx.classSupers.end())
                    for (const std::string& c : it->second)
                        derive(Triple{t.s, rdfType(), Term::iri(c)}, "R5", {t});
            // R6: domain/range typing
            if (auto it = axioms.domains.find(t.p.value); it != axioms.domains.end())
                derive(Triple{t.s, rdfType(), Term::iri(it->second)}, "R6", {t});
            if (!t.o.isLiteral())
                if (auto it = axioms.ranges.find(t.p.value); it != axioms.ranges.end())
                    if (!isDatatypeIri(it->second))
                        derive(Triple{t.o, rdfType(), Term::iri(it->second)}, "R6", {t});
        }

        // R7: defined-class membership, interleaved with R1-R6 in the
        // same fixpoint since memberships can cascade
        if (!axioms.definedClasses.empty()) {
            std::set<Term> candidates;
            for (const Triple& t : g.triples()) candidates.insert(t.s);
            for (const DefinedClass& d : axioms.definedClasses) {
                Term classTerm = Term::iri(d.cls);
                for (const Term& ind : candidates) {
                    if (g.contains(Triple{ind, rdfType(), classTerm})) continue;
                    std::vector<Triple> premises;
                    bool holds = true;
                    for (const Conjunct& c : d.conjuncts) {
                        if (c.kind == Conjunct::Kind::NamedClass) {
                            Triple need{ind, rdfType(), Term::iri(c.cls)};
                            if (!g.contains(need)) { holds = false; break; }
                            premises.push_back(need);
                        } else if (c.kind == Conjunct::Kind::SomeValuesFrom) {
                            bool found = false;
                            for (const Triple& e : g.match(ind, Term::iri(c.property), std::nullopt)) {
                                if (e.o.isLiteral()) continue;
                                Triple fillerType{e.o, rdfType(), Term::iri(c.cls)};
                                if (g.contains(fillerType)) {
                                    premises.push_back(e);
                                    premises.push_back(fillerType);
                                    found = true;
                                    break;
                                }
                            }
                            if (!found) { holds = false; break; }
                        } else { // HasValue
                            Triple need{ind, Term::iri(c.property), c.value};
                            if (!g.contains(need)) { holds = false; break; }
                            premises.push_back(need);
                        }
                    }
                    if (holds)
                        derive(Triple{ind, rdfType(), classTerm}, "R7", std::move(premises));
                }
            }
        }

        frontier.swap(next);
    }
    if (report.iterations == 0) report.iterations = 1;

    report.inferredCount = g.size() - report.assertedCount;
    for (const DefinedClass& d : axioms.definedClasses) {
        auto& members = report.definedClassMemberships[d.cls];
        for (const Triple& t : g.match(std::nullopt, rdfType(), Term::iri(d.cls)))
            members.insert(t.s.value);
    }
    return report;
}

bool isEntailed(const Graph& graph, const SchemaAxioms& axioms, const Triple& t) {
    if (graph.contains(t)) return true;
    Graph closure = graph;
    materialize(closure, axioms);
    return closure.contains(t);
}

std::vector<Derivation> explain(const Graph& graph, const SchemaAxioms& axioms, const Triple& t) {
    if (graph.contains(t)) return {};
    Graph closure = graph;
    std::map<Triple, Derivation> provenance;
    materialize(closure, axioms, &provenance);
    if (!closure.contains(t)) throw Error("not-entailed", "triple is not entailed");

    std::vector<Derivation> chain;
    std::set<Triple> emitted;
    std::function<void(const Triple&)> emit = [&](const Triple& goal) {
        if (graph.contains(goal) || emitted.count(goal)) return;
        emitted.insert(goal);
        const Derivation& d = provenance.at(goal);
        for (const Triple& premise : d.premises) emit(premise);
        chain.push_back(d);
    };
    emit(t);
    return chain;
}

} // namespace codo
