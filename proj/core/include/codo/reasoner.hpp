#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "codo/graph.hpp"
#include "codo/schema.hpp"

namespace codo {

struct InferenceReport {
    std::size_t assertedCount = 0;
    std::size_t inferredCount = 0;
    std::size_t iterations = 0;
    // defined class IRI -> member individual IRIs
    std::map<std::string, std::set<std::string>> definedClassMemberships;
};

struct Derivation {
    Triple conclusion;
    std::string rule; // R1..R7
    std::vector<Triple> premises;
};

// Rule catalog:
//   R1 sub-property propagation       R5 subClassOf type propagation
//   R2 inverseOf                      R6 domain/range typing
//   R3 symmetric                      R7 defined-class membership
//   R4 transitive
//
// Semi-naive forward chaining to a fixpoint: only newly derived triples
// re-trigger rules. Re-running on the result adds zero triples.
// `provenance`, when given, records one derivation per inferred triple.
InferenceReport materialize(Graph& graph, const SchemaAxioms& axioms,
                            std::map<Triple, Derivation>* provenance = nullptr);

// Agrees with membership of t in the materialized graph.
bool isEntailed(const Graph& graph, const SchemaAxioms& axioms, const Triple& t);

// Premise chain grounding t in asserted triples; the last step concludes
// t, every premise of a step is either asserted or concluded earlier in
// the chain. An asserted t yields an empty chain. Throws
// Error("not-entailed") when t is not entailed.
std::vector<Derivation> explain(const Graph& graph, const SchemaAxioms& axioms, const Triple& t);

} // namespace codo
