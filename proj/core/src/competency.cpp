#include "codo/competency.hpp"

namespace codo {

const std::string& figure6QueryText() {
    static const std::string q = R"(PREFIX owl: <http://www.w3.org/2002/07/owl#>
PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>
PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>
PREFIX codo: <http://www.isibang.ac.in/ns/codo#>
PREFIX schema: <https://schema.org/>

SELECT ?p ?r
WHERE {
  ?p rdf:type schema:Patient.
  ?p codo:hasDiagnosis ?d.
  ?d rdf:type codo:COVID-19Diagnosis.
  ?p codo:hasCloseRelationship ?r.
  ?r codo:hadCovidTest false.
}
)";
    return q;
}

namespace {

std::string relFilter(const std::vector<const char*>& props) {
    std::string f = "  FILTER(";
    for (std::size_t i = 0; i < props.size(); ++i) {
        if (i) f += " || ";
        f += std::string("?rel = codo:") + props[i];
    }
    return f + ")\n";
}

} // namespace

std::vector<CqResult> competencySuite(const Graph& graph, const CqParams& params) {
    std::vector<CqResult> out;
    const PrefixMap& base = graph.prefixes();

    auto run = [&](std::string id, std::string question, std::string query) {
        SolutionTable table = evaluate(parseQuery(query, &base), graph);
        out.push_back(CqResult{std::move(id), std::move(question), std::move(query),
                               std::move(table)});
    };

    run("I",
        "How many people recovered from COVID-19 in " + params.place + " until " +
            params.untilDate + "?",
        "SELECT (COUNT(DISTINCT ?p) AS ?n)\n"
        "WHERE {\n"
        "  ?p codo:status codo:Recovered .\n"
        "  ?p ?where ?loc .\n"
        "  ?loc rdfs:label \"" + params.place + "\" .\n"
        "  ?p codo:diagnosedOn ?d .\n"
        "  FILTER((?where = codo:city || ?where = codo:state)\n"
        "         && ?d <= \"" + params.untilDate + "T23:59:59\"^^xsd:dateTime)\n"
        "}\n");

    run("II", "How many people died of COVID-19, per country?",
        "SELECT ?country (COUNT(DISTINCT ?p) AS ?n)\n"
        "WHERE {\n"
        "  ?p codo:status codo:Deceased .\n"
        "  ?p codo:nationality ?country .\n"
        "}\n"
        "GROUP BY ?country\n"
        "ORDER BY DESC(?n)\n");

    run("III", "From which places did patient " + params.patient + " travel?",
        "SELECT ?place\n"
        "WHERE {\n"
        "  codo:" + params.patient + " codo:travelledFrom ?place .\n"
        "}\n");

    run("IV", "Which patients are related to which patients, and how?",
        "SELECT ?p1 ?rel ?p2\n"
        "WHERE {\n"
        "  ?p1 ?rel ?p2 .\n" +
            relFilter({"hasRelationship", "hasCloseRelationship", "hasChild", "hasDaughter",
                       "hasSon", "hasSpouse", "hasCoWorker", "hasRoommate", "hasParent",
                       "hasAuntOrUncle", "hasNieceOrNephew"}) +
            "}\n");

    run("V", "Which patients are family members of which patients?",
        "SELECT ?p1 ?rel ?p2\n"
        "WHERE {\n"
        "  ?p1 ?rel ?p2 .\n" +
            relFilter({"hasChild", "hasDaughter", "hasSon", "hasSpouse", "hasParent"}) +
            "}\n");

    run("VI",
        "What are the primary reasons of infection, for the maximum number of patients?",
        "SELECT ?reason (COUNT(?p) AS ?n)\n"
        "WHERE {\n"
        "  ?p codo:suspectedReasonOfInfection ?reason .\n"
        "}\n"
        "GROUP BY ?reason\n"
        "ORDER BY DESC(?n)\n");

    run("VII", "What are the most prevalent symptoms of severe COVID-19?",
        "SELECT ?symptom (COUNT(DISTINCT ?p) AS ?n)\n"
        "WHERE {\n"
        "  ?p codo:hasDiagnosis ?d .\n"
        "  ?d rdf:type codo:SevereCovid19 .\n"
        "  ?p codo:hasSymptom ?symptom .\n"
        "}\n"
        "GROUP BY ?symptom\n"
        "ORDER BY DESC(?n)\n");

    run("VIII",
        "Who has a close relation to someone diagnosed with COVID-19 and has not been "
        "tested?",
        figure6QueryText());

    return out;
}

} // namespace codo
