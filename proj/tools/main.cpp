#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "codo/competency.hpp"
#include "codo/endpoint.hpp"
#include "codo/error.hpp"
#include "codo/mapping.hpp"
#include "codo/query.hpp"
#include "codo/reasoner.hpp"
#include "codo/schema.hpp"
#include "codo/serialization.hpp"
#include "codo/workspace.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw codo::Error("io", "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool endsWith(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void printInference(const codo::InferenceReport& r) {
    std::cout << "asserted " << r.assertedCount << ", inferred " << r.inferredCount << " in "
              << r.iterations << " pass" << (r.iterations == 1 ? "" : "es") << "\n";
    for (const auto& [cls, members] : r.definedClassMemberships)
        std::cout << "  " << cls << ": " << members.size() << " member"
                  << (members.size() == 1 ? "" : "s") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CODO COVID-19 knowledge-graph toolkit"};
    app.require_subcommand(1);
    std::string workspaceFlag;
    app.add_option("--workspace", workspaceFlag, "workspace directory (default ./codo-ws, env CODO_WS)");

    std::string loadFile;
    auto* load = app.add_subcommand("load", "load an .nt or .ttl file into the workspace");
    load->add_option("file", loadFile)->required();

    std::string csvFile, ruleFile, naming = "padded";
    bool noSentinel = false;
    auto* ingest = app.add_subcommand("ingest", "apply a transformation rule to a case CSV");
    ingest->add_option("csv", csvFile)->required();
    ingest->add_option("--rule", ruleFile)->required();
    ingest->add_option("--naming", naming)->check(CLI::IsMember({"padded", "hash"}));
    ingest->add_flag("--no-sentinel-filter", noSentinel);

    auto* reason = app.add_subcommand("reason", "materialize the inference closure");

    std::string queryFile, queryText;
    bool asJson = false;
    auto* query = app.add_subcommand("query", "run a SPARQL-subset query");
    query->add_option("file", queryFile);
    query->add_option("-e", queryText, "inline query text");
    query->add_flag("--json", asJson, "SPARQL JSON results instead of a table");

    auto* suite = app.add_subcommand("suite", "run the competency-question suite");

    auto* stats = app.add_subcommand("stats", "triple, class, and property counts");

    std::string exportFile;
    bool withInferred = false;
    auto* exportCmd = app.add_subcommand("export", "write canonical N-Triples");
    exportCmd->add_option("file", exportFile)->required();
    exportCmd->add_flag("--inferred", withInferred, "include inferred triples");

    int port = 8089, maxConcurrent = 16;
    auto* serve = app.add_subcommand("serve", "start the query endpoint");
    serve->add_option("--port", port);
    serve->add_option("--max-concurrent", maxConcurrent);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        codo::Workspace ws(codo::Workspace::resolveDir(workspaceFlag));
        ws.open();

        if (load->parsed()) {
            ws.markMutated();
            codo::ParseReport report;
            std::string text = slurp(loadFile);
            if (endsWith(loadFile, ".ttl"))
                report = codo::parseTurtleSubset(text, ws.graph());
            else
                report = codo::parseNTriples(text, ws.graph());
            ws.save();
            std::cout << "loaded " << report.tripleCount << " triples from " << loadFile << "\n";
        } else if (ingest->parsed()) {
            ws.markMutated();
            codo::MappingRule rule = codo::parseMappingRule(slurp(ruleFile));
            codo::CaseTable table = codo::CaseTable::fromCsv(slurp(csvFile));
            codo::IngestConfig config;
            config.naming = naming == "hash" ? codo::IngestConfig::Naming::Hash
                                             : codo::IngestConfig::Naming::Padded;
            config.sentinelFilter = !noSentinel;
            codo::IngestReport report = codo::applyMapping(rule, table, ws.graph(), config);
            codo::LinkReport links = codo::linkRelationships(table, ws.graph(), config);
            ws.save();
            std::cout << report.summary();
            std::cout << "relationship triples: " << links.triplesAdded << "\n";
            for (const std::string& line : links.log) std::cerr << line << "\n";
        } else if (reason->parsed()) {
            codo::SchemaAxioms axioms = codo::extractSchema(ws.graph());
            printInference(ws.reason(axioms));
            ws.save();
        } else if (query->parsed()) {
            if (queryText.empty() && queryFile.empty())
                throw codo::Error("usage", "query needs a file argument or -e text");
            std::string text = queryText.empty() ? slurp(queryFile) : queryText;
            codo::QueryAst ast = codo::parseQuery(text, &ws.graph().prefixes());
            codo::SolutionTable table = codo::evaluate(ast, ws.graph());
            if (asJson)
                std::cout << codo::toJsonResults(table) << "\n";
            else
                std::cout << table.toText(&ws.graph().prefixes());
            for (const std::string& w : table.warnings) std::cerr << w << "\n";
        } else if (suite->parsed()) {
            for (const codo::CqResult& cq : codo::competencySuite(ws.graph())) {
                std::cout << cq.id << ". " << cq.question << "\n";
                if (asJson) std::cout << codo::toJsonResults(cq.table) << "\n";
                else std::cout << cq.table.toText(&ws.graph().prefixes());
                std::cout << "\n";
            }
        } else if (stats->parsed()) {
            const codo::Graph& g = ws.graph();
            std::size_t asserted = ws.assertedOnly().size();
            std::cout << "triples: " << g.size() << " (asserted " << asserted << ", inferred "
                      << g.size() - asserted << ")\n";
            std::map<std::string, std::size_t> classes, properties;
            for (const codo::Triple& t : g.triples()) {
                ++properties[t.p.value];
                if (t.p.value == codo::voc::rdfType && t.o.isIri()) ++classes[t.o.value];
            }
            std::cout << "classes:\n";
            for (const auto& [cls, n] : classes) {
                std::string q = g.prefixes().compact(cls);
                std::cout << "  " << (q.empty() ? cls : q) << " " << n << "\n";
            }
            std::cout << "properties:\n";
            for (const auto& [prop, n] : properties) {
                std::string q = g.prefixes().compact(prop);
                std::cout << "  " << (q.empty() ? prop : q) << " " << n << "\n";
            }
        } else if (exportCmd->parsed()) {
            const codo::Graph out = withInferred ? ws.graph() : ws.assertedOnly();
            std::ofstream file(exportFile, std::ios::binary | std::ios::trunc);
            if (!file) throw codo::Error("io", "cannot write " + exportFile);
            file << codo::serializeNTriples(out);
            std::cout << "exported " << out.size() << " triples to " << exportFile << "\n";
        } else if (serve->parsed()) {
            if (!ws.materialized())
                throw codo::Error("usage", "workspace is not materialized; run `codo reason` first");
            codo::EndpointConfig config;
            config.port = port;
            config.maxConcurrent = maxConcurrent;
            codo::Endpoint endpoint(ws.graph(), config);
            std::cout << "serving /sparql on port " << port << "\n";
            endpoint.serve();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
