#include "codo/workspace.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "codo/error.hpp"
#include "codo/serialization.hpp"

namespace codo {

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("io", "cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spew(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io", "cannot write " + p.string());
    out << text;
}

} // namespace

std::filesystem::path Workspace::resolveDir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("CODO_WS"); env && *env) return env;
    return "./codo-ws";
}

void Workspace::open() {
    graph_ = Graph{};
    inferred_.clear();
    materialized_ = false;
    auto assertedPath = dir_ / "asserted.nt";
    auto inferredPath = dir_ / "inferred.nt";
    if (std::filesystem::exists(assertedPath))
        parseNTriples(slurp(assertedPath), graph_);
    if (std::filesystem::exists(inferredPath)) {
        Graph extra;
        parseNTriples(slurp(inferredPath), extra);
        for (const Triple& t : extra.triples())
            if (graph_.insert(t)) inferred_.insert(t);
        materialized_ = true;
    }
}

void Workspace::save() {
    std::filesystem::create_directories(dir_);
    Graph inferredGraph;
    for (const Triple& t : inferred_) inferredGraph.insert(t);
    spew(dir_ / "asserted.nt", serializeNTriples(assertedOnly()));
    if (materialized_)
        spew(dir_ / "inferred.nt", serializeNTriples(inferredGraph));
    else
        std::filesystem::remove(dir_ / "inferred.nt");
}

void Workspace::markMutated() {
    if (inferred_.empty() && !materialized_) return;
    Graph kept = assertedOnly();
    const PrefixMap saved = graph_.prefixes();
    graph_ = std::move(kept);
    graph_.prefixes() = saved;
    inferred_.clear();
    materialized_ = false;
}

InferenceReport Workspace::reason(const SchemaAxioms& axioms) {
    std::set<Triple> before;
    for (const Triple& t : graph_.triples()) before.insert(t);
    InferenceReport report = materialize(graph_, axioms);
    for (const Triple& t : graph_.triples())
        if (!before.count(t)) inferred_.insert(t);
    materialized_ = true;
    return report;
}

Graph Workspace::assertedOnly() const {
    Graph g;
    g.prefixes() = graph_.prefixes();
    for (const Triple& t : graph_.triples())
        if (!inferred_.count(t)) g.insert(t);
    return g;
}

} // namespace codo
