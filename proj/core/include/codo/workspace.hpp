#pragma once

#include <filesystem>
#include <set>

#include "codo/graph.hpp"
#include "codo/reasoner.hpp"
#include "codo/schema.hpp"

namespace codo {

// On-disk state shared between CLI invocations: two canonical N-Triples
// files, asserted.nt and inferred.nt, in one directory. Any mutation of
// the asserted graph drops the inferred triples (materialized resets to
// false).
class Workspace {
public:
    // --workspace flag if non-empty, else $CODO_WS, else ./codo-ws
    static std::filesystem::path resolveDir(const std::string& flag);

    explicit Workspace(std::filesystem::path dir) : dir_(std::move(dir)) {}

    void open(); // loads the file pair when present
    void save(); // creates the directory as needed

    const std::filesystem::path& dir() const { return dir_; }
    Graph& graph() { return graph_; } // asserted + inferred, combined
    const Graph& graph() const { return graph_; }
    bool materialized() const { return materialized_; }

    // Call after any change to the asserted portion.
    void markMutated();

    InferenceReport reason(const SchemaAxioms& axioms);

    bool isInferred(const Triple& t) const { return inferred_.count(t) != 0; }
    Graph assertedOnly() const;

private:
    std::filesystem::path dir_;
    Graph graph_;
    std::set<Triple> inferred_;
    bool materialized_ = false;
};

} // namespace codo
