#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codo/graph.hpp"

namespace codo {

struct ParseReport {
    std::size_t tripleCount = 0; // triples actually added to the graph
    std::vector<std::pair<std::size_t, std::string>> lineErrors;
};

// Line-oriented N-Triples. In strict mode the first bad line throws
// Error("syntax") carrying its line number; otherwise bad lines are
// recorded in the report and parsing continues.
ParseReport parseNTriples(std::string_view text, Graph& graph, bool strict = true);

// Turtle subset: @prefix, prefixed names, <iri>, _:label, "a", object
// lists (","), predicate lists (";"), typed/plain literals, bare
// booleans and numbers. Collections and [...] property lists throw
// Error("unsupported-construct").
ParseReport parseTurtleSubset(std::string_view text, Graph& graph);

// Canonical form: one line per triple, lines sorted lexicographically,
// non-ASCII escaped as \uXXXX. Blank labels _:b0... in interning order.
std::string serializeNTriples(const Graph& graph);

// Same triple ordering, prefixed names where a registered prefix
// applies, UTF-8 passed through unescaped.
std::string serializeTurtleSubset(const Graph& graph);

} // namespace codo
