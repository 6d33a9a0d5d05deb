#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "codo/graph.hpp"

namespace codo {

struct Variable {
    std::string name; // without '?'
    auto operator<=>(const Variable&) const = default;
};

using PatternTerm = std::variant<Term, Variable>;

struct TriplePattern {
    PatternTerm s, p, o;
};

// FILTER expression tree: comparisons over variables and literals with
// && || ! . Type-incoherent comparisons behave as errors-as-false.
struct FilterExpr {
    enum class Op { Var, Const, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Not };
    Op op;
    Variable var;   // Op::Var
    Term constant;  // Op::Const
    std::vector<FilterExpr> args;
};

struct Aggregate {
    Variable var;     // COUNT(?var)
    bool distinct = false;
    Variable alias;   // AS ?alias
};

using Projection = std::variant<Variable, Aggregate>;

struct OrderKey {
    Variable var;
    bool descending = false;
};

struct QueryAst {
    PrefixMap prefixes;
    bool distinct = false;
    std::vector<Projection> projection;
    std::vector<TriplePattern> patterns;
    std::vector<FilterExpr> filters;
    std::vector<Variable> groupBy;
    std::vector<OrderKey> orderBy;
    std::optional<std::size_t> limit;
    std::optional<std::size_t> offset;
};

struct SolutionTable {
    std::vector<std::string> vars;       // header, without '?'
    std::vector<std::vector<Term>> rows; // each row binds exactly the header
    std::vector<std::string> warnings;   // e.g. type-incoherent FILTER comparisons

    bool operator==(const SolutionTable& o) const { return vars == o.vars && rows == o.rows; }
    // aligned plain-text table; compacts IRIs when prefixes are given
    std::string toText(const PrefixMap* prefixes = nullptr) const;
};

// Supported subset: PREFIX, SELECT [DISTINCT], WHERE { BGP + FILTER },
// GROUP BY, COUNT, ORDER BY, LIMIT, OFFSET. Unsupported SPARQL keywords
// throw Error("unsupported-feature") naming the keyword; other problems
// throw Error("syntax") with a position. `base` prefixes (typically the
// graph's; the well-known defaults when null) are available without
// declaration.
QueryAst parseQuery(std::string_view text, const PrefixMap* base = nullptr);

// Pattern matching over the graph as-is (reason first when entailment-
// dependent answers are wanted). Join order is internal and never
// affects the result multiset; rows are deterministically ordered
// (ORDER BY keys, then canonical term order).
SolutionTable evaluate(const QueryAst& ast, const Graph& graph);

// SPARQL 1.1 Query Results JSON Format, deterministic byte-for-byte
// for equal tables.
std::string toJsonResults(const SolutionTable& table);

} // namespace codo
