#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "codo/term.hpp"

namespace codo {

// Triply-indexed in-memory triple store. Terms are interned to small ids
// internally; the external contract is value equality only.
//
// Single-writer, multiple-reader: insert requires exclusive access,
// match is const and safe to run concurrently once mutation is quiesced.
class Graph {
public:
    enum class Index { Spo, Pos, Osp };

    Graph() : prefixes_(PrefixMap::defaults()) {}

    // Returns true when the triple was newly added.
    // Throws Error("malformed-triple") on a literal subject or
    // non-IRI predicate.
    bool insert(const Triple& t);

    bool contains(const Triple& t) const;
    std::size_t size() const { return spo_.size(); }

    // Yields exactly the triples consistent with the bound positions;
    // picks the index whose ordering matches the bound-position prefix.
    std::vector<Triple> match(const std::optional<Term>& s,
                              const std::optional<Term>& p,
                              const std::optional<Term>& o) const;
    void matchEach(const std::optional<Term>& s,
                   const std::optional<Term>& p,
                   const std::optional<Term>& o,
                   const std::function<void(const Triple&)>& fn) const;

    // Same pattern evaluated by filtering a full scan of one specific
    // index; exists so tests can check index agreement.
    std::vector<Triple> matchUsing(Index which,
                                   const std::optional<Term>& s,
                                   const std::optional<Term>& p,
                                   const std::optional<Term>& o) const;

    std::vector<Triple> triples() const; // all triples, spo index order

    PrefixMap& prefixes() { return prefixes_; }
    const PrefixMap& prefixes() const { return prefixes_; }

    // Set equality over the triple set (prefixes are not compared).
    bool operator==(const Graph& other) const;

private:
    using Key = std::array<std::uint32_t, 3>;

    std::uint32_t intern(const Term& t);
    std::optional<std::uint32_t> lookup(const Term& t) const;
    Triple decode(const Key& spo) const;

    std::vector<Term> terms_;
    std::map<Term, std::uint32_t> ids_;
    std::set<Key> spo_, pos_, osp_; // element orders: (s,p,o), (p,o,s), (o,s,p)
    PrefixMap prefixes_;
};

} // namespace codo
