#include "codo/graph.hpp"

#include "codo/error.hpp"

namespace codo {

std::uint32_t Graph::intern(const Term& t) {
    auto it = ids_.find(t);
    if (it != ids_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(terms_.size());
    terms_.push_back(t);
    ids_.emplace(t, id);
    return id;
}

std::optional<std::uint32_t> Graph::lookup(const Term& t) const {
    auto it = ids_.find(t);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

Triple Graph::decode(const Key& spo) const {
    return Triple{terms_[spo[0]], terms_[spo[1]], terms_[spo[2]]};
}

bool Graph::insert(const Triple& t) {
    if (t.s.isLiteral())
        throw Error("malformed-triple", "literal subject '" + t.s.value + "'");
    if (!t.p.isIri())
        throw Error("malformed-triple", "predicate must be an IRI");
    Key k{intern(t.s), intern(t.p), intern(t.o)};
    auto [it, added] = spo_.insert(k);
    (void)it;
    if (added) {
        pos_.insert(Key{k[1], k[2], k[0]});
        osp_.insert(Key{k[2], k[0], k[1]});
    }
    return added;
}

bool Graph::contains(const Triple& t) const {
    auto s = lookup(t.s), p = lookup(t.p), o = lookup(t.o);
    if (!s || !p || !o) return false;
    return spo_.count(Key{*s, *p, *o}) != 0;
}

void Graph::matchEach(const std::optional<Term>& s,
                      const std::optional<Term>& p,
                      const std::optional<Term>& o,
                      const std::function<void(const Triple&)>& fn) const {
    std::optional<std::uint32_t> si, pi, oi;
    if (s) { si = lookup(*s); if (!si) return; }
    if (p) { pi = lookup(*p); if (!pi) return; }
    if (o) { oi = lookup(*o); if (!oi) return; }

    // (index, element order as positions into (s,p,o), prefix length)
    const std::set<Key>* idx = &spo_;
    std::array<int, 3> order{0, 1, 2};
    std::vector<std::uint32_t> prefix;
    if (si && pi && oi) {
        if (spo_.count(Key{*si, *pi, *oi})) fn(decode(Key{*si, *pi, *oi}));
        return;
    } else if (si && pi) {
        prefix = {*si, *pi};
    } else if (si && oi) {
        idx = &osp_; order = {2, 0, 1}; prefix = {*oi, *si};
    } else if (pi && oi) {
        idx = &pos_; order = {1, 2, 0}; prefix = {*pi, *oi};
    } else if (si) {
        prefix = {*si};
    } else if (pi) {
        idx = &pos_; order = {1, 2, 0}; prefix = {*pi};
    } else if (oi) {
        idx = &osp_; order = {2, 0, 1}; prefix = {*oi};
    }

    Key low{0, 0, 0};
    for (std::size_t i = 0; i < prefix.size(); ++i) low[i] = prefix[i];
    for (auto it = idx->lower_bound(low); it != idx->end(); ++it) {
        const Key& k = *it;
        bool inRange = true;
        for (std::size_t i = 0; i < prefix.size(); ++i)
            if (k[i] != prefix[i]) { inRange = false; break; }
        if (!inRange) break;
        Key spoKey{};
        for (int i = 0; i < 3; ++i) spoKey[order[i]] = k[i];
        fn(decode(spoKey));
    }
}

std::vector<Triple> Graph::match(const std::optional<Term>& s,
                                 const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
    std::vector<Triple> out;
    matchEach(s, p, o, [&](const Triple& t) { out.push_back(t); });
    return out;
}

std::vector<Triple> Graph::matchUsing(Index which,
                                      const std::optional<Term>& s,
                                      const std::optional<Term>& p,
                                      const std::optional<Term>& o) const {
    const std::set<Key>* idx = &spo_;
    std::array<int, 3> order{0, 1, 2};
    if (which == Index::Pos) { idx = &pos_; order = {1, 2, 0}; }
    if (which == Index::Osp) { idx = &osp_; order = {2, 0, 1}; }
    std::vector<Triple> out;
    for (const Key& k : *idx) {
        Key spoKey{};
        for (int i = 0; i < 3; ++i) spoKey[order[i]] = k[i];
        Triple t = decode(spoKey);
        if (s && !(t.s == *s)) continue;
        if (p && !(t.p == *p)) continue;
        if (o && !(t.o == *o)) continue;
        out.push_back(t);
    }
    return out;
}

std::vector<Triple> Graph::triples() const {
    std::vector<Triple> out;
    out.reserve(spo_.size());
    for (const Key& k : spo_) out.push_back(decode(k));
    return out;
}

bool Graph::operator==(const Graph& other) const {
    if (size() != other.size()) return false;
    std::set<Triple> a, b;
    for (const Key& k : spo_) a.insert(decode(k));
    for (const Key& k : other.spo_) b.insert(other.decode(k));
    return a == b;
}

} // namespace codo
