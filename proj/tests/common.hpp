#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "codo/graph.hpp"

#ifndef CODO_DATA_DIR
#define CODO_DATA_DIR "data"
#endif

namespace testutil {

inline std::string dataPath(const std::string& name) {
    return std::string(CODO_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot read " << path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline codo::Term ind(int n) {
    return codo::Term::iri(codo::ns::codo + "i" + std::to_string(n));
}

inline codo::Term prop(int n) {
    return codo::Term::iri(codo::ns::codo + "q" + std::to_string(n));
}

// random graph over a small universe of IRIs; optionally mixes literals
// into the object position
inline codo::Graph randomGraph(std::mt19937& rng, int triples, int individuals, int properties,
                               bool literalObjects = false) {
    codo::Graph g;
    std::uniform_int_distribution<int> di(0, individuals - 1), dp(0, properties - 1);
    for (int i = 0; i < triples; ++i) {
        codo::Term o = ind(di(rng));
        if (literalObjects && rng() % 4 == 0)
            o = codo::Term::literal(std::to_string(rng() % 10));
        g.insert({ind(di(rng)), prop(dp(rng)), o});
    }
    return g;
}

} // namespace testutil
