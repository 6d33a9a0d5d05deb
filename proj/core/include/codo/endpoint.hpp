#pragma once

#include <memory>
#include <thread>

#include "codo/graph.hpp"

namespace codo {

struct EndpointConfig {
    int port = 8089;
    int maxConcurrent = 16; // evaluations beyond this get 503
};

// Read-only SPARQL query endpoint over an immutable materialized snapshot:
//   GET  /sparql?query=<urlencoded>   -> SPARQL JSON results
//   POST /sparql (body = query text)  -> SPARQL JSON results
//   GET  /health                      -> "ok"
// Parse/unsupported-feature problems -> 400 with the parser message.
class Endpoint {
public:
    Endpoint(const Graph& graph, EndpointConfig config = {});
    ~Endpoint();

    Endpoint(const Endpoint&) = delete;
    Endpoint& operator=(const Endpoint&) = delete;

    void serve();      // blocks
    bool startAsync(); // returns once the listener is up
    void stop();

    int port() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::thread thread_;
};

} // namespace codo
