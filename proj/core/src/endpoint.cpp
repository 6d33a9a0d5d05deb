#include "codo/endpoint.hpp"

#include <atomic>

#include <httplib.h>

#include "codo/error.hpp"
#include "codo/query.hpp"

namespace codo {

struct Endpoint::Impl {
    const Graph* graph;
    EndpointConfig config;
    httplib::Server server;
    std::atomic<int> active{0};

    void answer(const std::string& queryText, httplib::Response& res) {
        if (queryText.empty()) {
            res.status = 400;
            res.set_content("missing query", "text/plain");
            return;
        }
        int now = ++active;
        if (now > config.maxConcurrent) {
            --active;
            res.status = 503;
            res.set_content("too many concurrent queries", "text/plain");
            return;
        }
        try {
            QueryAst ast = parseQuery(queryText, &graph->prefixes());
            SolutionTable table = evaluate(ast, *graph);
            res.set_content(toJsonResults(table), "application/sparql-results+json");
        } catch (const Error& e) {
            res.status = 400;
            res.set_content(e.what(), "text/plain");
        }
        --active;
    }
};

Endpoint::Endpoint(const Graph& graph, EndpointConfig config) : impl_(new Impl) {
    impl_->graph = &graph;
    impl_->config = config;

    impl_->server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("ok", "text/plain");
    });
    impl_->server.Get("/sparql", [this](const httplib::Request& req, httplib::Response& res) {
        impl_->answer(req.get_param_value("query"), res);
    });
    impl_->server.Post("/sparql", [this](const httplib::Request& req, httplib::Response& res) {
        // accept both a raw body and form-encoded query=
        std::string q = req.body;
        if (req.has_param("query")) q = req.get_param_value("query");
        impl_->answer(q, res);
    });
}

Endpoint::~Endpoint() { stop(); }

void Endpoint::serve() {
    if (!impl_->server.listen("0.0.0.0", impl_->config.port))
        throw Error("io", "cannot listen on port " + std::to_string(impl_->config.port));
}

bool Endpoint::startAsync() {
    if (impl_->config.port == 0) {
        int p = impl_->server.bind_to_any_port("127.0.0.1");
        if (p < 0) return false;
        impl_->config.port = p;
    } else if (!impl_->server.bind_to_port("127.0.0.1", impl_->config.port)) {
        return false;
    }
    thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return true;
}

void Endpoint::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
    if (thread_.joinable()) thread_.join();
}

int Endpoint::port() const { return impl_->config.port; }

} // namespace codo
