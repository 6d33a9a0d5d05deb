#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "codo/endpoint.hpp"
#include "codo/query.hpp"
#include "codo/schema.hpp"
#include "codo/serialization.hpp"
#include "codo/workspace.hpp"

#include <httplib.h>
#include <json.hpp>

#include "common.hpp"

using namespace codo;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("codo-test-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("workspace directory resolution precedence") {
    unsetenv("CODO_WS");
    CHECK(Workspace::resolveDir("") == fs::path("./codo-ws"));
    setenv("CODO_WS", "/tmp/from-env", 1);
    CHECK(Workspace::resolveDir("") == fs::path("/tmp/from-env"));
    CHECK(Workspace::resolveDir("/tmp/from-flag") == fs::path("/tmp/from-flag"));
    unsetenv("CODO_WS");
}

TEST_CASE("save and open round trip the asserted graph") {
    TempDir tmp;
    Workspace ws(tmp.path);
    ws.open(); // empty dir is a valid empty workspace
    CHECK(ws.graph().size() == 0);

    parseTurtleSubset("codo:p000001 codo:hasDaughter codo:p000007 .", ws.graph());
    ws.save();
    CHECK(fs::exists(tmp.path / "asserted.nt"));
    CHECK_FALSE(fs::exists(tmp.path / "inferred.nt"));

    Workspace again(tmp.path);
    again.open();
    CHECK(again.graph() == ws.graph());
    CHECK_FALSE(again.materialized());
}

TEST_CASE("reasoning persists and mutation drops the inferred file") {
    TempDir tmp;
    auto [vocab, axioms] = buildCodoVocabulary();
    Workspace ws(tmp.path);
    ws.open();
    parseTurtleSubset("codo:p000001 codo:hasDaughter codo:p000007 .", ws.graph());
    std::size_t asserted = ws.graph().size();
    ws.reason(axioms);
    CHECK(ws.materialized());
    CHECK(ws.graph().size() > asserted);
    CHECK(ws.isInferred({Term::iri(ns::codo + "p000001"), Term::iri(voc::hasChild),
                         Term::iri(ns::codo + "p000007")}));
    CHECK(ws.assertedOnly().size() == asserted);
    ws.save();
    CHECK(fs::exists(tmp.path / "inferred.nt"));

    Workspace again(tmp.path);
    again.open();
    CHECK(again.materialized());
    CHECK(again.graph() == ws.graph());
    CHECK(again.assertedOnly().size() == asserted);

    again.graph().insert({Term::iri(ns::codo + "p000002"), Term::iri(voc::hasSpouse),
                          Term::iri(ns::codo + "p000003")});
    again.markMutated();
    CHECK_FALSE(again.materialized());
    // inferred triples are gone, the new asserted triple stays
    CHECK_FALSE(again.graph().contains({Term::iri(ns::codo + "p000001"),
                                        Term::iri(voc::hasChild),
                                        Term::iri(ns::codo + "p000007")}));
    CHECK(again.graph().contains({Term::iri(ns::codo + "p000002"), Term::iri(voc::hasSpouse),
                                  Term::iri(ns::codo + "p000003")}));
    again.save();
    CHECK_FALSE(fs::exists(tmp.path / "inferred.nt"));
}

TEST_CASE("endpoint answers health, get, and post identically") {
    Graph g;
    parseTurtleSubset("codo:p000001 codo:hasDaughter codo:p000007 .\n"
                      "codo:p000001 codo:age 41 .\n",
                      g);
    Endpoint ep(g, EndpointConfig{0, 16});
    REQUIRE(ep.startAsync());
    httplib::Client client("127.0.0.1", ep.port());

    auto health = client.Get("/health");
    REQUIRE(health);
    CHECK(health->status == 200);
    CHECK(health->body == "ok");

    std::string query = "SELECT ?s ?o WHERE { ?s codo:hasDaughter ?o }";
    auto get = client.Get("/sparql?query=" + httplib::detail::encode_query_param(query));
    REQUIRE(get);
    CHECK(get->status == 200);
    CHECK(get->get_header_value("Content-Type") == "application/sparql-results+json");

    auto post = client.Post("/sparql", query, "application/sparql-query");
    REQUIRE(post);
    CHECK(post->status == 200);
    CHECK(post->body == get->body); // same bytes both routes

    // the endpoint is a thin wrapper over the library evaluation
    QueryAst ast = parseQuery(query, &g.prefixes());
    CHECK(get->body == toJsonResults(evaluate(ast, g)));

    nlohmann::json j = nlohmann::json::parse(get->body);
    REQUIRE(j["results"]["bindings"].size() == 1);
    CHECK(j["results"]["bindings"][0]["o"]["value"] == ns::codo + "p000007");

    ep.stop();
}

TEST_CASE("endpoint error handling: empty, malformed, unsupported") {
    Graph g;
    Endpoint ep(g, EndpointConfig{0, 16});
    REQUIRE(ep.startAsync());
    httplib::Client client("127.0.0.1", ep.port());

    auto missing = client.Get("/sparql");
    REQUIRE(missing);
    CHECK(missing->status == 400);
    CHECK(missing->body == "missing query");

    auto malformed = client.Post("/sparql", "SELECT WHERE", "application/sparql-query");
    REQUIRE(malformed);
    CHECK(malformed->status == 400);

    auto unsupported = client.Post(
        "/sparql", "SELECT ?s WHERE { ?s ?p ?o . OPTIONAL { ?s ?p ?o } }",
        "application/sparql-query");
    REQUIRE(unsupported);
    CHECK(unsupported->status == 400);
    CHECK(unsupported->body.find("OPTIONAL") != std::string::npos);

    ep.stop();
}

TEST_CASE("requests beyond the concurrency cap get 503") {
    Graph g;
    Endpoint ep(g, EndpointConfig{0, 0}); // zero concurrent evaluations allowed
    REQUIRE(ep.startAsync());
    httplib::Client client("127.0.0.1", ep.port());
    auto res = client.Post("/sparql", "SELECT ?s WHERE { ?s ?p ?o }",
                           "application/sparql-query");
    REQUIRE(res);
    CHECK(res->status == 503);
    // health stays available regardless
    auto health = client.Get("/health");
    REQUIRE(health);
    CHECK(health->status == 200);
    ep.stop();
}

TEST_CASE("repeated identical queries return identical bytes") {
    std::mt19937 rng(91);
    Graph g = testutil::randomGraph(rng, 60, 10, 4, true);
    Endpoint ep(g, EndpointConfig{0, 16});
    REQUIRE(ep.startAsync());
    httplib::Client client("127.0.0.1", ep.port());
    std::string query = "SELECT ?s ?p ?o WHERE { ?s ?p ?o } LIMIT 20";
    auto first = client.Post("/sparql", query, "application/sparql-query");
    REQUIRE(first);
    for (int i = 0; i < 5; ++i) {
        auto res = client.Post("/sparql", query, "application/sparql-query");
        REQUIRE(res);
        CHECK(res->body == first->body);
    }
    ep.stop();
}
