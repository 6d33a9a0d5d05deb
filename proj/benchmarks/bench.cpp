#include <benchmark/benchmark.h>

#include <random>

#include "codo/competency.hpp"
#include "codo/query.hpp"
#include "codo/reasoner.hpp"
#include "codo/schema.hpp"
#include "codo/serialization.hpp"

using namespace codo;

namespace {

Term patient(int n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "p%06d", n);
    return Term::iri(ns::codo + buf);
}

// vocabulary + n patients in a chain of close relationships, every third
// one diagnosed
Graph caseGraph(int n) {
    auto [g, ax] = buildCodoVocabulary();
    for (int i = 1; i <= n; ++i) {
        g.insert({patient(i), Term::iri(voc::rdfType), Term::iri(voc::Patient)});
        if (i > 1)
            g.insert({patient(i - 1), Term::iri(voc::hasSpouse), patient(i)});
        if (i % 3 == 0) {
            Term d = Term::iri(ns::codo + "d" + std::to_string(i));
            g.insert({patient(i), Term::iri(voc::hasDiagnosis), d});
            g.insert({d, Term::iri(voc::rdfType), Term::iri(voc::Covid19Diagnosis)});
        } else {
            g.insert({patient(i), Term::iri(voc::hadCovidTest), Term::boolean(false)});
        }
    }
    return g;
}

} // namespace

static void BM_Insert(benchmark::State& state) {
    std::mt19937 rng(7);
    for (auto _ : state) {
        Graph g;
        for (int i = 0; i < state.range(0); ++i)
            g.insert({patient(static_cast<int>(rng() % 1000)),
                      Term::iri(ns::codo + "hasRelationship"),
                      patient(static_cast<int>(rng() % 1000))});
        benchmark::DoNotOptimize(g.size());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Insert)->Arg(1000)->Arg(10000);

static void BM_Match(benchmark::State& state) {
    Graph g = caseGraph(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            g.match(std::nullopt, Term::iri(voc::hasSpouse), std::nullopt).size());
}
BENCHMARK(BM_Match)->Arg(1000)->Arg(10000);

static void BM_Materialize(benchmark::State& state) {
    auto [vocab, axioms] = buildCodoVocabulary();
    for (auto _ : state) {
        state.PauseTiming();
        Graph g = caseGraph(static_cast<int>(state.range(0)));
        state.ResumeTiming();
        benchmark::DoNotOptimize(materialize(g, axioms).inferredCount);
    }
}
BENCHMARK(BM_Materialize)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_Figure6Query(benchmark::State& state) {
    auto [vocab, axioms] = buildCodoVocabulary();
    Graph g = caseGraph(static_cast<int>(state.range(0)));
    materialize(g, axioms);
    QueryAst ast = parseQuery(figure6QueryText(), &g.prefixes());
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(ast, g).rows.size());
}
BENCHMARK(BM_Figure6Query)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_SerializeNTriples(benchmark::State& state) {
    Graph g = caseGraph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(serializeNTriples(g).size());
}
BENCHMARK(BM_SerializeNTriples)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
