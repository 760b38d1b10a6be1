#include <benchmark/benchmark.h>

#include "support/corpus.hpp"
#include "termweave/registry.hpp"
#include "termweave/transformer.hpp"
#include "termweave/validator.hpp"
#include "termweave/xml_io.hpp"

using namespace termweave;

namespace {

std::string sample_xml() {
    static std::string xml = testsupport::corpus_xml(42);
    return xml;
}

void bench_parse(benchmark::State& state) {
    std::string xml = sample_xml();
    for (auto _ : state) {
        ParseResult r = parse(xml, "bench.xml");
        benchmark::DoNotOptimize(r.document);
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * xml.size()));
}
BENCHMARK(bench_parse);

void bench_serialize(benchmark::State& state) {
    Document doc = testsupport::random_document(42);
    for (auto _ : state) {
        std::string xml = serialize(doc);
        benchmark::DoNotOptimize(xml);
    }
}
BENCHMARK(bench_serialize);

void bench_validate(benchmark::State& state) {
    Document doc = testsupport::random_document(42);
    Registry reg = load_default();
    for (auto _ : state) {
        ValidationReport rep = validate(doc, reg);
        benchmark::DoNotOptimize(rep.valid);
    }
}
BENCHMARK(bench_validate);

void bench_matcher_compile(benchmark::State& state) {
    Registry reg = resolve(load_default());
    const ElementSpec* tig = reg.find_element("tig");
    for (auto _ : state) {
        Matcher m = Matcher::compile(*tig->content);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(bench_matcher_compile);

void bench_matcher_accepts(benchmark::State& state) {
    Registry reg = load_default();
    auto matchers = compile_matchers(reg);
    const Matcher& tig = matchers.at("tig");
    std::vector<std::string> tokens = {"term", "termNote", "termNote", "admin",
                                       "note", "ref",      "descrip"};
    for (auto _ : state) {
        bool ok = tig.accepts(tokens);
        benchmark::DoNotOptimize(ok);
    }
}
BENCHMARK(bench_matcher_accepts);

void bench_convert_roundtrip(benchmark::State& state) {
    Document doc = testsupport::random_document(42);
    ConvertOptions strict;
    strict.strictLegacy = true;
    for (auto _ : state) {
        Document back = to_tbx(to_tei(doc).document, strict).document;
        benchmark::DoNotOptimize(back);
    }
}
BENCHMARK(bench_convert_roundtrip);

void bench_emit_schema(benchmark::State& state) {
    Registry reg = load_default();
    for (auto _ : state) {
        std::string s = emit_schema(reg);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(bench_emit_schema);

}  // namespace

BENCHMARK_MAIN();
