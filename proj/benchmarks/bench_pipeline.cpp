#include <benchmark/benchmark.h>

#include "brancov/gallery.hpp"
#include "brancov/index.hpp"
#include "brancov/json_io.hpp"
#include "brancov/pipeline.hpp"

using namespace brancov;

namespace {

SimplicialSurjection load(const std::string& name) {
    auto parsed = map_from_json(fixture(name).map);
    return analyze(parsed.source, parsed.target, parsed.vertex_map);
}

void BM_Classify(benchmark::State& state, const std::string& name) {
    auto parsed = map_from_json(fixture(name).map);
    for (auto _ : state) {
        auto cls = classify(parsed.source, parsed.target, parsed.vertex_map);
        benchmark::DoNotOptimize(cls);
    }
}

void BM_BuildWeight(benchmark::State& state, const std::string& name) {
    auto p = load(name);
    auto strat = stratify(p);
    for (auto _ : state) {
        auto mu = build_weight(p, strat);
        benchmark::DoNotOptimize(mu);
    }
}

void BM_InnerProduct(benchmark::State& state, const std::string& name) {
    auto p = load(name);
    auto mu = build_weight(p, stratify(p));
    PLFunction f{&p.Y(), {}};
    for (VertexId v = 0; v < p.Y().vertex_count(); ++v)
        f.values.push_back(RatC(Rat(v + 1, 3u), Rat(-v, 2u)));
    for (auto _ : state) {
        auto ip = inner_product(p, mu, f, f);
        benchmark::DoNotOptimize(ip);
    }
}

void BM_Reconstruction(benchmark::State& state, const std::string& name) {
    auto p = load(name);
    auto strat = stratify(p);
    auto mu = build_weight(p, strat);
    auto partition = borel_partition(p, strat);
    PLFunction f{&p.Y(), {}};
    for (VertexId v = 0; v < p.Y().vertex_count(); ++v) f.values.push_back(RatC(Rat(2 * v + 1)));
    std::vector<Point> samples;
    for (SimplexId e : p.Y().edges())
        for (int k = 1; k <= 32; ++k)
            samples.push_back(Point::on_edge(p.Y(), e, Rat(k, 33u)));
    for (auto _ : state) {
        auto report = check_reconstruction(p, mu, partition, f, samples);
        benchmark::DoNotOptimize(report);
    }
}

void BM_Pipeline(benchmark::State& state, const std::string& name) {
    auto parsed = map_from_json(fixture(name).map);
    PipelineOptions opts;
    opts.samples_per_edge = 32;
    for (auto _ : state) {
        auto report = report_pipeline(parsed, opts);
        benchmark::DoNotOptimize(report);
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Classify, figure2, std::string("figure2"));
BENCHMARK_CAPTURE(BM_Classify, two_circles, std::string("two_circles_with_interval"));
BENCHMARK_CAPTURE(BM_BuildWeight, figure2, std::string("figure2"));
BENCHMARK_CAPTURE(BM_BuildWeight, two_circles, std::string("two_circles_with_interval"));
BENCHMARK_CAPTURE(BM_InnerProduct, two_circles, std::string("two_circles_with_interval"));
BENCHMARK_CAPTURE(BM_Reconstruction, figure2, std::string("figure2"));
BENCHMARK_CAPTURE(BM_Pipeline, figure2, std::string("figure2"));
BENCHMARK_CAPTURE(BM_Pipeline, double_cover, std::string("double_cover_circle"));

BENCHMARK_MAIN();
