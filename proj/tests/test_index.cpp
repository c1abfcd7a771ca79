#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brancov/gallery.hpp"
#include "brancov/index.hpp"
#include "brancov/json_io.hpp"

#include "support/random_maps.hpp"

using namespace brancov;

namespace {

struct Loaded {
    ParsedMap parsed;
    SimplicialSurjection p;
};

Loaded load(const std::string& name) {
    auto parsed = map_from_json(fixture(name).map);
    auto p = analyze(parsed.source, parsed.target, parsed.vertex_map);
    return {std::move(parsed), std::move(p)};
}

std::vector<Point> sample_points(const Complex& cx, int per_edge) {
    std::vector<Point> out;
    for (VertexId v = 0; v < cx.vertex_count(); ++v) out.push_back(Point::at_vertex(v));
    for (SimplexId e : cx.edges())
        for (int k = 1; k <= per_edge; ++k)
            out.push_back(Point::on_edge(cx, e, Rat(k, static_cast<unsigned>(per_edge + 1))));
    return out;
}

}  // namespace

TEST_CASE("Borel partition of figure2 has three pieces") {
    auto fx = load("figure2");
    auto partition = borel_partition(fx.p, stratify(fx.p));
    REQUIRE(partition.pieces.size() == 3);
    CHECK(partition.piece_id(0) == "1.1.1");
    CHECK(partition.piece_id(1) == "2.1.1");
    CHECK(partition.piece_id(2) == "2.1.2");
    // the base piece holds the stem and the branch vertex
    const auto& base = partition.pieces[0];
    std::vector<std::string> names;
    for (SimplexId s : base.y_simplices) names.push_back(fx.p.Y().simplex_name(s));
    CHECK(names == std::vector<std::string>{"a0", "a1", "a0-a1"});
}

TEST_CASE("Borel partitions cover the source disjointly") {
    for (const char* name :
         {"figure2", "two_circles_with_interval", "identity", "double_cover_circle"}) {
        auto fx = load(name);
        auto partition = borel_partition(fx.p, stratify(fx.p));
        std::vector<int> hits(fx.p.Y().simplex_count(), 0);
        for (const auto& piece : partition.pieces)
            for (SimplexId s : piece.y_simplices) ++hits[s];
        INFO(name);
        for (int h : hits) CHECK(h == 1);
        // p is injective on every piece: each target simplex is hit once
        for (const auto& piece : partition.pieces) {
            std::map<SimplexId, int> image_count;
            for (SimplexId s : piece.y_simplices) ++image_count[fx.p.image_of[s]];
            for (const auto& [sigma, count] : image_count) CHECK(count == 1);
        }
    }
}

TEST_CASE("identity has one piece; the two-circle fixture has five") {
    auto id = load("identity");
    CHECK(borel_partition(id.p, stratify(id.p)).pieces.size() == 1);

    auto fx = load("two_circles_with_interval");
    auto partition = borel_partition(fx.p, stratify(fx.p));
    REQUIRE(partition.pieces.size() == 5);
    int over_two = 0, over_three = 0;
    for (const auto& piece : partition.pieces)
        (piece.fiber_count == 2 ? over_two : over_three) += 1;
    CHECK(over_two == 2);
    CHECK(over_three == 3);
}

TEST_CASE("connected double cover falls back to per-simplex pieces") {
    auto fx = load("double_cover_circle");
    auto partition = borel_partition(fx.p, stratify(fx.p));
    // one X piece per simplex, two branches each
    CHECK(partition.pieces.size() == 2u * fx.p.X().simplex_count());
    for (const auto& piece : partition.pieces) {
        CHECK(piece.x_simplices.size() == 1);
        CHECK(piece.y_simplices.size() == 1);
    }
}

TEST_CASE("index element takes the values 1 and 2 on figure2") {
    auto fx = load("figure2");
    auto mu = build_weight(fx.p, stratify(fx.p));
    auto partition = borel_partition(fx.p, stratify(fx.p));
    auto m = index_element(fx.p, mu, partition);

    CHECK(m.vertex_value(0) == Rat(1));
    CHECK(m.vertex_value(1) == Rat(1));
    CHECK(m.vertex_value(2) == Rat(2));
    CHECK(m.bound() == Rat(2));
    SimplexId branch = fx.p.Y().require_simplex({1, 2});
    CHECK(m.eval(Point::on_edge(fx.p.Y(), branch, Rat(1, 3u))) == Rat(2));
    SimplexId stem = fx.p.Y().require_simplex({0, 1});
    CHECK(m.eval(Point::on_edge(fx.p.Y(), stem, Rat(2, 5u))) == Rat(1));
}

TEST_CASE("index element is the constant n on an n-fold covering") {
    auto fx = load("double_cover_circle");
    auto mu = build_weight(fx.p, stratify(fx.p));
    auto partition = borel_partition(fx.p, stratify(fx.p));
    auto m = index_element(fx.p, mu, partition);
    for (const Point& y : sample_points(fx.p.Y(), 5)) CHECK(m.eval(y) == Rat(2));
}

TEST_CASE("index element on the two-circle fixture: 4 on the interval, reciprocal blends") {
    auto fx = load("two_circles_with_interval");
    auto ref = weight_from_json(fx.p, *fixture("two_circles_with_interval").reference_weight);
    auto partition = borel_partition(fx.p, stratify(fx.p));
    auto m = index_element(fx.p, ref, partition);

    const Complex& Y = fx.p.Y();
    SimplexId interval = Y.require_simplex({0, 4});  // PL-QU
    CHECK(m.eval(Point::on_edge(Y, interval, Rat(1, 3u))) == Rat(4));
    SimplexId long_arc = Y.require_simplex({1, 2});  // QL-RL
    CHECK(m.eval(Point::on_edge(Y, long_arc, Rat(1, 3u))) == Rat(2));
    // on the lower blend arc, weight 1/4 + t/4 gives index 4/(1+t)
    SimplexId lower = Y.require_simplex({0, 1});  // PL-QL
    CHECK(m.eval(Point::on_edge(Y, lower, Rat(1, 2u))) == Rat(8, 3u));
}

TEST_CASE("M times the weight is identically one") {
    for (const char* name : {"figure2", "two_circles_with_interval", "double_cover_circle"}) {
        auto fx = load(name);
        auto mu = build_weight(fx.p, stratify(fx.p));
        auto partition = borel_partition(fx.p, stratify(fx.p));
        auto m = index_element(fx.p, mu, partition);
        for (const Point& y : sample_points(fx.p.Y(), 6))
            CHECK(m.eval(y) * mu.eval(y) == Rat(1));
    }
}

TEST_CASE("reconstruction identity holds exactly") {
    for (const char* name : {"figure2", "two_circles_with_interval", "double_cover_circle"}) {
        auto fx = load(name);
        auto strat = stratify(fx.p);
        auto mu = build_weight(fx.p, strat);
        auto partition = borel_partition(fx.p, strat);

        std::mt19937 rng(55);
        PLFunction f = testing::random_pl(fx.p.Y(), rng, true);
        auto report =
            check_reconstruction(fx.p, mu, partition, f, sample_points(fx.p.Y(), 34));
        INFO(name);
        CHECK(report.exact);
        CHECK(report.failures == 0);
        CHECK(report.samples_checked >= 100);
    }
}

TEST_CASE("reconstruction with the unit collapses to mu times 1/mu") {
    auto fx = load("figure2");
    auto strat = stratify(fx.p);
    auto mu = build_weight(fx.p, strat);
    auto partition = borel_partition(fx.p, strat);
    auto one = PLFunction::constant(fx.p.Y(), RatC(Rat(1)));
    auto report = check_reconstruction(fx.p, mu, partition, one, sample_points(fx.p.Y(), 10));
    CHECK(report.exact);
}

TEST_CASE("overlapping pieces double-count and break the identity") {
    auto fx = load("figure2");
    auto strat = stratify(fx.p);
    auto mu = build_weight(fx.p, strat);
    auto partition = borel_partition(fx.p, strat);
    // corrupt: duplicate the base piece so its simplices are double counted
    partition.pieces.push_back(partition.pieces[0]);

    auto one = PLFunction::constant(fx.p.Y(), RatC(Rat(1)));
    SimplexId stem = fx.p.Y().require_simplex({0, 1});
    std::vector<Point> samples = {Point::on_edge(fx.p.Y(), stem, Rat(1, 3u))};
    auto report = check_reconstruction(fx.p, mu, partition, one, samples);
    CHECK_FALSE(report.exact);
    CHECK(report.max_residual == doctest::Approx(1.0));  // totals 2, expected 1
}

TEST_CASE("quasi-basis for the identity: index exactly one") {
    auto fx = load("identity");
    auto cls = classify(try_analyze(fx.parsed.source, fx.parsed.target, fx.parsed.vertex_map));
    auto qb = quasi_basis(fx.p, cls);
    CHECK(qb.fold == 1);
    CHECK(qb.elements.size() == 3);  // one per vertex star

    auto mu = build_weight(fx.p, stratify(fx.p));
    std::mt19937 rng(2);
    auto report = check_quasi_basis(qb, mu, testing::random_pl(fx.p.Y(), rng), 40, 1e-9);
    CHECK(report.within_tolerance);
    CHECK(report.index_exact);
}

TEST_CASE("quasi-basis for the double cover: 6 elements, index exactly two") {
    auto fx = load("double_cover_circle");
    auto cls = classify(try_analyze(fx.parsed.source, fx.parsed.target, fx.parsed.vertex_map));
    auto qb = quasi_basis(fx.p, cls);
    CHECK(qb.fold == 2);
    CHECK(qb.elements.size() == 6);  // 3 cover stars, 2 sheets each

    auto mu = build_weight(fx.p, stratify(fx.p));
    std::mt19937 rng(6);
    auto report = check_quasi_basis(qb, mu, testing::random_pl(fx.p.Y(), rng, true), 40, 1e-9);
    CHECK(report.within_tolerance);
    CHECK(report.max_reconstruction_error <= 1e-9);
    CHECK(report.index_exact);
}

TEST_CASE("quasi-basis refuses branched coverings") {
    auto fx = load("figure2");
    auto cls = classify(try_analyze(fx.parsed.source, fx.parsed.target, fx.parsed.vertex_map));
    CHECK_THROWS_AS(quasi_basis(fx.p, cls), Error);
}

TEST_CASE("projectivity verdicts across the dichotomy") {
    {
        auto parsed = map_from_json(fixture("interval_onto_circle").map);
        auto v = projectivity_verdict(parsed.source, parsed.target, parsed.vertex_map);
        CHECK(v.kind == ModuleKind::NoHilbertStructure);
        CHECK(v.classification == Verdict::NotOpen);
    }
    {
        auto parsed = map_from_json(fixture("figure2").map);
        auto v = projectivity_verdict(parsed.source, parsed.target, parsed.vertex_map);
        CHECK(v.kind == ModuleKind::CompleteNotProjective);
        REQUIRE(v.k_min.has_value());
        CHECK(*v.k_min == Rat(2));
    }
    {
        auto parsed = map_from_json(fixture("double_cover_circle").map);
        auto v = projectivity_verdict(parsed.source, parsed.target, parsed.vertex_map);
        CHECK(v.kind == ModuleKind::ProjectiveFinitelyGenerated);
        CHECK(*v.quasi_basis_size == 6);
        CHECK(*v.fold == 2);
    }
}
