#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brancov/gallery.hpp"
#include "brancov/json_io.hpp"
#include "brancov/weights.hpp"

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

}  // namespace

TEST_CASE("partition of unity: whole-complex cover is the constant one") {
    auto cx = complex_from_json(fixture("identity").map.at("target"));
    std::vector<SimplexId> all(cx->simplex_count());
    for (SimplexId s = 0; s < cx->simplex_count(); ++s) all[s] = s;
    auto pou = partition_of_unity(*cx, {all});
    REQUIRE(pou.functions.size() == 1);
    for (const auto& v : pou.functions[0].values) CHECK(v == RatC(Rat(1)));
}

TEST_CASE("partition of unity: endpoint stars of an interval give the two hats") {
    auto cx = std::make_shared<const Complex>(
        Complex::validate(RawComplex{{"a", "b"}, {{"a", "b"}}, {}}));
    auto pou = partition_of_unity(*cx, {cx->open_star(0), cx->open_star(1)});
    REQUIRE(pou.functions.size() == 2);
    SimplexId e = cx->edges()[0];
    auto phi0 = [&](const Rat& t) { return pou.functions[0].eval(Point::on_edge(*cx, e, t)); };
    CHECK(phi0(Rat(0)) == RatC(Rat(1)));
    CHECK(phi0(Rat(1, 2u)) == RatC(Rat(1, 2u)));
    CHECK(phi0(Rat(1)) == RatC(Rat(0)));
    // exact unit sum
    for (int k = 0; k <= 4; ++k) {
        Rat t(k, 4u);
        Point pt = t == 0 ? Point::at_vertex(0) : t == 1 ? Point::at_vertex(1)
                                                         : Point::on_edge(*cx, e, t);
        CHECK(pou.functions[0].eval(pt) + pou.functions[1].eval(pt) == RatC(Rat(1)));
    }
}

TEST_CASE("partition of unity: overlapping two-set cover of a 2-edge interval") {
    auto cx = std::make_shared<const Complex>(
        Complex::validate(RawComplex{{"a", "m", "b"}, {{"a", "m"}, {"m", "b"}}, {}}));
    // both sets contain the middle star; hats split by multiplicity
    auto left = cx->open_star(0), right = cx->open_star(2), mid = cx->open_star(1);
    auto join = [](std::vector<SimplexId> a, const std::vector<SimplexId>& b) {
        a.insert(a.end(), b.begin(), b.end());
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        return a;
    };
    auto pou = partition_of_unity(*cx, {join(left, mid), join(right, mid)});
    SimplexId e0 = cx->require_simplex({0, 1});
    auto phi0 = [&](const Point& pt) { return pou.functions[0].eval(pt); };
    CHECK(phi0(Point::at_vertex(0)) == RatC(Rat(1)));
    CHECK(phi0(Point::on_edge(*cx, e0, Rat(1, 2u))) == RatC(Rat(3, 4u)));
    CHECK(phi0(Point::at_vertex(1)) == RatC(Rat(1, 2u)));
    CHECK(phi0(Point::at_vertex(2)) == RatC(Rat(0)));
    for (VertexId v = 0; v < 3; ++v)
        CHECK(pou.functions[0].values[v] + pou.functions[1].values[v] == RatC(Rat(1)));
}

TEST_CASE("partition of unity rejections") {
    auto cx = std::make_shared<const Complex>(
        Complex::validate(RawComplex{{"a", "m", "b"}, {{"a", "m"}, {"m", "b"}}, {}}));
    // endpoint stars miss the middle vertex
    CHECK_THROWS_AS(partition_of_unity(*cx, {cx->open_star(0), cx->open_star(2)}), Error);
    // a non-open set (vertex without its star)
    CHECK_THROWS_AS(partition_of_unity(*cx, {{0}}), Error);
}

TEST_CASE("constructed weight for figure2 is exactly 1 and 1/2") {
    auto fx = load("figure2");
    auto mu = build_weight(fx.p, stratify(fx.p));

    CHECK(mu.vertex_values[0] == Rat(1));        // a0
    CHECK(mu.vertex_values[1] == Rat(1));        // a1, the branch vertex
    CHECK(mu.vertex_values[2] == Rat(1, 2u));    // a2
    CHECK(mu.vertex_values[3] == Rat(1, 2u));    // a3

    const Complex& Y = fx.p.Y();
    CHECK(mu.edge_profiles.at(Y.require_simplex({0, 1})) == PLProfile::constant(Rat(1)));
    CHECK(mu.edge_profiles.at(Y.require_simplex({1, 2})) == PLProfile::constant(Rat(1, 2u)));
    CHECK(mu.edge_profiles.at(Y.require_simplex({1, 3})) == PLProfile::constant(Rat(1, 2u)));
}

TEST_CASE("constructed weight on coverings is the constant 1/n") {
    for (const char* name : {"identity", "double_cover_circle"}) {
        auto fx = load(name);
        auto strat = stratify(fx.p);
        auto mu = build_weight(fx.p, strat);
        Rat expected(1, static_cast<unsigned>(strat.max_fibers));
        for (const auto& v : mu.vertex_values) CHECK(v == expected);
        for (const auto& [e, prof] : mu.edge_profiles) CHECK(prof == PLProfile::constant(expected));
    }
}

TEST_CASE("constructed weight for the two-circle fixture matches the reference profile") {
    auto fx = load("two_circles_with_interval");
    auto mu = build_weight(fx.p, stratify(fx.p));
    auto ref = weight_from_json(fx.p, *fixture("two_circles_with_interval").reference_weight);

    CHECK(mu.vertex_values == ref.vertex_values);
    for (const auto& [e, prof] : ref.edge_profiles) CHECK(mu.edge_profiles.at(e) == prof);

    // spot values: 1/4 on the interval, the two linear blends on the arcs
    const Complex& Y = fx.p.Y();
    CHECK(mu.edge_profiles.at(Y.require_simplex({0, 4})) == PLProfile::constant(Rat(1, 4u)));
    auto lower = mu.edge_profiles.at(Y.require_simplex({0, 1}));  // PL-QL
    CHECK(lower.limit_at_0() == Rat(1, 4u));
    CHECK(lower.limit_at_1() == Rat(1, 2u));
    CHECK(lower.eval(Rat(1, 2u)) == Rat(3, 8u));
}

TEST_CASE("validate_weight accepts constructed weights across the gallery") {
    for (const char* name : {"figure2", "two_circles_with_interval", "identity",
                             "double_cover_circle"}) {
        auto fx = load(name);
        auto mu = build_weight(fx.p, stratify(fx.p));
        auto report = validate_weight(fx.p, mu);
        INFO(name);
        CHECK(report.valid);
        CHECK(report.issues.empty());
    }
}

TEST_CASE("the explicit reference weight validates with exact fiber sums") {
    auto fx = load("two_circles_with_interval");
    auto ref = weight_from_json(fx.p, *fixture("two_circles_with_interval").reference_weight);
    auto report = validate_weight(fx.p, ref);
    CHECK(report.valid);
    CHECK(report.min_weight == Rat(1, 4u));
    CHECK(report.fiber_sum_checks == 6);  // 3 vertices + 3 edges
}

TEST_CASE("weight of constant 1 on a double cover fails fiber sums") {
    auto fx = load("double_cover_circle");
    WeightFunction one;
    one.map = &fx.p;
    one.vertex_values.assign(fx.p.Y().vertex_count(), Rat(1));
    for (SimplexId e : fx.p.Y().edges()) one.edge_profiles[e] = PLProfile::constant(Rat(1));
    auto report = validate_weight(fx.p, one);
    CHECK_FALSE(report.valid);
    bool fiber_sum_issue = false;
    for (const auto& issue : report.issues) fiber_sum_issue |= issue.kind == "fiber_sum";
    CHECK(fiber_sum_issue);
}

TEST_CASE("a weight breaking branch limits is rejected") {
    auto fx = load("two_circles_with_interval");
    auto mu = build_weight(fx.p, stratify(fx.p));
    // flatten the lower-arc blend: fiber sums over the short arc break
    mu.edge_profiles[fx.p.Y().require_simplex({0, 1})] = PLProfile::constant(Rat(1, 2u));
    auto report = validate_weight(fx.p, mu);
    CHECK_FALSE(report.valid);
}

TEST_CASE("weight construction refuses non-open maps") {
    auto parsed = map_from_json(fixture("interval_onto_circle").map);
    auto p = analyze(parsed.source, parsed.target, parsed.vertex_map);
    CHECK_THROWS_AS(build_weight(p, stratify(p)), Error);
}

TEST_CASE("random branched fixtures: constructed weights validate exactly") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 25; ++i) {
        auto rm = testing::random_surjection(rng);
        auto p = analyze(rm.source, rm.target, rm.vertex_map);
        REQUIRE(is_open(p).open);
        auto mu = build_weight(p, stratify(p));
        auto report = validate_weight(p, mu);
        INFO("case ", i);
        CHECK(report.valid);
        CHECK(report.min_weight > 0);
        // vertex weights are reciprocal fiber counts, so min mu >= 1/N^2
        int N = stratify(p).max_fibers;
        CHECK(report.min_weight >= Rat(1, static_cast<unsigned>(N * N)));
    }
}

TEST_CASE("weight profiles restrict exactly to tower levels") {
    auto fx = load("two_circles_with_interval");
    auto mu = build_weight(fx.p, stratify(fx.p));
    Tower tower(fx.p);
    const auto& p1 = tower.level(1);
    for (SimplexId e : p1.Y().edges()) {
        auto prof = mu.profile_on(tower, 1, e);
        // interior fine points evaluate consistently with the base weight
        Point mid = Point::on_edge(p1.Y(), e, Rat(1, 2u));
        Point base = tower.y_point_at(mid, 1, 0);
        CHECK(prof.eval(Rat(1, 2u)) == mu.eval(base));
    }
}
