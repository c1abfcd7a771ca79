#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brancov/gallery.hpp"
#include "brancov/json_io.hpp"
#include "brancov/surjection.hpp"

#include "support/random_maps.hpp"

#include <random>

using namespace brancov;

namespace {

SimplicialSurjection load(const std::string& name) {
    auto parsed = map_from_json(fixture(name).map);
    return analyze(parsed.source, parsed.target, parsed.vertex_map);
}

}  // namespace

TEST_CASE("identity on a circle is a valid surjection with unit fibers") {
    auto p = load("identity");
    for (SimplexId x = 0; x < p.X().simplex_count(); ++x) CHECK(p.fiber_count(x) == 1);
}

TEST_CASE("collapsing an edge is rejected as a degenerate fiber") {
    auto y = complex_from_json(Json{{"vertices", Json::array({"a", "b"})},
                                    {"simplices", Json::array({Json::array({"a", "b"})})}});
    auto x = complex_from_json(Json{{"vertices", Json::array({"v"})},
                                    {"simplices", Json::array()}});
    auto res = try_analyze(y, x, {{"a", "v"}, {"b", "v"}});
    REQUIRE_FALSE(res.ok());
    CHECK(res.failure->code == Errc::DegenerateFibers);
    CHECK(y->simplex_name(res.failure->witness) == "a-b");
}

TEST_CASE("missing target simplices are reported as non-surjective") {
    auto y = complex_from_json(Json{{"vertices", Json::array({"a"})},
                                    {"simplices", Json::array()}});
    auto x = complex_from_json(Json{{"vertices", Json::array({"v", "w"})},
                                    {"simplices", Json::array({Json::array({"v", "w"})})}});
    auto res = try_analyze(y, x, {{"a", "v"}});
    REQUIRE_FALSE(res.ok());
    CHECK(res.failure->code == Errc::NotSurjective);
}

TEST_CASE("figure2 analysis: max fiber 2, exact fiber transport") {
    auto p = load("figure2");
    auto strat = stratify(p);
    CHECK(strat.max_fibers == 2);

    // a quarter of the way along the interval: one preimage
    SimplexId stem = p.X().require_simplex({0, 1});  // x0-x1
    auto fib1 = fiber(p, Point::on_edge(p.X(), stem, Rat(1, 2u)));
    CHECK(fib1.size() == 1);

    // three quarters: two preimages, sorted by sheet, mapping back exactly
    SimplexId upper = p.X().require_simplex({1, 2});  // x1-x2
    Point x = Point::on_edge(p.X(), upper, Rat(1, 2u));
    auto fib2 = fiber(p, x);
    REQUIRE(fib2.size() == 2);
    CHECK(fib2[0].carrier < fib2[1].carrier);
    for (const auto& y : fib2) CHECK(p.push_forward(y) == x);
}

TEST_CASE("double cover: every point has two preimages") {
    auto p = load("double_cover_circle");
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(1, 7);
    for (SimplexId e : p.X().edges())
        for (int i = 0; i < 5; ++i)
            CHECK(fiber(p, Point::on_edge(p.X(), e, Rat(num(rng), 8u))).size() == 2);
    for (VertexId v = 0; v < p.X().vertex_count(); ++v)
        CHECK(fiber(p, Point::at_vertex(v)).size() == 2);
}

TEST_CASE("fiber counts are constant on each open simplex") {
    auto p = load("two_circles_with_interval");
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(1, 15);
    for (SimplexId e : p.X().edges()) {
        size_t expected = fiber(p, Point::on_edge(p.X(), e, Rat(1, 16u))).size();
        for (int i = 0; i < 8; ++i)
            CHECK(fiber(p, Point::on_edge(p.X(), e, Rat(num(rng), 16u))).size() == expected);
        CHECK(expected == static_cast<size_t>(p.fiber_count(e)));
    }
}

TEST_CASE("openness: identity open, wrapped interval not") {
    CHECK(is_open(load("identity")).open);
    CHECK(is_open(load("double_cover_circle")).open);

    auto p = load("interval_onto_circle");
    auto res = is_open(p);
    REQUIRE_FALSE(res.open);
    REQUIRE(res.witness.has_value());
    CHECK(p.Y().simplex_name(res.witness->first) == "a0");
    CHECK(p.X().simplex_name(res.witness->second) == "v0-v2");
}

TEST_CASE("openness witness for the extra interval over the branch value") {
    auto p = load("remark210");
    auto res = is_open(p);
    REQUIRE_FALSE(res.open);
    CHECK(p.Y().simplex_name(res.witness->first) == "b1");
    CHECK(p.X().simplex_name(res.witness->second) == "x1-x2");
}

TEST_CASE("stratification placement") {
    auto p = load("figure2");
    auto strat = stratify(p);
    auto name_all = [&](const std::vector<SimplexId>& ids) {
        std::vector<std::string> out;
        for (SimplexId s : ids) out.push_back(p.X().simplex_name(s));
        return out;
    };
    CHECK(name_all(strat.strata.at(1)) == std::vector<std::string>{"x0", "x1", "x0-x1"});
    CHECK(name_all(strat.strata.at(2)) == std::vector<std::string>{"x2", "x1-x2"});

    auto q = load("two_circles_with_interval");
    auto s2 = stratify(q);
    CHECK(s2.strata.at(2).size() == 5);
    CHECK(s2.strata.at(3).size() == 1);
    CHECK(q.X().simplex_name(s2.strata.at(3)[0]) == "P-Q");

    auto cover = load("double_cover_circle");
    CHECK(stratify(cover).strata.size() == 1);
}

TEST_CASE("strata closedness") {
    for (const char* name : {"figure2", "two_circles_with_interval", "identity"}) {
        auto p = load(name);
        CHECK(check_strata_closedness(p, stratify(p)).closed);
    }
    auto p = load("interval_onto_circle");
    auto res = check_strata_closedness(p, stratify(p));
    REQUIRE_FALSE(res.closed);
    // the face has the bigger fiber count
    CHECK(p.X().simplex_name(res.witness->first) == "v0");
}

TEST_CASE("every open map satisfies strata closedness") {
    // remark210 is a non-open map whose closedness nevertheless holds, so the
    // implication is strictly one-way.
    auto p = load("remark210");
    CHECK(check_strata_closedness(p, stratify(p)).closed);
    CHECK_FALSE(is_open(p).open);
}

TEST_CASE("regular neighborhood at the branch value of figure2") {
    auto p = load("figure2");
    Tower tower(p);
    auto rn = regular_neighborhood(tower, Point::at_vertex(1));  // x1
    CHECK(rn.level == 0);
    CHECK(rn.branches.size() == 1);  // single fiber point: the whole local tripod
    CHECK(rn.center_fiber.size() == 1);
    // the branch is the open star of the branch vertex a1
    const auto& q = tower.level(0);
    CHECK(rn.branches[0] == q.Y().open_star(q.Y().require_simplex({1})));
}

TEST_CASE("regular neighborhood at an attachment point of the two-circle fixture") {
    auto p = load("two_circles_with_interval");
    Tower tower(p);
    auto rn = regular_neighborhood(tower, Point::at_vertex(0));  // P
    REQUIRE(rn.branches.size() == 2);
    const auto& Y = tower.level(0).Y();
    // the branch of PL contains the interval start; the branch of PU does not
    SimplexId interval = Y.require_simplex({0, 4});  // PL-QU
    bool first_has = std::binary_search(rn.branches[0].begin(), rn.branches[0].end(), interval);
    bool second_has = std::binary_search(rn.branches[1].begin(), rn.branches[1].end(), interval);
    CHECK(first_has);
    CHECK_FALSE(second_has);
}

TEST_CASE("regular neighborhood for the identity is the star itself") {
    auto p = load("identity");
    Tower tower(p);
    for (VertexId v = 0; v < p.X().vertex_count(); ++v) {
        auto rn = regular_neighborhood(tower, Point::at_vertex(v));
        CHECK(rn.branches.size() == 1);
        CHECK(rn.branches[0] == rn.star);
    }
}

TEST_CASE("classification of the gallery") {
    CHECK(classify(map_from_json(fixture("figure2").map).source,
                   map_from_json(fixture("figure2").map).target,
                   map_from_json(fixture("figure2").map).vertex_map)
              .verdict == Verdict::BranchedCovering);

    auto parsed = map_from_json(fixture("double_cover_circle").map);
    auto cls = classify(parsed.source, parsed.target, parsed.vertex_map);
    CHECK(cls.verdict == Verdict::Covering);
    CHECK(cls.n_fold == 2);

    auto bad = map_from_json(fixture("interval_onto_circle").map);
    CHECK(classify(bad.source, bad.target, bad.vertex_map).verdict == Verdict::NotOpen);
}

TEST_CASE("covering verdict implies constant fibers everywhere") {
    auto p = load("double_cover_circle");
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(1, 31);
    for (SimplexId e : p.X().edges())
        for (int i = 0; i < 10; ++i)
            CHECK(fiber(p, Point::on_edge(p.X(), e, Rat(num(rng), 32u))).size() == 2);
}

TEST_CASE("open maps always satisfy strata closedness") {
    std::mt19937 rng(777);
    for (int i = 0; i < 30; ++i) {
        auto rm = testing::random_surjection(rng);
        auto p = analyze(rm.source, rm.target, rm.vertex_map);
        REQUIRE(is_open(p).open);
        INFO("case ", i);
        CHECK(check_strata_closedness(p, stratify(p)).closed);
    }
}

TEST_CASE("disconnected target: per-component verdicts") {
    // two disjoint edges, identity map
    Json cx{{"vertices", Json::array({"a", "b", "c", "d"})},
            {"simplices", Json::array({Json::array({"a", "b"}), Json::array({"c", "d"})})}};
    auto parsed = map_from_json(
        Json{{"source", cx}, {"target", cx},
             {"vertex_map", Json{{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}}}});
    auto cls = classify(parsed.source, parsed.target, parsed.vertex_map);
    CHECK(cls.verdict == Verdict::BranchedCovering);  // Covering is reserved for connected targets
    REQUIRE(cls.components.size() == 2);
    for (const auto& comp : cls.components) {
        CHECK(comp.verdict == Verdict::Covering);
        CHECK(comp.n_fold == 1);
    }
}
