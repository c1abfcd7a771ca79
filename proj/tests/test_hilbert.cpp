#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brancov/gallery.hpp"
#include "brancov/hilbert.hpp"
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

PLFunction pl(const Complex& cx, std::vector<Rat> values) {
    PLFunction f{&cx, {}};
    for (auto& v : values) f.values.push_back(RatC(std::move(v)));
    return f;
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

TEST_CASE("module action: unit factors") {
    auto fx = load("double_cover_circle");
    std::mt19937 rng(1);
    PLFunction f = testing::random_pl(fx.p.Y(), rng, true);
    PLFunction xi = testing::random_pl(fx.p.X(), rng, true);
    PLFunction one_y = PLFunction::constant(fx.p.Y(), RatC(Rat(1)));
    PLFunction one_x = PLFunction::constant(fx.p.X(), RatC(Rat(1)));

    auto pullback = module_action(fx.p, one_y, xi);
    auto unchanged = module_action(fx.p, f, one_x);
    for (const Point& y : sample_points(fx.p.Y(), 5)) {
        CHECK(pullback.eval(y) == xi.eval(fx.p.push_forward(y)));
        CHECK(unchanged.eval(y) == f.eval(y));
    }
}

TEST_CASE("module action of two parameters is the exact quadratic") {
    // identity on a single edge: f = t, xi = s; product t*s(t) = t^2
    auto cx = std::make_shared<const Complex>(
        Complex::validate(RawComplex{{"a", "b"}, {{"a", "b"}}, {}}));
    auto p = analyze(cx, cx, {{"a", "a"}, {"b", "b"}});
    auto prod = module_action(p, pl(*cx, {Rat(0), Rat(1)}), pl(*cx, {Rat(0), Rat(1)}));
    const auto& ep = prod.edges.at(cx->edges()[0]);
    REQUIRE(ep.polys.size() == 1);
    CHECK(ep.polys[0] == Poly({RatC(Rat(0)), RatC(Rat(0)), RatC(Rat(1))}));
}

TEST_CASE("module action respects sheet orientation") {
    // edge mapped onto an edge with reversed vertex order: s(t) = 1-t
    auto y = std::make_shared<const Complex>(
        Complex::validate(RawComplex{{"u", "v"}, {{"u", "v"}}, {}}));
    auto x = std::make_shared<const Complex>(
        Complex::validate(RawComplex{{"a", "b"}, {{"a", "b"}}, {}}));
    auto p = analyze(y, x, {{"u", "b"}, {"v", "a"}});
    auto prod = module_action(p, pl(*y, {Rat(0), Rat(1)}), pl(*x, {Rat(0), Rat(1)}));
    // f(t) = t, xi(p(t)) = 1-t, product t(1-t)
    const auto& ep = prod.edges.at(y->edges()[0]);
    CHECK(ep.polys[0] == Poly({RatC(Rat(0)), RatC(Rat(1)), RatC(Rat(-1))}));
}

TEST_CASE("inner product of units is the constant one") {
    auto fx = load("figure2");
    auto mu = build_weight(fx.p, stratify(fx.p));
    auto one = PLFunction::constant(fx.p.Y(), RatC(Rat(1)));
    auto ip = inner_product(fx.p, mu, one, one);
    for (const auto& v : ip.vertex_values) CHECK(v == RatC(Rat(1)));
    for (const auto& [e, ep] : ip.edges)
        for (const auto& poly : ep.polys) CHECK(poly == Poly::constant(RatC(Rat(1))));
}

TEST_CASE("inner product of a branch ramp on figure2: frozen polynomials") {
    auto fx = load("figure2");
    auto mu = build_weight(fx.p, stratify(fx.p));
    // f = 1 at the branch vertex and along one branch end, ramping from 0 on
    // the stem, 0 on the other branch end
    PLFunction f = pl(fx.p.Y(), {Rat(0), Rat(1), Rat(1), Rat(0)});
    auto ip = inner_product(fx.p, mu, f, f);

    const Complex& X = fx.p.X();
    // stem: single sheet with weight 1: |f|^2 = t^2
    const auto& stem = ip.edges.at(X.require_simplex({0, 1}));
    REQUIRE(stem.polys.size() == 1);
    CHECK(stem.polys[0] == Poly({RatC(Rat(0)), RatC(Rat(0)), RatC(Rat(1))}));
    // branch region: 1/2 * 1 + 1/2 * (1-t)^2 = 1 - t + t^2/2
    const auto& branch = ip.edges.at(X.require_simplex({1, 2}));
    REQUIRE(branch.polys.size() == 1);
    CHECK(branch.polys[0] == Poly({RatC(Rat(1)), RatC(Rat(-1)), RatC(Rat(1, 2u))}));
    // vertex values: 1 at x1, 1/2 at x2
    CHECK(ip.vertex_values[1] == RatC(Rat(1)));
    CHECK(ip.vertex_values[2] == RatC(Rat(1, 2u)));
    CHECK(check_continuity(ip).continuous);
}

TEST_CASE("two-fold cover: inner product averages the two sheets") {
    auto fx = load("double_cover_circle");
    auto mu = build_weight(fx.p, stratify(fx.p));
    std::mt19937 rng(9);
    PLFunction f = testing::random_pl(fx.p.Y(), rng, true);
    for (const Point& x : sample_points(fx.p.X(), 6)) {
        auto fib = fiber(fx.p, x);
        REQUIRE(fib.size() == 2);
        RatC manual = Rat(1, 2u) * (f.eval(fib[0]).conj() * f.eval(fib[0])) +
                      Rat(1, 2u) * (f.eval(fib[1]).conj() * f.eval(fib[1]));
        CHECK(inner_product_at(fx.p, mu, as_function(f), as_function(f), x) == manual);
    }
}

TEST_CASE("sesquilinearity and conjugate symmetry at sample points") {
    auto fx = load("two_circles_with_interval");
    auto mu = build_weight(fx.p, stratify(fx.p));
    std::mt19937 rng(21);
    PLFunction f = testing::random_pl(fx.p.Y(), rng, true);
    PLFunction g = testing::random_pl(fx.p.Y(), rng, true);
    PLFunction xi = testing::random_pl(fx.p.X(), rng, true);
    auto g_xi = module_action(fx.p, g, xi);

    for (const Point& x : sample_points(fx.p.X(), 4)) {
        RatC lhs = inner_product_at(fx.p, mu, as_function(f),
                                    [&](const Point& y) { return g_xi.eval(y); }, x);
        RatC rhs = inner_product_at(fx.p, mu, as_function(f), as_function(g), x) * xi.eval(x);
        CHECK(lhs == rhs);

        RatC fg = inner_product_at(fx.p, mu, as_function(f), as_function(g), x);
        RatC gf = inner_product_at(fx.p, mu, as_function(g), as_function(f), x);
        CHECK(fg == gf.conj());
    }
}

TEST_CASE("positivity of <f,f> as an exact minimum") {
    auto fx = load("two_circles_with_interval");
    auto mu = build_weight(fx.p, stratify(fx.p));
    std::mt19937 rng(33);
    for (int i = 0; i < 10; ++i) {
        PLFunction f = testing::random_pl(fx.p.Y(), rng, i % 2 == 0);
        auto ip = inner_product(fx.p, mu, f, f);
        CHECK(min_value(ip).exact.sign() >= 0);
    }
}

TEST_CASE("continuity: gallery inner products, discontinuous index element") {
    auto fx = load("figure2");
    auto mu = build_weight(fx.p, stratify(fx.p));
    std::mt19937 rng(17);
    for (int i = 0; i < 8; ++i) {
        PLFunction f = testing::random_pl(fx.p.Y(), rng, true);
        PLFunction g = testing::random_pl(fx.p.Y(), rng, true);
        CHECK(check_continuity(inner_product(fx.p, mu, f, g)).continuous);
    }

    // the index element jumps at the branch vertex: limit 2, value 1
    auto partition = borel_partition(fx.p, stratify(fx.p));
    auto m = index_element(fx.p, mu, partition);
    auto report = check_index_continuity(m);
    REQUIRE_FALSE(report.continuous);
    bool found = false;
    for (const auto& issue : report.issues) {
        if (issue.vertex && *issue.vertex == 1) {
            found = true;
            CHECK(issue.expected == RatC(Rat(1)));  // value at the branch vertex
            CHECK(issue.actual == RatC(Rat(2)));    // one-sided limit from a branch
        }
    }
    CHECK(found);

    CHECK(check_continuity(PiecewiseFunction::constant(fx.p.X(), RatC(Rat(3)))).continuous);
}

TEST_CASE("sup norm: exact extremization") {
    auto cx = Complex::validate(RawComplex{{"a", "b"}, {{"a", "b"}}, {}});

    PiecewiseFunction h = PiecewiseFunction::constant(cx, RatC(Rat(-7, 2u)));
    CHECK(sup_norm(h).exact == QuadExt(Rat(7, 2u)));

    // t(1-t): maximum 1/4 at t = 1/2
    h.edges[cx.edges()[0]] = PiecewiseFunction::EdgePieces{
        {Rat(0), Rat(1)}, {Poly({RatC(Rat(0)), RatC(Rat(1)), RatC(Rat(-1))})}};
    h.vertex_values = {RatC(), RatC()};
    auto sn = sup_norm(h);
    CHECK(sn.exact == QuadExt(Rat(1, 4u)));
    CHECK(sn.value == doctest::Approx(0.25).epsilon(1e-12));

    // t^2(1-t): maximum 4/27 at t = 2/3
    h.edges[cx.edges()[0]] = PiecewiseFunction::EdgePieces{
        {Rat(0), Rat(1)}, {Poly({RatC(Rat(0)), RatC(Rat(0)), RatC(Rat(1)), RatC(Rat(-1))})}};
    auto sn2 = sup_norm(h);
    CHECK(sn2.exact == QuadExt(Rat(4, 27u)));
    CHECK(sn2.value == doctest::Approx(4.0 / 27).epsilon(1e-12));
}

TEST_CASE("norm equivalence on figure2: ratios within [1/2, 1]") {
    auto fx = load("figure2");
    auto mu = build_weight(fx.p, stratify(fx.p));
    std::vector<PLFunction> family;
    for (VertexId w = 0; w < fx.p.Y().vertex_count(); ++w)
        family.push_back(PLFunction::hat(fx.p.Y(), w));
    family.push_back(PLFunction::constant(fx.p.Y(), RatC(Rat(1))));

    auto report = check_norm_equivalence(fx.p, mu, family);
    CHECK(report.max_fibers == 2);
    CHECK(report.all_upper);
    CHECK(report.all_lower);
    CHECK(report.all_weight_lower);
    CHECK(report.worst_ratio >= 0.5 - 1e-12);
    // f = 1: ratio exactly one
    CHECK(report.cases.back().ip_sup == QuadExt(Rat(1)));
    CHECK(report.cases.back().f_norm_sq == Rat(1));
}

TEST_CASE("norm equivalence on the two-circle fixture: weight bound 1/4") {
    auto fx = load("two_circles_with_interval");
    auto mu = build_weight(fx.p, stratify(fx.p));
    // f supported on the lower circle only
    PLFunction f = pl(fx.p.Y(), {Rat(1), Rat(1), Rat(1), Rat(0), Rat(0), Rat(0)});
    auto report = check_norm_equivalence(fx.p, mu, {f});
    CHECK(report.min_weight == Rat(1, 4u));
    CHECK(report.all_upper);
    CHECK(report.all_weight_lower);               // ratio >= min weight = 1/4
    CHECK(report.worst_ratio >= 0.25 - 1e-12);
}
