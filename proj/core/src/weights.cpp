#include "brancov/weights.hpp"

#include "brancov/hilbert.hpp"
#include "brancov/index.hpp"

#include <algorithm>
#include <set>

namespace brancov {

bool sheet_aligned(const SimplicialSurjection& p, SimplexId y_edge) {
    const auto& yv = p.Y().simplex(y_edge);
    const auto& xv = p.X().simplex(p.image_of[y_edge]);
    return p.vertex_map[yv[0]] == xv[0];
}

Rat WeightFunction::eval(const Point& y) const {
    const Complex& Y = map->Y();
    if (Y.is_vertex(y.carrier)) return vertex_values[Y.simplex(y.carrier)[0]];
    if (!Y.is_edge(y.carrier))
        throw Error(Errc::NotOneDimensional, "weights live on the 1-skeleton");
    return edge_profiles.at(y.carrier).eval(y.edge_param());
}

Rat WeightFunction::limit_at(SimplexId y_edge, int end) const {
    const auto& prof = edge_profiles.at(y_edge);
    return end == 0 ? prof.limit_at_0() : prof.limit_at_1();
}

PLProfile WeightFunction::profile_in_target_param(SimplexId y_edge) const {
    const auto& prof = edge_profiles.at(y_edge);
    return sheet_aligned(*map, y_edge) ? prof : prof.reversed();
}

Rat WeightFunction::min_value() const {
    Rat m = vertex_values.empty() ? Rat(1) : vertex_values.front();
    for (const auto& v : vertex_values) m = std::min(m, v);
    for (const auto& [e, prof] : edge_profiles) m = std::min(m, prof.min_value());
    return m;
}

Rat WeightFunction::max_value() const {
    Rat m = vertex_values.empty() ? Rat(1) : vertex_values.front();
    for (const auto& v : vertex_values) m = std::max(m, v);
    for (const auto& [e, prof] : edge_profiles) m = std::max(m, prof.max_value());
    return m;
}

PLProfile WeightFunction::profile_on(const Tower& tower, int level,
                                     SimplexId y_edge_at_level) const {
    if (level == 0) return edge_profiles.at(y_edge_at_level);
    const Complex& Yl = tower.level(level).Y();
    const auto& vs = Yl.simplex(y_edge_at_level);
    Point a = tower.y_point_at(Point::at_vertex(vs[0]), level, 0);
    Point b = tower.y_point_at(Point::at_vertex(vs[1]), level, 0);

    const Complex& Y0 = map->Y();
    SimplexId base_edge = Y0.is_edge(a.carrier) ? a.carrier
                          : Y0.is_edge(b.carrier) ? b.carrier
                                                  : -1;
    if (base_edge < 0)
        throw Error(Errc::NotOneDimensional, "fine edge does not descend from a base edge");

    auto param_on = [&](const Point& pt) -> Rat {
        if (pt.carrier == base_edge) return pt.edge_param();
        // a vertex of the base edge
        VertexId v = Y0.simplex(pt.carrier)[0];
        return Y0.simplex(base_edge)[0] == v ? Rat(0) : Rat(1);
    };
    Rat pa = param_on(a), pb = param_on(b);
    const auto& prof = edge_profiles.at(base_edge);
    if (pa < pb) return prof.restrict(pa, pb);
    return prof.restrict(pb, pa).reversed();
}

PartitionOfUnity partition_of_unity(const Complex& cx,
                                    std::vector<std::vector<SimplexId>> cover) {
    std::vector<std::set<SimplexId>> sets;
    for (const auto& raw : cover) {
        std::set<SimplexId> s(raw.begin(), raw.end());
        for (SimplexId member : s) {
            if (member < 0 || member >= cx.simplex_count())
                throw Error(Errc::UnknownSimplex, "cover references unknown simplex");
            for (SimplexId up : cx.proper_cofaces(member))
                if (!s.count(up))
                    throw Error(Errc::MalformedInput,
                                "cover set is not open: missing coface " + cx.simplex_name(up));
        }
        sets.push_back(std::move(s));
    }

    for (SimplexId s = 0; s < cx.simplex_count(); ++s) {
        bool covered = false;
        for (const auto& set : sets) covered = covered || set.count(s);
        if (!covered)
            throw Error(Errc::NotACover, "simplex " + cx.simplex_name(s) + " is not covered");
    }

    // Multiplicity of each vertex across the cover; splitting its hat evenly
    // keeps the family PL with an exact unit sum.
    std::vector<int> mult(cx.vertex_count(), 0);
    for (VertexId v = 0; v < cx.vertex_count(); ++v)
        for (const auto& set : sets)
            if (set.count(v)) ++mult[v];  // 0-simplex id equals vertex id

    PartitionOfUnity pou;
    pou.cx = &cx;
    pou.cover = std::move(cover);
    for (const auto& set : sets) {
        PLFunction phi{&cx, std::vector<RatC>(cx.vertex_count(), RatC())};
        for (VertexId v = 0; v < cx.vertex_count(); ++v)
            if (set.count(v)) phi.values[v] = RatC(Rat(1, static_cast<unsigned>(mult[v])));
        pou.functions.push_back(std::move(phi));
    }
    return pou;
}

WeightFunction build_weight(const SimplicialSurjection& p, const Stratification& strat) {
    if (p.X().dimension() > 1 || p.Y().dimension() > 1)
        throw Error(Errc::NotOneDimensional, "weight construction handles 1-complexes");
    if (!is_open(p).open)
        throw Error(Errc::PreconditionViolated,
                    "weight construction requires an open map (branched covering)");

    WeightFunction mu;
    mu.map = &p;

    // Base rule at every vertex: the reciprocal fiber count. The inductive
    // blend below converges to exactly these values at stratum boundaries.
    mu.vertex_values.resize(p.Y().vertex_count());
    for (VertexId w = 0; w < p.Y().vertex_count(); ++w) {
        SimplexId xv = p.image_of[w];  // image 0-simplex, id equals the target vertex id
        mu.vertex_values[w] = Rat(1, static_cast<unsigned>(strat.count_of[xv]));
    }

    for (SimplexId e : p.Y().edges()) {
        SimplexId sigma = p.image_of[e];
        int c = strat.count_of[sigma];
        const auto& yv = p.Y().simplex(e);

        // Weight at each end of the sheet, in the sheet's own parameter:
        // 1/c away from lower strata, and mu(w)/i near a lower-stratum vertex
        // whose fiber vertex w lies on i local sheets.
        auto end_value = [&](VertexId w) -> Rat {
            SimplexId xv = p.image_of[w];
            int cv = strat.count_of[xv];
            if (cv == c) return Rat(1, static_cast<unsigned>(c));
            auto local = p.sheets_through(sigma, w);
            return Rat(1) / (Rat(cv) * Rat(static_cast<unsigned>(local.size())));
        };
        mu.edge_profiles[e] = PLProfile::segment(end_value(yv[0]), end_value(yv[1]));
    }
    return mu;
}

namespace {

void add_issue(WeightReport& report, std::string kind, std::string detail) {
    report.valid = false;
    report.issues.push_back(WeightIssue{std::move(kind), std::move(detail)});
}

}  // namespace

WeightReport validate_weight(const SimplicialSurjection& p, const WeightFunction& mu) {
    WeightReport report;
    const Complex& Y = p.Y();
    const Complex& X = p.X();

    if (static_cast<int>(mu.vertex_values.size()) != Y.vertex_count()) {
        add_issue(report, "shape", "vertex value count does not match the source");
        return report;
    }
    for (SimplexId e : Y.edges()) {
        if (!mu.edge_profiles.count(e)) {
            add_issue(report, "shape", "no profile on edge " + Y.simplex_name(e));
            return report;
        }
    }

    report.min_weight = mu.min_value();
    report.max_weight = mu.max_value();

    for (VertexId w = 0; w < Y.vertex_count(); ++w) {
        const Rat& v = mu.vertex_values[w];
        if (v <= 0 || v > 1)
            add_issue(report, "positivity",
                      "weight at vertex " + Y.vertex_name(w) + " is " + format_rational(v));
    }
    for (const auto& [e, prof] : mu.edge_profiles) {
        if (prof.min_value() <= 0 || prof.max_value() > 1)
            add_issue(report, "positivity", "weight on edge " + Y.simplex_name(e) +
                                                " leaves (0,1]");
    }

    // Fiber sums, as exact identities: one per target vertex, and one exact
    // PL identity per target edge (subsumes every pointwise sample).
    for (VertexId v = 0; v < X.vertex_count(); ++v) {
        Rat sum = 0;
        for (SimplexId w : p.sheets_over[v]) sum += mu.vertex_values[Y.simplex(w)[0]];
        ++report.fiber_sum_checks;
        if (sum != 1)
            add_issue(report, "fiber_sum", "fiber over vertex " + X.vertex_name(v) + " sums to " +
                                               format_rational(sum));
    }
    for (SimplexId sigma : X.edges()) {
        PLProfile sum = PLProfile::constant(Rat(0));
        for (SimplexId sheet : p.sheets_over[sigma])
            sum = sum + mu.profile_in_target_param(sheet);
        ++report.fiber_sum_checks;
        if (!(sum == PLProfile::constant(Rat(1))))
            add_issue(report, "fiber_sum",
                      "fiber sums over edge " + X.simplex_name(sigma) + " are not identically 1");
    }

    // Continuity within each Borel piece: a profile limit at a vertex end
    // must match the vertex value whenever edge and vertex share a piece.
    auto partition = borel_partition(p, stratify(p));
    for (SimplexId e : Y.edges()) {
        const auto& yv = Y.simplex(e);
        for (int end : {0, 1}) {
            if (partition.piece_of[e] != partition.piece_of[yv[end]]) continue;
            Rat limit = mu.limit_at(e, end);
            if (limit != mu.vertex_values[yv[end]])
                add_issue(report, "piece_continuity",
                          "jump inside a piece at vertex " + Y.vertex_name(yv[end]) +
                              " along edge " + Y.simplex_name(e));
        }
    }

    // Branch-limit consistency: along every target edge incident to p(w), the
    // sheet limits at w must sum to mu(w). This is exactly continuity of
    // every induced inner product at the vertex.
    for (VertexId w = 0; w < Y.vertex_count(); ++w) {
        SimplexId xv = p.image_of[w];
        for (SimplexId sigma : X.proper_cofaces(xv)) {
            if (!X.is_edge(sigma)) continue;
            Rat sum = 0;
            for (SimplexId sheet : p.sheets_through(sigma, w)) {
                const auto& yv = Y.simplex(sheet);
                sum += mu.limit_at(sheet, yv[0] == w ? 0 : 1);
            }
            if (sum != mu.vertex_values[w])
                add_issue(report, "branch_limit",
                          "sheet limits at vertex " + Y.vertex_name(w) + " over edge " +
                              X.simplex_name(sigma) + " sum to " + format_rational(sum) +
                              ", expected " + format_rational(mu.vertex_values[w]));
        }
    }

    // Delegated check: induced inner products of the hat family must be
    // continuous on the target.
    if (report.valid) {
        for (VertexId w = 0; w < Y.vertex_count(); ++w) {
            PLFunction hat = PLFunction::hat(Y, w);
            auto ip = inner_product(p, mu, hat, hat);
            auto cont = check_continuity(ip);
            if (!cont.continuous) {
                add_issue(report, "inner_product_continuity",
                          "<hat,hat> for vertex " + Y.vertex_name(w) +
                              " is discontinuous on the target");
            }
        }
    }
    return report;
}

}  // namespace brancov
