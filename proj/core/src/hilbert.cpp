#include "brancov/hilbert.hpp"

#include <algorithm>
#include <set>

namespace brancov {

namespace {

using EdgePieces = PiecewiseFunction::EdgePieces;

/// Linear polynomial pieces of a PL profile.
EdgePieces pieces_of(const PLProfile& prof) {
    EdgePieces out;
    const auto& s = prof.samples();
    for (const auto& [t, v] : s) out.breaks.push_back(t);
    for (size_t i = 0; i + 1 < s.size(); ++i) {
        const auto& [t0, v0] = s[i];
        const auto& [t1, v1] = s[i + 1];
        Rat slope = (v1 - v0) / (t1 - t0);
        out.polys.push_back(Poly::linear(RatC(v0 - slope * t0), RatC(slope)));
    }
    return out;
}

Poly poly_at(const EdgePieces& ep, const Rat& t_mid) {
    for (size_t i = 0; i + 1 < ep.breaks.size(); ++i)
        if (t_mid < ep.breaks[i + 1]) return ep.polys[i];
    return ep.polys.back();
}

/// Sum of segmented polynomials over the common refinement of breakpoints.
EdgePieces merge_sum(const std::vector<EdgePieces>& terms) {
    std::set<Rat> breaks = {Rat(0), Rat(1)};
    for (const auto& t : terms)
        for (const auto& b : t.breaks) breaks.insert(b);
    EdgePieces out;
    out.breaks.assign(breaks.begin(), breaks.end());
    for (size_t i = 0; i + 1 < out.breaks.size(); ++i) {
        Rat mid = (out.breaks[i] + out.breaks[i + 1]) / 2;
        Poly sum;
        for (const auto& t : terms) sum = sum + poly_at(t, mid);
        out.polys.push_back(std::move(sum));
    }
    return out;
}

/// The linear polynomial of f along a sheet, written in the parameter of the
/// image edge (substituting t -> 1-t for reversed sheets).
Poly sheet_poly_in_target_param(const SimplicialSurjection& p, const PLFunction& f,
                                SimplexId y_edge) {
    Poly q = f.on_edge(y_edge);
    if (!sheet_aligned(p, y_edge)) q = q.compose_affine(Rat(1), Rat(-1));
    return q;
}

/// Core assembly shared by inner products at any tower level: the weight
/// profile per sheet is supplied by the caller.
template <typename ProfileFn>
PiecewiseFunction assemble_inner_product(const SimplicialSurjection& p,
                                         const std::vector<Rat>& vertex_weights,
                                         ProfileFn&& sheet_profile_in_target,
                                         const PLFunction& f, const PLFunction& g) {
    if (f.cx != &p.Y() || g.cx != &p.Y())
        throw Error(Errc::MalformedInput, "inner product arguments must live on the source");
    if (p.X().dimension() > 1)
        throw Error(Errc::NotOneDimensional, "inner products live on 1-complexes");

    PiecewiseFunction out;
    out.cx = &p.X();
    out.vertex_values.assign(p.X().vertex_count(), RatC());

    for (VertexId v = 0; v < p.X().vertex_count(); ++v) {
        RatC acc;
        for (SimplexId w : p.sheets_over[v]) {
            VertexId y = p.Y().simplex(w)[0];
            acc += vertex_weights[y] * (f.values[y].conj() * g.values[y]);
        }
        out.vertex_values[v] = acc;
    }

    for (SimplexId sigma : p.X().edges()) {
        std::vector<EdgePieces> terms;
        for (SimplexId sheet : p.sheets_over[sigma]) {
            EdgePieces weight = pieces_of(sheet_profile_in_target(sheet));
            Poly ff = sheet_poly_in_target_param(p, f, sheet).conj();
            Poly gg = sheet_poly_in_target_param(p, g, sheet);
            for (auto& poly : weight.polys) poly = poly * ff * gg;
            terms.push_back(std::move(weight));
        }
        out.edges[sigma] = merge_sum(terms);
    }
    return out;
}

}  // namespace

PiecewiseFunction module_action(const SimplicialSurjection& p, const PLFunction& f,
                                const PLFunction& xi) {
    if (f.cx != &p.Y() || xi.cx != &p.X())
        throw Error(Errc::MalformedInput, "module action takes f on the source, xi on the target");
    if (p.Y().dimension() > 1)
        throw Error(Errc::NotOneDimensional, "module action lives on 1-complexes");

    PiecewiseFunction out;
    out.cx = &p.Y();
    out.vertex_values.resize(p.Y().vertex_count());
    for (VertexId w = 0; w < p.Y().vertex_count(); ++w)
        out.vertex_values[w] = f.values[w] * xi.values[p.vertex_map[w]];

    for (SimplexId e : p.Y().edges()) {
        Poly pullback = xi.on_edge(p.image_of[e]);
        if (!sheet_aligned(p, e)) pullback = pullback.compose_affine(Rat(1), Rat(-1));
        out.edges[e] = PiecewiseFunction::EdgePieces{{Rat(0), Rat(1)},
                                                     {f.on_edge(e) * pullback}};
    }
    return out;
}

PiecewiseFunction inner_product(const SimplicialSurjection& p, const WeightFunction& mu,
                                const PLFunction& f, const PLFunction& g) {
    return assemble_inner_product(
        p, mu.vertex_values, [&](SimplexId sheet) { return mu.profile_in_target_param(sheet); },
        f, g);
}

PiecewiseFunction inner_product_at_level(const Tower& tower, int level, const WeightFunction& mu,
                                         const PLFunction& f, const PLFunction& g) {
    const auto& p = tower.level(level);
    std::vector<Rat> vertex_weights(p.Y().vertex_count());
    for (VertexId w = 0; w < p.Y().vertex_count(); ++w)
        vertex_weights[w] = mu.eval(tower.y_point_at(Point::at_vertex(w), level, 0));
    return assemble_inner_product(
        p, vertex_weights,
        [&](SimplexId sheet) {
            PLProfile prof = mu.profile_on(tower, level, sheet);
            return sheet_aligned(p, sheet) ? prof : prof.reversed();
        },
        f, g);
}

RatC inner_product_at(const SimplicialSurjection& p, const WeightFunction& mu, const YFunction& f,
                      const YFunction& g, const Point& x) {
    RatC acc;
    for (const Point& y : fiber(p, x)) acc += mu.eval(y) * (f(y).conj() * g(y));
    return acc;
}

NormEquivalenceReport check_norm_equivalence(const SimplicialSurjection& p,
                                             const WeightFunction& mu,
                                             const std::vector<PLFunction>& test_functions) {
    NormEquivalenceReport report;
    report.max_fibers = stratify(p).max_fibers;
    report.min_weight = mu.min_value();

    for (const auto& f : test_functions) {
        NormEquivalenceCase entry;
        entry.f_norm_sq = sup_norm_squared(f).value;
        auto ip = inner_product(p, mu, f, f);
        entry.ip_sup = sup_norm(ip).exact;

        QuadExt bound(entry.f_norm_sq);
        entry.upper_ok = compare(entry.ip_sup, bound) <= 0;
        QuadExt scaled(Rat(report.max_fibers) * entry.ip_sup.a,
                       Rat(report.max_fibers) * entry.ip_sup.b, entry.ip_sup.d);
        entry.lower_ok = compare(scaled, bound) >= 0;
        QuadExt weight_bound(report.min_weight * entry.f_norm_sq);
        entry.weight_lower_ok = compare(entry.ip_sup, weight_bound) >= 0;

        entry.ratio = entry.f_norm_sq == 0
                          ? 1.0
                          : entry.ip_sup.approx() / to_double(entry.f_norm_sq);
        report.all_upper = report.all_upper && entry.upper_ok;
        report.all_lower = report.all_lower && entry.lower_ok;
        report.all_weight_lower = report.all_weight_lower && entry.weight_lower_ok;
        report.worst_ratio = std::min(report.worst_ratio, entry.ratio);
        report.cases.push_back(std::move(entry));
    }
    return report;
}

}  // namespace brancov
