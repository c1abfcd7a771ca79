#include "brancov/json_io.hpp"

#include <algorithm>
#include <set>

namespace brancov {

namespace {

Rat rat(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return parse_rational_or_throw(j.get<std::string>());
    throw Error(Errc::MalformedInput, "expected a rational as \"p/q\" string");
}

Json rat_json(const Rat& r) { return format_rational(r); }

Json ratc_json(const RatC& v) { return Json::array({format_rational(v.re), format_rational(v.im)}); }

RatC ratc(const Json& j) {
    if (j.is_array() && j.size() == 2) return RatC(rat(j[0]), rat(j[1]));
    return RatC(rat(j));
}

}  // namespace

Json complex_to_json(const Complex& cx) {
    Json j;
    j["vertices"] = Json::array();
    for (VertexId v = 0; v < cx.vertex_count(); ++v) j["vertices"].push_back(cx.vertex_name(v));

    // maximal simplices only
    j["simplices"] = Json::array();
    for (SimplexId s = 0; s < cx.simplex_count(); ++s) {
        if (!cx.proper_cofaces(s).empty()) continue;
        Json names = Json::array();
        for (VertexId v : cx.simplex(s)) names.push_back(cx.vertex_name(v));
        j["simplices"].push_back(std::move(names));
    }

    Json lengths = Json::object();
    for (SimplexId e : cx.edges()) {
        if (cx.edge_length(e) != 1) lengths[cx.simplex_name(e)] = rat_json(cx.edge_length(e));
    }
    if (!lengths.empty()) j["lengths"] = std::move(lengths);
    return j;
}

std::shared_ptr<const Complex> complex_from_json(const Json& j) {
    if (!j.is_object()) throw Error(Errc::MalformedInput, "complex must be an object");
    RawComplex raw;
    for (const auto& v : j.at("vertices")) raw.vertices.push_back(v.get<std::string>());
    for (const auto& s : j.at("simplices")) {
        std::vector<std::string> names;
        for (const auto& v : s) names.push_back(v.get<std::string>());
        raw.simplices.push_back(std::move(names));
    }
    if (j.contains("lengths"))
        for (const auto& [key, val] : j.at("lengths").items())
            raw.lengths[key] = val.is_string() ? val.get<std::string>()
                                               : std::to_string(val.get<long long>());
    return std::make_shared<const Complex>(Complex::validate(raw));
}

ParsedMap map_from_json(const Json& j) {
    const Json& m = j.contains("map") ? j.at("map") : j;
    ParsedMap out;
    out.source = complex_from_json(m.at("source"));
    out.target = complex_from_json(m.at("target"));
    for (const auto& [y, x] : m.at("vertex_map").items())
        out.vertex_map[y] = x.get<std::string>();
    return out;
}

Json map_to_json(const SimplicialSurjection& p) {
    Json j;
    j["source"] = complex_to_json(p.Y());
    j["target"] = complex_to_json(p.X());
    Json vm = Json::object();
    for (VertexId w = 0; w < p.Y().vertex_count(); ++w)
        vm[p.Y().vertex_name(w)] = p.X().vertex_name(p.vertex_map[w]);
    j["vertex_map"] = std::move(vm);
    return j;
}

Json pl_function_to_json(const PLFunction& f, int level) {
    Json j;
    j["subdivision_level"] = level;
    Json values = Json::object();
    for (VertexId v = 0; v < f.cx->vertex_count(); ++v)
        values[f.cx->vertex_name(v)] = ratc_json(f.values[v]);
    j["values"] = std::move(values);
    return j;
}

int pl_function_level(const Json& j) {
    return j.contains("subdivision_level") ? j.at("subdivision_level").get<int>() : 0;
}

PLFunction pl_function_from_json(const Complex& cx, const Json& j) {
    PLFunction f{&cx, std::vector<RatC>(cx.vertex_count(), RatC())};
    for (const auto& [name, val] : j.at("values").items()) {
        auto v = cx.vertex_by_name(name);
        if (!v) throw Error(Errc::MalformedInput, "unknown vertex '" + name + "' in function");
        f.values[*v] = ratc(val);
    }
    return f;
}

Json piecewise_to_json(const PiecewiseFunction& h) {
    Json j;
    Json vertices = Json::object();
    for (VertexId v = 0; v < h.cx->vertex_count(); ++v)
        vertices[h.cx->vertex_name(v)] = ratc_json(h.vertex_values[v]);
    j["vertices"] = std::move(vertices);

    Json edges = Json::object();
    for (const auto& [e, ep] : h.edges) {
        Json entry;
        entry["breaks"] = Json::array();
        for (const auto& b : ep.breaks) entry["breaks"].push_back(rat_json(b));
        entry["polys"] = Json::array();
        for (const auto& poly : ep.polys) {
            Json coeffs = Json::array();
            for (const auto& c : poly.coeffs()) coeffs.push_back(ratc_json(c));
            entry["polys"].push_back(std::move(coeffs));
        }
        edges[h.cx->simplex_name(e)] = std::move(entry);
    }
    j["edges"] = std::move(edges);
    return j;
}

namespace {

SimplexId edge_by_name(const Complex& cx, const std::string& key) {
    auto dash = key.find('-');
    if (dash == std::string::npos)
        throw Error(Errc::MalformedInput, "edge key '" + key + "' is not of the form a-b");
    auto a = cx.vertex_by_name(key.substr(0, dash));
    auto b = cx.vertex_by_name(key.substr(dash + 1));
    if (!a || !b) throw Error(Errc::MalformedInput, "edge key '" + key + "' uses unknown vertex");
    VertexSet e{*a, *b};
    std::sort(e.begin(), e.end());
    auto id = cx.simplex_id(e);
    if (!id || !cx.is_edge(*id)) throw Error(Errc::MalformedInput, "no edge '" + key + "'");
    return *id;
}

void read_weight_group(const Complex& Y, const Json& group, WeightFunction& mu) {
    if (group.contains("vertices"))
        for (const auto& [name, val] : group.at("vertices").items()) {
            auto v = Y.vertex_by_name(name);
            if (!v) throw Error(Errc::MalformedInput, "unknown vertex '" + name + "' in weight");
            mu.vertex_values[*v] = rat(val);
        }
    if (group.contains("edges"))
        for (const auto& [key, samples] : group.at("edges").items()) {
            SimplexId e = edge_by_name(Y, key);
            std::vector<std::pair<Rat, Rat>> pts;
            for (const auto& pair : samples) pts.emplace_back(rat(pair.at(0)), rat(pair.at(1)));
            mu.edge_profiles[e] = PLProfile(std::move(pts));
        }
}

}  // namespace

Json weight_to_json(const WeightFunction& mu, const BorelPartition& partition) {
    const Complex& Y = mu.map->Y();
    Json pieces = Json::object();
    for (size_t q = 0; q < partition.pieces.size(); ++q) {
        Json group;
        Json vertices = Json::object();
        Json edges = Json::object();
        for (SimplexId s : partition.pieces[q].y_simplices) {
            if (Y.is_vertex(s)) {
                VertexId v = Y.simplex(s)[0];
                vertices[Y.vertex_name(v)] = rat_json(mu.vertex_values[v]);
            } else if (Y.is_edge(s)) {
                Json samples = Json::array();
                for (const auto& [t, val] : mu.edge_profiles.at(s).samples())
                    samples.push_back(Json::array({rat_json(t), rat_json(val)}));
                edges[Y.simplex_name(s)] = std::move(samples);
            }
        }
        if (!vertices.empty()) group["vertices"] = std::move(vertices);
        if (!edges.empty()) group["edges"] = std::move(edges);
        pieces[partition.piece_id(q)] = std::move(group);
    }
    Json j;
    j["pieces"] = std::move(pieces);
    return j;
}

WeightFunction weight_from_json(const SimplicialSurjection& p, const Json& j) {
    WeightFunction mu;
    mu.map = &p;
    mu.vertex_values.assign(p.Y().vertex_count(), Rat(0));
    if (j.contains("pieces")) {
        for (const auto& [id, group] : j.at("pieces").items()) read_weight_group(p.Y(), group, mu);
    } else {
        read_weight_group(p.Y(), j, mu);
    }
    for (SimplexId e : p.Y().edges())
        if (!mu.edge_profiles.count(e))
            throw Error(Errc::MalformedInput,
                        "weight missing edge " + p.Y().simplex_name(e));
    return mu;
}

Json strata_to_json(const Stratification& strat, const Complex& target) {
    Json j = Json::object();
    for (const auto& [count, simplices] : strat.strata) {
        Json list = Json::array();
        for (SimplexId s : simplices) list.push_back(target.simplex_name(s));
        j[std::to_string(count)] = std::move(list);
    }
    return j;
}

Json classification_to_json(const Classification& cls, const Complex& source,
                            const Complex& target) {
    Json j;
    j["verdict"] = verdict_name(cls.verdict);
    if (cls.verdict == Verdict::Covering) j["n_fold"] = cls.n_fold;
    if (cls.strata) {
        j["max_fiber"] = cls.strata->max_fibers;
        j["strata"] = strata_to_json(*cls.strata, target);
    }
    if (cls.witness_simplex) {
        Json w;
        const Complex& cx = cls.verdict == Verdict::NotSurjective ? target : source;
        w["simplex"] = cx.simplex_name(*cls.witness_simplex);
        j["witness"] = std::move(w);
    }
    if (cls.openness_witness) {
        Json w;
        w["source_simplex"] = source.simplex_name(cls.openness_witness->first);
        w["missed_target_coface"] = target.simplex_name(cls.openness_witness->second);
        j["witness"] = std::move(w);
    }
    if (cls.components.size() > 1) {
        Json comps = Json::array();
        for (const auto& c : cls.components) {
            Json entry;
            entry["verdict"] = verdict_name(c.verdict);
            if (c.verdict == Verdict::Covering) entry["n_fold"] = c.n_fold;
            Json simplices = Json::array();
            for (SimplexId s : c.x_simplices) simplices.push_back(target.simplex_name(s));
            entry["simplices"] = std::move(simplices);
            comps.push_back(std::move(entry));
        }
        j["components"] = std::move(comps);
    }
    return j;
}

Json weight_report_to_json(const WeightReport& report) {
    Json j;
    j["valid"] = report.valid;
    j["min_weight"] = rat_json(report.min_weight);
    j["max_weight"] = rat_json(report.max_weight);
    j["fiber_sum_checks"] = report.fiber_sum_checks;
    Json issues = Json::array();
    for (const auto& issue : report.issues)
        issues.push_back(Json{{"kind", issue.kind}, {"detail", issue.detail}});
    j["issues"] = std::move(issues);
    return j;
}

Json axiom_report_to_json(const AxiomReport& report) {
    Json j;
    j["all_pass"] = report.all_pass;
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json entry{{"axiom", c.axiom}, {"pass", c.pass}};
        if (!c.detail.empty()) entry["detail"] = c.detail;
        checks.push_back(std::move(entry));
    }
    j["checks"] = std::move(checks);
    return j;
}

Json norm_equivalence_to_json(const NormEquivalenceReport& report) {
    Json j;
    j["upper_bound_holds"] = report.all_upper;
    j["lower_bound_holds"] = report.all_lower;
    j["weight_lower_bound_holds"] = report.all_weight_lower;
    j["max_fibers"] = report.max_fibers;
    j["min_weight"] = rat_json(report.min_weight);
    j["worst_ratio"] = report.worst_ratio;
    j["cases"] = static_cast<int>(report.cases.size());
    return j;
}

Json index_finite_to_json(const IndexFiniteReport& report, const Complex& source) {
    Json j;
    j["k_min"] = rat_json(report.k_min);
    j["topologically_index_finite"] = report.is_topologically_finite;
    j["min_weight"] = rat_json(report.min_weight);
    if (report.certificate_simplex >= 0) {
        Json cert;
        cert["simplex"] = source.simplex_name(report.certificate_simplex);
        if (!report.certificate_at_vertex) cert["param"] = rat_json(report.certificate_param);
        j["certificate"] = std::move(cert);
    }
    return j;
}

Json partition_to_json(const BorelPartition& partition, const SimplicialSurjection& p) {
    Json j = Json::object();
    for (size_t q = 0; q < partition.pieces.size(); ++q) {
        const auto& piece = partition.pieces[q];
        Json entry;
        entry["fiber_count"] = piece.fiber_count;
        Json xs = Json::array();
        for (SimplexId s : piece.x_simplices) xs.push_back(p.X().simplex_name(s));
        entry["target_simplices"] = std::move(xs);
        Json ys = Json::array();
        for (SimplexId s : piece.y_simplices) ys.push_back(p.Y().simplex_name(s));
        entry["source_simplices"] = std::move(ys);
        j[partition.piece_id(q)] = std::move(entry);
    }
    return j;
}

Json index_element_to_json(const IndexElement& m) {
    const Complex& Y = m.map->Y();
    const auto& mu = *m.mu;
    Json pieces = Json::object();
    for (size_t q = 0; q < m.partition->pieces.size(); ++q) {
        Json group;
        Json vertices = Json::object();
        Json edges = Json::object();
        for (SimplexId s : m.partition->pieces[q].y_simplices) {
            if (Y.is_vertex(s)) {
                vertices[Y.vertex_name(Y.simplex(s)[0])] = rat_json(m.vertex_value(Y.simplex(s)[0]));
            } else if (Y.is_edge(s)) {
                Json samples = Json::array();
                for (const auto& [t, val] : mu.edge_profiles.at(s).samples())
                    samples.push_back(Json::array({rat_json(t), rat_json(Rat(1) / val)}));
                edges[Y.simplex_name(s)] = std::move(samples);
            }
        }
        if (!vertices.empty()) group["vertices"] = std::move(vertices);
        if (!edges.empty()) group["edges"] = std::move(edges);
        pieces[m.partition->piece_id(q)] = std::move(group);
    }
    Json j;
    j["definition"] = "reciprocal of the weight; breakpoint values listed, reciprocal-linear between";
    j["bound"] = rat_json(m.bound());
    j["pieces"] = std::move(pieces);
    return j;
}

Json reconstruction_to_json(const ReconstructionReport& report) {
    Json j;
    j["exact"] = report.exact;
    j["samples_checked"] = report.samples_checked;
    j["failures"] = report.failures;
    j["max_residual"] = report.max_residual;
    if (!report.notes.empty()) j["notes"] = report.notes;
    return j;
}

Json quasi_basis_to_json(const QuasiBasis& qb) {
    Json j;
    j["fold"] = qb.fold;
    Json elements = Json::array();
    for (const auto& e : qb.elements) {
        elements.push_back(Json{
            {"cover_vertex", qb.map->X().vertex_name(e.cover_vertex)},
            {"sheet_vertex", qb.map->Y().vertex_name(e.sheet_vertex)},
            {"form", "sqrt(fold * hat(cover_vertex) o p) on the star of sheet_vertex"}});
    }
    j["elements"] = std::move(elements);
    return j;
}

Json quasi_basis_report_to_json(const QuasiBasisReport& report) {
    Json j;
    j["samples"] = report.samples;
    j["max_reconstruction_error"] = report.max_reconstruction_error;
    j["max_index_deviation"] = report.max_index_deviation;
    j["index_exact_at_rational_samples"] = report.index_exact;
    j["within_tolerance"] = report.within_tolerance;
    return j;
}

Json projectivity_to_json(const ProjectivityVerdict& verdict) {
    Json j;
    switch (verdict.kind) {
        case ModuleKind::ProjectiveFinitelyGenerated: j["module"] = "projective_finitely_generated"; break;
        case ModuleKind::CompleteNotProjective: j["module"] = "complete_not_projective"; break;
        case ModuleKind::NoHilbertStructure: j["module"] = "no_hilbert_structure"; break;
    }
    j["classification"] = verdict_name(verdict.classification);
    if (verdict.k_min) j["k_min"] = rat_json(*verdict.k_min);
    if (verdict.quasi_basis_size) j["quasi_basis_size"] = *verdict.quasi_basis_size;
    if (verdict.fold) j["index"] = *verdict.fold;
    j["summary"] = verdict.summary;
    return j;
}

}  // namespace brancov
