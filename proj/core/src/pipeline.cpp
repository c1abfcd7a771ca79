#include "brancov/pipeline.hpp"

namespace brancov {

namespace {

/// Deterministic generic test function: small distinct integer values.
PLFunction generic_function(const Complex& cx) {
    PLFunction f{&cx, {}};
    f.values.reserve(cx.vertex_count());
    for (VertexId v = 0; v < cx.vertex_count(); ++v)
        f.values.push_back(RatC(Rat(2 * v + 1, 3u)));
    return f;
}

std::vector<Point> edge_samples(const Complex& cx, int per_edge) {
    std::vector<Point> out;
    for (VertexId v = 0; v < cx.vertex_count(); ++v) out.push_back(Point::at_vertex(v));
    for (SimplexId e : cx.edges())
        for (int k = 1; k <= per_edge; ++k)
            out.push_back(Point::on_edge(cx, e, Rat(k, static_cast<unsigned>(per_edge + 1))));
    return out;
}

}  // namespace

int pipeline_exit_code(const Json& report) {
    std::string verdict = report.at("classification").at("verdict").get<std::string>();
    return (verdict == "Covering" || verdict == "BranchedCovering") ? 0 : 1;
}

Json report_pipeline(const ParsedMap& input, const PipelineOptions& opts) {
    Json report;

    auto analyzed = try_analyze(input.source, input.target, input.vertex_map);
    auto cls = classify(analyzed);
    report["classification"] = classification_to_json(cls, *input.source, *input.target);
    if (!analyzed.ok()) {
        report["projectivity"] =
            projectivity_to_json(ProjectivityVerdict{ModuleKind::NoHilbertStructure, cls.verdict,
                                                     std::nullopt, std::nullopt, std::nullopt,
                                                     "not a finite-fiber surjection"});
        return report;
    }
    const auto& p = *analyzed.map;
    auto strat = stratify(p);

    auto closedness = check_strata_closedness(p, strat);
    Json closed;
    closed["holds"] = closedness.closed;
    if (closedness.witness) {
        closed["witness"] = Json{{"face", p.X().simplex_name(closedness.witness->first)},
                                 {"coface", p.X().simplex_name(closedness.witness->second)}};
    }
    report["strata_closedness"] = std::move(closed);

    report["projectivity"] = projectivity_to_json(projectivity_verdict(p, cls));
    if (cls.verdict != Verdict::BranchedCovering && cls.verdict != Verdict::Covering) return report;

    // Constructed weight and its validation.
    auto mu = build_weight(p, strat);
    auto partition = borel_partition(p, strat);
    report["weight"] = weight_to_json(mu, partition);
    report["weight_validation"] = weight_report_to_json(validate_weight(p, mu));
    report["index_finite"] = index_finite_to_json(minimal_K(mu), p.Y());

    // Reference weight, when supplied (validated independently).
    std::optional<WeightFunction> reference;
    if (opts.reference_weight) {
        reference = weight_from_json(p, *opts.reference_weight);
        report["reference_weight_validation"] =
            weight_report_to_json(validate_weight(p, *reference));
        report["reference_index_finite"] = index_finite_to_json(minimal_K(*reference), p.Y());
    }

    // Index element and the reconstruction identity for the active weight
    // (the reference weight when given, otherwise the constructed one).
    const WeightFunction& active = reference ? *reference : mu;
    auto m = index_element(p, active, partition);
    report["partition"] = partition_to_json(partition, p);
    report["index_element"] = index_element_to_json(m);

    PLFunction f = generic_function(p.Y());
    int per_edge = std::max(1, opts.samples_per_edge);
    auto samples = edge_samples(p.Y(), per_edge);
    report["reconstruction"] =
        reconstruction_to_json(check_reconstruction(p, active, partition, f, samples));

    // Expectation diagnostics.
    {
        auto ef = expectation(p, active, f);
        report["expectation_continuous"] = check_continuity(ef).continuous;
    }

    if (cls.verdict == Verdict::Covering) {
        auto qb = quasi_basis(p, cls);
        report["quasi_basis"] = quasi_basis_to_json(qb);
        report["quasi_basis_check"] = quasi_basis_report_to_json(
            check_quasi_basis(qb, active, f, std::min(per_edge, 64), opts.tolerance));
    }
    return report;
}

}  // namespace brancov
