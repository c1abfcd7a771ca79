// Command line front end: classification, stratification, weights, inner
// products, expectations, index data and quasi-bases for simplicial
// surjections given as JSON, plus the fixture gallery.
//
// Exit codes: 0 on success or a positive verdict, 1 on a computed negative
// verdict (e.g. NotOpen), 2 on malformed input.

#include "brancov/gallery.hpp"
#include "brancov/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace brancov;

struct Options {
    std::string format = "json";
    int samples = 256;
    double tolerance = 1e-9;
    std::string out;
};

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::MalformedInput, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw Error(Errc::MalformedInput, "JSON parse error in '" + path + "': " + e.what());
    }
}

void emit(const Options& opt, const Json& j) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!opt.out.empty()) {
        file.open(opt.out);
        if (!file) throw Error(Errc::MalformedInput, "cannot write '" + opt.out + "'");
        os = &file;
    }
    if (opt.format == "text") {
        // flat key: value rendering of the top level
        for (const auto& [key, val] : j.items())
            *os << key << ": " << val.dump() << "\n";
    } else {
        *os << j.dump(2) << "\n";
    }
}

SimplicialSurjection analyze_or_exit(const ParsedMap& parsed, const Options& opt, int& rc) {
    auto analyzed = try_analyze(parsed.source, parsed.target, parsed.vertex_map);
    if (!analyzed.ok()) {
        auto cls = classify(analyzed);
        emit(opt, classification_to_json(cls, *parsed.source, *parsed.target));
        rc = 1;
        return {};
    }
    rc = 0;
    return *std::move(analyzed.map);
}

WeightFunction active_weight(const SimplicialSurjection& p, const std::string& mu_path) {
    if (mu_path.empty()) return build_weight(p, stratify(p));
    return weight_from_json(p, load_json(mu_path));
}

int run(int argc, char** argv) {
    CLI::App app{"branched covering analysis of simplicial surjections"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Options opt;
    app.add_option("--format", opt.format, "json|text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--samples", opt.samples, "sample points per edge (default 256)");
    app.add_option("--tolerance", opt.tolerance, "tolerance for quasi-basis checks");
    app.add_option("--out", opt.out, "write output to a file (gallery: directory)");

    std::string map_path, mu_path, f_path, g_path;

    auto* check = app.add_subcommand("check", "validate a complex or map file");
    check->add_option("file", map_path)->required();

    auto* classify_cmd = app.add_subcommand("classify", "classification verdict with witnesses");
    classify_cmd->add_option("file", map_path)->required();

    auto* stratify_cmd = app.add_subcommand("stratify", "fiber-count strata of the target");
    stratify_cmd->add_option("file", map_path)->required();

    auto* weights_cmd = app.add_subcommand("weights", "construct and validate the weight");
    weights_cmd->add_option("file", map_path)->required();

    auto* gram = app.add_subcommand("gram", "inner product <f,g> as piecewise data");
    gram->add_option("file", map_path)->required();
    gram->add_option("-f", f_path, "PL function on the source")->required();
    gram->add_option("-g", g_path, "PL function on the source")->required();
    gram->add_option("--mu", mu_path, "weight JSON (default: constructed)");

    auto* expectation_cmd = app.add_subcommand("expectation", "E(f) and the index constant");
    expectation_cmd->add_option("file", map_path)->required();
    expectation_cmd->add_option("-f", f_path, "PL function on the source")->required();
    expectation_cmd->add_option("--mu", mu_path, "weight JSON (default: constructed)");

    auto* index_cmd = app.add_subcommand("index", "partition, index element, reconstruction");
    index_cmd->add_option("file", map_path)->required();
    index_cmd->add_option("--mu", mu_path, "weight JSON (default: constructed)");

    auto* quasibasis = app.add_subcommand("quasibasis", "quasi-basis for a covering");
    quasibasis->add_option("file", map_path)->required();

    auto* gallery_cmd = app.add_subcommand("gallery", "write the fixture gallery");

    auto* pipeline_cmd = app.add_subcommand("pipeline", "full report over all stages");
    pipeline_cmd->add_option("file", map_path)->required();
    pipeline_cmd->add_option("--mu", mu_path, "reference weight JSON");

    CLI11_PARSE(app, argc, argv);

    if (gallery_cmd->parsed()) {
        if (opt.out.empty()) throw Error(Errc::MalformedInput, "gallery needs --out DIR");
        std::filesystem::create_directories(opt.out);
        Json listing = Json::array();
        for (const auto& f : gallery()) {
            auto path = std::filesystem::path(opt.out) / (f.name + ".json");
            std::ofstream out(path);
            out << fixture_to_json(f).dump(2) << "\n";
            listing.push_back(path.string());
        }
        std::cout << listing.dump(2) << "\n";
        return 0;
    }

    if (check->parsed()) {
        Json j = load_json(map_path);
        Json result;
        if (j.contains("vertices")) {
            auto cx = complex_from_json(j);
            result["ok"] = true;
            result["kind"] = "complex";
            result["vertices"] = cx->vertex_count();
            result["simplices"] = cx->simplex_count();
            result["dimension"] = cx->dimension();
            emit(opt, result);
            return 0;
        }
        auto parsed = map_from_json(j);
        int rc = 0;
        auto p = analyze_or_exit(parsed, opt, rc);
        if (rc) return rc;
        result["ok"] = true;
        result["kind"] = "map";
        result["max_fiber"] = stratify(p).max_fibers;
        emit(opt, result);
        return 0;
    }

    auto parsed = map_from_json(load_json(map_path));

    if (classify_cmd->parsed()) {
        auto analyzed = try_analyze(parsed.source, parsed.target, parsed.vertex_map);
        auto cls = classify(analyzed);
        emit(opt, classification_to_json(cls, *parsed.source, *parsed.target));
        bool positive =
            cls.verdict == Verdict::Covering || cls.verdict == Verdict::BranchedCovering;
        return positive ? 0 : 1;
    }

    int rc = 0;
    auto p = analyze_or_exit(parsed, opt, rc);
    if (rc) return rc;

    if (stratify_cmd->parsed()) {
        auto strat = stratify(p);
        Json j;
        j["max_fiber"] = strat.max_fibers;
        j["strata"] = strata_to_json(strat, p.X());
        auto closedness = check_strata_closedness(p, strat);
        j["closedness_holds"] = closedness.closed;
        emit(opt, j);
        return 0;
    }

    if (weights_cmd->parsed()) {
        auto cls = classify(try_analyze(parsed.source, parsed.target, parsed.vertex_map));
        if (cls.verdict != Verdict::Covering && cls.verdict != Verdict::BranchedCovering) {
            emit(opt, classification_to_json(cls, *parsed.source, *parsed.target));
            return 1;
        }
        auto strat = stratify(p);
        auto mu = build_weight(p, strat);
        auto partition = borel_partition(p, strat);
        Json j;
        j["weight"] = weight_to_json(mu, partition);
        j["validation"] = weight_report_to_json(validate_weight(p, mu));
        j["index_finite"] = index_finite_to_json(minimal_K(mu), p.Y());
        emit(opt, j);
        return 0;
    }

    if (gram->parsed() || expectation_cmd->parsed()) {
        auto mu = active_weight(p, mu_path);
        Tower tower(p);

        Json fj = load_json(f_path);
        Json gj = gram->parsed() ? load_json(g_path) : Json();
        int level = pl_function_level(fj);
        if (gram->parsed()) level = std::max(level, pl_function_level(gj));
        if (level > Tower::kMaxLevel)
            throw Error(Errc::SubdivisionLimitExceeded, "subdivision_level beyond the cap");

        // Parse each function on its own level, then lift to the common one.
        auto parse_at = [&](const Json& j) {
            int own = pl_function_level(j);
            PLFunction f = pl_function_from_json(tower.level(own).Y(), j);
            for (int l = own + 1; l <= level; ++l) f = refine(f, tower.y_subdivision(l));
            return f;
        };
        PLFunction f = parse_at(fj);

        Json j;
        if (gram->parsed()) {
            PLFunction g = parse_at(gj);
            auto ip = inner_product_at_level(tower, level, mu, f, g);
            j["level"] = level;
            j["inner_product"] = piecewise_to_json(ip);
            j["continuous"] = check_continuity(ip).continuous;
        } else {
            auto one = PLFunction::constant(tower.level(level).Y(), RatC(Rat(1)));
            auto ef = inner_product_at_level(tower, level, mu, one, f);
            j["level"] = level;
            j["expectation"] = piecewise_to_json(ef);
            j["continuous"] = check_continuity(ef).continuous;
            j["index_finite"] = index_finite_to_json(minimal_K(mu), p.Y());
        }
        emit(opt, j);
        return 0;
    }

    if (index_cmd->parsed()) {
        auto strat = stratify(p);
        auto mu = active_weight(p, mu_path);
        auto partition = borel_partition(p, strat);
        auto m = index_element(p, mu, partition);
        PLFunction f{&p.Y(), {}};
        for (VertexId v = 0; v < p.Y().vertex_count(); ++v)
            f.values.push_back(RatC(Rat(2 * v + 1, 3u)));
        std::vector<Point> samples;
        for (VertexId v = 0; v < p.Y().vertex_count(); ++v) samples.push_back(Point::at_vertex(v));
        for (SimplexId e : p.Y().edges())
            for (int k = 1; k <= opt.samples; ++k)
                samples.push_back(Point::on_edge(p.Y(), e, Rat(k, static_cast<unsigned>(opt.samples + 1))));
        Json j;
        j["partition"] = partition_to_json(partition, p);
        j["index_element"] = index_element_to_json(m);
        j["reconstruction"] = reconstruction_to_json(
            check_reconstruction(p, mu, partition, f, samples));
        emit(opt, j);
        return 0;
    }

    if (quasibasis->parsed()) {
        auto cls = classify(try_analyze(parsed.source, parsed.target, parsed.vertex_map));
        if (cls.verdict != Verdict::Covering) {
            emit(opt, classification_to_json(cls, *parsed.source, *parsed.target));
            return 1;
        }
        auto qb = quasi_basis(p, cls);
        auto mu = build_weight(p, stratify(p));
        PLFunction f{&p.Y(), {}};
        for (VertexId v = 0; v < p.Y().vertex_count(); ++v)
            f.values.push_back(RatC(Rat(2 * v + 1, 3u)));
        Json j;
        j["quasi_basis"] = quasi_basis_to_json(qb);
        j["check"] = quasi_basis_report_to_json(
            check_quasi_basis(qb, mu, f, std::min(opt.samples, 64), opt.tolerance));
        emit(opt, j);
        return 0;
    }

    if (pipeline_cmd->parsed()) {
        PipelineOptions popts;
        popts.samples_per_edge = opt.samples;
        popts.tolerance = opt.tolerance;
        Json ref;
        Json file = load_json(map_path);
        if (!mu_path.empty()) {
            ref = load_json(mu_path);
            popts.reference_weight = &ref;
        } else if (file.contains("reference_weight")) {
            // fixture files may carry a reference weight
            ref = file.at("reference_weight");
            popts.reference_weight = &ref;
        }
        Json report = report_pipeline(parsed, popts);
        if (file.contains("note")) report["note"] = file.at("note");
        emit(opt, report);
        return pipeline_exit_code(report);
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
