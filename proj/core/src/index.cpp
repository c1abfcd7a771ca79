#include "brancov/index.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

namespace brancov {

BorelPartition borel_partition(const SimplicialSurjection& p, const Stratification& strat) {
    BorelPartition out;
    out.piece_of.assign(p.Y().simplex_count(), -1);

    for (const auto& [count, x_simplices] : strat.strata) {
        int k = 0;
        for (const auto& comp : p.X().components(x_simplices)) {
            std::set<SimplexId> comp_set(comp.begin(), comp.end());
            std::vector<SimplexId> preimage;
            for (SimplexId s = 0; s < p.Y().simplex_count(); ++s)
                if (comp_set.count(p.image_of[s])) preimage.push_back(s);

            auto branches = p.Y().components(preimage);

            // A branch decomposition is usable only when each branch meets
            // every fiber exactly once; otherwise (e.g. a connected double
            // cover) the component is split simplex by simplex.
            bool injective = static_cast<int>(branches.size()) == count;
            if (injective) {
                for (const auto& branch : branches) {
                    std::set<SimplexId> branch_set(branch.begin(), branch.end());
                    for (SimplexId sigma : comp) {
                        int hits = 0;
                        for (SimplexId sheet : p.sheets_over[sigma]) hits += branch_set.count(sheet);
                        if (hits != 1) {
                            injective = false;
                            break;
                        }
                    }
                    if (!injective) break;
                }
            }

            if (injective) {
                ++k;
                int t = 0;
                for (auto& branch : branches) {
                    BorelPiece piece{count, k, ++t, comp, branch};
                    for (SimplexId s : branch)
                        out.piece_of[s] = static_cast<int>(out.pieces.size());
                    out.pieces.push_back(std::move(piece));
                }
            } else {
                for (SimplexId sigma : comp) {
                    ++k;
                    int t = 0;
                    for (SimplexId sheet : p.sheets_over[sigma]) {
                        BorelPiece piece{count, k, ++t, {sigma}, {sheet}};
                        out.piece_of[sheet] = static_cast<int>(out.pieces.size());
                        out.pieces.push_back(std::move(piece));
                    }
                }
            }
        }
    }
    return out;
}

IndexElement index_element(const SimplicialSurjection& p, const WeightFunction& mu,
                           const BorelPartition& partition) {
    return IndexElement{&p, &mu, &partition};
}

ContinuityReport check_index_continuity(const IndexElement& m) {
    ContinuityReport report;
    const Complex& Y = m.map->Y();
    for (SimplexId e : Y.edges()) {
        const auto& vs = Y.simplex(e);
        for (int end : {0, 1}) {
            Rat limit = m.limit_at(e, end);
            Rat value = m.vertex_value(vs[end]);
            if (limit != value) {
                report.continuous = false;
                report.issues.push_back(
                    ContinuityIssue{e, Rat(end), vs[end], RatC(value), RatC(limit)});
            }
        }
    }
    return report;
}

ReconstructionReport check_reconstruction(const SimplicialSurjection& p, const WeightFunction& mu,
                                          const BorelPartition& partition, const PLFunction& f,
                                          const std::vector<Point>& y_samples) {
    ReconstructionReport report;

    for (const Point& y : y_samples) {
        Point x = p.push_forward(y);
        auto fib = fiber(p, x);

        RatC total;                       // exact part of the sum
        std::complex<double> cross(0, 0); // contributions of cross terms, if any
        bool has_cross = false;

        for (size_t q = 0; q < partition.pieces.size(); ++q) {
            if (!partition.contains(q, y.carrier)) continue;
            for (const Point& yy : fib) {
                if (!partition.contains(q, yy.carrier)) continue;
                if (yy == y) {
                    // m(y) m(y) f(y) mu(y) with m = 1/sqrt(mu): the radicals
                    // pair up exactly.
                    total += (Rat(1) / mu.eval(y)) * (f.eval(yy) * RatC(mu.eval(yy)));
                } else {
                    has_cross = true;
                    double m2 = 1.0 / std::sqrt(to_double(mu.eval(y)) * to_double(mu.eval(yy)));
                    RatC fv = f.eval(yy);
                    cross += m2 * to_double(mu.eval(yy)) *
                             std::complex<double>(to_double(fv.re), to_double(fv.im));
                }
            }
        }

        ++report.samples_checked;
        RatC expected = f.eval(y);
        if (!has_cross && total == expected) continue;

        if (!has_cross) {
            report.exact = false;
            ++report.failures;
            RatC diff = total - expected;
            report.max_residual = std::max(
                report.max_residual, std::sqrt(to_double(diff.norm_sq())));
            if (report.notes.size() < 8)
                report.notes.push_back("identity off at a sample on " +
                                       p.Y().simplex_name(y.carrier));
        } else {
            report.exact = false;
            std::complex<double> approx =
                std::complex<double>(to_double(total.re), to_double(total.im)) + cross;
            double residual = std::abs(
                approx - std::complex<double>(to_double(expected.re), to_double(expected.im)));
            report.max_residual = std::max(report.max_residual, residual);
            if (residual > 1e-12) ++report.failures;
            if (report.notes.size() < 8)
                report.notes.push_back("cross terms: partition pieces overlap the fiber");
        }
    }
    return report;
}

Rat QuasiBasis::eval_squared(size_t i, const Point& y) const {
    const auto& element = elements[i];
    const auto& carrier = map->Y().simplex(y.carrier);
    if (!std::binary_search(carrier.begin(), carrier.end(), element.sheet_vertex)) return 0;
    Point x = map->push_forward(y);
    PLFunction hat = PLFunction::hat(map->X(), element.cover_vertex);
    return Rat(fold) * hat.eval(x).re;
}

double QuasiBasis::eval(size_t i, const Point& y) const {
    return std::sqrt(to_double(eval_squared(i, y)));
}

QuasiBasis quasi_basis(const SimplicialSurjection& p, const Classification& cls) {
    if (cls.verdict != Verdict::Covering)
        throw Error(Errc::NotACovering,
                    std::string("quasi-basis requires a covering, got ") +
                        verdict_name(cls.verdict));
    QuasiBasis qb;
    qb.map = &p;
    qb.fold = cls.n_fold;
    for (VertexId v = 0; v < p.X().vertex_count(); ++v)
        for (SimplexId w : p.sheets_over[v])  // 0-simplices over v
            qb.elements.push_back(QuasiBasisElement{v, p.Y().simplex(w)[0]});
    return qb;
}

QuasiBasisReport check_quasi_basis(const QuasiBasis& qb, const WeightFunction& mu,
                                   const PLFunction& f, int samples_per_edge, double tolerance) {
    QuasiBasisReport report;
    const auto& p = *qb.map;

    std::vector<Point> samples;
    for (VertexId w = 0; w < p.Y().vertex_count(); ++w) samples.push_back(Point::at_vertex(w));
    for (SimplexId e : p.Y().edges())
        for (int k = 1; k <= samples_per_edge; ++k)
            samples.push_back(Point::on_edge(
                p.Y(), e, Rat(k, static_cast<unsigned>(samples_per_edge + 1))));

    for (const Point& y : samples) {
        Point x = p.push_forward(y);
        auto fib = fiber(p, x);

        std::complex<double> recon(0, 0);
        Rat index_exact_sum = 0;
        double index_float = 0;

        for (size_t i = 0; i < qb.elements.size(); ++i) {
            double uy = qb.eval(i, y);
            index_float += uy * uy;
            index_exact_sum += qb.eval_squared(i, y);
            if (uy == 0) continue;
            // E(u* f)(x) = sum over the fiber of u(y') f(y') mu(y')
            std::complex<double> e(0, 0);
            for (const Point& yy : fib) {
                double uyy = qb.eval(i, yy);
                if (uyy == 0) continue;
                RatC fv = f.eval(yy);
                e += uyy * to_double(mu.eval(yy)) *
                     std::complex<double>(to_double(fv.re), to_double(fv.im));
            }
            recon += uy * e;
        }

        RatC fy = f.eval(y);
        double err = std::abs(recon - std::complex<double>(to_double(fy.re), to_double(fy.im)));
        report.max_reconstruction_error = std::max(report.max_reconstruction_error, err);
        report.max_index_deviation =
            std::max(report.max_index_deviation, std::abs(index_float - qb.fold));
        if (index_exact_sum != qb.fold) report.index_exact = false;
        ++report.samples;
    }
    report.within_tolerance = report.max_reconstruction_error <= tolerance &&
                              report.max_index_deviation <= tolerance;
    return report;
}

ProjectivityVerdict projectivity_verdict(const SimplicialSurjection& p,
                                         const Classification& cls) {
    ProjectivityVerdict out;
    out.classification = cls.verdict;
    switch (cls.verdict) {
        case Verdict::Covering: {
            auto qb = quasi_basis(p, cls);
            out.kind = ModuleKind::ProjectiveFinitelyGenerated;
            out.quasi_basis_size = static_cast<int>(qb.elements.size());
            out.fold = cls.n_fold;
            out.summary = "finitely generated projective; algebraically of index-finite type "
                          "(quasi-basis of " +
                          std::to_string(qb.elements.size()) + " elements, index " +
                          std::to_string(cls.n_fold) + ")";
            break;
        }
        case Verdict::BranchedCovering: {
            auto mu = build_weight(p, stratify(p));
            out.kind = ModuleKind::CompleteNotProjective;
            out.k_min = minimal_K(mu).k_min;
            out.summary = "complete Hilbert module, topologically of index-finite type with K = " +
                          format_rational(*out.k_min) + ", not finitely generated projective";
            break;
        }
        default:
            out.kind = ModuleKind::NoHilbertStructure;
            out.summary = "no equivalent Hilbert-module norm arises from this construction";
            break;
    }
    return out;
}

ProjectivityVerdict projectivity_verdict(std::shared_ptr<const Complex> source,
                                         std::shared_ptr<const Complex> target,
                                         const std::map<std::string, std::string>& vertex_map) {
    auto analyzed = try_analyze(source, target, vertex_map);
    auto cls = classify(analyzed);
    if (!analyzed.ok()) {
        ProjectivityVerdict out;
        out.classification = cls.verdict;
        out.kind = ModuleKind::NoHilbertStructure;
        out.summary = "not a finite-fiber surjection";
        return out;
    }
    return projectivity_verdict(*analyzed.map, cls);
}

}  // namespace brancov
