#include "brancov/expectation.hpp"

#include <algorithm>

namespace brancov {

PiecewiseFunction expectation(const SimplicialSurjection& p, const WeightFunction& mu,
                              const PLFunction& f) {
    return inner_product(p, mu, PLFunction::constant(p.Y(), RatC(Rat(1))), f);
}

RatC expectation_at(const SimplicialSurjection& p, const WeightFunction& mu, const YFunction& f,
                    const Point& x) {
    RatC acc;
    for (const Point& y : fiber(p, x)) acc += mu.eval(y) * f(y);
    return acc;
}

namespace {

/// Pullback of a target PL function along p (again PL: linear per sheet).
PLFunction pullback(const SimplicialSurjection& p, const PLFunction& a) {
    PLFunction out{&p.Y(), {}};
    out.values.resize(p.Y().vertex_count());
    for (VertexId w = 0; w < p.Y().vertex_count(); ++w) out.values[w] = a.values[p.vertex_map[w]];
    return out;
}

bool piecewise_equal(const PiecewiseFunction& h, const PLFunction& a) {
    for (VertexId v = 0; v < a.cx->vertex_count(); ++v)
        if (h.vertex_values[v] != a.values[v]) return false;
    for (const auto& [e, ep] : h.edges) {
        Poly expect = a.on_edge(e);
        for (size_t i = 0; i < ep.polys.size(); ++i) {
            // compare on each segment (the segment polynomials may be written
            // differently but must agree as polynomials)
            if (!(ep.polys[i] == expect)) return false;
        }
    }
    return true;
}

}  // namespace

AxiomReport check_axioms(const SimplicialSurjection& p, const WeightFunction& mu,
                         const std::vector<std::pair<PLFunction, PLFunction>>& ab_pairs,
                         const std::vector<Point>& x_samples) {
    AxiomReport report;
    auto record = [&](std::string axiom, bool pass, std::string detail = "") {
        report.all_pass = report.all_pass && pass;
        report.checks.push_back(AxiomCheck{std::move(axiom), pass, std::move(detail)});
    };

    // Unitality: E(1) = 1, as an exact piecewise identity.
    {
        auto e1 = expectation(p, mu, PLFunction::constant(p.Y(), RatC(Rat(1))));
        bool pass = piecewise_equal(e1, PLFunction::constant(p.X(), RatC(Rat(1))));
        record("unitality: E(1) = 1", pass);
    }

    for (size_t k = 0; k < ab_pairs.size(); ++k) {
        const auto& [a, b] = ab_pairs[k];
        std::string tag = " [pair " + std::to_string(k) + "]";

        // Projection onto the subalgebra: E(i(a)) = a exactly.
        {
            auto e = expectation(p, mu, pullback(p, a));
            record("projection: E(i(a)) = a" + tag, piecewise_equal(e, a));
        }

        // Bimodule identity at sample points, the two sides assembled through
        // different code paths.
        {
            bool pass = true;
            for (const Point& x : x_samples) {
                YFunction ab = [&](const Point& y) {
                    return a.eval(p.push_forward(y)) * b.eval(y);
                };
                RatC lhs = expectation_at(p, mu, ab, x);
                RatC rhs = a.eval(x) * expectation(p, mu, b).eval(x);
                if (lhs != rhs) {
                    pass = false;
                    break;
                }
            }
            record("bimodule: E(i(a)b) = a E(b)" + tag, pass);
        }

        // Positivity: E(b* b) >= 0, exact global minimum.
        {
            auto ebb = inner_product(p, mu, b, b);
            auto m = min_value(ebb);
            record("positivity: E(b*b) >= 0" + tag, m.exact.sign() >= 0);
        }

        // Contractivity ||E(b)|| <= ||b||: exact for real b, sampled for
        // complex b (|E(b)(x)|^2 <= ||b||^2 pointwise).
        {
            Rat bsq = sup_norm_squared(b).value;
            bool pass = true;
            if (b.is_real()) {
                auto eb = expectation(p, mu, b);
                QuadExt sup = sup_norm(eb).exact;
                // sup^2 <= ||b||^2
                QuadExt sup_sq(sup.a * sup.a + sup.b * sup.b * sup.d, 2 * sup.a * sup.b, sup.d);
                pass = compare(sup_sq, QuadExt(bsq)) <= 0;
            } else {
                for (const Point& x : x_samples) {
                    RatC v = expectation_at(p, mu, as_function(b), x);
                    if (v.norm_sq() > bsq) {
                        pass = false;
                        break;
                    }
                }
            }
            record("contractivity: ||E(b)|| <= ||b||" + tag, pass);
        }
    }
    return report;
}

IndexFiniteReport minimal_K(const WeightFunction& mu) {
    IndexFiniteReport report;
    report.min_weight = mu.min_value();
    report.is_topologically_finite = report.min_weight > 0;
    report.k_min = report.is_topologically_finite ? Rat(1) / report.min_weight : Rat(0);

    const Complex& Y = mu.map->Y();
    for (VertexId w = 0; w < Y.vertex_count(); ++w) {
        if (mu.vertex_values[w] == report.min_weight) {
            report.certificate_simplex = w;
            report.certificate_at_vertex = true;
            report.certificate_param = 0;
            return report;
        }
    }
    for (const auto& [e, prof] : mu.edge_profiles) {
        if (prof.min_value() == report.min_weight) {
            report.certificate_simplex = e;
            report.certificate_at_vertex = false;
            report.certificate_param = prof.argmin();
            return report;
        }
    }
    return report;
}

std::optional<Point> find_positivity_violation(const WeightFunction& mu, const Rat& K) {
    if (K <= 0) throw Error(Errc::MalformedInput, "K must be positive");
    Rat target = Rat(1) / K;  // need mu(y) < target

    const Complex& Y = mu.map->Y();
    for (VertexId w = 0; w < Y.vertex_count(); ++w)
        if (mu.vertex_values[w] < target) return Point::at_vertex(w);

    for (const auto& [e, prof] : mu.edge_profiles) {
        const auto& samples = prof.samples();
        for (size_t i = 0; i < samples.size(); ++i) {
            const auto& [t, v] = samples[i];
            if (v >= target) continue;
            if (t > 0 && t < 1) return Point::on_edge(Y, e, t);
            // The low value is a one-sided limit at an end; step strictly
            // inside, staying below the threshold on the adjacent segment.
            size_t j = (t == 0) ? 1 : samples.size() - 2;
            const auto& [t1, v1] = samples[j];
            Rat tin;
            if (v1 < target) {
                tin = (t + t1) / 2;
            } else {
                Rat cross = t + (target - v) / (v1 - v) * (t1 - t);
                tin = (t + cross) / 2;
            }
            if (tin > 0 && tin < 1) return Point::on_edge(Y, e, tin);
        }
    }
    return std::nullopt;
}

RatC check_fiberwise(const SimplicialSurjection& p, const WeightFunction& mu, const Point& x,
                     const PLFunction& f) {
    for (const Point& y : fiber(p, x)) {
        if (!f.eval(y).is_zero())
            throw Error(Errc::PreconditionViolated,
                        "function does not vanish on the fiber of the given point");
    }
    YFunction ff = [&](const Point& y) { return f.eval(y).conj() * f.eval(y); };
    return expectation_at(p, mu, ff, x);
}

FiberBoundReport fiber_bound_from_K(const SimplicialSurjection& p, const WeightFunction& mu,
                                    const std::vector<Point>& x_samples) {
    FiberBoundReport report;
    report.k_min = minimal_K(mu).k_min;

    for (const Point& x : x_samples) {
        auto fib = fiber(p, x);
        FiberBoundSample sample{x, static_cast<int>(fib.size()), Rat(1)};

        for (const Point& yk : fib) {
            // Disjoint bump peaking at yk, supported in its carrier: evaluates
            // to zero at the other fiber points by construction.
            YFunction bump = [&](const Point& y) -> RatC {
                if (y.carrier != yk.carrier) return RatC();
                if (p.Y().is_vertex(y.carrier)) return RatC(Rat(1));
                Rat s = y.edge_param(), sk = yk.edge_param();
                Rat radius = std::min(sk, Rat(1) - sk) / 2;
                Rat dist = s > sk ? s - sk : sk - s;
                if (dist >= radius) return RatC();
                return RatC(Rat(1) - dist / radius);
            };
            RatC e = expectation_at(p, mu, bump, x);
            sample.min_bump_expectation = std::min(sample.min_bump_expectation, e.re);
            // The bump expectation is exactly the weight of the fiber point;
            // each must dominate 1/K.
            if (e.re * report.k_min < 1) report.bounded = false;
        }
        report.max_fiber = std::max(report.max_fiber, sample.fiber_size);
        if (Rat(sample.fiber_size) > report.k_min) report.bounded = false;
        report.samples.push_back(std::move(sample));
    }
    return report;
}

}  // namespace brancov
