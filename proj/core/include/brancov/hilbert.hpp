#pragma once

#include "brancov/piecewise.hpp"
#include "brancov/weights.hpp"

#include <functional>
#include <vector>

namespace brancov {

/// Pointwise evaluator type for source-side integrands that need not be
/// polynomial (products, pullbacks, symbolic data).
using YFunction = std::function<RatC(const Point&)>;

inline YFunction as_function(const PLFunction& f) {
    return [&f](const Point& y) { return f.eval(y); };
}

/// Module action (f xi)(y) = f(y) * xi(p(y)) as exact per-edge polynomials on
/// the source (a product of two linear factors is quadratic, so the result is
/// piecewise-polynomial rather than PL).
PiecewiseFunction module_action(const SimplicialSurjection& p, const PLFunction& f,
                                const PLFunction& xi);

/// The weighted inner product <f,g>(x) = sum over the fiber of x of
/// mu(y) conj(f(y)) g(y), assembled as one exact polynomial per open simplex
/// of the target (degree <= 3). Vertex values use the actual finite fiber.
PiecewiseFunction inner_product(const SimplicialSurjection& p, const WeightFunction& mu,
                                const PLFunction& f, const PLFunction& g);

/// Same, for functions living on a subdivision level of a tower.
PiecewiseFunction inner_product_at_level(const Tower& tower, int level, const WeightFunction& mu,
                                         const PLFunction& f, const PLFunction& g);

/// Pointwise weighted pairing at a single target point, for integrands given
/// only as evaluators. Exact.
RatC inner_product_at(const SimplicialSurjection& p, const WeightFunction& mu, const YFunction& f,
                      const YFunction& g, const Point& x);

struct NormEquivalenceCase {
    Rat f_norm_sq;       // ||f||^2, exact
    QuadExt ip_sup;      // ||<f,f>||, exact
    bool upper_ok;       // ||<f,f>|| <= ||f||^2
    bool lower_ok;       // N * ||<f,f>|| >= ||f||^2
    bool weight_lower_ok;  // ||<f,f>|| >= (min mu) * ||f||^2
    double ratio;        // ||<f,f>|| / ||f||^2
};

struct NormEquivalenceReport {
    bool all_upper = true;
    bool all_lower = true;
    bool all_weight_lower = true;
    int max_fibers = 0;
    Rat min_weight;
    double worst_ratio = 1.0;  // smallest observed ratio
    std::vector<NormEquivalenceCase> cases;
};

/// Verifies ||f||^2 / N <= ||<f,f>|| <= ||f||^2 for each test function, with
/// exact sup-norm comparisons, and additionally the always-valid lower bound
/// through the minimal weight.
NormEquivalenceReport check_norm_equivalence(const SimplicialSurjection& p,
                                             const WeightFunction& mu,
                                             const std::vector<PLFunction>& test_functions);

}  // namespace brancov
