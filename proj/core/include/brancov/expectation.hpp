#pragma once

#include "brancov/hilbert.hpp"

#include <optional>
#include <string>
#include <vector>

namespace brancov {

/// Conditional expectation onto the target algebra: E(f)(x) is the weighted
/// fiber sum of f. Equals <1, f> pointwise.
PiecewiseFunction expectation(const SimplicialSurjection& p, const WeightFunction& mu,
                              const PLFunction& f);

RatC expectation_at(const SimplicialSurjection& p, const WeightFunction& mu, const YFunction& f,
                    const Point& x);

struct AxiomCheck {
    std::string axiom;
    bool pass = true;
    std::string detail;
};

struct AxiomReport {
    bool all_pass = true;
    std::vector<AxiomCheck> checks;
};

/// Verifies the conditional-expectation axioms on given test data, exactly:
/// bimodule identity E(i(a) b) = a E(b) at sample points (with the two sides
/// computed through independent code paths), projection E(i(a)) = a,
/// unitality, positivity of E(b* b), and contractivity of sup-norms.
AxiomReport check_axioms(const SimplicialSurjection& p, const WeightFunction& mu,
                         const std::vector<std::pair<PLFunction, PLFunction>>& ab_pairs,
                         const std::vector<Point>& x_samples);

struct IndexFiniteReport {
    Rat k_min;                       // 1 / (exact infimum of the weight)
    bool is_topologically_finite = true;
    Rat min_weight;
    // Certificate: where the infimum is attained or approached.
    SimplexId certificate_simplex = -1;
    bool certificate_at_vertex = false;
    Rat certificate_param;           // edge parameter when not at a vertex
};

/// Minimal constant K with K*E - id positive. In the commutative fiber model
/// positivity of K*E - id is the pointwise condition K*mu >= 1, so the
/// minimal constant is the reciprocal of the exact infimum of the weight,
/// attained or approached at a breakpoint.
IndexFiniteReport minimal_K(const WeightFunction& mu);

/// For K below the minimal constant there is a point with K*mu(y) < 1; finds
/// one exactly (a rational point strictly inside a piece when the infimum is
/// only approached).
std::optional<Point> find_positivity_violation(const WeightFunction& mu, const Rat& K);

/// E(conj(f) f)(x) must vanish when f vanishes on the whole fiber of x.
/// Throws PreconditionViolated if f does not vanish on the fiber.
RatC check_fiberwise(const SimplicialSurjection& p, const WeightFunction& mu, const Point& x,
                     const PLFunction& f);

struct FiberBoundSample {
    Point x;
    int fiber_size = 0;
    Rat min_bump_expectation;  // min over fiber bumps of E(bump)(x) = min mu on the fiber
};

struct FiberBoundReport {
    bool bounded = true;  // max fiber count <= k_min everywhere sampled
    int max_fiber = 0;
    Rat k_min;
    std::vector<FiberBoundSample> samples;
};

/// The mechanism bounding fiber cardinality by the index constant: disjoint
/// bumps f_k at the fiber points of x have E(f_k)(x) = mu(y_k) >= 1/K, and
/// their sum is dominated by E(1) = 1, so n <= K.
FiberBoundReport fiber_bound_from_K(const SimplicialSurjection& p, const WeightFunction& mu,
                                    const std::vector<Point>& x_samples);

}  // namespace brancov
