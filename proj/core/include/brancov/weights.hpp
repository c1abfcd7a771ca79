#pragma once

#include "brancov/piecewise.hpp"
#include "brancov/surjection.hpp"

#include <map>
#include <string>
#include <vector>

namespace brancov {

/// Does the sheet's own parameter run in the same direction as the parameter
/// of its image edge?
bool sheet_aligned(const SimplicialSurjection& p, SimplexId y_edge);

/// Weight on the source: strictly positive, piecewise linear, with unit fiber
/// sums. Values at source vertices are stored separately from the (one-sided)
/// edge limits, so jumps across piece boundaries are representable; within
/// every Borel piece the data is continuous.
struct WeightFunction {
    const SimplicialSurjection* map = nullptr;
    std::vector<Rat> vertex_values;               // per Y vertex
    std::map<SimplexId, PLProfile> edge_profiles; // per Y edge, in the edge parameter

    Rat eval(const Point& y) const;
    Rat limit_at(SimplexId y_edge, int end) const;

    /// The sheet's weight as a function of the image edge parameter.
    PLProfile profile_in_target_param(SimplexId y_edge) const;

    /// Minimum over the closures of all pieces: vertex values and all
    /// breakpoint values including one-sided limits. This is the exact
    /// infimum of the weight.
    Rat min_value() const;
    Rat max_value() const;

    /// Locates a fine edge of a tower inside its base edge and restricts the
    /// weight there (exact).
    PLProfile profile_on(const Tower& tower, int level, SimplexId y_edge_at_level) const;
};

/// Partition of unity subordinate to a cover by open simplex sets: each
/// function is a (multiplicity-normalized) sum of barycentric hats of the
/// vertices contained in its set, so the family is PL, nonnegative, sums to
/// one exactly, and is supported in the respective sets.
struct PartitionOfUnity {
    const Complex* cx = nullptr;
    std::vector<std::vector<SimplexId>> cover;
    std::vector<PLFunction> functions;
};

/// Throws NotACover when the sets do not cover every open simplex, and
/// MalformedInput when a set is not open (not coface-closed).
PartitionOfUnity partition_of_unity(const Complex& cx,
                                    std::vector<std::vector<SimplexId>> cover);

/// Construct the canonical weight for an open surjection with monotone fiber
/// counts, by induction over strata: on the lowest stratum the weight is the
/// reciprocal fiber count; over higher strata, near a lower-stratum vertex v
/// each branch through a fiber vertex w splits the weight 1/#p^-1(v) evenly
/// among its local sheets, and away from lower strata the weight is again the
/// reciprocal fiber count; the two regimes are blended by the barycentric
/// partition of unity subordinate to the vertex-star cover. On an edge this
/// collapses to one exact linear interpolation per sheet.
WeightFunction build_weight(const SimplicialSurjection& p, const Stratification& strat);

struct WeightIssue {
    std::string kind;  // "positivity" | "fiber_sum" | "piece_continuity" | "branch_limit" | ...
    std::string detail;
};

struct WeightReport {
    bool valid = true;
    std::vector<WeightIssue> issues;
    Rat min_weight;
    Rat max_weight;
    int fiber_sum_checks = 0;  // number of exact identities verified
};

/// Validate an arbitrary candidate weight: positivity, exact fiber-sum
/// identity (as a piecewise-linear identity over every target simplex, which
/// subsumes any sample check), continuity within each piece of the canonical
/// Borel decomposition, and continuity on the target of every induced inner
/// product (checked through the exact branch-limit criterion and, for a
/// spanning family of hats, through the hilbert machinery).
WeightReport validate_weight(const SimplicialSurjection& p, const WeightFunction& mu);

}  // namespace brancov
