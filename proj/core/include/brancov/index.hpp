#pragma once

#include "brancov/expectation.hpp"
#include "brancov/weights.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace brancov {

/// One Borel piece: a set of open target simplices inside one stratum piece,
/// together with one branch of its preimage. The source-side pieces of the
/// partition map injectively into their target pieces; that injectivity is
/// what collapses the reconstruction identity to a single term.
struct BorelPiece {
    int fiber_count = 0;  // j
    int x_piece = 0;      // k, index of the piece within the stratum
    int branch = 0;       // t, 1-based branch index
    std::vector<SimplexId> x_simplices;
    std::vector<SimplexId> y_simplices;
};

struct BorelPartition {
    std::vector<BorelPiece> pieces;
    std::vector<int> piece_of;  // per source simplex

    std::string piece_id(size_t idx) const {
        const auto& p = pieces[idx];
        return std::to_string(p.fiber_count) + "." + std::to_string(p.x_piece) + "." +
               std::to_string(p.branch);
    }
    bool contains(size_t idx, SimplexId y_simplex) const {
        const auto& ys = pieces[idx].y_simplices;
        return std::binary_search(ys.begin(), ys.end(), y_simplex);
    }
};

/// Canonical partition: per connected component of each stratum, the branches
/// of its preimage when they are injective (which happens exactly when the
/// component count equals the fiber cardinality); otherwise the component is
/// split open simplex by open simplex, preserving injectivity.
BorelPartition borel_partition(const SimplicialSurjection& p, const Stratification& strat);

/// The index element M = 1/mu, kept symbolically as a reciprocal of the
/// piecewise-linear weight (never expanded); exact at rational points, with
/// one-sided limits per edge. Bounded by the maximal fiber data.
struct IndexElement {
    const SimplicialSurjection* map = nullptr;
    const WeightFunction* mu = nullptr;
    const BorelPartition* partition = nullptr;

    Rat eval(const Point& y) const { return Rat(1) / mu->eval(y); }
    Rat limit_at(SimplexId y_edge, int end) const { return Rat(1) / mu->limit_at(y_edge, end); }
    Rat vertex_value(VertexId w) const { return Rat(1) / mu->vertex_values[w]; }
    Rat bound() const { return Rat(1) / mu->min_value(); }
};

IndexElement index_element(const SimplicialSurjection& p, const WeightFunction& mu,
                           const BorelPartition& partition);

/// Continuity of the index element as piecewise data (it jumps exactly where
/// the weight jumps, e.g. at branch vertices).
ContinuityReport check_index_continuity(const IndexElement& m);

struct ReconstructionReport {
    bool exact = true;       // every sampled identity held as exact rationals
    int samples_checked = 0;
    int failures = 0;
    double max_residual = 0.0;  // numeric residual when cross terms appear
    std::vector<std::string> notes;
};

/// Verifies f(y) = sum over pieces of m (i E)(m* f) at every sample, exactly.
/// Pieces touching the sample fiber more than once (a corrupted partition)
/// produce cross terms; those are evaluated numerically and reported.
ReconstructionReport check_reconstruction(const SimplicialSurjection& p, const WeightFunction& mu,
                                          const BorelPartition& partition, const PLFunction& f,
                                          const std::vector<Point>& y_samples);

/// Quasi-basis element for a genuine covering: the square root of (fold *
/// hat_v) pulled back and cut to one sheet of the star of v. Continuous
/// because the hat vanishes on the star boundary.
struct QuasiBasisElement {
    VertexId cover_vertex = -1;  // v in the target
    VertexId sheet_vertex = -1;  // w in the fiber of v
};

struct QuasiBasis {
    const SimplicialSurjection* map = nullptr;
    int fold = 0;
    std::vector<QuasiBasisElement> elements;

    /// Exact u^2 (elements are real and nonnegative).
    Rat eval_squared(size_t i, const Point& y) const;
    /// Floating evaluation (square roots).
    double eval(size_t i, const Point& y) const;
};

/// Throws NotACovering unless the classification verdict is Covering.
QuasiBasis quasi_basis(const SimplicialSurjection& p, const Classification& cls);

struct QuasiBasisReport {
    int samples = 0;
    double max_reconstruction_error = 0.0;  // |f(y) - sum u E(u* f)(p(y))|
    double max_index_deviation = 0.0;       // |Index(E)(y) - fold|
    bool index_exact = true;                // sum of exact u^2 equals fold at every sample
    bool within_tolerance = true;
};

QuasiBasisReport check_quasi_basis(const QuasiBasis& qb, const WeightFunction& mu,
                                   const PLFunction& f, int samples_per_edge, double tolerance);

enum class ModuleKind {
    ProjectiveFinitelyGenerated,  // genuine covering
    CompleteNotProjective,        // proper branched covering
    NoHilbertStructure,           // not open: the construction yields no equivalent norm
};

struct ProjectivityVerdict {
    ModuleKind kind;
    Verdict classification;
    std::optional<Rat> k_min;             // certificate for the branched case
    std::optional<int> quasi_basis_size;  // certificate for the covering case
    std::optional<int> fold;
    std::string summary;
};

/// The classification dichotomy on the module side, with certificates.
ProjectivityVerdict projectivity_verdict(std::shared_ptr<const Complex> source,
                                         std::shared_ptr<const Complex> target,
                                         const std::map<std::string, std::string>& vertex_map);

ProjectivityVerdict projectivity_verdict(const SimplicialSurjection& p, const Classification& cls);

}  // namespace brancov
