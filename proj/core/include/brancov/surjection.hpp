#pragma once

#include "brancov/complex.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace brancov {

/// A nondegenerate simplicial surjection p: Y -> X given by a vertex map.
/// Nondegeneracy (injectivity on the vertices of every simplex) is exactly
/// the combinatorial condition keeping all fibers finite, and it makes p map
/// each open simplex affinely onto an open simplex of equal dimension.
struct SimplicialSurjection {
    std::shared_ptr<const Complex> source;  // Y
    std::shared_ptr<const Complex> target;  // X
    std::vector<VertexId> vertex_map;       // per Y vertex

    // Derived, filled in by analyze():
    std::vector<SimplexId> image_of;                  // per Y simplex, equal dimension
    std::vector<std::vector<SimplexId>> sheets_over;  // per X simplex: Y preimages, ascending

    const Complex& Y() const { return *source; }
    const Complex& X() const { return *target; }

    /// Number of sheets over an open simplex = fiber cardinality of any of
    /// its interior points.
    int fiber_count(SimplexId x_simplex) const {
        return static_cast<int>(sheets_over[x_simplex].size());
    }

    /// Sheets through a given Y vertex over a given X simplex. The count is
    /// the local multiplicity of the branch at that vertex.
    std::vector<SimplexId> sheets_through(SimplexId x_simplex, VertexId y_vertex) const;

    /// Image of a point (exact coordinate transport).
    Point push_forward(const Point& y) const;
};

struct AnalyzeFailure {
    Errc code;                // NotSimplicial, DegenerateFibers or NotSurjective
    SimplexId witness = -1;   // Y simplex (first two) or X simplex (last)
    std::string detail;
};

struct AnalyzeResult {
    std::optional<SimplicialSurjection> map;
    std::optional<AnalyzeFailure> failure;
    bool ok() const { return map.has_value(); }
};

/// Validate a raw vertex map: simplex images exist, no simplex collapses
/// (collapses force infinite fibers), every X simplex is covered by an
/// equal-dimensional sheet.
AnalyzeResult try_analyze(std::shared_ptr<const Complex> source,
                          std::shared_ptr<const Complex> target,
                          const std::map<std::string, std::string>& vertex_map_by_name);

AnalyzeResult try_analyze(std::shared_ptr<const Complex> source,
                          std::shared_ptr<const Complex> target,
                          std::vector<VertexId> vertex_map);

/// Throwing variant of try_analyze.
SimplicialSurjection analyze(std::shared_ptr<const Complex> source,
                             std::shared_ptr<const Complex> target,
                             const std::map<std::string, std::string>& vertex_map_by_name);

/// All preimages of a target point, one per sheet over its carrier, sorted by
/// sheet id. Exact; never empty for a validated surjection.
std::vector<Point> fiber(const SimplicialSurjection& p, const Point& x);

struct OpennessResult {
    bool open = false;
    /// On failure: (Y simplex tau, X coface of p(tau) missed by every coface
    /// of tau). Openness of the realization is equivalent to this star
    /// criterion: p maps the open star of every simplex onto the open star of
    /// its image.
    std::optional<std::pair<SimplexId, SimplexId>> witness;
};

OpennessResult is_open(const SimplicialSurjection& p);

/// Partition of the open simplices of X by fiber cardinality.
struct Stratification {
    std::map<int, std::vector<SimplexId>> strata;  // cardinality -> X simplices
    std::vector<int> count_of;                     // per X simplex
    int max_fibers = 0;
};

Stratification stratify(const SimplicialSurjection& p);

struct StrataClosednessResult {
    bool closed = true;
    /// Violating pair (face, coface) with a strictly smaller fiber count on
    /// the coface; its existence is exactly a failure of cumulative strata
    /// being closed in their successors.
    std::optional<std::pair<SimplexId, SimplexId>> witness;
};

/// Closedness of every cumulative stratum in the next one reduces to fiber
/// counts being non-decreasing from faces to cofaces.
StrataClosednessResult check_strata_closedness(const SimplicialSurjection& p,
                                               const Stratification& strat);

/// Compatible barycentric subdivisions of source, target and the induced map
/// between them. Level 0 is the original surjection; deeper levels are built
/// lazily and capped.
class Tower {
public:
    static constexpr int kMaxLevel = 3;

    explicit Tower(SimplicialSurjection base);

    const SimplicialSurjection& level(int k) const;
    int built_levels() const { return static_cast<int>(levels_.size()) - 1; }

    /// Subdivision data from level k down to level k-1 (k >= 1).
    const SubdivisionMap& y_subdivision(int k) const;
    const SubdivisionMap& x_subdivision(int k) const;

    /// Locate a point given at level `from` in the complex at level `to`.
    Point x_point_at(const Point& x, int from, int to) const;
    Point y_point_at(const Point& y, int from, int to) const;

private:
    struct Level {
        std::shared_ptr<SimplicialSurjection> map;
        // Subdivision data from this level down to the previous one (empty
        // for level 0).
        std::shared_ptr<const SubdivisionMap> y_down;
        std::shared_ptr<const SubdivisionMap> x_down;
        std::shared_ptr<const Subdivision> y_sub;
        std::shared_ptr<const Subdivision> x_sub;
    };
    mutable std::vector<Level> levels_;
    void ensure_level(int k) const;
};

struct RegularNeighborhood {
    int level = 0;   // tower level where the star was taken
    Point center;    // located at that level
    std::vector<SimplexId> star;                   // U, simplices of X at `level`
    std::vector<Point> center_fiber;               // fiber of the center, sorted
    std::vector<std::vector<SimplexId>> branches;  // V_k, one per fiber point
};

/// Star-shaped regular neighborhood of a target point: the preimage of the
/// open star of the carrier splits into one connected branch per fiber point.
/// Subdivides (up to Tower::kMaxLevel) if the star at the current level does
/// not separate; throws SubdivisionLimitExceeded past the cap. For open maps
/// every branch is verified to map onto the whole star.
RegularNeighborhood regular_neighborhood(const Tower& tower, const Point& x);

enum class Verdict { NotSurjective, DegenerateFibers, NotOpen, BranchedCovering, Covering };

const char* verdict_name(Verdict v);

struct Classification {
    Verdict verdict;
    // Witnesses, populated according to the verdict.
    std::optional<SimplexId> witness_simplex;  // DegenerateFibers: Y simplex; NotSurjective: X simplex
    std::optional<std::pair<SimplexId, SimplexId>> openness_witness;
    int n_fold = 0;  // set for Covering
    std::optional<Stratification> strata;

    struct Component {
        std::vector<SimplexId> x_simplices;
        Verdict verdict;
        int n_fold = 0;
    };
    std::vector<Component> components;  // per-component verdicts when X is disconnected
};

/// Full decision procedure: validation, openness, stratification. Covering
/// means a single stratum over a connected target with locally bijective
/// stars; open maps with several strata are branched coverings.
Classification classify(std::shared_ptr<const Complex> source,
                        std::shared_ptr<const Complex> target,
                        const std::map<std::string, std::string>& vertex_map_by_name);

Classification classify(const AnalyzeResult& analyzed);

}  // namespace brancov
