#pragma once

#include "brancov/complex.hpp"
#include "brancov/polynomial.hpp"

#include <map>
#include <optional>
#include <vector>

namespace brancov {

/// Real piecewise-linear profile on [0,1]: breakpoints with values, exact.
/// The values at t=0 and t=1 are one-sided limits; the vertices of the
/// carrying edge store their own values separately.
class PLProfile {
public:
    PLProfile() : samples_{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}} {}
    static PLProfile constant(const Rat& v) { return PLProfile({{Rat(0), v}, {Rat(1), v}}); }
    static PLProfile segment(const Rat& v0, const Rat& v1) {
        return PLProfile({{Rat(0), v0}, {Rat(1), v1}});
    }
    explicit PLProfile(std::vector<std::pair<Rat, Rat>> samples);

    const std::vector<std::pair<Rat, Rat>>& samples() const { return samples_; }

    Rat eval(const Rat& t) const;
    Rat limit_at_0() const { return samples_.front().second; }
    Rat limit_at_1() const { return samples_.back().second; }

    Rat min_value() const;  // attained at a breakpoint
    Rat max_value() const;
    bool is_constant() const;

    PLProfile reversed() const;  // t -> 1-t
    /// Restriction to [a,b] reparameterized to [0,1]. Requires a < b.
    PLProfile restrict(const Rat& a, const Rat& b) const;

    friend PLProfile operator+(const PLProfile& f, const PLProfile& g);
    friend PLProfile operator*(const Rat& s, const PLProfile& f);
    friend bool operator==(const PLProfile& f, const PLProfile& g);

    /// Breakpoint at which min_value() is attained (first such).
    Rat argmin() const;

private:
    std::vector<std::pair<Rat, Rat>> samples_;  // t strictly increasing, 0..1
};

/// Continuous piecewise-linear function on a complex, complex-valued:
/// determined by its vertex values via barycentric interpolation.
struct PLFunction {
    const Complex* cx = nullptr;
    std::vector<RatC> values;  // per vertex

    static PLFunction constant(const Complex& cx, RatC v);
    /// Barycentric hat: 1 at the vertex, 0 on all others. Supported in the
    /// open star of the vertex.
    static PLFunction hat(const Complex& cx, VertexId v);

    RatC eval(const Point& pt) const;
    bool is_real() const;

    /// The function restricted to an edge, as a linear polynomial in the edge
    /// parameter.
    Poly on_edge(SimplexId e) const;

    friend PLFunction operator+(const PLFunction& f, const PLFunction& g);
    friend PLFunction operator*(const RatC& s, const PLFunction& f);
};

/// Transfer a PL function to a barycentric subdivision (exact: fine vertex
/// values are evaluations at the barycenters).
PLFunction refine(const PLFunction& f, const SubdivisionMap& down);

/// Per-open-simplex polynomial data on a 1-complex, with independent vertex
/// values (a vertex value may disagree with the incident one-sided limits;
/// that encodes a jump across pieces). Edges may be segmented when factors
/// carry interior breakpoints; products of PL data stay within degree 3.
struct PiecewiseFunction {
    struct EdgePieces {
        std::vector<Rat> breaks;  // 0 = t_0 < ... < t_k = 1
        std::vector<Poly> polys;  // one per interval
    };

    const Complex* cx = nullptr;
    std::vector<RatC> vertex_values;
    std::map<SimplexId, EdgePieces> edges;

    RatC eval(const Point& pt) const;
    /// One-sided limit along an edge at one of its ends (end = 0 or 1).
    RatC limit_at(SimplexId edge, int end) const;

    bool is_real() const;
    PiecewiseFunction conj() const;

    static PiecewiseFunction constant(const Complex& cx, RatC v);
};

struct ContinuityIssue {
    SimplexId edge;
    Rat t;                          // 0 or 1 at a vertex end, interior at a joint
    std::optional<VertexId> vertex; // set when a vertex value is involved
    RatC expected;                  // vertex value (or left limit at a joint)
    RatC actual;                    // one-sided polynomial limit (or right)
};

struct ContinuityReport {
    bool continuous = true;
    std::vector<ContinuityIssue> issues;
};

/// Exact continuity check: every one-sided polynomial limit at a vertex must
/// equal the stored vertex value, and segmented edges must agree at interior
/// joints.
ContinuityReport check_continuity(const PiecewiseFunction& h);

struct SupNorm {
    double value = 0;     // reported to within 1e-12
    QuadExt exact;        // exact value of the maximum of |h|
    std::string where;    // human-readable location
    SimplexId simplex = -1;
    double at = 0;        // parameter of the achieving point (edges)
};

/// Exact maximum of |h| over the whole complex for real-valued h: closed
/// pieces are scanned through endpoints and critical points of the cubic
/// pieces; vertex values participate separately.
SupNorm sup_norm(const PiecewiseFunction& h);

/// Exact minimum of real-valued h (signed), for positivity checks.
struct PieceMin {
    QuadExt exact;
    SimplexId simplex = -1;
    bool at_vertex_value = false;
};
PieceMin min_value(const PiecewiseFunction& h);

/// Exact squared sup-norm of a complex-valued PL function; |f|^2 is a real
/// quadratic per edge with rational extrema.
struct PLNormSq {
    Rat value;
    Point at;
};
PLNormSq sup_norm_squared(const PLFunction& f);

}  // namespace brancov
