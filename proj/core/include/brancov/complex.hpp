#pragma once

#include "brancov/errors.hpp"
#include "brancov/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace brancov {

using VertexId = int;
using SimplexId = int;

/// Vertices of a simplex, ascending vertex ids.
using VertexSet = std::vector<VertexId>;

/// Raw description of a complex as it arrives from JSON or fixture code:
/// vertex names, (typically maximal) simplices as name lists, optional edge
/// lengths keyed "a-b".
struct RawComplex {
    std::vector<std::string> vertices;
    std::vector<std::vector<std::string>> simplices;
    std::map<std::string, std::string> lengths;  // "a-b" -> "p/q"
};

/// Finite abstract simplicial complex, face-closed by construction, with a
/// rational metric on the 1-skeleton (edge lengths default to 1). Immutable
/// after construction.
///
/// Simplices are stored in a canonical order (dimension first, then vertex
/// ids lexicographically), so the id of the 0-simplex {v} equals v.
class Complex {
public:
    /// Validates a raw description and completes the face closure.
    /// Throws Error with MissingFace (a simplex uses an undeclared vertex, or
    /// a length refers to an absent edge), DuplicateSimplex, NonpositiveLength.
    static Complex validate(const RawComplex& raw);

    /// Construction from already-interned data (face closure still applied).
    static Complex from_simplices(std::vector<std::string> vertex_names,
                                  std::vector<VertexSet> simplices,
                                  std::map<VertexSet, Rat> edge_lengths = {});

    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int simplex_count() const { return static_cast<int>(simplices_.size()); }
    int dimension() const { return dimension_; }

    const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
    std::optional<VertexId> vertex_by_name(const std::string& name) const;

    const VertexSet& simplex(SimplexId s) const { return simplices_[s]; }
    std::optional<SimplexId> simplex_id(const VertexSet& vertices) const;
    SimplexId require_simplex(const VertexSet& vertices) const;
    int simplex_dim(SimplexId s) const { return static_cast<int>(simplices_[s].size()) - 1; }
    bool is_vertex(SimplexId s) const { return simplex_dim(s) == 0; }
    bool is_edge(SimplexId s) const { return simplex_dim(s) == 1; }

    std::string simplex_name(SimplexId s) const;

    /// All edges (dimension-1 simplices), ascending ids.
    const std::vector<SimplexId>& edges() const { return edges_; }
    Rat edge_length(SimplexId e) const;

    /// Proper faces and the simplex itself are related by subset inclusion.
    bool is_face(SimplexId face, SimplexId of) const;

    /// Cofaces of s including s itself: the combinatorial open star.
    /// Throws UnknownSimplex when s is out of range.
    std::vector<SimplexId> open_star(SimplexId s) const;

    /// Cofaces of strictly larger dimension.
    const std::vector<SimplexId>& proper_cofaces(SimplexId s) const { return proper_cofaces_[s]; }
    /// Faces of strictly smaller dimension.
    const std::vector<SimplexId>& proper_faces(SimplexId s) const { return proper_faces_[s]; }

    /// Connected components of a set of open simplices: two members are
    /// adjacent when one is a face of the other. Returns components sorted by
    /// their minimal simplex id, each sorted ascending.
    std::vector<std::vector<SimplexId>> components(const std::vector<SimplexId>& simplex_set) const;

    bool is_connected() const;

    /// Total length of the 1-skeleton.
    Rat skeleton_length() const;

private:
    friend struct Subdivider;
    std::vector<std::string> vertex_names_;
    std::map<std::string, VertexId> vertex_index_;
    std::vector<VertexSet> simplices_;
    std::map<VertexSet, SimplexId> simplex_index_;
    std::map<SimplexId, Rat> edge_lengths_;  // only non-default entries
    std::vector<SimplexId> edges_;
    std::vector<std::vector<SimplexId>> proper_cofaces_;
    std::vector<std::vector<SimplexId>> proper_faces_;
    int dimension_ = -1;

    void build_index();
};

/// A point of the geometric realization, identified by the unique open
/// simplex containing it (carrier) and strictly positive barycentric
/// coordinates summing to one, aligned with the carrier's vertex order.
struct Point {
    SimplexId carrier = -1;
    std::vector<Rat> coords;

    static Point at_vertex(VertexId v) { return Point{v, {Rat(1)}}; }
    /// Point on an edge at parameter t in [0,1] measured from the edge's
    /// first (smaller-id) vertex; t in {0,1} degenerates to the vertex.
    static Point on_edge(const Complex& cx, SimplexId edge, const Rat& t);

    /// Edge parameter for a point carried by an edge.
    Rat edge_param() const { return coords.at(1); }

    friend bool operator==(const Point& a, const Point& b) {
        return a.carrier == b.carrier && a.coords == b.coords;
    }
};

/// Validates coordinate invariants against the complex.
Point make_point(const Complex& cx, SimplexId carrier, std::vector<Rat> coords);

/// Exact affine relation between a barycentric subdivision and its coarse
/// complex. Fine vertex k is the barycenter of coarse simplex k.
struct SubdivisionMap {
    const Complex* fine = nullptr;
    const Complex* coarse = nullptr;
    /// Coarse location of each fine vertex (barycenter of that simplex).
    std::vector<Point> fine_vertex_in_coarse;
    /// Coarse carrier of each fine simplex: the top of its defining chain.
    std::vector<SimplexId> carrier_of;

    /// Transfer a fine point to coarse coordinates (exact; the carrier of the
    /// result is the smallest coarse simplex actually containing the point).
    Point to_coarse(const Point& fine_point) const;

    /// Locate a coarse point in the fine complex (exact round trip).
    Point to_fine(const Point& coarse_point) const;
};

struct Subdivision {
    std::shared_ptr<const Complex> fine;  // stable address across moves
    SubdivisionMap map;
    const Complex& complex() const { return *fine; }
};

/// Standard barycentric subdivision. New vertices are barycenters, named
/// after their simplex ("a.b" for the edge {a,b}); an edge of length L splits
/// into two halves of length L/2. Edges created from simplices of dimension
/// >= 2 get length 1 (the metric is only meaningful on 1-complexes).
Subdivision barycentric_subdivide(const Complex& coarse);

}  // namespace brancov
