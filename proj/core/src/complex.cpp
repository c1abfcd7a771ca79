#include "brancov/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace brancov {

namespace {

bool canonical_less(const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

/// All nonempty proper subsets of a sorted vertex set.
std::vector<VertexSet> proper_subsets(const VertexSet& s) {
    std::vector<VertexSet> out;
    const size_t n = s.size();
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        VertexSet sub;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) sub.push_back(s[i]);
        out.push_back(std::move(sub));
    }
    return out;
}

}  // namespace

Complex Complex::from_simplices(std::vector<std::string> vertex_names,
                                std::vector<VertexSet> simplices,
                                std::map<VertexSet, Rat> edge_lengths) {
    Complex cx;
    cx.vertex_names_ = std::move(vertex_names);
    for (VertexId v = 0; v < static_cast<int>(cx.vertex_names_.size()); ++v) {
        if (!cx.vertex_index_.emplace(cx.vertex_names_[v], v).second)
            throw Error(Errc::DuplicateSimplex, "duplicate vertex '" + cx.vertex_names_[v] + "'");
    }

    std::set<VertexSet> closed;
    for (VertexId v = 0; v < static_cast<int>(cx.vertex_names_.size()); ++v)
        closed.insert({v});
    for (auto& s : simplices) {
        VertexSet sorted = s;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(Errc::MalformedInput, "simplex with repeated vertex");
        for (VertexId v : sorted)
            if (v < 0 || v >= static_cast<int>(cx.vertex_names_.size()))
                throw Error(Errc::MissingFace, "simplex uses undeclared vertex");
        closed.insert(sorted);
        for (auto& f : proper_subsets(sorted)) closed.insert(std::move(f));
    }

    cx.simplices_.assign(closed.begin(), closed.end());
    std::sort(cx.simplices_.begin(), cx.simplices_.end(), canonical_less);
    cx.build_index();

    for (auto& [vs, len] : edge_lengths) {
        auto id = cx.simplex_id(vs);
        if (!id || !cx.is_edge(*id))
            throw Error(Errc::MissingFace, "length given for absent edge");
        if (len <= 0) throw Error(Errc::NonpositiveLength, "edge length must be positive");
        cx.edge_lengths_[*id] = len;
    }
    return cx;
}

Complex Complex::validate(const RawComplex& raw) {
    std::map<std::string, VertexId> index;
    for (size_t i = 0; i < raw.vertices.size(); ++i) {
        if (!index.emplace(raw.vertices[i], static_cast<VertexId>(i)).second)
            throw Error(Errc::DuplicateSimplex, "duplicate vertex '" + raw.vertices[i] + "'");
    }

    std::vector<VertexSet> simplices;
    std::set<VertexSet> seen;
    for (const auto& names : raw.simplices) {
        VertexSet s;
        for (const auto& n : names) {
            auto it = index.find(n);
            if (it == index.end())
                throw Error(Errc::MissingFace, "simplex vertex '" + n + "' not declared");
            s.push_back(it->second);
        }
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw Error(Errc::MalformedInput, "simplex with repeated vertex");
        if (!seen.insert(s).second) {
            std::string listing;
            for (const auto& n : names) listing += (listing.empty() ? "" : ",") + n;
            throw Error(Errc::DuplicateSimplex, "simplex {" + listing + "} listed twice");
        }
        simplices.push_back(std::move(s));
    }

    std::map<VertexSet, Rat> lengths;
    for (const auto& [key, val] : raw.lengths) {
        auto dash = key.find('-');
        if (dash == std::string::npos)
            throw Error(Errc::MalformedInput, "edge key '" + key + "' is not of the form a-b");
        auto a = index.find(key.substr(0, dash));
        auto b = index.find(key.substr(dash + 1));
        if (a == index.end() || b == index.end())
            throw Error(Errc::MissingFace, "length key '" + key + "' uses unknown vertex");
        auto r = parse_rational(val);
        if (!r) throw Error(Errc::MalformedInput, "malformed rational '" + val + "'");
        if (*r <= 0) throw Error(Errc::NonpositiveLength, "edge " + key + " has length " + val);
        VertexSet e{a->second, b->second};
        std::sort(e.begin(), e.end());
        lengths[e] = *r;
    }
    return from_simplices(raw.vertices, std::move(simplices), std::move(lengths));
}

void Complex::build_index() {
    simplex_index_.clear();
    edges_.clear();
    dimension_ = -1;
    for (SimplexId s = 0; s < static_cast<int>(simplices_.size()); ++s) {
        simplex_index_[simplices_[s]] = s;
        dimension_ = std::max(dimension_, simplex_dim(s));
        if (is_edge(s)) edges_.push_back(s);
    }
    proper_cofaces_.assign(simplices_.size(), {});
    proper_faces_.assign(simplices_.size(), {});
    for (SimplexId big = 0; big < static_cast<int>(simplices_.size()); ++big) {
        for (auto& f : proper_subsets(simplices_[big])) {
            SimplexId small = simplex_index_.at(f);
            proper_cofaces_[small].push_back(big);
            proper_faces_[big].push_back(small);
        }
    }
}

std::optional<VertexId> Complex::vertex_by_name(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<SimplexId> Complex::simplex_id(const VertexSet& vertices) const {
    auto it = simplex_index_.find(vertices);
    if (it == simplex_index_.end()) return std::nullopt;
    return it->second;
}

SimplexId Complex::require_simplex(const VertexSet& vertices) const {
    auto id = simplex_id(vertices);
    if (!id) throw Error(Errc::UnknownSimplex, "no such simplex");
    return *id;
}

std::string Complex::simplex_name(SimplexId s) const {
    std::string out;
    for (VertexId v : simplices_[s]) out += (out.empty() ? "" : "-") + vertex_names_[v];
    return out;
}

Rat Complex::edge_length(SimplexId e) const {
    if (!is_edge(e)) throw Error(Errc::UnknownSimplex, "not an edge");
    auto it = edge_lengths_.find(e);
    return it == edge_lengths_.end() ? Rat(1) : it->second;
}

bool Complex::is_face(SimplexId face, SimplexId of) const {
    const auto& f = simplices_[face];
    const auto& g = simplices_[of];
    return std::includes(g.begin(), g.end(), f.begin(), f.end());
}

std::vector<SimplexId> Complex::open_star(SimplexId s) const {
    if (s < 0 || s >= simplex_count()) throw Error(Errc::UnknownSimplex, "simplex id out of range");
    std::vector<SimplexId> star = {s};
    const auto& co = proper_cofaces_[s];
    star.insert(star.end(), co.begin(), co.end());
    std::sort(star.begin(), star.end());
    return star;
}

std::vector<std::vector<SimplexId>> Complex::components(
    const std::vector<SimplexId>& simplex_set) const {
    std::map<SimplexId, size_t> pos;
    for (size_t i = 0; i < simplex_set.size(); ++i) pos[simplex_set[i]] = i;

    std::vector<size_t> parent(simplex_set.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](size_t x, size_t y) { parent[find(x)] = find(y); };

    for (size_t i = 0; i < simplex_set.size(); ++i) {
        for (SimplexId f : proper_faces_[simplex_set[i]]) {
            auto it = pos.find(f);
            if (it != pos.end()) unite(i, it->second);
        }
    }

    std::map<size_t, std::vector<SimplexId>> buckets;
    for (size_t i = 0; i < simplex_set.size(); ++i) buckets[find(i)].push_back(simplex_set[i]);
    std::vector<std::vector<SimplexId>> out;
    for (auto& [root, members] : buckets) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

bool Complex::is_connected() const {
    std::vector<SimplexId> all(simplex_count());
    std::iota(all.begin(), all.end(), 0);
    return components(all).size() <= 1;
}

Rat Complex::skeleton_length() const {
    Rat total = 0;
    for (SimplexId e : edges_) total += edge_length(e);
    return total;
}

Point Point::on_edge(const Complex& cx, SimplexId edge, const Rat& t) {
    if (!cx.is_edge(edge)) throw Error(Errc::UnknownSimplex, "not an edge");
    if (t < 0 || t > 1) throw Error(Errc::MalformedInput, "edge parameter outside [0,1]");
    const auto& vs = cx.simplex(edge);
    if (t == 0) return at_vertex(vs[0]);
    if (t == 1) return at_vertex(vs[1]);
    return Point{edge, {Rat(1) - t, t}};
}

Point make_point(const Complex& cx, SimplexId carrier, std::vector<Rat> coords) {
    if (carrier < 0 || carrier >= cx.simplex_count())
        throw Error(Errc::UnknownSimplex, "carrier out of range");
    if (coords.size() != cx.simplex(carrier).size())
        throw Error(Errc::MalformedInput, "coordinate count does not match carrier arity");
    Rat sum = 0;
    for (const auto& c : coords) {
        if (c <= 0) throw Error(Errc::MalformedInput, "barycentric coordinates must be positive");
        sum += c;
    }
    if (sum != 1) throw Error(Errc::MalformedInput, "barycentric coordinates must sum to 1");
    return Point{carrier, std::move(coords)};
}

Subdivision barycentric_subdivide(const Complex& coarse) {
    const int n = coarse.simplex_count();

    // One fine vertex per coarse simplex; original vertex names are kept so
    // fine vertex id k is the barycenter of coarse simplex k.
    std::vector<std::string> names(n);
    for (SimplexId s = 0; s < n; ++s) {
        const auto& vs = coarse.simplex(s);
        if (vs.size() == 1) {
            names[s] = coarse.vertex_name(vs[0]);
        } else {
            std::string nm;
            for (VertexId v : vs) nm += (nm.empty() ? "" : ".") + coarse.vertex_name(v);
            names[s] = nm;
        }
    }

    // Fine simplices are chains of strict face inclusions; ids ascend along a
    // chain because faces precede cofaces in the canonical order.
    std::vector<VertexSet> chains;
    std::vector<std::vector<VertexSet>> ending_at(n);
    for (SimplexId s = 0; s < n; ++s) {
        ending_at[s].push_back({s});
        for (SimplexId f : coarse.proper_faces(s))
            for (const auto& prefix : ending_at[f]) {
                VertexSet chain = prefix;
                chain.push_back(s);
                ending_at[s].push_back(std::move(chain));
            }
        for (const auto& c : ending_at[s]) chains.push_back(c);
    }

    std::map<VertexSet, Rat> lengths;
    for (const auto& chain : chains) {
        if (chain.size() != 2) continue;
        SimplexId top = chain[1];
        if (coarse.is_edge(top) && coarse.is_vertex(chain[0]))
            lengths[chain] = coarse.edge_length(top) / 2;
        // edges descending from 2-simplices and up keep the default length
    }

    Subdivision out;
    out.fine = std::make_shared<const Complex>(
        Complex::from_simplices(std::move(names), std::move(chains), std::move(lengths)));
    out.map.coarse = &coarse;
    out.map.fine = out.fine.get();
    out.map.fine_vertex_in_coarse.resize(n);
    for (SimplexId s = 0; s < n; ++s) {
        const size_t arity = coarse.simplex(s).size();
        out.map.fine_vertex_in_coarse[s] =
            Point{s, std::vector<Rat>(arity, Rat(1, static_cast<unsigned>(arity)))};
    }
    out.map.carrier_of.resize(out.fine->simplex_count());
    for (SimplexId fs = 0; fs < out.fine->simplex_count(); ++fs)
        out.map.carrier_of[fs] = out.fine->simplex(fs).back();  // top of the chain
    return out;
}

Point SubdivisionMap::to_coarse(const Point& fine_point) const {
    const auto& chain = fine->simplex(fine_point.carrier);  // coarse simplex ids, ascending
    SimplexId top = chain.back();
    const auto& top_vs = coarse->simplex(top);

    std::vector<Rat> acc(top_vs.size(), Rat(0));
    for (size_t i = 0; i < chain.size(); ++i) {
        const auto& member = coarse->simplex(chain[i]);
        Rat weight = fine_point.coords[i] / Rat(static_cast<unsigned>(member.size()));
        for (VertexId v : member) {
            auto pos = std::lower_bound(top_vs.begin(), top_vs.end(), v) - top_vs.begin();
            acc[pos] += weight;
        }
    }

    VertexSet support;
    std::vector<Rat> coords;
    for (size_t i = 0; i < acc.size(); ++i) {
        if (acc[i] != 0) {
            support.push_back(top_vs[i]);
            coords.push_back(acc[i]);
        }
    }
    return Point{coarse->require_simplex(support), std::move(coords)};
}

Point SubdivisionMap::to_fine(const Point& coarse_point) const {
    const auto& vs = coarse->simplex(coarse_point.carrier);
    const size_t r = vs.size();

    // Order coordinates descending; prefix sets of that order form the chain
    // of the fine carrier, with weights given by consecutive differences.
    std::vector<size_t> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t i, size_t j) {
        return coarse_point.coords[i] > coarse_point.coords[j];
    });

    VertexSet prefix;
    VertexSet fine_carrier;
    std::vector<Rat> fine_coords;
    for (size_t i = 0; i < r; ++i) {
        prefix.push_back(vs[order[i]]);
        VertexSet sorted = prefix;
        std::sort(sorted.begin(), sorted.end());
        Rat next = (i + 1 < r) ? coarse_point.coords[order[i + 1]] : Rat(0);
        Rat weight = Rat(static_cast<unsigned>(i + 1)) * (coarse_point.coords[order[i]] - next);
        if (weight != 0) {
            fine_carrier.push_back(coarse->require_simplex(sorted));
            fine_coords.push_back(weight);
        }
    }
    return Point{fine->require_simplex(fine_carrier), std::move(fine_coords)};
}

}  // namespace brancov
