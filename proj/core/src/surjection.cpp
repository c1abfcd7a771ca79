#include "brancov/surjection.hpp"

#include <algorithm>
#include <set>

namespace brancov {

std::vector<SimplexId> SimplicialSurjection::sheets_through(SimplexId x_simplex,
                                                            VertexId y_vertex) const {
    std::vector<SimplexId> out;
    for (SimplexId sheet : sheets_over[x_simplex]) {
        const auto& vs = source->simplex(sheet);
        if (std::binary_search(vs.begin(), vs.end(), y_vertex)) out.push_back(sheet);
    }
    return out;
}

Point SimplicialSurjection::push_forward(const Point& y) const {
    SimplexId image = image_of[y.carrier];
    const auto& yv = source->simplex(y.carrier);
    const auto& xv = target->simplex(image);
    std::vector<Rat> coords(xv.size());
    for (size_t i = 0; i < yv.size(); ++i) {
        VertexId xvert = vertex_map[yv[i]];
        auto pos = std::lower_bound(xv.begin(), xv.end(), xvert) - xv.begin();
        coords[pos] = y.coords[i];
    }
    return Point{image, std::move(coords)};
}

AnalyzeResult try_analyze(std::shared_ptr<const Complex> source,
                          std::shared_ptr<const Complex> target,
                          std::vector<VertexId> vertex_map) {
    if (static_cast<int>(vertex_map.size()) != source->vertex_count())
        throw Error(Errc::MalformedInput, "vertex map must cover every source vertex");
    for (VertexId x : vertex_map)
        if (x < 0 || x >= target->vertex_count())
            throw Error(Errc::MalformedInput, "vertex map hits unknown target vertex");

    SimplicialSurjection p;
    p.source = std::move(source);
    p.target = std::move(target);
    p.vertex_map = std::move(vertex_map);

    p.image_of.assign(p.Y().simplex_count(), -1);
    p.sheets_over.assign(p.X().simplex_count(), {});
    for (SimplexId s = 0; s < p.Y().simplex_count(); ++s) {
        VertexSet image;
        for (VertexId v : p.Y().simplex(s)) image.push_back(p.vertex_map[v]);
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
            return {std::nullopt,
                    AnalyzeFailure{Errc::DegenerateFibers, s,
                                   "simplex " + p.Y().simplex_name(s) +
                                       " collapses, forcing an infinite fiber"}};
        }
        auto id = p.X().simplex_id(image);
        if (!id) {
            return {std::nullopt,
                    AnalyzeFailure{Errc::NotSimplicial, s,
                                   "image of " + p.Y().simplex_name(s) +
                                       " is not a simplex of the target"}};
        }
        p.image_of[s] = *id;
        p.sheets_over[*id].push_back(s);
    }
    for (SimplexId x = 0; x < p.X().simplex_count(); ++x) {
        if (p.sheets_over[x].empty()) {
            return {std::nullopt,
                    AnalyzeFailure{Errc::NotSurjective, x,
                                   "target simplex " + p.X().simplex_name(x) +
                                       " has no equal-dimensional preimage"}};
        }
    }
    return {std::move(p), std::nullopt};
}

AnalyzeResult try_analyze(std::shared_ptr<const Complex> source,
                          std::shared_ptr<const Complex> target,
                          const std::map<std::string, std::string>& vertex_map_by_name) {
    std::vector<VertexId> vm(source->vertex_count(), -1);
    for (const auto& [yname, xname] : vertex_map_by_name) {
        auto y = source->vertex_by_name(yname);
        if (!y) throw Error(Errc::MalformedInput, "unknown source vertex '" + yname + "'");
        auto x = target->vertex_by_name(xname);
        if (!x) throw Error(Errc::MalformedInput, "unknown target vertex '" + xname + "'");
        vm[*y] = *x;
    }
    for (VertexId v = 0; v < source->vertex_count(); ++v)
        if (vm[v] < 0)
            throw Error(Errc::MalformedInput,
                        "vertex map misses source vertex '" + source->vertex_name(v) + "'");
    return try_analyze(std::move(source), std::move(target), std::move(vm));
}

SimplicialSurjection analyze(std::shared_ptr<const Complex> source,
                             std::shared_ptr<const Complex> target,
                             const std::map<std::string, std::string>& vertex_map_by_name) {
    auto res = try_analyze(std::move(source), std::move(target), vertex_map_by_name);
    if (!res.ok()) throw Error(res.failure->code, res.failure->detail);
    return *std::move(res.map);
}

std::vector<Point> fiber(const SimplicialSurjection& p, const Point& x) {
    std::vector<Point> out;
    const auto& xv = p.X().simplex(x.carrier);
    for (SimplexId sheet : p.sheets_over[x.carrier]) {
        const auto& yv = p.Y().simplex(sheet);
        std::vector<Rat> coords(yv.size());
        for (size_t i = 0; i < yv.size(); ++i) {
            VertexId xvert = p.vertex_map[yv[i]];
            auto pos = std::lower_bound(xv.begin(), xv.end(), xvert) - xv.begin();
            coords[i] = x.coords[pos];
        }
        out.push_back(Point{sheet, std::move(coords)});
    }
    return out;  // sheets_over is ascending, so the order is deterministic
}

OpennessResult is_open(const SimplicialSurjection& p) {
    for (SimplexId tau = 0; tau < p.Y().simplex_count(); ++tau) {
        SimplexId image = p.image_of[tau];
        for (SimplexId coface : p.X().proper_cofaces(image)) {
            bool hit = false;
            for (SimplexId up : p.Y().proper_cofaces(tau)) {
                if (p.image_of[up] == coface) {
                    hit = true;
                    break;
                }
            }
            if (!hit) return {false, std::make_pair(tau, coface)};
        }
    }
    return {true, std::nullopt};
}

Stratification stratify(const SimplicialSurjection& p) {
    Stratification s;
    s.count_of.resize(p.X().simplex_count());
    for (SimplexId x = 0; x < p.X().simplex_count(); ++x) {
        int count = p.fiber_count(x);
        s.count_of[x] = count;
        s.strata[count].push_back(x);
        s.max_fibers = std::max(s.max_fibers, count);
    }
    return s;
}

StrataClosednessResult check_strata_closedness(const SimplicialSurjection& p,
                                               const Stratification& strat) {
    for (SimplexId face = 0; face < p.X().simplex_count(); ++face) {
        for (SimplexId coface : p.X().proper_cofaces(face)) {
            if (strat.count_of[coface] < strat.count_of[face])
                return {false, std::make_pair(face, coface)};
        }
    }
    return {true, std::nullopt};
}

Tower::Tower(SimplicialSurjection base) {
    Level l0;
    l0.map = std::make_shared<SimplicialSurjection>(std::move(base));
    levels_.push_back(std::move(l0));
}

void Tower::ensure_level(int k) const {
    if (k < 0 || k > kMaxLevel) throw Error(Errc::SubdivisionLimitExceeded, "tower level cap");
    while (static_cast<int>(levels_.size()) <= k) {
        const auto& prev = *levels_.back().map;
        Level next;
        next.y_sub = std::make_shared<const Subdivision>(barycentric_subdivide(prev.Y()));
        next.x_sub = std::make_shared<const Subdivision>(barycentric_subdivide(prev.X()));
        next.y_down = std::shared_ptr<const SubdivisionMap>(next.y_sub, &next.y_sub->map);
        next.x_down = std::shared_ptr<const SubdivisionMap>(next.x_sub, &next.x_sub->map);

        // The induced vertex map sends the barycenter of a simplex to the
        // barycenter of its image; fine vertex ids are coarse simplex ids.
        std::vector<VertexId> vm(prev.Y().simplex_count());
        for (SimplexId s = 0; s < prev.Y().simplex_count(); ++s) vm[s] = prev.image_of[s];

        auto res = try_analyze(next.y_sub->fine, next.x_sub->fine, std::move(vm));
        if (!res.ok()) throw Error(res.failure->code, "subdivision: " + res.failure->detail);
        next.map = std::make_shared<SimplicialSurjection>(*std::move(res.map));
        levels_.push_back(std::move(next));
    }
}

const SimplicialSurjection& Tower::level(int k) const {
    ensure_level(k);
    return *levels_[k].map;
}

const SubdivisionMap& Tower::y_subdivision(int k) const {
    if (k < 1) throw Error(Errc::MalformedInput, "subdivision data starts at level 1");
    ensure_level(k);
    return *levels_[k].y_down;
}

const SubdivisionMap& Tower::x_subdivision(int k) const {
    if (k < 1) throw Error(Errc::MalformedInput, "subdivision data starts at level 1");
    ensure_level(k);
    return *levels_[k].x_down;
}

Point Tower::x_point_at(const Point& x, int from, int to) const {
    ensure_level(std::max(from, to));
    Point p = x;
    for (int l = from; l < to; ++l) p = levels_[l + 1].x_down->to_fine(p);
    for (int l = from; l > to; --l) p = levels_[l].x_down->to_coarse(p);
    return p;
}

Point Tower::y_point_at(const Point& y, int from, int to) const {
    ensure_level(std::max(from, to));
    Point p = y;
    for (int l = from; l < to; ++l) p = levels_[l + 1].y_down->to_fine(p);
    for (int l = from; l > to; --l) p = levels_[l].y_down->to_coarse(p);
    return p;
}

RegularNeighborhood regular_neighborhood(const Tower& tower, const Point& x) {
    const bool open_map = is_open(tower.level(0)).open;

    for (int lvl = 0; lvl <= Tower::kMaxLevel; ++lvl) {
        const auto& p = tower.level(lvl);
        Point center = tower.x_point_at(x, 0, lvl);

        std::vector<SimplexId> star = p.X().open_star(center.carrier);
        std::set<SimplexId> star_set(star.begin(), star.end());

        std::vector<SimplexId> preimage;
        for (SimplexId s = 0; s < p.Y().simplex_count(); ++s)
            if (star_set.count(p.image_of[s])) preimage.push_back(s);

        auto comps = p.Y().components(preimage);
        auto fib = fiber(p, center);
        if (comps.size() != fib.size()) continue;  // star too coarse; subdivide

        // Align branches with fiber points: each branch must contain exactly
        // one fiber carrier.
        std::vector<std::vector<SimplexId>> branches(fib.size());
        std::vector<int> hits(comps.size(), 0);
        bool aligned = true;
        for (size_t i = 0; i < fib.size() && aligned; ++i) {
            int found = -1;
            for (size_t c = 0; c < comps.size(); ++c) {
                if (std::binary_search(comps[c].begin(), comps[c].end(), fib[i].carrier)) {
                    found = static_cast<int>(c);
                    break;
                }
            }
            if (found < 0 || ++hits[found] > 1) {
                aligned = false;
                break;
            }
            branches[i] = comps[found];
        }
        if (!aligned) continue;

        if (open_map) {
            // Each branch surjects onto the star.
            bool onto = true;
            for (const auto& branch : branches) {
                std::set<SimplexId> image;
                for (SimplexId s : branch) image.insert(p.image_of[s]);
                if (image != star_set) {
                    onto = false;
                    break;
                }
            }
            if (!onto) continue;
        }

        return RegularNeighborhood{lvl, std::move(center), std::move(star), std::move(fib),
                                   std::move(branches)};
    }
    throw Error(Errc::SubdivisionLimitExceeded,
                "no separating star neighborhood within the subdivision cap");
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::NotSurjective: return "NotSurjective";
        case Verdict::DegenerateFibers: return "DegenerateFibers";
        case Verdict::NotOpen: return "NotOpen";
        case Verdict::BranchedCovering: return "BranchedCovering";
        case Verdict::Covering: return "Covering";
    }
    return "Unknown";
}

namespace {

/// A single stratum is a covering exactly when every star maps bijectively:
/// each fiber vertex of each target vertex lies on exactly one sheet of every
/// incident simplex.
bool stars_bijective(const SimplicialSurjection& p) {
    for (VertexId w = 0; w < p.Y().vertex_count(); ++w) {
        SimplexId xv = p.image_of[w];  // 0-simplex id equals vertex id
        for (SimplexId coface : p.X().proper_cofaces(xv)) {
            if (p.sheets_through(coface, w).size() != 1) return false;
        }
    }
    return true;
}

}  // namespace

Classification classify(const AnalyzeResult& analyzed) {
    Classification out{};
    if (!analyzed.ok()) {
        const auto& f = *analyzed.failure;
        if (f.code == Errc::NotSimplicial) throw Error(f.code, f.detail);
        out.verdict =
            f.code == Errc::DegenerateFibers ? Verdict::DegenerateFibers : Verdict::NotSurjective;
        out.witness_simplex = f.witness;
        return out;
    }
    const auto& p = *analyzed.map;

    auto openness = is_open(p);
    auto strat = stratify(p);
    out.strata = strat;
    if (!openness.open) {
        out.verdict = Verdict::NotOpen;
        out.openness_witness = openness.witness;
        return out;
    }

    // Per-component fiber counts (the target may be disconnected).
    std::vector<SimplexId> all(p.X().simplex_count());
    for (SimplexId s = 0; s < p.X().simplex_count(); ++s) all[s] = s;
    auto comps = p.X().components(all);
    for (const auto& comp : comps) {
        std::set<int> counts;
        for (SimplexId s : comp) counts.insert(strat.count_of[s]);
        Classification::Component info{comp, Verdict::BranchedCovering, 0};
        if (counts.size() == 1) {
            info.verdict = Verdict::Covering;
            info.n_fold = *counts.begin();
        }
        out.components.push_back(std::move(info));
    }

    const bool single_stratum = strat.strata.size() == 1;
    if (single_stratum && comps.size() == 1 && stars_bijective(p)) {
        out.verdict = Verdict::Covering;
        out.n_fold = strat.max_fibers;
    } else {
        out.verdict = Verdict::BranchedCovering;
    }
    return out;
}

Classification classify(std::shared_ptr<const Complex> source,
                        std::shared_ptr<const Complex> target,
                        const std::map<std::string, std::string>& vertex_map_by_name) {
    return classify(try_analyze(std::move(source), std::move(target), vertex_map_by_name));
}

}  // namespace brancov
