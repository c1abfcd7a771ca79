#include "brancov/piecewise.hpp"

#include <algorithm>
#include <set>

namespace brancov {

PLProfile::PLProfile(std::vector<std::pair<Rat, Rat>> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2 || samples_.front().first != 0 || samples_.back().first != 1)
        throw Error(Errc::MalformedInput, "profile must span [0,1]");
    for (size_t i = 1; i < samples_.size(); ++i)
        if (!(samples_[i - 1].first < samples_[i].first))
            throw Error(Errc::MalformedInput, "profile breakpoints must increase");
}

Rat PLProfile::eval(const Rat& t) const {
    if (t < 0 || t > 1) throw Error(Errc::MalformedInput, "parameter outside [0,1]");
    for (size_t i = 1; i < samples_.size(); ++i) {
        if (t <= samples_[i].first) {
            const auto& [t0, v0] = samples_[i - 1];
            const auto& [t1, v1] = samples_[i];
            return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
        }
    }
    return samples_.back().second;
}

Rat PLProfile::min_value() const {
    Rat m = samples_.front().second;
    for (const auto& [t, v] : samples_) m = std::min(m, v);
    return m;
}

Rat PLProfile::max_value() const {
    Rat m = samples_.front().second;
    for (const auto& [t, v] : samples_) m = std::max(m, v);
    return m;
}

Rat PLProfile::argmin() const {
    Rat m = min_value();
    for (const auto& [t, v] : samples_)
        if (v == m) return t;
    return samples_.front().first;
}

bool PLProfile::is_constant() const {
    for (const auto& [t, v] : samples_)
        if (v != samples_.front().second) return false;
    return true;
}

PLProfile PLProfile::reversed() const {
    std::vector<std::pair<Rat, Rat>> out(samples_.rbegin(), samples_.rend());
    for (auto& [t, v] : out) t = Rat(1) - t;
    return PLProfile(std::move(out));
}

PLProfile PLProfile::restrict(const Rat& a, const Rat& b) const {
    if (!(a < b) || a < 0 || b > 1)
        throw Error(Errc::MalformedInput, "bad restriction window");
    std::vector<std::pair<Rat, Rat>> out;
    out.emplace_back(Rat(0), eval(a));
    for (const auto& [t, v] : samples_)
        if (a < t && t < b) out.emplace_back((t - a) / (b - a), v);
    out.emplace_back(Rat(1), eval(b));
    return PLProfile(std::move(out));
}

PLProfile operator+(const PLProfile& f, const PLProfile& g) {
    std::set<Rat> ts;
    for (const auto& [t, v] : f.samples_) ts.insert(t);
    for (const auto& [t, v] : g.samples_) ts.insert(t);
    std::vector<std::pair<Rat, Rat>> out;
    for (const auto& t : ts) out.emplace_back(t, f.eval(t) + g.eval(t));
    return PLProfile(std::move(out));
}

PLProfile operator*(const Rat& s, const PLProfile& f) {
    auto samples = f.samples_;
    for (auto& [t, v] : samples) v = s * v;
    return PLProfile(std::move(samples));
}

bool operator==(const PLProfile& f, const PLProfile& g) {
    std::set<Rat> ts;
    for (const auto& [t, v] : f.samples_) ts.insert(t);
    for (const auto& [t, v] : g.samples_) ts.insert(t);
    for (const auto& t : ts)
        if (f.eval(t) != g.eval(t)) return false;
    return true;
}

PLFunction PLFunction::constant(const Complex& cx, RatC v) {
    return PLFunction{&cx, std::vector<RatC>(cx.vertex_count(), v)};
}

PLFunction PLFunction::hat(const Complex& cx, VertexId v) {
    PLFunction f{&cx, std::vector<RatC>(cx.vertex_count(), RatC())};
    f.values.at(v) = RatC(Rat(1));
    return f;
}

RatC PLFunction::eval(const Point& pt) const {
    const auto& vs = cx->simplex(pt.carrier);
    RatC acc;
    for (size_t i = 0; i < vs.size(); ++i) acc += pt.coords[i] * values[vs[i]];
    return acc;
}

bool PLFunction::is_real() const {
    return std::all_of(values.begin(), values.end(), [](const RatC& v) { return v.im == 0; });
}

Poly PLFunction::on_edge(SimplexId e) const {
    const auto& vs = cx->simplex(e);
    if (vs.size() != 2) throw Error(Errc::NotOneDimensional, "on_edge needs an edge");
    return Poly::linear(values[vs[0]], values[vs[1]] - values[vs[0]]);
}

PLFunction operator+(const PLFunction& f, const PLFunction& g) {
    if (f.cx != g.cx) throw Error(Errc::MalformedInput, "PL functions on different complexes");
    PLFunction out = f;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += g.values[i];
    return out;
}

PLFunction operator*(const RatC& s, const PLFunction& f) {
    PLFunction out = f;
    for (auto& v : out.values) v = s * v;
    return out;
}

PLFunction refine(const PLFunction& f, const SubdivisionMap& down) {
    if (f.cx != down.coarse)
        throw Error(Errc::MalformedInput, "refine: function not on the coarse complex");
    PLFunction out{down.fine, {}};
    out.values.reserve(down.fine->vertex_count());
    for (VertexId v = 0; v < down.fine->vertex_count(); ++v)
        out.values.push_back(f.eval(down.fine_vertex_in_coarse[v]));
    return out;
}

RatC PiecewiseFunction::eval(const Point& pt) const {
    if (cx->is_vertex(pt.carrier)) return vertex_values[cx->simplex(pt.carrier)[0]];
    if (!cx->is_edge(pt.carrier))
        throw Error(Errc::NotOneDimensional, "piecewise data lives on the 1-skeleton");
    const auto& ep = edges.at(pt.carrier);
    Rat t = pt.edge_param();
    for (size_t i = 0; i + 1 < ep.breaks.size(); ++i) {
        if (t <= ep.breaks[i + 1]) return ep.polys[i].eval(t);
    }
    return ep.polys.back().eval(t);
}

RatC PiecewiseFunction::limit_at(SimplexId edge, int end) const {
    const auto& ep = edges.at(edge);
    return end == 0 ? ep.polys.front().eval(Rat(0)) : ep.polys.back().eval(Rat(1));
}

bool PiecewiseFunction::is_real() const {
    for (const auto& v : vertex_values)
        if (v.im != 0) return false;
    for (const auto& [e, ep] : edges)
        for (const auto& p : ep.polys)
            if (!p.is_real()) return false;
    return true;
}

PiecewiseFunction PiecewiseFunction::conj() const {
    PiecewiseFunction out = *this;
    for (auto& v : out.vertex_values) v = v.conj();
    for (auto& [e, ep] : out.edges)
        for (auto& p : ep.polys) p = p.conj();
    return out;
}

PiecewiseFunction PiecewiseFunction::constant(const Complex& cx, RatC v) {
    PiecewiseFunction out;
    out.cx = &cx;
    out.vertex_values.assign(cx.vertex_count(), v);
    for (SimplexId e : cx.edges())
        out.edges[e] = EdgePieces{{Rat(0), Rat(1)}, {Poly::constant(v)}};
    return out;
}

ContinuityReport check_continuity(const PiecewiseFunction& h) {
    ContinuityReport report;
    for (const auto& [e, ep] : h.edges) {
        const auto& vs = h.cx->simplex(e);
        for (int end : {0, 1}) {
            RatC limit = h.limit_at(e, end);
            RatC value = h.vertex_values[vs[end]];
            if (limit != value) {
                report.continuous = false;
                report.issues.push_back(
                    ContinuityIssue{e, Rat(end), vs[end], value, limit});
            }
        }
        for (size_t i = 0; i + 1 < ep.polys.size(); ++i) {
            RatC left = ep.polys[i].eval(ep.breaks[i + 1]);
            RatC right = ep.polys[i + 1].eval(ep.breaks[i + 1]);
            if (left != right) {
                report.continuous = false;
                report.issues.push_back(
                    ContinuityIssue{e, ep.breaks[i + 1], std::nullopt, left, right});
            }
        }
    }
    return report;
}

SupNorm sup_norm(const PiecewiseFunction& h) {
    if (!h.is_real()) throw Error(Errc::MalformedInput, "sup_norm needs real-valued data");
    SupNorm best;
    best.exact = QuadExt(Rat(-1));
    for (VertexId v = 0; v < h.cx->vertex_count(); ++v) {
        QuadExt av = QuadExt(h.vertex_values[v].re).abs();
        if (compare(av, best.exact) > 0) {
            best.exact = av;
            best.simplex = v;
            best.at = 0;
            best.where = "vertex " + h.cx->vertex_name(v);
        }
    }
    for (const auto& [e, ep] : h.edges) {
        for (size_t i = 0; i < ep.polys.size(); ++i) {
            auto ext = max_abs_on_interval(ep.polys[i], ep.breaks[i], ep.breaks[i + 1]);
            if (compare(ext.value, best.exact) > 0) {
                best.exact = ext.value;
                best.simplex = e;
                best.at = ext.at.approx();
                best.where = "edge " + h.cx->simplex_name(e) + " at t=" +
                             std::to_string(best.at);
            }
        }
    }
    best.value = best.exact.approx();
    return best;
}

PieceMin min_value(const PiecewiseFunction& h) {
    if (!h.is_real()) throw Error(Errc::MalformedInput, "min_value needs real-valued data");
    PieceMin best;
    bool first = true;
    for (VertexId v = 0; v < h.cx->vertex_count(); ++v) {
        QuadExt val(h.vertex_values[v].re);
        if (first || compare(val, best.exact) < 0) {
            best = PieceMin{val, v, true};
            first = false;
        }
    }
    for (const auto& [e, ep] : h.edges) {
        for (size_t i = 0; i < ep.polys.size(); ++i) {
            auto ext = min_on_interval(ep.polys[i], ep.breaks[i], ep.breaks[i + 1]);
            if (first || compare(ext.signed_value, best.exact) < 0) {
                best = PieceMin{ext.signed_value, e, false};
                first = false;
            }
        }
    }
    return best;
}

PLNormSq sup_norm_squared(const PLFunction& f) {
    PLNormSq best{Rat(-1), Point{}};
    for (VertexId v = 0; v < f.cx->vertex_count(); ++v) {
        Rat n = f.values[v].norm_sq();
        if (n > best.value) best = PLNormSq{n, Point::at_vertex(v)};
    }
    for (SimplexId e : f.cx->edges()) {
        // |f|^2 along the edge: real quadratic with rational critical point.
        Poly p = f.on_edge(e);
        Poly nsq = p.conj() * p;
        Poly d = nsq.derivative();
        if (d.degree() == 1) {
            Rat root = -d.coeff(0).re / d.coeff(1).re;
            if (0 < root && root < 1) {
                Rat val = nsq.eval(root).re;
                if (val > best.value) best = PLNormSq{val, Point::on_edge(*f.cx, e, root)};
            }
        }
    }
    return best;
}

}  // namespace brancov
