#pragma once

#include "brancov/quadext.hpp"
#include "brancov/rational.hpp"

#include <algorithm>
#include <vector>

namespace brancov {

/// Dense univariate polynomial with exact complex-rational coefficients,
/// ascending order. Inner products of piecewise-linear data never exceed
/// degree 3 (linear weight times two linear factors).
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<RatC> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<RatC> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(RatC v) { return Poly({std::move(v)}); }
    /// a + b*t
    static Poly linear(RatC a, RatC b) { return Poly({std::move(a), std::move(b)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<RatC>& coeffs() const { return c_; }

    RatC coeff(size_t k) const { return k < c_.size() ? c_[k] : RatC(); }

    RatC eval(const Rat& t) const {
        RatC acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = RatC(t) * acc + *it;
        return acc;
    }

    bool is_real() const {
        return std::all_of(c_.begin(), c_.end(), [](const RatC& x) { return x.im == 0; });
    }

    /// Evaluate a real polynomial at a point of a quadratic extension.
    QuadExt eval_real(const QuadExt& t) const {
        Rat a = 0, b = 0;  // accumulator a + b*sqrt(t.d)
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            Rat na = a * t.a + b * t.b * t.d + it->re;
            Rat nb = a * t.b + b * t.a;
            a = std::move(na);
            b = std::move(nb);
        }
        return QuadExt(a, b, t.d);
    }

    Poly conj() const {
        std::vector<RatC> out(c_);
        for (auto& x : out) x = x.conj();
        return Poly(std::move(out));
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<RatC> out(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) out[k - 1] = Rat(static_cast<int>(k)) * c_[k];
        return Poly(std::move(out));
    }

    /// Substitute t -> alpha + beta*t (exact affine reparameterization).
    Poly compose_affine(const Rat& alpha, const Rat& beta) const {
        Poly acc;
        Poly lin = Poly::linear(RatC(alpha), RatC(beta));
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Poly::constant(*it);
        return acc;
    }

    friend Poly operator+(const Poly& p, const Poly& q) {
        std::vector<RatC> out(std::max(p.c_.size(), q.c_.size()));
        for (size_t k = 0; k < out.size(); ++k) out[k] = p.coeff(k) + q.coeff(k);
        return Poly(std::move(out));
    }
    friend Poly operator-(const Poly& p, const Poly& q) {
        std::vector<RatC> out(std::max(p.c_.size(), q.c_.size()));
        for (size_t k = 0; k < out.size(); ++k) out[k] = p.coeff(k) - q.coeff(k);
        return Poly(std::move(out));
    }
    friend Poly operator*(const Poly& p, const Poly& q) {
        if (p.is_zero() || q.is_zero()) return Poly();
        std::vector<RatC> out(p.c_.size() + q.c_.size() - 1);
        for (size_t i = 0; i < p.c_.size(); ++i)
            for (size_t j = 0; j < q.c_.size(); ++j) out[i + j] += p.c_[i] * q.c_[j];
        return Poly(std::move(out));
    }
    friend Poly operator*(const RatC& s, const Poly& p) {
        std::vector<RatC> out(p.c_);
        for (auto& x : out) x = s * x;
        return Poly(std::move(out));
    }
    friend bool operator==(const Poly& p, const Poly& q) { return p.c_ == q.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<RatC> c_;
};

/// Location and exact value of an extremum of |p| on a closed interval.
struct PolyExtremum {
    QuadExt at;     // argument in [lo, hi]
    QuadExt value;  // |p(at)|, exact
    QuadExt signed_value;
};

namespace detail {
/// Interval ends plus interior real critical points of p (degree <= 3).
inline std::vector<QuadExt> extremum_candidates(const Poly& p, const Rat& lo, const Rat& hi) {
    if (!p.is_real()) throw std::invalid_argument("extremum: polynomial not real");
    if (p.degree() > 3) throw std::invalid_argument("extremum: degree > 3");
    std::vector<QuadExt> candidates = {QuadExt(lo), QuadExt(hi)};
    Poly dp = p.derivative();
    if (dp.degree() == 1) {
        Rat root = -dp.coeff(0).re / dp.coeff(1).re;
        if (lo < root && root < hi) candidates.emplace_back(root);
    } else if (dp.degree() == 2) {
        Rat a = dp.coeff(2).re, b = dp.coeff(1).re, c = dp.coeff(0).re;
        Rat disc = b * b - 4 * a * c;
        if (disc >= 0) {
            for (int sgn : {-1, 1}) {
                QuadExt root(-b / (2 * a), Rat(sgn) / (2 * a), disc);
                if (compare(QuadExt(lo), root) < 0 && compare(root, QuadExt(hi)) < 0)
                    candidates.push_back(root);
            }
        }
    }
    return candidates;
}
}  // namespace detail

/// Exact maximum of |p| over [lo, hi] for a real polynomial of degree <= 3.
/// Candidates: interval ends plus real roots of the (quadratic) derivative.
inline PolyExtremum max_abs_on_interval(const Poly& p, const Rat& lo, const Rat& hi) {
    auto candidates = detail::extremum_candidates(p, lo, hi);
    PolyExtremum best{candidates.front(), QuadExt(Rat(-1)), QuadExt(Rat(0))};
    for (const auto& t : candidates) {
        QuadExt v = p.eval_real(t);
        QuadExt av = v.abs();
        if (compare(av, best.value) > 0) best = {t, av, v};
    }
    return best;
}

/// Exact minimum of a real polynomial (signed value) over [lo, hi].
inline PolyExtremum min_on_interval(const Poly& p, const Rat& lo, const Rat& hi) {
    auto candidates = detail::extremum_candidates(p, lo, hi);
    PolyExtremum best{candidates.front(), QuadExt(), p.eval_real(candidates.front())};
    best.value = best.signed_value.abs();
    for (const auto& t : candidates) {
        QuadExt v = p.eval_real(t);
        if (compare(v, best.signed_value) < 0) best = {t, v.abs(), v};
    }
    return best;
}

}  // namespace brancov
