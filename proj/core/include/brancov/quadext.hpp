#pragma once

#include "brancov/rational.hpp"

#include <cmath>

namespace brancov {

/// Exact element of a real quadratic extension: a + b*sqrt(d) with a, b, d
/// rational and d >= 0. Closed under ring operations for a fixed d, which is
/// all that polynomial extremization needs: critical points of a cubic are
/// roots of its quadratic derivative and live in one such extension.
///
/// Values from different extensions can still be compared exactly (sign
/// analysis by repeated squaring), so maxima over several pieces stay exact.
struct QuadExt {
    Rat a;       // rational part
    Rat b = 0;   // coefficient of sqrt(d)
    Rat d = 0;   // radicand, >= 0; b == 0 whenever d == 0

    QuadExt() = default;
    QuadExt(Rat rational_part) : a(std::move(rational_part)) {}
    QuadExt(Rat a_, Rat b_, Rat d_) : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {
        if (d < 0) throw std::invalid_argument("negative radicand");
        if (d == 0 || b == 0) { b = 0; d = 0; }
    }

    bool is_rational() const { return b == 0; }

    double approx() const { return to_double(a) + to_double(b) * std::sqrt(to_double(d)); }

    /// Sign of a + b*sqrt(d): +1, 0, -1. Exact.
    int sign() const {
        auto sgn = [](const Rat& r) { return r == 0 ? 0 : (r > 0 ? 1 : -1); };
        int sa = sgn(a), sb = sgn(b);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // Opposite signs: |a| vs |b|*sqrt(d) decided by squaring.
        int sq = sgn(a * a - b * b * d);
        return sq == 0 ? 0 : sq * sa;
    }

    friend QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a, -x.b, x.d); }

    QuadExt abs() const { return sign() >= 0 ? *this : -*this; }
};

/// Exact three-way comparison between members of possibly different
/// extensions: sign of (x - y).
inline int compare(const QuadExt& x, const QuadExt& y) {
    if (x.d == y.d || x.b == 0 || y.b == 0) {
        // Same extension (or one side rational): x - y is a single radical.
        Rat d = x.b != 0 ? x.d : y.d;
        return QuadExt(x.a - y.a, x.b - y.b, d).sign();
    }
    // sign of c + b1*sqrt(d1) - b2*sqrt(d2), c = x.a - y.a.
    QuadExt lhs(x.a - y.a, x.b, x.d);  // c + b1*sqrt(d1)
    QuadExt rhs(Rat(0), y.b, y.d);     // b2*sqrt(d2)
    int sl = lhs.sign(), sr = rhs.sign();
    if (sl != sr) {
        if (sl >= 0 && sr <= 0) return (sl == 0 && sr == 0) ? 0 : 1;
        return -1;
    }
    if (sl == 0) return 0;
    // Same strict sign: compare squares (both squares are single radicals).
    QuadExt l2(lhs.a * lhs.a + lhs.b * lhs.b * lhs.d, 2 * lhs.a * lhs.b, lhs.d);
    QuadExt r2(rhs.b * rhs.b * rhs.d);
    int sq = compare(l2, r2);  // recurses at most once: r2 is rational
    return sl > 0 ? sq : -sq;
}

inline bool operator<(const QuadExt& x, const QuadExt& y) { return compare(x, y) < 0; }
inline bool operator<=(const QuadExt& x, const QuadExt& y) { return compare(x, y) <= 0; }
inline bool operator==(const QuadExt& x, const QuadExt& y) { return compare(x, y) == 0; }

}  // namespace brancov
