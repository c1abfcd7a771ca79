#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace brancov {

/// Exact rational scalar. All combinatorial and piecewise-polynomial data in
/// the library is held in this type; floating point appears only in reported
/// norms and in square-root evaluations of quasi-basis elements.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

/// Parse "p/q" or "p" (optionally signed). Returns nullopt on malformed input.
std::optional<Rat> parse_rational(const std::string& text);

/// Canonical serialization: "p/q" with q > 0, or "p" when the value is integral.
std::string format_rational(const Rat& r);

inline Rat parse_rational_or_throw(const std::string& text) {
    auto r = parse_rational(text);
    if (!r) throw std::invalid_argument("malformed rational: '" + text + "'");
    return *r;
}

/// Complex number with exact rational real and imaginary parts.
struct RatC {
    Rat re;
    Rat im;

    RatC() = default;
    RatC(Rat r) : re(std::move(r)) {}
    RatC(int r) : re(r) {}
    RatC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_real() const { return im == 0; }
    bool is_zero() const { return re == 0 && im == 0; }
    RatC conj() const { return RatC(re, -im); }
    Rat norm_sq() const { return re * re + im * im; }

    friend RatC operator+(const RatC& a, const RatC& b) { return {a.re + b.re, a.im + b.im}; }
    friend RatC operator-(const RatC& a, const RatC& b) { return {a.re - b.re, a.im - b.im}; }
    friend RatC operator-(const RatC& a) { return {-a.re, -a.im}; }
    friend RatC operator*(const RatC& a, const RatC& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend RatC operator*(const Rat& s, const RatC& a) { return {s * a.re, s * a.im}; }
    friend bool operator==(const RatC& a, const RatC& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const RatC& a, const RatC& b) { return !(a == b); }

    RatC& operator+=(const RatC& b) { re += b.re; im += b.im; return *this; }
};

inline std::optional<Rat> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(BigInt(text));
        }
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) return std::nullopt;
        return Rat(num, den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline std::string format_rational(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace brancov
