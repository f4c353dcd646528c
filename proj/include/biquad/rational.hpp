#pragma once

// Exact scalar layer shared by every other header: arbitrary-precision
// integers and canonical-form rationals (always gcd-reduced, denominator
// positive), plus the tiny parsing/printing/sqrt helpers built on them.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace biquad {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

// floor(sqrt(n)), n >= 0
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    if (n == 0) return Int(0);
    Int r = boost::multiprecision::sqrt(n);
    // sqrt() is specified as the integer square root, but guard anyway:
    // the two loops never run more than once if it behaved.
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = isqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

// floor(cbrt(n)), n >= 0, by Newton iteration with a power-of-two seed
inline Int icbrt(const Int& n) {
    if (n < 0) throw std::domain_error("icbrt: negative argument");
    if (n == 0) return Int(0);
    unsigned bits = boost::multiprecision::msb(n) + 1;
    Int x = Int(1) << (bits / 3 + 1);
    while (true) {
        Int nx = (2 * x + n / (x * x)) / 3;
        if (nx >= x) break;
        x = nx;
    }
    while (x * x * x > n) --x;
    while ((x + 1) * (x + 1) * (x + 1) <= n) ++x;
    return x;
}

inline std::string to_string(const Int& n) { return n.str(); }

// "p" for integers, "p/q" otherwise (q > 0 by canonical form)
inline std::string to_string(const Rat& r) {
    if (is_integer(r)) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

// Strict decimal integer literal: optional sign, then digits only.
inline Int parse_int(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) throw std::invalid_argument("bad integer literal: '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw std::invalid_argument("bad integer literal: '" + s + "'");
    Int v(s.substr(i));
    return (s[0] == '-') ? Int(-v) : v;
}

// "p" or "p/q"; the result is reduced automatically.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int p = parse_int(s.substr(0, slash));
    Int q = parse_int(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    return Rat(p) / Rat(q);
}

} // namespace biquad
