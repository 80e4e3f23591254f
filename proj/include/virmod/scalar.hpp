#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace virmod {

// Exact rational scalar. Always stored canonically: gcd(|num|, den) = 1,
// den > 0, zero is 0/1 (the backend maintains this).
using Scalar = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Scalar& s) { return s.str(); }

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
inline Scalar parse_scalar(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    try {
        Scalar s(text);
        return s;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + text);
    }
}

// s^e for integer e; e < 0 requires s != 0.
inline Scalar pow_int(const Scalar& s, long e) {
    if (e == 0) return Scalar(1);
    if (s == 0) {
        if (e < 0) throw std::domain_error("0^negative is undefined");
        return Scalar(0);
    }
    bool inv = e < 0;
    unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Scalar base = s, acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    if (inv) acc = Scalar(1) / acc;
    return acc;
}

inline Scalar factorial(unsigned n) {
    Integer f(1);
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return Scalar(f);
}

inline Scalar binomial(unsigned n, unsigned k) {
    if (k > n) return Scalar(0);
    Integer num(1), den(1);
    for (unsigned i = 0; i < k; ++i) {
        num *= (n - i);
        den *= (i + 1);
    }
    return Scalar(num, den);
}

}  // namespace virmod
