// Exact rational scalars: arbitrary-precision integers and reduced
// fractions, plus p-adic valuations. Everything downstream is built
// on these.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ogus {

using Int = boost::multiprecision::cpp_int;
// cpp_rational keeps gcd(num, den) = 1 and den >= 1 at all times.
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return numerator(q); }
inline Int den(const Rational& q) { return denominator(q); }

// Serialized form is "a/b", or just "a" when b = 1.
inline std::string to_string(const Rational& q) {
    if (den(q) == 1)
        return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

inline Rational parse_rational(const std::string& s) {
    try {
        if (s.empty())
            throw std::invalid_argument("empty");
        Rational q(s);
        return q;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: '" + s + "'");
    }
}

// Deterministic Miller-Rabin; the fixed base set decides correctly for
// every n < 3.3e24, far beyond anything this library meets.
inline bool is_prime(const Int& n) {
    if (n < 2)
        return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    Int d = n - 1;
    unsigned r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = powm(Int(a), d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = (x * x) % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

// v_p of a nonzero integer.
inline std::int64_t int_valuation(Int n, const Int& p) {
    if (n == 0)
        throw std::logic_error("valuation of integer 0");
    if (n < 0)
        n = -n;
    std::int64_t v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// v_p(x); nullopt encodes +infinity (x = 0). Throws if p is not prime.
inline std::optional<std::int64_t> padic_valuation(const Rational& x, const Int& p) {
    if (!is_prime(p))
        throw std::invalid_argument("padic_valuation: " + p.str() + " is not prime");
    if (x == 0)
        return std::nullopt;
    return int_valuation(num(x), p) - int_valuation(den(x), p);
}

} // namespace ogus
