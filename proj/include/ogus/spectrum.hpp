// Rational spectral data: exact characteristic polynomials, rational
// root extraction, eigenspaces and generalized eigenspaces. Irrational
// or complex spectra are reported as incomplete, never approximated.
#pragma once

#include "ogus/linear_map.hpp"

#include <algorithm>

namespace ogus {

// Coefficients of det(xI - m), lowest degree first, computed by the
// Faddeev-LeVerrier recurrence (exact over Q).
inline std::vector<Rational> char_poly(const Matrix& m) {
    if (!m.is_square())
        throw std::invalid_argument("char_poly: non-square matrix");
    long n = m.rows;
    std::vector<Rational> c(static_cast<size_t>(n) + 1);
    c[n] = 1;
    Matrix mk = Matrix::identity(n);
    for (long k = 1; k <= n; ++k) {
        mk = m * mk;
        Rational tr = 0;
        for (long i = 0; i < n; ++i)
            tr += mk.at(i, i);
        Rational ck = -tr / k;
        c[n - k] = ck;
        for (long i = 0; i < n; ++i)
            mk.at(i, i) += ck;
    }
    return c;
}

inline Rational eval_poly(const std::vector<Rational>& coeffs, const Rational& x) {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

// Exact deflation by (x - r); the division must be remainder-free.
inline std::vector<Rational> deflate(const std::vector<Rational>& coeffs, const Rational& r) {
    std::vector<Rational> q(coeffs.size() - 1);
    Rational carry = 0;
    for (size_t i = coeffs.size(); i-- > 1;) {
        carry = coeffs[i] + carry * r;
        q[i - 1] = carry;
    }
    if (coeffs[0] + carry * r != 0)
        throw std::logic_error("deflate: not a root");
    return q;
}

namespace detail {

inline void divisors_from_factors(const std::vector<std::pair<Int, int>>& factors, size_t idx, Int acc,
                                  std::vector<Int>& out) {
    if (idx == factors.size()) {
        out.push_back(acc);
        return;
    }
    Int power = 1;
    for (int e = 0; e <= factors[idx].second; ++e) {
        divisors_from_factors(factors, idx + 1, acc * power, out);
        power *= factors[idx].first;
    }
}

inline std::vector<Int> positive_divisors(Int n) {
    if (n < 0)
        n = -n;
    std::vector<std::pair<Int, int>> factors;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            factors.emplace_back(d, e);
        }
    }
    if (n > 1)
        factors.emplace_back(n, 1);
    std::vector<Int> out;
    divisors_from_factors(factors, 0, Int(1), out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

struct RationalSpectrum {
    std::vector<std::pair<Rational, long>> eigenvalues; // (value, multiplicity), values distinct
    bool is_complete = false; // multiplicities sum to the dimension

    bool multiplicity_free() const {
        for (const auto& [v, m] : eigenvalues)
            if (m > 1)
                return false;
        return true;
    }
    long total_multiplicity() const {
        long t = 0;
        for (const auto& [v, m] : eigenvalues)
            t += m;
        return t;
    }
};

// All rational roots of the characteristic polynomial, with
// multiplicities, via the rational root theorem on the integer-scaled
// polynomial and exact deflation.
inline RationalSpectrum rational_spectrum(const Matrix& m) {
    if (!m.is_square())
        throw std::invalid_argument("rational_spectrum: non-square matrix");
    RationalSpectrum spec;
    std::vector<Rational> poly = char_poly(m);
    long n = m.rows;

    // roots at zero
    long zero_mult = 0;
    while (poly.size() > 1 && poly[0] == 0) {
        poly.erase(poly.begin());
        ++zero_mult;
    }
    if (zero_mult > 0)
        spec.eigenvalues.emplace_back(Rational(0), zero_mult);

    if (poly.size() > 1) {
        // integer-scale: multiply by lcm of denominators
        Int scale = 1;
        for (const auto& c : poly)
            scale = lcm(scale, den(c));
        std::vector<Int> ic;
        ic.reserve(poly.size());
        for (const auto& c : poly)
            ic.push_back(num(c) * (scale / den(c)));
        std::vector<Int> ps = detail::positive_divisors(ic.front());
        std::vector<Int> qs = detail::positive_divisors(ic.back());
        std::vector<Rational> candidates;
        for (const Int& p : ps)
            for (const Int& q : qs) {
                if (gcd(p, q) != 1)
                    continue;
                candidates.emplace_back(Rational(p) / Rational(q));
                candidates.emplace_back(-Rational(p) / Rational(q));
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const Rational& r : candidates) {
            long mult = 0;
            while (poly.size() > 1 && eval_poly(poly, r) == 0) {
                poly = deflate(poly, r);
                ++mult;
            }
            if (mult > 0)
                spec.eigenvalues.emplace_back(r, mult);
            if (poly.size() == 1)
                break;
        }
    }
    std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    spec.is_complete = spec.total_multiplicity() == n;
    return spec;
}

inline Subspace eigenspace(const Matrix& m, const Rational& lambda) {
    Matrix shifted = m;
    for (long i = 0; i < m.rows; ++i)
        shifted.at(i, i) -= lambda;
    return Subspace::span(m.rows, kernel_basis(shifted));
}

inline Subspace generalized_eigenspace(const Matrix& m, const Rational& lambda) {
    Matrix shifted = m;
    for (long i = 0; i < m.rows; ++i)
        shifted.at(i, i) -= lambda;
    Matrix power = Matrix::identity(m.rows);
    for (long k = 0; k < m.rows; ++k)
        power = shifted * power;
    return Subspace::span(m.rows, kernel_basis(power));
}

} // namespace ogus
