// Dense matrices over Q with exact Gauss-Jordan elimination.
// Zero-sized matrices are first-class citizens: the zero object shows
// up everywhere in the categories built on top of this.
#pragma once

#include "ogus/rational.hpp"

#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace ogus {

struct Matrix {
    long rows = 0;
    long cols = 0;
    std::vector<Rational> entries; // row-major, rows*cols cells

    Matrix() = default;
    Matrix(long r, long c) : rows(r), cols(c), entries(static_cast<size_t>(r) * c) {
        if (r < 0 || c < 0)
            throw std::invalid_argument("negative matrix dimension");
    }
    Matrix(std::initializer_list<std::initializer_list<Rational>> data) {
        rows = static_cast<long>(data.size());
        cols = rows ? static_cast<long>(data.begin()->size()) : 0;
        entries.reserve(static_cast<size_t>(rows) * cols);
        for (const auto& r : data) {
            if (static_cast<long>(r.size()) != cols)
                throw std::invalid_argument("ragged matrix literal");
            for (const auto& x : r)
                entries.push_back(x);
        }
    }

    static Matrix identity(long n) {
        Matrix m(n, n);
        for (long i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }
    static Matrix zero(long r, long c) { return Matrix(r, c); }

    Rational& at(long i, long j) { return entries[static_cast<size_t>(i) * cols + j]; }
    const Rational& at(long i, long j) const { return entries[static_cast<size_t>(i) * cols + j]; }

    bool is_zero() const {
        for (const auto& x : entries)
            if (x != 0)
                return false;
        return true;
    }
    bool is_square() const { return rows == cols; }

    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && entries == o.entries;
    }

    Matrix transpose() const {
        Matrix t(cols, rows);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j)
                t.at(j, i) = at(i, j);
        return t;
    }

    Matrix row(long i) const {
        Matrix r(1, cols);
        for (long j = 0; j < cols; ++j)
            r.at(0, j) = at(i, j);
        return r;
    }

    Matrix select_rows(const std::vector<long>& idx) const {
        Matrix r(static_cast<long>(idx.size()), cols);
        for (long i = 0; i < r.rows; ++i)
            for (long j = 0; j < cols; ++j)
                r.at(i, j) = at(idx[i], j);
        return r;
    }
    Matrix select_cols(const std::vector<long>& idx) const {
        Matrix r(rows, static_cast<long>(idx.size()));
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < r.cols; ++j)
                r.at(i, j) = at(i, idx[j]);
        return r;
    }
};

inline Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("matrix shape mismatch in +");
    Matrix c(a.rows, a.cols);
    for (size_t k = 0; k < a.entries.size(); ++k)
        c.entries[k] = a.entries[k] + b.entries[k];
    return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("matrix shape mismatch in -");
    Matrix c(a.rows, a.cols);
    for (size_t k = 0; k < a.entries.size(); ++k)
        c.entries[k] = a.entries[k] - b.entries[k];
    return c;
}

inline Matrix operator-(const Matrix& a) {
    Matrix c(a.rows, a.cols);
    for (size_t k = 0; k < a.entries.size(); ++k)
        c.entries[k] = -a.entries[k];
    return c;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows)
        throw std::invalid_argument("matrix shape mismatch in *");
    Matrix c(a.rows, b.cols);
    for (long i = 0; i < a.rows; ++i)
        for (long k = 0; k < a.cols; ++k) {
            const Rational& aik = a.at(i, k);
            if (aik == 0)
                continue;
            for (long j = 0; j < b.cols; ++j) {
                const Rational& bkj = b.at(k, j);
                if (bkj != 0)
                    c.at(i, j) += aik * bkj;
            }
        }
    return c;
}

inline Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix c(a.rows, a.cols);
    for (size_t k = 0; k < a.entries.size(); ++k)
        c.entries[k] = s * a.entries[k];
    return c;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows)
        throw std::invalid_argument("hstack: row count mismatch");
    Matrix c(a.rows, a.cols + b.cols);
    for (long i = 0; i < a.rows; ++i) {
        for (long j = 0; j < a.cols; ++j)
            c.at(i, j) = a.at(i, j);
        for (long j = 0; j < b.cols; ++j)
            c.at(i, a.cols + j) = b.at(i, j);
    }
    return c;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols != b.cols)
        throw std::invalid_argument("vstack: column count mismatch");
    Matrix c(a.rows + b.rows, a.cols);
    for (long i = 0; i < a.rows; ++i)
        for (long j = 0; j < a.cols; ++j)
            c.at(i, j) = a.at(i, j);
    for (long i = 0; i < b.rows; ++i)
        for (long j = 0; j < a.cols; ++j)
            c.at(a.rows + i, j) = b.at(i, j);
    return c;
}

struct RrefResult {
    Matrix mat;
    long rank = 0;
    std::vector<long> pivots; // pivot column per nonzero row, strictly increasing
};

// Reduced row-echelon form by exact Gauss-Jordan. Idempotent.
inline RrefResult rref(Matrix m) {
    RrefResult res;
    long r = 0;
    for (long c = 0; c < m.cols && r < m.rows; ++c) {
        long piv = -1;
        for (long i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != r)
            for (long j = 0; j < m.cols; ++j)
                std::swap(m.at(piv, j), m.at(r, j));
        Rational inv = Rational(1) / m.at(r, c);
        for (long j = c; j < m.cols; ++j)
            m.at(r, j) *= inv;
        for (long i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0)
                continue;
            Rational f = m.at(i, c);
            for (long j = c; j < m.cols; ++j)
                m.at(i, j) -= f * m.at(r, j);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    res.mat = std::move(m);
    return res;
}

inline long rank(const Matrix& m) { return rref(m).rank; }

inline Rational det(Matrix m) {
    if (!m.is_square())
        throw std::invalid_argument("det: non-square matrix");
    Rational d = 1; // empty product: det of the 0x0 matrix is 1
    for (long c = 0; c < m.cols; ++c) {
        long piv = -1;
        for (long i = c; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            return 0;
        if (piv != c) {
            for (long j = 0; j < m.cols; ++j)
                std::swap(m.at(piv, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        Rational inv = Rational(1) / m.at(c, c);
        for (long i = c + 1; i < m.rows; ++i) {
            if (m.at(i, c) == 0)
                continue;
            Rational f = m.at(i, c) * inv;
            for (long j = c; j < m.cols; ++j)
                m.at(i, j) -= f * m.at(c, j);
        }
    }
    return d;
}

inline std::optional<Matrix> try_inverse(const Matrix& m) {
    if (!m.is_square())
        return std::nullopt;
    RrefResult r = rref(hstack(m, Matrix::identity(m.rows)));
    // singular iff some pivot escapes into the identity block
    if (r.rank != m.rows || (m.rows > 0 && r.pivots.back() >= m.cols))
        return std::nullopt;
    std::vector<long> right(static_cast<size_t>(m.cols));
    for (long j = 0; j < m.cols; ++j)
        right[j] = m.cols + j;
    return r.mat.select_cols(right);
}

inline bool is_invertible(const Matrix& m) { return try_inverse(m).has_value(); }

inline Matrix inverse(const Matrix& m) {
    auto inv = try_inverse(m);
    if (!inv)
        throw std::invalid_argument("inverse: singular matrix");
    return *inv;
}

// Basis of the right null space {x : m x = 0}, one solution per row.
inline Matrix kernel_basis(const Matrix& m) {
    RrefResult r = rref(m);
    std::vector<long> free_cols;
    {
        size_t p = 0;
        for (long c = 0; c < m.cols; ++c) {
            if (p < r.pivots.size() && r.pivots[p] == c)
                ++p;
            else
                free_cols.push_back(c);
        }
    }
    Matrix k(static_cast<long>(free_cols.size()), m.cols);
    for (long i = 0; i < k.rows; ++i) {
        long fc = free_cols[i];
        k.at(i, fc) = 1;
        for (long pr = 0; pr < r.rank; ++pr)
            k.at(i, r.pivots[pr]) = -r.mat.at(pr, fc);
    }
    return k;
}

// One solution x of m x = rhs (rhs given as column vector), if any.
inline std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs) {
    if (rhs.rows != m.rows || rhs.cols != 1)
        throw std::invalid_argument("solve: rhs shape mismatch");
    RrefResult r = rref(hstack(m, rhs));
    for (long i = 0; i < r.rank; ++i)
        if (r.pivots[i] == m.cols)
            return std::nullopt; // inconsistent system
    Matrix x(m.cols, 1);
    for (long i = 0; i < r.rank; ++i)
        x.at(r.pivots[i], 0) = r.mat.at(i, m.cols);
    return x;
}

} // namespace ogus
