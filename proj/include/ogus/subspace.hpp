// Subspaces of Q^n in canonical form: the basis matrix is the RREF of
// any spanning set, so subspace equality is representative equality.
#pragma once

#include "ogus/matrix.hpp"

namespace ogus {

struct Subspace {
    long ambient = 0;
    Matrix basis; // RREF, one basis vector per row, no zero rows

    Subspace() = default;

    long dim() const { return basis.rows; }
    bool is_zero() const { return basis.rows == 0; }
    bool is_full() const { return basis.rows == ambient; }

    bool operator==(const Subspace& o) const {
        return ambient == o.ambient && basis == o.basis;
    }

    // Span of the rows of m inside Q^ambient.
    static Subspace span(long ambient_dim, const Matrix& m) {
        if (m.cols != ambient_dim && m.rows != 0)
            throw std::invalid_argument("span: vector length does not match ambient");
        RrefResult r = rref(m.rows ? m : Matrix(0, ambient_dim));
        Subspace s;
        s.ambient = ambient_dim;
        s.basis = Matrix(r.rank, ambient_dim);
        for (long i = 0; i < r.rank; ++i)
            for (long j = 0; j < ambient_dim; ++j)
                s.basis.at(i, j) = r.mat.at(i, j);
        return s;
    }

    static Subspace zero(long ambient_dim) { return span(ambient_dim, Matrix(0, ambient_dim)); }
    static Subspace full(long ambient_dim) { return span(ambient_dim, Matrix::identity(ambient_dim)); }

    std::vector<long> pivot_cols() const {
        std::vector<long> p;
        for (long i = 0; i < basis.rows; ++i)
            for (long j = 0; j < basis.cols; ++j)
                if (basis.at(i, j) != 0) {
                    p.push_back(j);
                    break;
                }
        return p;
    }
    std::vector<long> free_cols() const {
        auto piv = pivot_cols();
        std::vector<long> f;
        size_t k = 0;
        for (long j = 0; j < ambient; ++j) {
            if (k < piv.size() && piv[k] == j)
                ++k;
            else
                f.push_back(j);
        }
        return f;
    }

    // v is a column vector of length ambient.
    bool contains(const Matrix& v) const {
        if (v.rows != ambient || v.cols != 1)
            throw std::invalid_argument("contains: bad vector shape");
        return rank(vstack(basis, v.transpose())) == dim();
    }
    bool contains(const Subspace& other) const {
        if (other.ambient != ambient)
            throw std::invalid_argument("contains: ambient mismatch");
        return rank(vstack(basis, other.basis)) == dim();
    }

    // Coordinates of a member vector w.r.t. the RREF basis: just the
    // entries at the pivot columns.
    Matrix coords(const Matrix& v) const {
        if (!contains(v))
            throw std::invalid_argument("coords: vector not in subspace");
        auto piv = pivot_cols();
        Matrix c(dim(), 1);
        for (long i = 0; i < dim(); ++i)
            c.at(i, 0) = v.at(piv[i], 0);
        return c;
    }

    // Inclusion into the ambient space: ambient x dim, columns are the
    // basis vectors.
    Matrix inclusion() const { return basis.transpose(); }
};

inline Subspace operator+(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient)
        throw std::invalid_argument("subspace sum: ambient mismatch");
    return Subspace::span(a.ambient, vstack(a.basis, b.basis));
}

// Zassenhaus: rows [B_a | B_a; B_b | 0], the RREF rows with zero left
// half carry the intersection on the right.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient)
        throw std::invalid_argument("subspace intersection: ambient mismatch");
    long n = a.ambient;
    Matrix top = hstack(a.basis, a.basis);
    Matrix bot = hstack(b.basis, Matrix(b.basis.rows, n));
    RrefResult r = rref(vstack(top, bot));
    Matrix inter(0, n);
    for (long i = 0; i < r.rank; ++i) {
        bool left_zero = true;
        for (long j = 0; j < n && left_zero; ++j)
            if (r.mat.at(i, j) != 0)
                left_zero = false;
        if (left_zero) {
            std::vector<long> right(static_cast<size_t>(n));
            for (long j = 0; j < n; ++j)
                right[j] = n + j;
            inter = vstack(inter, r.mat.row(i).select_cols(right));
        }
    }
    return Subspace::span(n, inter);
}

// Projection Q^n -> Q^(n-dim S) with kernel exactly S: reduce away the
// pivot coordinates, then keep the free ones. Composing with
// quotient_section gives the identity.
inline Matrix quotient_map(const Subspace& s) {
    long n = s.ambient;
    auto piv = s.pivot_cols();
    auto free = s.free_cols();
    Matrix q(static_cast<long>(free.size()), n);
    for (long i = 0; i < q.rows; ++i) {
        q.at(i, free[i]) = 1;
        // subtract the S-component seen through the pivot coordinates
        for (size_t k = 0; k < piv.size(); ++k)
            q.at(i, piv[k]) -= s.basis.at(static_cast<long>(k), free[i]);
    }
    // rows of q: (Qx)_i = x_{free_i} - sum_k B_{k,free_i} x_{piv_k}
    return q;
}

// Right inverse of quotient_map(s): places quotient coordinates at the
// free columns.
inline Matrix quotient_section(const Subspace& s) {
    auto free = s.free_cols();
    Matrix e(s.ambient, static_cast<long>(free.size()));
    for (size_t i = 0; i < free.size(); ++i)
        e.at(free[i], static_cast<long>(i)) = 1;
    return e;
}

// A subspace inner <= frame rewritten in the coordinates of frame's basis.
inline Subspace in_coordinates(const Subspace& inner, const Subspace& frame) {
    if (!frame.contains(inner))
        throw std::invalid_argument("in_coordinates: not a subspace of the frame");
    Matrix rows(inner.dim(), frame.dim());
    for (long r = 0; r < inner.dim(); ++r) {
        Matrix c = frame.coords(inner.basis.row(r).transpose());
        for (long j = 0; j < frame.dim(); ++j)
            rows.at(r, j) = c.at(j, 0);
    }
    return Subspace::span(frame.dim(), rows);
}

// Image of s under the matrix m (columns act on vectors).
inline Subspace image_of(const Matrix& m, const Subspace& s) {
    if (m.cols != s.ambient)
        throw std::invalid_argument("image_of: shape mismatch");
    return Subspace::span(m.rows, (m * s.inclusion()).transpose());
}

// Preimage {x : m x in s}.
inline Subspace preimage_of(const Matrix& m, const Subspace& s) {
    if (m.rows != s.ambient)
        throw std::invalid_argument("preimage_of: shape mismatch");
    return Subspace::span(m.cols, kernel_basis(quotient_map(s) * m));
}

} // namespace ogus
