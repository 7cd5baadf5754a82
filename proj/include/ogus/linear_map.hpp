// Linear maps between coordinate spaces, with kernels, images,
// restrictions, induced quotient maps, and the pullback/pushout
// constructions.
#pragma once

#include "ogus/subspace.hpp"

namespace ogus {

struct LinearMap {
    long domain_dim = 0;
    long codomain_dim = 0;
    Matrix matrix; // codomain_dim x domain_dim, acts on column vectors

    LinearMap() = default;
    LinearMap(long dom, long cod, Matrix m) : domain_dim(dom), codomain_dim(cod), matrix(std::move(m)) {
        if (matrix.rows != codomain_dim || matrix.cols != domain_dim)
            throw std::invalid_argument("LinearMap: matrix shape mismatch");
    }
    static LinearMap from_matrix(Matrix m) {
        long d = m.cols, c = m.rows;
        return LinearMap(d, c, std::move(m));
    }
    static LinearMap zero(long dom, long cod) { return LinearMap(dom, cod, Matrix(cod, dom)); }
    static LinearMap identity(long n) { return LinearMap(n, n, Matrix::identity(n)); }

    Matrix apply(const Matrix& v) const { return matrix * v; }

    bool operator==(const LinearMap& o) const {
        return domain_dim == o.domain_dim && codomain_dim == o.codomain_dim && matrix == o.matrix;
    }
};

inline LinearMap compose(const LinearMap& g, const LinearMap& f) {
    if (f.codomain_dim != g.domain_dim)
        throw std::invalid_argument("compose: domain/codomain mismatch");
    return LinearMap(f.domain_dim, g.codomain_dim, g.matrix * f.matrix);
}

inline Subspace kernel(const LinearMap& f) {
    return Subspace::span(f.domain_dim, kernel_basis(f.matrix));
}

inline Subspace image(const LinearMap& f) {
    return Subspace::span(f.codomain_dim, f.matrix.transpose());
}

// Matrix of f restricted to src -> tgt in the subspace bases.
// Requires f(src) <= tgt.
inline Matrix restrict_map(const Matrix& f, const Subspace& src, const Subspace& tgt) {
    if (!tgt.contains(image_of(f, src)))
        throw std::invalid_argument("restrict_map: image not inside target subspace");
    Matrix mapped = f * src.inclusion(); // tgt-ambient x dim src
    auto piv = tgt.pivot_cols();
    Matrix r(tgt.dim(), src.dim());
    for (long i = 0; i < r.rows; ++i)
        for (long j = 0; j < r.cols; ++j)
            r.at(i, j) = mapped.at(piv[i], j);
    return r;
}

// Induced map on quotients Q^n/src -> Q^m/tgt. Requires f(src) <= tgt.
inline Matrix quotient_induced(const Matrix& f, const Subspace& src, const Subspace& tgt) {
    if (!image_of(f, src).is_zero() && !tgt.contains(image_of(f, src)))
        throw std::invalid_argument("quotient_induced: f(src) not inside tgt");
    return quotient_map(tgt) * f * quotient_section(src);
}

struct PullbackResult {
    Subspace space;      // inside Q^(dom f + dom g)
    LinearMap proj_left; // space (in its basis coords) -> dom f
    LinearMap proj_right;
};

// Fibre product {(a, b) : f(a) = g(b)} with its two projections.
inline PullbackResult pullback(const LinearMap& f, const LinearMap& g) {
    if (f.codomain_dim != g.codomain_dim)
        throw std::invalid_argument("pullback: codomain mismatch");
    Matrix stacked = hstack(f.matrix, -g.matrix);
    Subspace p = Subspace::span(f.domain_dim + g.domain_dim, kernel_basis(stacked));
    Matrix incl = p.inclusion(); // (dom f + dom g) x dim p
    std::vector<long> left(static_cast<size_t>(f.domain_dim)), right(static_cast<size_t>(g.domain_dim));
    for (long i = 0; i < f.domain_dim; ++i)
        left[i] = i;
    for (long i = 0; i < g.domain_dim; ++i)
        right[i] = f.domain_dim + i;
    PullbackResult res;
    res.space = p;
    res.proj_left = LinearMap(p.dim(), f.domain_dim, incl.select_rows(left));
    res.proj_right = LinearMap(p.dim(), g.domain_dim, incl.select_rows(right));
    return res;
}

// The unique w with proj_left w = u, proj_right w = v, for a commuting
// test pair f u = g v.
inline LinearMap pullback_factor(const PullbackResult& p, const LinearMap& u, const LinearMap& v) {
    if (u.domain_dim != v.domain_dim)
        throw std::invalid_argument("pullback_factor: test domain mismatch");
    Matrix stacked = vstack(u.matrix, v.matrix);
    auto piv = p.space.pivot_cols();
    Matrix w(p.space.dim(), u.domain_dim);
    for (long i = 0; i < w.rows; ++i)
        for (long j = 0; j < w.cols; ++j)
            w.at(i, j) = stacked.at(piv[i], j);
    return LinearMap(u.domain_dim, p.space.dim(), w);
}

struct PushoutResult {
    long dim = 0;       // of the pushout space
    LinearMap inj_left; // cod f -> pushout
    LinearMap inj_right;
    LinearMap projection; // cod f + cod g -> pushout, the defining quotient
};

// (cod f + cod g) / <(f(x), -g(x))> with its two injections.
inline PushoutResult pushout(const LinearMap& f, const LinearMap& g) {
    if (f.domain_dim != g.domain_dim)
        throw std::invalid_argument("pushout: domain mismatch");
    Matrix graph = vstack(f.matrix, -g.matrix); // columns span the glued subspace
    Subspace rel = Subspace::span(f.codomain_dim + g.codomain_dim, graph.transpose());
    Matrix q = quotient_map(rel);
    PushoutResult res;
    res.dim = q.rows;
    std::vector<long> left(static_cast<size_t>(f.codomain_dim)), right(static_cast<size_t>(g.codomain_dim));
    for (long i = 0; i < f.codomain_dim; ++i)
        left[i] = i;
    for (long i = 0; i < g.codomain_dim; ++i)
        right[i] = f.codomain_dim + i;
    res.inj_left = LinearMap(f.codomain_dim, res.dim, q.select_cols(left));
    res.inj_right = LinearMap(g.codomain_dim, res.dim, q.select_cols(right));
    res.projection = LinearMap(f.codomain_dim + g.codomain_dim, res.dim, q);
    return res;
}

} // namespace ogus
