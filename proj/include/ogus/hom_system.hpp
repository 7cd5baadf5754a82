// Incremental builder for the linear systems that cut out morphism
// spaces: unknowns are families of matrices (one block per name), and
// constraints are commuting squares or arbitrary precomputed rows.
#pragma once

#include "ogus/diagram.hpp"

namespace ogus {

struct ConstraintSystem {
    BlockLayout layout;
    Matrix rows;

    explicit ConstraintSystem(BlockLayout l) : layout(std::move(l)), rows(0, layout.total) {}

    // b_map * U_src = U_tgt * a_map, linear in the two unknown blocks.
    void add_square(const std::string& src, const std::string& tgt, const Matrix& a_map,
                    const Matrix& b_map) {
        long bs = layout.index_of(src), bt = layout.index_of(tgt);
        if (b_map.cols != layout.rows[bs] || a_map.rows != layout.cols[bt] ||
            b_map.rows != layout.rows[bt] || a_map.cols != layout.cols[bs])
            throw std::invalid_argument("add_square: shape mismatch at " + src + " -> " + tgt);
        Matrix r(b_map.rows * a_map.cols, layout.total);
        for (long i = 0; i < b_map.rows; ++i)
            for (long j = 0; j < a_map.cols; ++j) {
                long row = i * a_map.cols + j;
                for (long k = 0; k < b_map.cols; ++k)
                    r.at(row, layout.pos(bs, k, j)) += b_map.at(i, k);
                for (long l = 0; l < a_map.rows; ++l)
                    r.at(row, layout.pos(bt, i, l)) -= a_map.at(l, j);
            }
        rows = vstack(rows, r);
    }

    // U_v maps src_slot into tgt_slot.
    void add_slot(const std::string& v, const Subspace& src_slot, const Subspace& tgt_slot) {
        long vb = layout.index_of(v);
        Matrix q = quotient_map(tgt_slot);
        Matrix incl = src_slot.inclusion();
        Matrix r(q.rows * incl.cols, layout.total);
        for (long qi = 0; qi < q.rows; ++qi)
            for (long m = 0; m < incl.cols; ++m)
                for (long k = 0; k < layout.rows[vb]; ++k)
                    for (long j = 0; j < layout.cols[vb]; ++j)
                        if (q.at(qi, k) != 0 && incl.at(j, m) != 0)
                            r.at(qi * incl.cols + m, layout.pos(vb, k, j)) += q.at(qi, k) * incl.at(j, m);
        rows = vstack(rows, r);
    }

    // Rows from an externally built system over one block's unknowns.
    void embed_rows(const std::string& block, const Matrix& sys) {
        long b = layout.index_of(block);
        if (sys.cols != layout.rows[b] * layout.cols[b])
            throw std::invalid_argument("embed_rows: column count mismatch");
        Matrix r(sys.rows, layout.total);
        for (long i = 0; i < sys.rows; ++i)
            for (long j = 0; j < sys.cols; ++j)
                r.at(i, layout.offset[b] + j) = sys.at(i, j);
        rows = vstack(rows, r);
    }

    void add_rows(const Matrix& r) {
        if (r.cols != layout.total)
            throw std::invalid_argument("add_rows: column count mismatch");
        rows = vstack(rows, r);
    }

    Subspace solutions() const { return Subspace::span(layout.total, kernel_basis(rows)); }
};

// Selection matrix extracting the coordinates of a canonical subspace:
// (dim s) x ambient, picking the pivot columns. For x in s these are
// exactly the coordinates in the RREF basis.
inline Matrix pivot_selector(const Subspace& s) {
    auto piv = s.pivot_cols();
    Matrix l(s.dim(), s.ambient);
    for (long r = 0; r < s.dim(); ++r)
        l.at(r, piv[r]) = 1;
    return l;
}

} // namespace ogus
