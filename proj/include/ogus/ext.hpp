// Ext^1 for relation-free diagram shapes by cocycle parametrization:
// Ext^1(a,b) is the cokernel of
//   d : (+)_v Hom(a_v, b_v) -> (+)_e Hom(a_src(e), b_tgt(e)),
//   (u_v) |-> (b_e u_src - u_tgt a_e).
// Invertibility-flagged edges impose no cocycle condition: a block
// triangular matrix with invertible diagonal blocks is invertible,
// which realize_extension re-asserts when it materializes an object.
#pragma once

#include "ogus/diagram.hpp"

namespace ogus {

struct Ext1Result {
    long dim = 0;
    long cocycle_dim = 0;
    long coboundary_rank = 0;
    BlockLayout layout;                              // cocycle coordinates, one block per edge
    Subspace coboundaries;                           // im(d) inside the cocycle space
    std::vector<std::map<std::string, Matrix>> reps; // cocycle representatives of a basis
};

inline Ext1Result ext1_basis(const DiagramObject& a, const DiagramObject& b) {
    if (!(a.shape == b.shape))
        throw std::invalid_argument("ext1: shape mismatch");
    if (!a.shape.relations.empty())
        throw std::invalid_argument("ext1: relations present");
    Ext1Result res;
    res.layout = edge_cocycle_layout(a, b);
    res.cocycle_dim = res.layout.total;
    Matrix d = edge_system(a, b); // cocycle_dim x vertexhom_dim
    res.coboundaries = Subspace::span(res.cocycle_dim, d.transpose());
    res.coboundary_rank = res.coboundaries.dim();
    res.dim = res.cocycle_dim - res.coboundary_rank;
    for (long fc : res.coboundaries.free_cols()) {
        Matrix unit(res.cocycle_dim, 1);
        unit.at(fc, 0) = 1;
        res.reps.push_back(res.layout.unflatten(unit));
    }
    return res;
}

// Coordinates of a cocycle class in the quotient by coboundaries.
inline Matrix ext_class_coords(const Ext1Result& e, const std::map<std::string, Matrix>& cocycle) {
    return quotient_map(e.coboundaries) * e.layout.flatten(cocycle);
}

// The extension 0 -> b -> E -> a -> 0 attached to a cocycle:
// E_v = b_v (+) a_v with edge maps [[b_e, c_e], [0, a_e]].
inline DiagramObject realize_extension(const DiagramObject& a, const DiagramObject& b,
                                       const std::map<std::string, Matrix>& cocycle) {
    DiagramObject e = direct_sum(b, a);
    for (const auto& ed : e.shape.edges) {
        auto it = cocycle.find(ed.label);
        if (it == cocycle.end())
            continue;
        const Matrix& c = it->second;
        for (long i = 0; i < b.dim(ed.tgt); ++i)
            for (long j = 0; j < a.dim(ed.src); ++j)
                e.maps[ed.label].at(i, b.dim(ed.src) + j) = c.at(i, j);
        if (ed.invertible && !is_invertible(e.maps[ed.label]))
            throw std::logic_error("realize_extension: triangular block matrix lost invertibility");
    }
    return e;
}

// Matrix of the induced map on cocycle spaces under pre-composition
// with a morphism h : a2 -> a (per edge: c_e |-> c_e h_src).
inline Matrix cocycle_pullback(const DiagramObject& a2, const DiagramObject& a, const DiagramObject& b,
                               const DiagramMorphism& h) {
    BlockLayout from = edge_cocycle_layout(a, b);
    BlockLayout to = edge_cocycle_layout(a2, b);
    Matrix m(to.total, from.total);
    for (size_t eb = 0; eb < from.keys.size(); ++eb) {
        const DiagramEdge& e = *a.shape.find_edge(from.keys[eb]);
        const Matrix& hs = h.at(e.src);
        for (long i = 0; i < b.dim(e.tgt); ++i)
            for (long j = 0; j < a.dim(e.src); ++j)
                for (long k = 0; k < a2.dim(e.src); ++k)
                    if (hs.at(j, k) != 0)
                        m.at(to.pos(static_cast<long>(eb), i, k), from.pos(static_cast<long>(eb), i, j)) +=
                            hs.at(j, k);
    }
    return m;
}

// Matrix of the induced map on cocycle spaces under post-composition
// with a morphism g : b -> b' (per edge: c_e |-> g_tgt c_e).
inline Matrix cocycle_pushforward(const DiagramObject& a, const DiagramObject& b, const DiagramObject& b2,
                                  const DiagramMorphism& g) {
    BlockLayout from = edge_cocycle_layout(a, b);
    BlockLayout to = edge_cocycle_layout(a, b2);
    Matrix m(to.total, from.total);
    for (size_t eb = 0; eb < from.keys.size(); ++eb) {
        const DiagramEdge& e = *a.shape.find_edge(from.keys[eb]);
        const Matrix& gt = g.at(e.tgt);
        for (long i = 0; i < b2.dim(e.tgt); ++i)
            for (long k = 0; k < b.dim(e.tgt); ++k) {
                if (gt.at(i, k) == 0)
                    continue;
                for (long j = 0; j < a.dim(e.src); ++j)
                    m.at(to.pos(static_cast<long>(eb), i, j), from.pos(static_cast<long>(eb), k, j)) +=
                        gt.at(i, k);
            }
    }
    return m;
}

} // namespace ogus
