// Small builders for the quiver categories used across the test suites:
// Mod (one vertex), Map (two vertices, one edge), and random objects
// and morphisms of relation-free shapes.
#pragma once

#include "ogus/fibre.hpp"

#include "generators.hpp"

namespace gen {

inline ogus::DiagramShape mod_shape() {
    ogus::DiagramShape sh;
    sh.vertices = {"V"};
    return sh;
}

inline ogus::DiagramObject mod_object(long dim) {
    ogus::DiagramObject o;
    o.shape = mod_shape();
    o.dims["V"] = dim;
    return o;
}

inline ogus::DiagramShape map_shape() {
    ogus::DiagramShape sh;
    sh.vertices = {"Z0", "Z1"};
    sh.edges.push_back({"f", "Z0", "Z1", false});
    sh.normalize();
    return sh;
}

inline ogus::DiagramObject map_object(const ogus::Matrix& f) {
    ogus::DiagramObject o;
    o.shape = map_shape();
    o.dims["Z0"] = f.cols;
    o.dims["Z1"] = f.rows;
    o.maps["f"] = f;
    return o;
}

inline ogus::DiagramObject random_object(Rng& g, const ogus::DiagramShape& sh, long max_dim = 3) {
    ogus::DiagramObject o;
    o.shape = sh;
    for (const auto& v : sh.vertices)
        o.dims[v] = g() % (max_dim + 1);
    for (const auto& e : sh.edges) {
        if (e.invertible) {
            long d = std::min(o.dims[e.src], o.dims[e.tgt]);
            o.dims[e.src] = o.dims[e.tgt] = d;
        }
    }
    for (const auto& e : sh.edges)
        o.maps[e.label] = e.invertible ? invertible(g, o.dims[e.src])
                                       : matrix(g, o.dims[e.tgt], o.dims[e.src], -3, 3);
    for (const auto& [v, labels] : sh.slots)
        for (const auto& s : labels)
            o.slot_spaces[v][s] = subspace(g, o.dims[v], g() % (o.dims[v] + 1));
    return o;
}

// A random valid morphism: a random combination of the hom basis.
inline ogus::DiagramMorphism random_morphism(Rng& g, const ogus::DiagramObject& a,
                                             const ogus::DiagramObject& b) {
    auto basis = ogus::hom_basis(a, b);
    ogus::DiagramMorphism m = ogus::DiagramMorphism::zero(a, b);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (const auto& mb : basis) {
        int c = coef(g);
        if (c == 0)
            continue;
        for (const auto& v : a.shape.vertices)
            m.components[v] = m.components[v] + ogus::Rational(c) * mb.at(v);
    }
    return m;
}

// Flat matrix of t |-> m o t on vertex-hom coordinates Hom(w, a) -> Hom(w, b).
inline ogus::Matrix postcompose_matrix(const ogus::DiagramObject& w, const ogus::DiagramObject& a,
                                       const ogus::DiagramObject& b, const ogus::DiagramMorphism& m) {
    ogus::BlockLayout from = ogus::vertex_hom_layout(w, a);
    ogus::BlockLayout to = ogus::vertex_hom_layout(w, b);
    ogus::Matrix out(to.total, from.total);
    for (size_t vb = 0; vb < from.keys.size(); ++vb) {
        const std::string& v = from.keys[vb];
        const ogus::Matrix& mv = m.at(v);
        for (long i = 0; i < b.dim(v); ++i)
            for (long k = 0; k < a.dim(v); ++k) {
                if (mv.at(i, k) == 0)
                    continue;
                for (long j = 0; j < w.dim(v); ++j)
                    out.at(to.pos(to.index_of(v), i, j), from.pos(static_cast<long>(vb), k, j)) +=
                        mv.at(i, k);
            }
    }
    return out;
}

} // namespace gen
