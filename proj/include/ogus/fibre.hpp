// Fibre products of diagram categories along vertex-selection functors
// (optionally through a filtration slot or its quotient), and the
// six-term Hom/Ext exactness check for P = X x_S Y.
//
// The combined shape is the disjoint union of the two shapes plus one
// invertible theta edge identifying the two functor values. A functor
// that passes through a slot (or slot quotient) gets an auxiliary
// vertex joined by the canonical inclusion (or projection) edge; the
// auxiliary component of any morphism is determined by the main one,
// so Hom spaces are unchanged.
#pragma once

#include "ogus/ext.hpp"

namespace ogus {

struct VertexFunctor {
    enum class Mode { plain, slot_sub, slot_quotient };
    std::string vertex;
    Mode mode = Mode::plain;
    std::string slot; // for the slot modes

    static VertexFunctor select(std::string v) { return {std::move(v), Mode::plain, {}}; }
    static VertexFunctor select_slot(std::string v, std::string s) {
        return {std::move(v), Mode::slot_sub, std::move(s)};
    }
    static VertexFunctor select_slot_quotient(std::string v, std::string s) {
        return {std::move(v), Mode::slot_quotient, std::move(s)};
    }
};

struct FibreProductCategory {
    DiagramShape x, y;
    VertexFunctor f, g; // f evaluated on X-objects, g on Y-objects
    DiagramShape combined;
    std::string theta_edge;
    std::string f_endpoint, g_endpoint; // combined vertices carrying F(x), G(y)
    std::string f_aux_edge, g_aux_edge; // empty when the functor is plain
};

namespace detail {

inline void check_functor(const DiagramShape& sh, const VertexFunctor& fn, const char* side) {
    if (!sh.has_vertex(fn.vertex))
        throw std::invalid_argument(std::string("fibre product: ") + side + " selects missing vertex " +
                                    fn.vertex);
    if (fn.mode != VertexFunctor::Mode::plain) {
        auto it = sh.slots.find(fn.vertex);
        bool found = it != sh.slots.end() &&
                     std::find(it->second.begin(), it->second.end(), fn.slot) != it->second.end();
        if (!found)
            throw std::invalid_argument(std::string("fibre product: ") + side + " selects missing slot " +
                                        fn.slot);
    }
}

inline void copy_prefixed(const DiagramShape& from, const std::string& prefix, DiagramShape& into) {
    for (const auto& v : from.vertices)
        into.vertices.push_back(prefix + v);
    for (const auto& e : from.edges)
        into.edges.push_back({prefix + e.label, prefix + e.src, prefix + e.tgt, e.invertible});
    for (const auto& [v, labels] : from.slots)
        into.slots[prefix + v] = labels;
    for (const auto& r : from.relations) {
        PathRelation pr;
        for (const auto& l : r.lhs)
            pr.lhs.push_back(prefix + l);
        for (const auto& l : r.rhs)
            pr.rhs.push_back(prefix + l);
        into.relations.push_back(std::move(pr));
    }
}

// Adds the auxiliary vertex and structural edge for a slot-composed
// functor; returns the combined vertex carrying the functor value.
inline std::string attach_endpoint(DiagramShape& sh, const std::string& prefix, const VertexFunctor& fn,
                                   std::string& aux_edge) {
    std::string v = prefix + fn.vertex;
    if (fn.mode == VertexFunctor::Mode::plain)
        return v;
    if (fn.mode == VertexFunctor::Mode::slot_sub) {
        std::string aux = v + ".sub." + fn.slot;
        aux_edge = aux + ".incl";
        sh.vertices.push_back(aux);
        sh.edges.push_back({aux_edge, aux, v, false});
        return aux;
    }
    std::string aux = v + ".quot." + fn.slot;
    aux_edge = v + ".proj." + fn.slot;
    sh.vertices.push_back(aux);
    sh.edges.push_back({aux_edge, v, aux, false});
    return aux;
}

} // namespace detail

inline FibreProductCategory fibre_product_category(const DiagramShape& x, const DiagramShape& y,
                                                   const VertexFunctor& f, const VertexFunctor& g) {
    detail::check_functor(x, f, "F");
    detail::check_functor(y, g, "G");
    FibreProductCategory cat;
    cat.x = x;
    cat.y = y;
    cat.f = f;
    cat.g = g;
    detail::copy_prefixed(x, "x:", cat.combined);
    detail::copy_prefixed(y, "y:", cat.combined);
    cat.f_endpoint = detail::attach_endpoint(cat.combined, "x:", f, cat.f_aux_edge);
    cat.g_endpoint = detail::attach_endpoint(cat.combined, "y:", g, cat.g_aux_edge);
    cat.theta_edge = "theta";
    cat.combined.edges.push_back({cat.theta_edge, cat.f_endpoint, cat.g_endpoint, true});
    cat.combined.normalize();
    return cat;
}

// Objects of the fibre product: an X-object, a Y-object, and an
// invertible identification theta : F(x) ~ G(y).
struct FibreProductObject {
    DiagramObject x, y;
    Matrix theta;
};

// Value dimension of a functor on an object of its category.
inline long functor_value_dim(const VertexFunctor& fn, const DiagramObject& o) {
    switch (fn.mode) {
    case VertexFunctor::Mode::plain: return o.dim(fn.vertex);
    case VertexFunctor::Mode::slot_sub: return o.slot(fn.vertex, fn.slot).dim();
    default: return o.dim(fn.vertex) - o.slot(fn.vertex, fn.slot).dim();
    }
}

inline DiagramObject assemble_fibre_object(const FibreProductCategory& cat, const FibreProductObject& fpo) {
    if (fpo.theta.cols != functor_value_dim(cat.f, fpo.x) || fpo.theta.rows != functor_value_dim(cat.g, fpo.y))
        throw std::invalid_argument("fibre object: theta shape mismatch");
    DiagramObject o;
    o.shape = cat.combined;
    for (const auto& v : cat.x.vertices)
        o.dims["x:" + v] = fpo.x.dim(v);
    for (const auto& e : cat.x.edges)
        o.maps["x:" + e.label] = fpo.x.map(e.label);
    for (const auto& [v, labels] : cat.x.slots)
        for (const auto& s : labels)
            o.slot_spaces["x:" + v][s] = fpo.x.slot(v, s);
    for (const auto& v : cat.y.vertices)
        o.dims["y:" + v] = fpo.y.dim(v);
    for (const auto& e : cat.y.edges)
        o.maps["y:" + e.label] = fpo.y.map(e.label);
    for (const auto& [v, labels] : cat.y.slots)
        for (const auto& s : labels)
            o.slot_spaces["y:" + v][s] = fpo.y.slot(v, s);
    auto fill_aux = [&o](const VertexFunctor& fn, const DiagramObject& part, const std::string& endpoint,
                         const std::string& aux_edge) {
        if (fn.mode == VertexFunctor::Mode::plain)
            return;
        const Subspace& s = part.slot(fn.vertex, fn.slot);
        if (fn.mode == VertexFunctor::Mode::slot_sub) {
            o.dims[endpoint] = s.dim();
            o.maps[aux_edge] = s.inclusion();
        } else {
            o.dims[endpoint] = s.ambient - s.dim();
            o.maps[aux_edge] = quotient_map(s);
        }
    };
    fill_aux(cat.f, fpo.x, cat.f_endpoint, cat.f_aux_edge);
    fill_aux(cat.g, fpo.y, cat.g_endpoint, cat.g_aux_edge);
    o.maps[cat.theta_edge] = fpo.theta;
    return o;
}

inline DiagramObject project_x(const FibreProductCategory& cat, const DiagramObject& o) {
    DiagramObject p;
    p.shape = cat.x;
    for (const auto& v : cat.x.vertices)
        p.dims[v] = o.dim("x:" + v);
    for (const auto& e : cat.x.edges)
        p.maps[e.label] = o.map("x:" + e.label);
    for (const auto& [v, labels] : cat.x.slots)
        for (const auto& s : labels)
            p.slot_spaces[v][s] = o.slot("x:" + v, s);
    return p;
}

inline DiagramObject project_y(const FibreProductCategory& cat, const DiagramObject& o) {
    DiagramObject p;
    p.shape = cat.y;
    for (const auto& v : cat.y.vertices)
        p.dims[v] = o.dim("y:" + v);
    for (const auto& e : cat.y.edges)
        p.maps[e.label] = o.map("y:" + e.label);
    for (const auto& [v, labels] : cat.y.slots)
        for (const auto& s : labels)
            p.slot_spaces[v][s] = o.slot("y:" + v, s);
    return p;
}

// One node of the six-term exactness report.
struct LesNode {
    std::string name;
    long incoming_rank = 0; // rank of the map arriving at this node
    long kernel_dim = 0;    // dim ker of the map leaving this node
    bool exact = false;
};

struct LesReport {
    long hom_p = 0, hom_x = 0, hom_y = 0, hom_s = 0;
    long ext_p = 0, ext_x = 0, ext_y = 0, ext_s = 0;
    std::vector<LesNode> nodes;
    bool all_exact = true;
};

// Exactness of
//   0 -> Hom_P -> Hom_X x Hom_Y -> Hom_S -> Ext^1_P -> Ext^1_X x Ext^1_Y -> Ext^1_S -> 0
// computed term by term. The base S of a vertex-selection fibre
// product is the category of plain vector spaces, so Ext^1_S = 0.
inline LesReport les_check(const FibreProductCategory& cat, const DiagramObject& a, const DiagramObject& b) {
    if (!cat.combined.relations.empty())
        throw std::invalid_argument("les_check: relations present");
    if (cat.f.mode != VertexFunctor::Mode::plain || cat.g.mode != VertexFunctor::Mode::plain)
        throw std::invalid_argument("les_check: supported for plain vertex-selection functors");

    LesReport rep;
    DiagramObject ax = project_x(cat, a), bx = project_x(cat, b);
    DiagramObject ay = project_y(cat, a), by = project_y(cat, b);

    BlockLayout vp = vertex_hom_layout(a, b);
    BlockLayout vx = vertex_hom_layout(ax, bx);
    BlockLayout vy = vertex_hom_layout(ay, by);

    Subspace homP = hom_solution_space(a, b);
    Subspace homX = hom_solution_space(ax, bx);
    Subspace homY = hom_solution_space(ay, by);
    rep.hom_p = homP.dim();
    rep.hom_x = homX.dim();
    rep.hom_y = homY.dim();

    long fa = a.dim(cat.f_endpoint), fb = b.dim(cat.f_endpoint);
    rep.hom_s = fa * fb;

    // M1: flat P-homs -> flat X-homs (+) flat Y-homs, coordinate projection
    Matrix m1(vx.total + vy.total, vp.total);
    for (size_t i = 0; i < vx.keys.size(); ++i) {
        long pb = vp.index_of("x:" + vx.keys[i]);
        for (long r = 0; r < vx.rows[i]; ++r)
            for (long c = 0; c < vx.cols[i]; ++c)
                m1.at(vx.pos(static_cast<long>(i), r, c), vp.pos(pb, r, c)) = 1;
    }
    for (size_t i = 0; i < vy.keys.size(); ++i) {
        long pb = vp.index_of("y:" + vy.keys[i]);
        for (long r = 0; r < vy.rows[i]; ++r)
            for (long c = 0; c < vy.cols[i]; ++c)
                m1.at(vx.total + vy.pos(static_cast<long>(i), r, c), vp.pos(pb, r, c)) = 1;
    }

    // M2: (phi, psi) -> F(phi) - theta_b^{-1} G(psi) theta_a  (flat S-homs fb x fa)
    const Matrix& theta_a = a.map(cat.theta_edge);
    const Matrix& theta_b = b.map(cat.theta_edge);
    Matrix theta_b_inv = inverse(theta_b);
    Matrix m2(fb * fa, vx.total + vy.total);
    {
        long xb = vx.index_of(cat.f.vertex);
        for (long i = 0; i < fb; ++i)
            for (long j = 0; j < fa; ++j)
                m2.at(i * fa + j, vx.pos(xb, i, j)) += 1;
        // -(theta_b^{-1} psi_g theta_a)_{ij} = -sum_{k,l} invB[i,k] psi[k,l] A[l,j]
        long yb = vy.index_of(cat.g.vertex);
        long ga = ay.dim(cat.g.vertex), gb = by.dim(cat.g.vertex);
        for (long i = 0; i < fb; ++i)
            for (long j = 0; j < fa; ++j)
                for (long k = 0; k < gb; ++k)
                    for (long l2 = 0; l2 < ga; ++l2)
                        m2.at(i * fa + j, vx.total + vy.pos(yb, k, l2)) -=
                            theta_b_inv.at(i, k) * theta_a.at(l2, j);
    }

    Ext1Result extP = ext1_basis(a, b);
    Ext1Result extX = ext1_basis(ax, bx);
    Ext1Result extY = ext1_basis(ay, by);
    rep.ext_p = extP.dim;
    rep.ext_x = extX.dim;
    rep.ext_y = extY.dim;
    rep.ext_s = 0;

    // M3: lambda -> class of the extension twisted by lambda along theta
    Matrix m3(extP.dim, fb * fa);
    for (long i = 0; i < fb; ++i)
        for (long j = 0; j < fa; ++j) {
            Matrix lam(fb, fa);
            lam.at(i, j) = 1;
            std::map<std::string, Matrix> cocycle;
            for (size_t eb = 0; eb < extP.layout.keys.size(); ++eb)
                cocycle[extP.layout.keys[eb]] = Matrix(extP.layout.rows[eb], extP.layout.cols[eb]);
            cocycle[cat.theta_edge] = theta_b * lam;
            Matrix cls = ext_class_coords(extP, cocycle);
            for (long r = 0; r < extP.dim; ++r)
                m3.at(r, i * fa + j) = cls.at(r, 0);
        }

    // M4: Ext_P class -> (Ext_X class, Ext_Y class), restriction of cocycles
    Matrix m4(extX.dim + extY.dim, extP.dim);
    for (size_t r = 0; r < extP.reps.size(); ++r) {
        std::map<std::string, Matrix> cx, cy;
        for (const auto& e : cat.x.edges)
            cx[e.label] = extP.reps[r].at("x:" + e.label);
        for (const auto& e : cat.y.edges)
            cy[e.label] = extP.reps[r].at("y:" + e.label);
        Matrix clsx = ext_class_coords(extX, cx);
        Matrix clsy = ext_class_coords(extY, cy);
        for (long i = 0; i < extX.dim; ++i)
            m4.at(i, static_cast<long>(r)) = clsx.at(i, 0);
        for (long i = 0; i < extY.dim; ++i)
            m4.at(extX.dim + i, static_cast<long>(r)) = clsy.at(i, 0);
    }

    Subspace homXY = Subspace::span(vx.total + vy.total,
                                    vstack(hstack(homX.basis, Matrix(homX.dim(), vy.total)),
                                           hstack(Matrix(homY.dim(), vx.total), homY.basis)));

    auto image_on = [](const Matrix& m, const Subspace& dom) {
        return Subspace::span(m.rows, (m * dom.inclusion()).transpose());
    };
    auto kernel_in = [](const Matrix& m, const Subspace& dom) {
        return intersect(Subspace::span(m.cols, kernel_basis(m)), dom);
    };

    auto add_node = [&rep](const std::string& name, long in_rank, long out_kernel, bool exact) {
        rep.nodes.push_back({name, in_rank, out_kernel, exact});
        rep.all_exact = rep.all_exact && exact;
    };

    // Hom_P: nothing comes in, the outgoing map must be injective
    Subspace k1 = kernel_in(m1, homP);
    add_node("Hom_P", 0, k1.dim(), k1.dim() == 0);
    // Hom_X x Hom_Y
    Subspace im1 = image_on(m1, homP);
    Subspace k2 = kernel_in(m2, homXY);
    add_node("Hom_X x Hom_Y", im1.dim(), k2.dim(), im1 == k2);
    // Hom_S
    Subspace im2 = image_on(m2, homXY);
    Subspace k3 = Subspace::span(fb * fa, kernel_basis(m3));
    add_node("Hom_S", im2.dim(), k3.dim(), im2 == k3);
    // Ext_P
    Subspace im3 = Subspace::span(extP.dim, (m3).transpose());
    Subspace k4 = Subspace::span(extP.dim, kernel_basis(m4));
    add_node("Ext1_P", im3.dim(), k4.dim(), im3 == k4);
    // Ext_X x Ext_Y: the outgoing map lands in Ext_S = 0
    Subspace im4 = Subspace::span(extX.dim + extY.dim, m4.transpose());
    add_node("Ext1_X x Ext1_Y", im4.dim(), extX.dim + extY.dim, im4.dim() == extX.dim + extY.dim);
    // Ext_S = 0
    add_node("Ext1_S", 0, 0, true);
    return rep;
}

} // namespace ogus
