// Linearized Laumon motives: the devissage data (etale part, exact
// U-row, alpha, du, gamma), the splitting construction for gamma, the
// assemble/disassemble equivalences, motive morphism spaces, and the
// iterated fibre-product presentation.
//
// Coordinate conventions: u_slot is Fil^0 of the etale object in its
// basis coordinates; lie_g is T/Fil^0 in the coordinates of
// quotient_map(Fil^0), and the identification delta is the identity in
// those coordinates.
#pragma once

#include "ogus/fibre.hpp"
#include "ogus/hom_system.hpp"
#include "ogus/ogus_object.hpp"

namespace ogus {

struct TimesMotiveData {
    OgusObject etale; // level <= 1
    long lie_f = 0;
    Matrix du_times; // lie_g x lie_f

    std::vector<std::string> check() const {
        std::vector<std::string> bad = etale.check();
        if (!is_level_le_1(etale))
            bad.push_back("etale part is not of level <= 1");
        if (du_times.rows != etale.lie_dim() || du_times.cols != lie_f)
            bad.push_back("du_times shape mismatch");
        return bad;
    }
};

// The alpha row 0 -> U(etale) -> U(M) -> Lie F -> 0 together with the
// classifying map alpha and the splitting-derived gamma.
struct AlphaRowData {
    long v_dim = 0;
    long u_m = 0;
    Matrix j;     // u_m x dim Fil^0, injective
    Matrix q;     // lie_f x u_m, surjective with ker q = im j
    Matrix alpha; // v_dim x u_m
    Matrix gamma; // t_dr x u_m
};

struct LinearizedLaumonMotive {
    OgusObject etale;
    long lie_f = 0;
    Matrix du_times;
    long v_dim = 0;
    long u_m = 0;
    Matrix j, q, alpha, gamma;

    long u_slot_dim() const { return etale.fil0().dim(); }
    long lie_g_dim() const { return etale.lie_dim(); }

    std::vector<std::string> check() const {
        std::vector<std::string> bad = TimesMotiveData{etale, lie_f, du_times}.check();
        long s = u_slot_dim(), t = etale.t_dr;
        if (j.rows != u_m || j.cols != s)
            bad.push_back("j shape mismatch");
        if (q.rows != lie_f || q.cols != u_m)
            bad.push_back("q shape mismatch");
        if (alpha.rows != v_dim || alpha.cols != u_m)
            bad.push_back("alpha shape mismatch");
        if (gamma.rows != t || gamma.cols != u_m)
            bad.push_back("gamma shape mismatch");
        if (!bad.empty())
            return bad;
        if (u_m != s + lie_f)
            bad.push_back("dim U(M) != dim U(etale) + dim Lie F");
        if (rank(j) != s)
            bad.push_back("j is not injective");
        if (!(q * j).is_zero())
            bad.push_back("q j != 0");
        if (!(Subspace::span(u_m, kernel_basis(q)) == Subspace::span(u_m, j.transpose())))
            bad.push_back("row not exact: ker q != im j");
        if (!(etale.fil0_quotient() * gamma == du_times * q))
            bad.push_back("pi gamma != du q");
        if (!(gamma * j == etale.fil0().inclusion()))
            bad.push_back("gamma j is not the Fil^0 inclusion");
        return bad;
    }
    bool valid() const { return check().empty(); }

    std::string encode() const {
        std::ostringstream os;
        os << etale.encode() << "|f:" << lie_f << ";v:" << v_dim << ";u:" << u_m << ";";
        for (const Matrix* m : {&du_times, &j, &q, &alpha, &gamma})
            for (const auto& e : m->entries)
                os << to_string(e) << ",";
        return os.str();
    }
};

// gamma(u) = incl(j^{-1}(u - sigma(q u))) + s_lift(q u), for a section
// sigma of q and a lift s_lift of du through the Fil^0 quotient.
inline Matrix build_gamma(const TimesMotiveData& times, const Matrix& j, const Matrix& q,
                          const Matrix& sigma, const Matrix& s_lift) {
    long lie_f = times.lie_f, u_m = q.cols;
    if (!(q * sigma == Matrix::identity(lie_f)))
        throw std::invalid_argument("build_gamma: sigma is not a section of q");
    if (!(times.etale.fil0_quotient() * s_lift == times.du_times))
        throw std::invalid_argument("build_gamma: s_lift does not lift du through the quotient");
    Matrix jt = j.transpose();
    Matrix j_left_inverse = inverse(jt * j) * jt;
    Matrix proj = Matrix::identity(u_m) - sigma * q;
    return times.etale.fil0().inclusion() * j_left_inverse * proj + s_lift * q;
}

inline LinearizedLaumonMotive assemble(const TimesMotiveData& times, const AlphaRowData& row) {
    LinearizedLaumonMotive m;
    m.etale = times.etale;
    m.lie_f = times.lie_f;
    m.du_times = times.du_times;
    m.v_dim = row.v_dim;
    m.u_m = row.u_m;
    m.j = row.j;
    m.q = row.q;
    m.alpha = row.alpha;
    m.gamma = row.gamma;
    auto bad = m.check();
    if (!bad.empty())
        throw std::invalid_argument("assemble: " + bad.front());
    return m;
}

inline std::pair<TimesMotiveData, AlphaRowData> disassemble(const LinearizedLaumonMotive& m) {
    auto bad = m.check();
    if (!bad.empty())
        throw std::invalid_argument("disassemble: " + bad.front());
    return {TimesMotiveData{m.etale, m.lie_f, m.du_times},
            AlphaRowData{m.v_dim, m.u_m, m.j, m.q, m.alpha, m.gamma}};
}

// One morphism of linearized motives: the etale component plus the
// maps on U(M), V, Lie F and Lie G.
struct MotiveMorphism {
    Matrix etale;    // t' x t
    Matrix on_u;     // u_m' x u_m
    Matrix on_v;     // v' x v
    Matrix on_lie_f; // lie_f' x lie_f
    Matrix on_lie_g; // lie_g' x lie_g
};

namespace detail {

inline ConstraintSystem motive_hom_system(const LinearizedLaumonMotive& m,
                                          const LinearizedLaumonMotive& m2) {
    BlockLayout layout;
    layout.add("t", m2.etale.t_dr, m.etale.t_dr);
    layout.add("u", m2.u_m, m.u_m);
    layout.add("v", m2.v_dim, m.v_dim);
    layout.add("f", m2.lie_f, m.lie_f);
    layout.add("g", m2.lie_g_dim(), m.lie_g_dim());
    ConstraintSystem cs(layout);
    cs.embed_rows("t", ogus_hom_system(m.etale, m2.etale));
    cs.add_square("u", "v", m.alpha, m2.alpha);                             // on_v alpha = alpha' on_u
    cs.add_square("f", "g", m.du_times, m2.du_times);                       // on_g du = du' on_f
    cs.add_square("u", "f", m.q, m2.q);                                     // on_f q = q' on_u
    cs.add_square("u", "t", m.gamma, m2.gamma);                             // eta gamma = gamma' on_u
    cs.add_square("t", "g", m.etale.fil0_quotient(), m2.etale.fil0_quotient()); // on_g pi = pi' eta
    // on_u j = j' (eta restricted to Fil^0), written through the pivot
    // selector of the target slot
    {
        long s = m.u_slot_dim();
        Matrix jl = m2.j * pivot_selector(m2.etale.fil0()); // u_m' x t'
        Matrix incl = m.etale.fil0().inclusion();           // t x s
        long bu = cs.layout.index_of("u"), bt = cs.layout.index_of("t");
        Matrix r(m2.u_m * s, cs.layout.total);
        for (long i = 0; i < m2.u_m; ++i)
            for (long j2 = 0; j2 < s; ++j2) {
                long row = i * s + j2;
                for (long k = 0; k < m.u_m; ++k)
                    r.at(row, cs.layout.pos(bu, i, k)) += m.j.at(k, j2);
                for (long k2 = 0; k2 < m2.etale.t_dr; ++k2)
                    for (long m3 = 0; m3 < m.etale.t_dr; ++m3)
                        if (jl.at(i, k2) != 0 && incl.at(m3, j2) != 0)
                            r.at(row, cs.layout.pos(bt, k2, m3)) -= jl.at(i, k2) * incl.at(m3, j2);
            }
        cs.add_rows(r);
    }
    return cs;
}

} // namespace detail

inline std::vector<MotiveMorphism> hom_motives(const LinearizedLaumonMotive& m,
                                               const LinearizedLaumonMotive& m2) {
    ConstraintSystem cs = detail::motive_hom_system(m, m2);
    Subspace sol = cs.solutions();
    std::vector<MotiveMorphism> basis;
    for (long r = 0; r < sol.dim(); ++r) {
        auto blocks = cs.layout.unflatten(sol.basis.row(r).transpose());
        basis.push_back({blocks.at("t"), blocks.at("u"), blocks.at("v"), blocks.at("f"), blocks.at("g")});
    }
    return basis;
}

// Flat solution space of the motive hom system; block order t, u, v, f, g.
inline Subspace hom_motives_solution_space(const LinearizedLaumonMotive& m,
                                           const LinearizedLaumonMotive& m2) {
    return detail::motive_hom_system(m, m2).solutions();
}

// ---- fibre-product presentation ------------------------------------

inline DiagramShape map_shape(const std::string& v0, const std::string& v1, const std::string& edge) {
    DiagramShape sh;
    sh.vertices = {v0, v1};
    sh.edges.push_back({edge, v0, v1, false});
    sh.normalize();
    return sh;
}

inline DiagramObject map_object(const DiagramShape& sh, const std::string& v0, const std::string& v1,
                                const std::string& edge, const Matrix& f) {
    DiagramObject o;
    o.shape = sh;
    o.dims[v0] = f.cols;
    o.dims[v1] = f.rows;
    o.maps[edge] = f;
    return o;
}

// One-vertex presentation of a level <= 1 Ogus object: slots for the
// weight jumps and Fil^0, one invertible loop per place.
inline DiagramShape etale_shape(const OgusObject& o) {
    DiagramShape sh;
    sh.vertices = {"T"};
    sh.slots["T"] = {"fil0", "w-1", "w-2"};
    for (const auto& f : o.frobenii)
        sh.edges.push_back({"phi_" + f.place.label, "T", "T", true});
    sh.normalize();
    return sh;
}

inline DiagramObject etale_diagram(const OgusObject& o) {
    DiagramObject d;
    d.shape = etale_shape(o);
    d.dims["T"] = o.t_dr;
    for (const auto& f : o.frobenii)
        d.maps["phi_" + f.place.label] = f.phi;
    d.slot_spaces["T"]["fil0"] = o.fil0();
    d.slot_spaces["T"]["w-1"] = o.weight.at(-1);
    d.slot_spaces["T"]["w-2"] = o.weight.at(-2);
    return d;
}

struct FibrePresentation {
    FibreProductCategory stage1; // etale x_Mod Map along (T/Fil^0, target)
    DiagramObject stage1_object;
    DiagramShape enriched_shape; // stage 1 plus the designated U(M) vertex
    DiagramObject enriched_object;
    FibreProductCategory stage2; // enriched x_Mod Map along (U(M), source)
    DiagramObject object;        // the full combined-shape object
};

// The iterated encoding (((etale) x_Mod Map via l,t) x_Mod Map via U,s).
// U(M) is not derivable from the times-data alone, so it enters as a
// designated vertex with its gamma and q edges before the second
// product is taken.
inline FibrePresentation fibre_presentation(const LinearizedLaumonMotive& m) {
    auto bad = m.check();
    if (!bad.empty())
        throw std::invalid_argument("fibre_presentation: " + bad.front());
    FibrePresentation pres;

    DiagramShape esh = etale_shape(m.etale);
    DiagramShape du_sh = map_shape("Z0", "Z1", "du");
    pres.stage1 = fibre_product_category(esh, du_sh, VertexFunctor::select_slot_quotient("T", "fil0"),
                                         VertexFunctor::select("Z1"));
    FibreProductObject fp1;
    fp1.x = etale_diagram(m.etale);
    fp1.y = map_object(du_sh, "Z0", "Z1", "du", m.du_times);
    fp1.theta = Matrix::identity(m.lie_g_dim());
    pres.stage1_object = assemble_fibre_object(pres.stage1, fp1);

    pres.enriched_shape = pres.stage1.combined;
    pres.enriched_shape.vertices.push_back("UM");
    pres.enriched_shape.edges.push_back({"gamma", "UM", "x:T", false});
    pres.enriched_shape.edges.push_back({"qq", "UM", "y:Z0", false});
    pres.enriched_shape.normalize();
    pres.enriched_object = pres.stage1_object;
    pres.enriched_object.shape = pres.enriched_shape;
    pres.enriched_object.dims["UM"] = m.u_m;
    pres.enriched_object.maps["gamma"] = m.gamma;
    pres.enriched_object.maps["qq"] = m.q;

    DiagramShape al_sh = map_shape("Y0", "Y1", "alpha");
    pres.stage2 = fibre_product_category(pres.enriched_shape, al_sh, VertexFunctor::select("UM"),
                                         VertexFunctor::select("Y0"));
    FibreProductObject fp2;
    fp2.x = pres.enriched_object;
    fp2.y = map_object(al_sh, "Y0", "Y1", "alpha", m.alpha);
    fp2.theta = Matrix::identity(m.u_m);
    pres.object = assemble_fibre_object(pres.stage2, fp2);
    return pres;
}

} // namespace ogus
