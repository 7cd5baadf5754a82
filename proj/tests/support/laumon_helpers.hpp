// Random linearized Laumon motives built from the level <= 1 object
// generator: the exact row comes from a random coordinate change of
// u_slot (+) lie_f, gamma from build_gamma with a random section and a
// random lift.
#pragma once

#include "ogus/laumon.hpp"

#include "ogus_helpers.hpp"

namespace gen {

struct MotiveParts {
    ogus::LinearizedLaumonMotive motive;
    ogus::Matrix sigma;  // the section used for gamma
    ogus::Matrix s_lift; // the lift used for gamma
};

inline MotiveParts random_motive_parts(Rng& g, const std::vector<ogus::Place>& places,
                                       long max_blocks = 2, long max_extra = 2) {
    MotiveParts parts;
    ogus::LinearizedLaumonMotive& m = parts.motive;
    m.etale = random_level1_object(g, places, max_blocks);
    m.lie_f = g() % (max_extra + 1);
    m.v_dim = g() % (max_extra + 1);
    long s = m.u_slot_dim(), lg = m.lie_g_dim();
    m.u_m = s + m.lie_f;
    m.du_times = matrix(g, lg, m.lie_f, -2, 2);

    ogus::Matrix r = invertible(g, m.u_m);
    ogus::Matrix embed_s(m.u_m, s), embed_f(m.u_m, m.lie_f);
    for (long i = 0; i < s; ++i)
        embed_s.at(i, i) = 1;
    for (long i = 0; i < m.lie_f; ++i)
        embed_f.at(s + i, i) = 1;
    m.j = r * embed_s;
    ogus::Matrix r_inv = ogus::inverse(r);
    m.q = ogus::Matrix(m.lie_f, m.u_m);
    for (long i = 0; i < m.lie_f; ++i)
        for (long c = 0; c < m.u_m; ++c)
            m.q.at(i, c) = r_inv.at(s + i, c);
    parts.sigma = r * embed_f;
    parts.s_lift = quotient_section(m.etale.fil0()) * m.du_times +
                   m.etale.fil0().inclusion() * matrix(g, s, m.lie_f, -2, 2);
    m.gamma = ogus::build_gamma({m.etale, m.lie_f, m.du_times}, m.j, m.q, parts.sigma, parts.s_lift);
    m.alpha = matrix(g, m.v_dim, m.u_m, -2, 2);
    return parts;
}

inline ogus::LinearizedLaumonMotive random_motive(Rng& g, const std::vector<ogus::Place>& places,
                                                  long max_blocks = 2, long max_extra = 2) {
    return random_motive_parts(g, places, max_blocks, max_extra).motive;
}

// Deligne type: no formal part and no vector part.
inline ogus::LinearizedLaumonMotive deligne_motive(Rng& g, const std::vector<ogus::Place>& places,
                                                   long max_blocks = 2) {
    ogus::LinearizedLaumonMotive m;
    m.etale = random_level1_object(g, places, max_blocks);
    m.lie_f = 0;
    m.v_dim = 0;
    long s = m.u_slot_dim();
    m.u_m = s;
    m.du_times = ogus::Matrix(m.lie_g_dim(), 0);
    m.j = invertible(g, s);
    m.q = ogus::Matrix(0, s);
    m.alpha = ogus::Matrix(0, s);
    m.gamma = ogus::build_gamma({m.etale, 0, m.du_times}, m.j, m.q, ogus::Matrix(s, 0),
                                ogus::Matrix(m.etale.t_dr, 0));
    return m;
}

inline ogus::Matrix flatten_motive_morphism(const ogus::LinearizedLaumonMotive& a,
                                            const ogus::LinearizedLaumonMotive& b,
                                            const ogus::MotiveMorphism& mm) {
    ogus::BlockLayout layout;
    layout.add("t", b.etale.t_dr, a.etale.t_dr);
    layout.add("u", b.u_m, a.u_m);
    layout.add("v", b.v_dim, a.v_dim);
    layout.add("f", b.lie_f, a.lie_f);
    layout.add("g", b.lie_g_dim(), a.lie_g_dim());
    std::map<std::string, ogus::Matrix> blocks{{"t", mm.etale},
                                               {"u", mm.on_u},
                                               {"v", mm.on_v},
                                               {"f", mm.on_lie_f},
                                               {"g", mm.on_lie_g}};
    return layout.flatten(blocks);
}

} // namespace gen
