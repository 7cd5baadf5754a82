#include "ogus/laumon.hpp"

#include "support/laumon_helpers.hpp"

#include <catch_amalgamated.hpp>

using namespace ogus;

TEST_CASE("build_gamma") {
    auto places = gen::default_places();
    SECTION("with no formal part gamma inverts j into Fil^0") {
        gen::Rng g(7);
        LinearizedLaumonMotive m = gen::deligne_motive(g, places);
        REQUIRE(m.valid());
        REQUIRE(m.gamma == m.etale.fil0().inclusion() * inverse(m.j));
    }
    SECTION("with no etale U-part gamma is the lift composed with q") {
        gen::Rng g(11);
        OgusObject tate = gen::tate_block(places); // Fil^0 = 0
        TimesMotiveData times{tate, 1, gen::matrix(g, tate.t_dr, 1)};
        Matrix j(1, 0);
        Matrix q = Matrix::identity(1);
        Matrix sigma = Matrix::identity(1);
        Matrix s_lift = quotient_section(tate.fil0()) * times.du_times;
        Matrix gamma = build_gamma(times, j, q, sigma, s_lift);
        REQUIRE(gamma == s_lift * q);
    }
    SECTION("explicit 2-dimensional row") {
        OgusObject unit = gen::unit_block(places); // dim 1, Fil^0 = T, lie_g = 0
        TimesMotiveData times{unit, 1, Matrix(0, 1)};
        Matrix j(2, 1), q(1, 2), sigma(2, 1);
        j.at(0, 0) = 1;
        q.at(0, 1) = 1;
        sigma.at(1, 0) = 1;
        Matrix s_lift(1, 1); // arbitrary lift of the 0 x 1 du
        s_lift.at(0, 0) = 5;
        Matrix gamma = build_gamma(times, j, q, sigma, s_lift);
        // gamma = incl j^+ (I - sigma q) + s q = [1 0] + [0 5] = [1 5]
        REQUIRE(gamma == Matrix{{1, 5}});
        LinearizedLaumonMotive m;
        m.etale = unit;
        m.lie_f = 1;
        m.du_times = Matrix(0, 1);
        m.v_dim = 0;
        m.u_m = 2;
        m.j = j;
        m.q = q;
        m.alpha = Matrix(0, 2);
        m.gamma = gamma;
        REQUIRE(m.valid());
    }
    SECTION("bad sections and bad lifts are rejected") {
        gen::Rng g(13);
        auto parts = gen::random_motive_parts(g, places);
        while (parts.motive.lie_f == 0)
            parts = gen::random_motive_parts(g, places);
        const auto& m = parts.motive;
        Matrix bad_sigma = parts.sigma + gen::matrix(g, m.u_m, m.lie_f, 1, 2);
        bool sigma_still_section = (m.q * bad_sigma) == Matrix::identity(m.lie_f);
        if (!sigma_still_section)
            REQUIRE_THROWS_AS(build_gamma({m.etale, m.lie_f, m.du_times}, m.j, m.q, bad_sigma,
                                          parts.s_lift),
                              std::invalid_argument);
        Matrix bad_lift = parts.s_lift;
        if (m.lie_g_dim() > 0 && m.lie_f > 0) {
            bad_lift = parts.s_lift + quotient_section(m.etale.fil0());
            REQUIRE_THROWS_AS(build_gamma({m.etale, m.lie_f, m.du_times}, m.j, m.q, parts.sigma,
                                          bad_lift),
                              std::invalid_argument);
        }
    }
    SECTION("changing the section changes gamma exactly by incl j^+ (sigma' - sigma) q") {
        gen::Rng g(17);
        for (int it = 0; it < 10; ++it) {
            auto parts = gen::random_motive_parts(g, places);
            const auto& m = parts.motive;
            if (m.lie_f == 0 || m.u_slot_dim() == 0)
                continue;
            // another section: add anything landing in ker q = im j
            Matrix correction = m.j * gen::matrix(g, m.u_slot_dim(), m.lie_f, -2, 2);
            Matrix sigma2 = parts.sigma + correction;
            REQUIRE(m.q * sigma2 == Matrix::identity(m.lie_f));
            Matrix gamma2 =
                build_gamma({m.etale, m.lie_f, m.du_times}, m.j, m.q, sigma2, parts.s_lift);
            Matrix jt = m.j.transpose();
            Matrix jplus = inverse(jt * m.j) * jt;
            Matrix expected_diff =
                m.etale.fil0().inclusion() * jplus * (sigma2 - parts.sigma) * m.q;
            REQUIRE(m.gamma - gamma2 == expected_diff);
            // both gammas restrict to the same Fil^0 inclusion through j
            REQUIRE(m.gamma * m.j == gamma2 * m.j);
        }
    }
}

TEST_CASE("assemble and disassemble are mutually inverse") {
    auto places = gen::default_places();
    gen::Rng g(19);
    SECTION("round-trip equality on random instances") {
        for (int it = 0; it < 30; ++it) {
            LinearizedLaumonMotive m = gen::random_motive(g, places);
            auto [times, row] = disassemble(m);
            LinearizedLaumonMotive back = assemble(times, row);
            REQUIRE(back.etale.encode() == m.etale.encode());
            REQUIRE(back.du_times == m.du_times);
            REQUIRE(back.j == m.j);
            REQUIRE(back.q == m.q);
            REQUIRE(back.alpha == m.alpha);
            REQUIRE(back.gamma == m.gamma);
        }
    }
    SECTION("with no vector part the times data carries everything") {
        LinearizedLaumonMotive m = gen::random_motive(g, places);
        while (m.v_dim != 0)
            m = gen::random_motive(g, places);
        auto [times, row] = disassemble(m);
        REQUIRE(row.v_dim == 0);
        REQUIRE(row.alpha.rows == 0);
    }
    SECTION("zero motive") {
        LinearizedLaumonMotive z;
        z.etale.weight.kind = FiltrationKind::increasing;
        z.etale.hodge.kind = FiltrationKind::decreasing;
        z.du_times = Matrix(0, 0);
        z.j = Matrix(0, 0);
        z.q = Matrix(0, 0);
        z.alpha = Matrix(0, 0);
        z.gamma = Matrix(0, 0);
        REQUIRE(z.valid());
        auto [times, row] = disassemble(z);
        REQUIRE(assemble(times, row).valid());
    }
    SECTION("invariant violations are rejected") {
        // explicit unit-block motive: gamma j = Fil^0 inclusion pins gamma(0,0)
        OgusObject unit = gen::unit_block(places);
        LinearizedLaumonMotive m;
        m.etale = unit;
        m.lie_f = 1;
        m.du_times = Matrix(0, 1);
        m.v_dim = 0;
        m.u_m = 2;
        m.j = Matrix{{1}, {0}};
        m.q = Matrix{{0, 1}};
        m.alpha = Matrix(0, 2);
        m.gamma = Matrix{{1, 5}};
        auto [times, row] = disassemble(m);
        row.gamma = Matrix{{2, 5}};
        REQUIRE_THROWS_AS(assemble(times, row), std::invalid_argument);
    }
}

TEST_CASE("hom spaces of motives") {
    auto places = gen::default_places();
    SECTION("identity is a solution") {
        gen::Rng g(23);
        for (int it = 0; it < 10; ++it) {
            LinearizedLaumonMotive m = gen::random_motive(g, places);
            MotiveMorphism id{Matrix::identity(m.etale.t_dr), Matrix::identity(m.u_m),
                              Matrix::identity(m.v_dim), Matrix::identity(m.lie_f),
                              Matrix::identity(m.lie_g_dim())};
            Matrix flat = gen::flatten_motive_morphism(m, m, id);
            Subspace sol = hom_motives_solution_space(m, m);
            if (flat.rows > 0)
                REQUIRE(sol.contains(flat));
        }
    }
    SECTION("Deligne-type instances reduce to the etale hom space") {
        gen::Rng g(29);
        for (int it = 0; it < 10; ++it) {
            LinearizedLaumonMotive a = gen::deligne_motive(g, places);
            LinearizedLaumonMotive b = gen::deligne_motive(g, places);
            REQUIRE(hom_motives(a, b).size() == ogus_hom_basis(a.etale, b.etale).size());
        }
    }
    SECTION("hom dimensions match the fibre-product presentation") {
        gen::Rng g(31);
        for (int it = 0; it < 12; ++it) {
            LinearizedLaumonMotive a = gen::random_motive(g, places);
            LinearizedLaumonMotive b = gen::random_motive(g, places);
            FibrePresentation pa = fibre_presentation(a);
            FibrePresentation pb = fibre_presentation(b);
            REQUIRE(pa.object.valid());
            REQUIRE(pb.object.valid());
            long fibre_dim = hom_solution_space(pa.object, pb.object).dim();
            REQUIRE(static_cast<long>(hom_motives(a, b).size()) == fibre_dim);
        }
    }
    SECTION("the etale, lie and vector components determine the map on U(M)") {
        gen::Rng g(37);
        for (int it = 0; it < 12; ++it) {
            LinearizedLaumonMotive a = gen::random_motive(g, places);
            LinearizedLaumonMotive b = gen::random_motive(g, places);
            Subspace sol = hom_motives_solution_space(a, b);
            // forget the blocks determined by the others: on_u and on_lie_g
            BlockLayout layout;
            layout.add("t", b.etale.t_dr, a.etale.t_dr);
            layout.add("u", b.u_m, a.u_m);
            layout.add("v", b.v_dim, a.v_dim);
            layout.add("f", b.lie_f, a.lie_f);
            layout.add("g", b.lie_g_dim(), a.lie_g_dim());
            std::vector<long> keep;
            for (long c = 0; c < layout.total; ++c) {
                bool in_u = c >= layout.offset[1] && c < layout.offset[1] + layout.rows[1] * layout.cols[1];
                bool in_g = c >= layout.offset[4];
                if (!in_u && !in_g)
                    keep.push_back(c);
            }
            Matrix projected = sol.basis.select_cols(keep);
            REQUIRE(rank(projected) == sol.dim());
        }
    }
}

TEST_CASE("fibre presentation structure") {
    auto places = gen::default_places();
    SECTION("zero motive presents as the zero diagram") {
        LinearizedLaumonMotive z;
        z.etale.weight.kind = FiltrationKind::increasing;
        z.etale.hodge.kind = FiltrationKind::decreasing;
        z.etale.frobenii.push_back({places[0], Matrix(0, 0), false});
        z.etale.frobenii.push_back({places[1], Matrix(0, 0), false});
        z.du_times = Matrix(0, 0);
        z.j = Matrix(0, 0);
        z.q = Matrix(0, 0);
        z.alpha = Matrix(0, 0);
        z.gamma = Matrix(0, 0);
        FibrePresentation p = fibre_presentation(z);
        REQUIRE(p.object.valid());
        for (const auto& [v, d] : p.object.dims)
            REQUIRE(d == 0);
    }
    SECTION("the pure vector motive concentrates in the alpha target") {
        LinearizedLaumonMotive m;
        m.etale.weight.kind = FiltrationKind::increasing;
        m.etale.hodge.kind = FiltrationKind::decreasing;
        m.etale.frobenii.push_back({places[0], Matrix(0, 0), false});
        m.etale.frobenii.push_back({places[1], Matrix(0, 0), false});
        m.v_dim = 1;
        m.du_times = Matrix(0, 0);
        m.j = Matrix(0, 0);
        m.q = Matrix(0, 0);
        m.alpha = Matrix(1, 0);
        m.gamma = Matrix(0, 0);
        REQUIRE(m.valid());
        FibrePresentation p = fibre_presentation(m);
        REQUIRE(p.object.valid());
        for (const auto& [v, d] : p.object.dims) {
            if (v == "y:Y1")
                REQUIRE(d == 1);
            else
                REQUIRE(d == 0);
        }
    }
    SECTION("stage shapes carry the designated vertices") {
        gen::Rng g(41);
        LinearizedLaumonMotive m = gen::random_motive(g, places);
        FibrePresentation p = fibre_presentation(m);
        REQUIRE(p.stage1.combined.has_vertex("x:T"));
        REQUIRE(p.stage1.combined.has_vertex("x:T.quot.fil0"));
        REQUIRE(p.enriched_shape.has_vertex("UM"));
        REQUIRE(p.stage2.combined.has_vertex("x:UM"));
        REQUIRE(p.object.dim("x:UM") == m.u_m);
        REQUIRE(p.object.dim("y:Y1") == m.v_dim);
    }
}
