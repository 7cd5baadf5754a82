#include "ogus/hom_system.hpp"
#include "ogus/ogus_object.hpp"

#include "support/ogus_helpers.hpp"

#include <catch_amalgamated.hpp>

using namespace ogus;

TEST_CASE("validation of Ogus objects") {
    SECTION("the zero object is valid and of level <= 1") {
        OgusObject z;
        z.weight.kind = FiltrationKind::increasing;
        z.hodge.kind = FiltrationKind::decreasing;
        REQUIRE(validate(z).ok());
        REQUIRE(is_level_le_1(z));
    }
    SECTION("the Tate model is valid at both places") {
        OgusObject o = gen::tate_block(gen::default_places());
        auto rep = validate(o);
        REQUIRE(rep.ok());
        REQUIRE(!rep.undetermined);
        REQUIRE(is_level_le_1(o));
    }
    SECTION("flipping phi to p fails exactly the admissibility clause") {
        OgusObject o = gen::tate_block(gen::default_places());
        o.frobenii[0].phi.at(0, 0) = 2; // v2 carries phi = p now
        auto rep = validate(o);
        REQUIRE(!rep.ok());
        REQUIRE(rep.issues.size() == 1);
        REQUIRE(rep.issues[0].clause == "admissibility");
        REQUIRE(rep.issues[0].where == "v2");
    }
    SECTION("non-stable weight steps are structural failures") {
        OgusObject o = gen::abelian_block(gen::default_places());
        o.weight.steps[0].second = Subspace::span(2, Matrix{{1, 0}}); // not phi-stable
        auto rep = validate(o);
        REQUIRE(!rep.ok());
        bool found = false;
        for (const auto& i : rep.issues)
            found = found || i.detail.find("weight step") != std::string::npos;
        REQUIRE(found);
    }
    SECTION("exempt places are not checked for admissibility") {
        OgusObject o = gen::tate_block(gen::default_places());
        o.frobenii[0].phi.at(0, 0) = 2;
        o.frobenii[0].exempt = true;
        REQUIRE(validate(o).ok());
    }
}

TEST_CASE("level <= 1 predicate") {
    REQUIRE(gen::tate_block(gen::default_places()).t_dr == 1);
    REQUIRE(is_level_le_1(gen::tate_block(gen::default_places())));
    REQUIRE(is_level_le_1(gen::unit_block(gen::default_places())));
    OgusObject bad = gen::unit_block(gen::default_places());
    bad.hodge.steps.clear();
    bad.hodge.steps.emplace_back(2, Subspace::full(1)); // Fil^2 != 0
    bad.hodge.steps.emplace_back(3, Subspace::zero(1));
    REQUIRE(!is_level_le_1(bad));
}

TEST_CASE("kernels and cokernels of Ogus morphisms") {
    auto places = gen::default_places();
    SECTION("kernel of identity is the zero object") {
        OgusObject o = gen::tate_block(places);
        auto k = kernel(OgusMorphism::identity(o));
        REQUIRE(k.object.t_dr == 0);
        REQUIRE(k.object_report.ok());
    }
    SECTION("cokernel of the zero morphism is the target") {
        OgusObject o = gen::abelian_block(places);
        auto c = cokernel(OgusMorphism{o, o, Matrix(2, 2)});
        REQUIRE(c.object.t_dr == o.t_dr);
        REQUIRE(c.object.hodge.at(0) == o.hodge.at(0));
        for (size_t i = 0; i < o.frobenii.size(); ++i)
            REQUIRE(c.object.frobenii[i].phi == o.frobenii[i].phi);
    }
    SECTION("invalid morphisms are rejected") {
        OgusObject tate = gen::tate_block(places), unit = gen::unit_block(places);
        Matrix cross(1, 1);
        cross.at(0, 0) = 1; // weights differ, so this cannot be a morphism
        REQUIRE_THROWS_AS(kernel(OgusMorphism{tate, unit, cross}), std::invalid_argument);
        REQUIRE_THROWS_AS(cokernel(OgusMorphism{tate, unit, cross}), std::invalid_argument);
    }
    SECTION("kernel of the projection off a direct summand recovers the summand") {
        OgusObject tate = gen::tate_block(places), unit = gen::unit_block(places);
        OgusObject sum = direct_sum(tate, unit);
        Matrix proj(1, 2);
        proj.at(0, 0) = 1; // kill the unit summand
        OgusMorphism m{sum, tate, proj};
        REQUIRE(m.check().ok());
        auto k = kernel(m);
        REQUIRE(k.object.t_dr == 1);
        REQUIRE(k.object_report.ok());
        // the kernel is the unit object: weight 0, Fil^0 everything, phi = 1
        REQUIRE(k.object.weight.at(-1).is_zero());
        REQUIRE(k.object.weight.at(0).is_full());
        REQUIRE(k.object.hodge.at(0).is_full());
        for (const auto& f : k.object.frobenii)
            REQUIRE(f.phi == Matrix::identity(1));
    }
    SECTION("image and coimage are canonically isomorphic") {
        gen::Rng g(83);
        int done = 0;
        while (done < 15) {
            OgusObject a = gen::random_level1_object(g, places);
            OgusObject b = gen::random_level1_object(g, places);
            OgusMorphism m = gen::random_ogus_morphism(g, a, b);
            auto k = kernel(m);
            auto c = cokernel(m);
            OgusCokernelResult coim = cokernel(k.inclusion);
            OgusKernelResult im = kernel(c.projection);
            REQUIRE(coim.object.t_dr == im.object.t_dr);
            // induced map coim -> im in their coordinates
            Matrix induced =
                pivot_selector(im.subspace) * m.matrix * quotient_section(k.subspace);
            REQUIRE(is_invertible(induced));
            OgusMorphism canonical{coim.object, im.object, induced};
            REQUIRE(canonical.check().ok());
            ++done;
        }
    }
    SECTION("kernel data agrees with the forgetful filtered-phi computation") {
        gen::Rng g(89);
        OgusObject a = gen::random_level1_object(g, places, 3, false);
        OgusObject b = gen::random_level1_object(g, places, 3, false);
        OgusMorphism m = gen::random_ogus_morphism(g, a, b);
        auto k = kernel(m);
        Subspace ks = Subspace::span(a.t_dr, kernel_basis(m.matrix));
        REQUIRE(k.subspace == ks);
        REQUIRE(k.object.hodge.steps.size() == a.hodge.steps.size());
        for (size_t i = 0; i < a.hodge.steps.size(); ++i) {
            REQUIRE(k.object.hodge.steps[i].second ==
                    in_coordinates(intersect(a.hodge.steps[i].second, ks), ks));
        }
        for (size_t i = 0; i < a.frobenii.size(); ++i)
            REQUIRE(k.object.frobenii[i].phi == restrict_map(a.frobenii[i].phi, ks, ks));
    }
}

TEST_CASE("strictness audits") {
    auto places = gen::default_places();
    SECTION("identity and summand projections are strict for both filtrations") {
        OgusObject sum = direct_sum(gen::tate_block(places), gen::unit_block(places));
        auto a1 = strictness_audit(OgusMorphism::identity(sum));
        REQUIRE(a1.weight_strict);
        REQUIRE(a1.hodge_strict);
        Matrix proj(1, 2);
        proj.at(0, 0) = 1;
        auto a2 = strictness_audit(OgusMorphism{sum, gen::tate_block(places), proj});
        REQUIRE(a2.weight_strict);
        REQUIRE(a2.hodge_strict);
    }
    SECTION("valid morphisms between admissible objects never fail the hodge audit") {
        gen::Rng g(97);
        int checked = 0;
        while (checked < 60) {
            OgusObject a = gen::random_level1_object(g, places);
            OgusObject b = gen::random_level1_object(g, places);
            OgusMorphism m = gen::random_ogus_morphism(g, a, b);
            auto audit = strictness_audit(m);
            REQUIRE(audit.weight_strict);
            REQUIRE(audit.hodge_strict);
            ++checked;
        }
    }
    SECTION("the frobenius-free control group produces a detected non-strict map") {
        // line with Fil^0 = 0 included into the Fil^0 axis of a plane
        OgusObject src, tgt;
        src.t_dr = 1;
        src.weight.kind = FiltrationKind::increasing;
        src.weight.ambient = 1;
        src.hodge.kind = FiltrationKind::decreasing;
        src.hodge.ambient = 1;
        src.hodge.steps.emplace_back(0, Subspace::zero(1));
        tgt.t_dr = 2;
        tgt.weight.kind = FiltrationKind::increasing;
        tgt.weight.ambient = 2;
        tgt.hodge.kind = FiltrationKind::decreasing;
        tgt.hodge.ambient = 2;
        tgt.hodge.steps.emplace_back(0, Subspace::span(2, Matrix{{1, 0}}));
        tgt.hodge.steps.emplace_back(1, Subspace::zero(2));
        REQUIRE(validate(src).ok());
        REQUIRE(validate(tgt).ok());
        Matrix into_fil(2, 1);
        into_fil.at(0, 0) = 1;
        OgusMorphism bad{src, tgt, into_fil};
        REQUIRE(bad.check().ok());
        auto audit = strictness_audit(bad);
        REQUIRE(!audit.hodge_strict);
        REQUIRE(audit.weight_strict);
    }
}

TEST_CASE("hom bases of Ogus objects") {
    auto places = gen::default_places();
    gen::Rng g(103);
    SECTION("identity is always present") {
        for (int it = 0; it < 10; ++it) {
            OgusObject a = gen::random_level1_object(g, places);
            bool found = false;
            for (const auto& u : ogus_hom_basis(a, a))
                if (u == Matrix::identity(a.t_dr))
                    found = true;
            // the identity lies in the span; check membership instead of
            // literal basis presence
            Matrix sys = ogus_hom_system(a, a);
            Matrix id_flat(a.t_dr * a.t_dr, 1);
            for (long i = 0; i < a.t_dr; ++i)
                id_flat.at(i * a.t_dr + i, 0) = 1;
            if (a.t_dr > 0)
                REQUIRE(Subspace::span(a.t_dr * a.t_dr, kernel_basis(sys)).contains(id_flat));
            (void)found;
        }
    }
    SECTION("morphisms between different weights vanish") {
        OgusObject tate = gen::tate_block(places), unit = gen::unit_block(places);
        REQUIRE(ogus_hom_basis(tate, unit).empty());
        REQUIRE(ogus_hom_basis(unit, tate).empty());
        REQUIRE(ogus_hom_basis(unit, unit).size() == 1);
    }
}
