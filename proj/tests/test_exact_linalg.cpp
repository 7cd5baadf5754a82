#include "ogus/linear_map.hpp"
#include "ogus/spectrum.hpp"

#include "support/generators.hpp"

#include <catch_amalgamated.hpp>

using namespace ogus;

namespace {

// Laplace-expansion determinant, independent of the elimination path
// used by the library.
Rational det_by_minors(const Matrix& m) {
    if (m.rows == 0)
        return 1;
    if (m.rows == 1)
        return m.at(0, 0);
    Rational d = 0;
    for (long j = 0; j < m.cols; ++j) {
        if (m.at(0, j) == 0)
            continue;
        Matrix minor(m.rows - 1, m.cols - 1);
        for (long i = 1; i < m.rows; ++i)
            for (long c = 0, k = 0; c < m.cols; ++c)
                if (c != j)
                    minor.at(i - 1, k++) = m.at(i, c);
        Rational term = m.at(0, j) * det_by_minors(minor);
        d += (j % 2 == 0) ? term : -term;
    }
    return d;
}

} // namespace

TEST_CASE("rref canonical forms") {
    SECTION("proportional rows collapse") {
        auto r = rref(Matrix{{2, 4}, {1, 2}});
        REQUIRE(r.rank == 1);
        REQUIRE(r.mat == Matrix{{1, 2}, {0, 0}});
    }
    SECTION("identity is fixed") {
        auto r = rref(Matrix::identity(3));
        REQUIRE(r.rank == 3);
        REQUIRE(r.mat == Matrix::identity(3));
    }
    SECTION("classic rank-2 matrix, checked against a minors oracle") {
        Matrix m{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
        REQUIRE(det_by_minors(m) == 0);
        // a nonzero 2x2 minor exists, so the rank is exactly 2
        REQUIRE(det_by_minors(Matrix{{1, 2}, {4, 5}}) != 0);
        REQUIRE(rref(m).rank == 2);
    }
    SECTION("idempotent and basis independent") {
        gen::Rng g(7);
        for (int it = 0; it < 30; ++it) {
            Matrix m = gen::matrix(g, 3, 5);
            auto r1 = rref(m);
            auto r2 = rref(r1.mat);
            REQUIRE(r1.mat == r2.mat);
            REQUIRE(r1.rank == r2.rank);
            Matrix change = gen::invertible(g, 3);
            REQUIRE(rref(change * m).mat == r1.mat);
        }
    }
}

TEST_CASE("determinant and inverse agree with the minors oracle") {
    gen::Rng g(11);
    for (int it = 0; it < 25; ++it) {
        Matrix m = gen::matrix(g, 3, 3);
        Rational d = det(m);
        REQUIRE(d == det_by_minors(m));
        auto inv = try_inverse(m);
        REQUIRE(inv.has_value() == (d != 0));
        if (inv)
            REQUIRE(*inv * m == Matrix::identity(3));
    }
    REQUIRE(det(Matrix(0, 0)) == 1);
}

TEST_CASE("kernel") {
    SECTION("zero map has full kernel") {
        LinearMap z(2, 1, Matrix(1, 2));
        REQUIRE(kernel(z) == Subspace::full(2));
    }
    SECTION("identity has zero kernel") {
        REQUIRE(kernel(LinearMap::identity(3)) == Subspace::zero(3));
    }
    SECTION("sum functional") {
        LinearMap f(2, 1, Matrix{{1, 1}});
        Subspace k = kernel(f);
        REQUIRE(k.dim() == 1);
        REQUIRE(k == Subspace::span(2, Matrix{{1, -1}}));
    }
    SECTION("rank-nullity on random maps") {
        gen::Rng g(3);
        for (int it = 0; it < 40; ++it) {
            long dom = 1 + g() % 5, cod = 1 + g() % 4;
            Matrix m = gen::matrix(g, cod, dom);
            REQUIRE(kernel(LinearMap(dom, cod, m)).dim() + rank(m) == dom);
        }
    }
}

TEST_CASE("subspace arithmetic") {
    gen::Rng g(5);
    SECTION("modular dimension law") {
        for (int it = 0; it < 30; ++it) {
            Subspace u = gen::subspace(g, 5, 1 + g() % 4);
            Subspace w = gen::subspace(g, 5, 1 + g() % 4);
            REQUIRE((u + w).dim() + intersect(u, w).dim() == u.dim() + w.dim());
            REQUIRE((u + w).contains(u));
            REQUIRE(u.contains(intersect(u, w)));
        }
    }
    SECTION("quotient map: section and kernel") {
        for (int it = 0; it < 30; ++it) {
            Subspace s = gen::subspace(g, 4, g() % 4);
            Matrix q = quotient_map(s);
            Matrix e = quotient_section(s);
            REQUIRE(q * e == Matrix::identity(4 - s.dim()));
            REQUIRE(Subspace::span(4, kernel_basis(q)) == s);
        }
    }
}

TEST_CASE("pullback") {
    SECTION("diagonal") {
        auto p = pullback(LinearMap::identity(1), LinearMap::identity(1));
        REQUIRE(p.space == Subspace::span(2, Matrix{{1, 1}}));
    }
    SECTION("terminal codomain gives the product") {
        auto p = pullback(LinearMap(2, 0, Matrix(0, 2)), LinearMap(1, 0, Matrix(0, 1)));
        REQUIRE(p.space == Subspace::full(3));
    }
    SECTION("explicit fibre") {
        auto p = pullback(LinearMap(2, 1, Matrix{{1, 0}}), LinearMap(1, 1, Matrix{{2}}));
        REQUIRE(p.space.dim() == 2);
        Matrix v(3, 1);
        v.at(0, 0) = 2;
        v.at(2, 0) = 1; // (2t, s, t) with t = 1, s = 0
        REQUIRE(p.space.contains(v));
        Matrix w(3, 1);
        w.at(1, 0) = 1;
        REQUIRE(p.space.contains(w));
    }
    SECTION("universal property on random instances") {
        gen::Rng g(23);
        for (int it = 0; it < 25; ++it) {
            long za = 1 + g() % 3, zb = 1 + g() % 3, zc = 1 + g() % 2, zw = 1 + g() % 3;
            LinearMap f(za, zc, gen::matrix(g, zc, za));
            LinearMap h(zb, zc, gen::matrix(g, zc, zb));
            auto p = pullback(f, h);
            // commuting test pair produced from a map into the pullback
            LinearMap w(zw, p.space.dim(), gen::matrix(g, p.space.dim(), zw));
            LinearMap u = compose(p.proj_left, w);
            LinearMap v = compose(p.proj_right, w);
            REQUIRE(compose(f, u).matrix == compose(h, v).matrix);
            LinearMap w2 = pullback_factor(p, u, v);
            REQUIRE(w2.matrix == w.matrix);
        }
    }
}

TEST_CASE("pushout") {
    SECTION("two zero maps from Q") {
        auto p = pushout(LinearMap(1, 1, Matrix(1, 1)), LinearMap(1, 1, Matrix(1, 1)));
        REQUIRE(p.dim == 2);
    }
    SECTION("cokernel of the identity vanishes") {
        auto p = pushout(LinearMap::identity(1), LinearMap(1, 0, Matrix(0, 1)));
        REQUIRE(p.dim == 0);
    }
    SECTION("axis inclusion against identity") {
        Matrix incl(2, 1);
        incl.at(0, 0) = 1;
        auto p = pushout(LinearMap(1, 2, incl), LinearMap::identity(1));
        REQUIRE(p.dim == 2);
        REQUIRE(compose(p.inj_left, LinearMap(1, 2, incl)).matrix ==
                compose(p.inj_right, LinearMap::identity(1)).matrix);
    }
    SECTION("dimension duality with the pullback") {
        gen::Rng g(29);
        for (int it = 0; it < 25; ++it) {
            long za = 1 + g() % 3, zb = 1 + g() % 3, zc = 1 + g() % 3;
            Matrix fm = gen::matrix(g, zc, za), gm = gen::matrix(g, zc, zb);
            auto p = pullback(LinearMap(za, zc, fm), LinearMap(zb, zc, gm));
            REQUIRE(p.space.dim() + rank(hstack(fm, -gm)) == za + zb);
            Matrix xa = gen::matrix(g, za, zc), xb = gen::matrix(g, zb, zc);
            auto q = pushout(LinearMap(zc, za, xa), LinearMap(zc, zb, xb));
            REQUIRE(q.dim == za + zb - rank(vstack(xa, -xb)));
        }
    }
}

TEST_CASE("p-adic valuations") {
    REQUIRE(padic_valuation(Rational(12), 2) == 2);
    REQUIRE(padic_valuation(Rational(1, 9), 3) == -2);
    REQUIRE(padic_valuation(Rational(50, 7), 5) == 2);
    REQUIRE(!padic_valuation(Rational(0), 5).has_value());
    REQUIRE_THROWS_AS(padic_valuation(Rational(1), 4), std::invalid_argument);

    gen::Rng g(41);
    for (int p : {2, 3, 5, 7}) {
        for (int it = 0; it < 100; ++it) {
            Rational a = gen::rat(g, -20, 20, 12), b = gen::rat(g, -20, 20, 12);
            if (a == 0 || b == 0)
                continue;
            auto va = *padic_valuation(a, p), vb = *padic_valuation(b, p);
            REQUIRE(*padic_valuation(a * b, p) == va + vb);
            if (a + b != 0)
                REQUIRE(*padic_valuation(a + b, p) >= std::min(va, vb));
        }
    }
}

TEST_CASE("rational spectra") {
    SECTION("split diagonal") {
        auto s = rational_spectrum(Matrix{{2, 0}, {0, 3}});
        REQUIRE(s.is_complete);
        REQUIRE(s.eigenvalues.size() == 2);
        REQUIRE(s.eigenvalues[0] == std::pair<Rational, long>{2, 1});
        REQUIRE(s.eigenvalues[1] == std::pair<Rational, long>{3, 1});
    }
    SECTION("rotation has no rational eigenvalues") {
        auto s = rational_spectrum(Matrix{{0, -1}, {1, 0}});
        REQUIRE(s.eigenvalues.empty());
        REQUIRE(!s.is_complete);
    }
    SECTION("jordan block") {
        auto s = rational_spectrum(Matrix{{2, 1}, {0, 2}});
        REQUIRE(s.is_complete);
        REQUIRE(s.eigenvalues.size() == 1);
        REQUIRE(s.eigenvalues[0] == std::pair<Rational, long>{2, 2});
    }
    SECTION("char poly evaluates to zero exactly at eigenvalues") {
        gen::Rng g(59);
        for (int it = 0; it < 20; ++it) {
            Matrix m = gen::matrix(g, 3, 3, -3, 3);
            auto poly = char_poly(m);
            auto spec = rational_spectrum(m);
            for (const auto& [lam, mult] : spec.eigenvalues) {
                REQUIRE(eval_poly(poly, lam) == 0);
                REQUIRE(eigenspace(m, lam).dim() >= 1);
                REQUIRE(eigenspace(m, lam).dim() <= mult);
            }
        }
    }
    SECTION("fractional eigenvalues are found") {
        Matrix m{{Rational(1, 2), 0}, {0, Rational(-3, 4)}};
        auto s = rational_spectrum(m);
        REQUIRE(s.is_complete);
        REQUIRE(s.eigenvalues[0].first == Rational(-3, 4));
        REQUIRE(s.eigenvalues[1].first == Rational(1, 2));
    }
    SECTION("non-square input is rejected") {
        REQUIRE_THROWS_AS(rational_spectrum(Matrix(2, 3)), std::invalid_argument);
        REQUIRE_THROWS_AS(char_poly(Matrix(1, 2)), std::invalid_argument);
    }
}
