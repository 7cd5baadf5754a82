// The realisation-target category: level <= 1 Ogus objects enriched
// with two auxiliary map objects (alpha, beta), the identification
// delta of B_1 with T/Fil^0, and the corner maps gamma, epsilon whose
// square against the Fil^0 quotient must be cartesian. Includes the
// full embedding of plain level <= 1 objects, the assembly T^a from a
// linearized Laumon motive, morphism spaces, the sharp-de-Rham
// comparison, and partial componentwise kernels/cokernels.
#pragma once

#include "ogus/laumon.hpp"

namespace ogus {

struct MFOgAObject {
    OgusObject base; // level <= 1
    long a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    Matrix alpha;   // a1 x a0
    Matrix beta;    // b1 x b0
    Matrix delta;   // lie_g x b1, invertible
    Matrix gamma;   // t_dr x a0
    Matrix epsilon; // b0 x a0

    std::vector<std::string> check() const {
        std::vector<std::string> bad = base.check();
        if (!is_level_le_1(base))
            bad.push_back("base is not of level <= 1");
        long t = base.t_dr, lg = base.lie_dim();
        if (alpha.rows != a1 || alpha.cols != a0)
            bad.push_back("alpha shape mismatch");
        if (beta.rows != b1 || beta.cols != b0)
            bad.push_back("beta shape mismatch");
        if (delta.rows != lg || delta.cols != b1)
            bad.push_back("delta shape mismatch");
        if (gamma.rows != t || gamma.cols != a0)
            bad.push_back("gamma shape mismatch");
        if (epsilon.rows != b0 || epsilon.cols != a0)
            bad.push_back("epsilon shape mismatch");
        if (!bad.empty())
            return bad;
        if (b1 != lg || !is_invertible(delta))
            bad.push_back("delta is not an isomorphism onto T/Fil^0");
        Matrix pi = base.fil0_quotient();
        if (!(pi * gamma == delta * beta * epsilon))
            bad.push_back("square does not commute: pi gamma != delta beta epsilon");
        else {
            // cartesian: (gamma, epsilon) is an isomorphism onto the
            // pullback of pi and delta beta
            PullbackResult pb = pullback(LinearMap(t, lg, pi), LinearMap(b0, lg, delta * beta));
            Matrix stacked = vstack(gamma, epsilon);
            if (rank(stacked) != a0 || pb.space.dim() != a0)
                bad.push_back("square is not cartesian: A_0 -> pullback(pi, delta beta) is not an isomorphism");
            else {
                // explicit consequence: ker(epsilon) maps isomorphically
                // onto Fil^0 under gamma
                Subspace ke = Subspace::span(a0, kernel_basis(epsilon));
                if (!(image_of(gamma, ke) == base.fil0()) ||
                    rank(gamma * ke.inclusion()) != ke.dim())
                    bad.push_back("ker(epsilon) does not map isomorphically onto Fil^0");
            }
        }
        return bad;
    }
    bool valid() const { return check().empty(); }
};

inline ValidationReport validate_a(const MFOgAObject& o, const FalsificationOptions& opt = {}) {
    ValidationReport rep;
    for (auto m : o.check())
        rep.fail("structure", "", m);
    if (rep.ok()) {
        ValidationReport base_rep = validate(o.base, opt);
        for (auto& i : base_rep.issues)
            rep.issues.push_back(i);
        for (auto& w : base_rep.warnings)
            rep.warnings.push_back(w);
        rep.undetermined = base_rep.undetermined;
    }
    return rep;
}

// (T, Fil) |-> (T, Fil, Fil^0 -> 0, 0 -> T/Fil^0); the full embedding.
inline MFOgAObject embed_level1(const OgusObject& o) {
    if (!is_level_le_1(o))
        throw std::invalid_argument("embed_level1: object is not of level <= 1");
    MFOgAObject e;
    e.base = o;
    e.a0 = o.fil0().dim();
    e.a1 = 0;
    e.b0 = 0;
    e.b1 = o.lie_dim();
    e.alpha = Matrix(0, e.a0);
    e.beta = Matrix(e.b1, 0);
    e.delta = Matrix::identity(e.b1);
    e.gamma = o.fil0().inclusion();
    e.epsilon = Matrix(0, e.a0);
    return e;
}

// T^a: the motive data assembled into the cartesian-square object.
// Cartesianness is a theorem of the construction; its failure signals
// corrupt input and is thrown.
inline MFOgAObject t_a(const LinearizedLaumonMotive& m) {
    auto bad = m.check();
    if (!bad.empty())
        throw std::invalid_argument("t_a: invalid motive: " + bad.front());
    MFOgAObject o;
    o.base = m.etale;
    o.a0 = m.u_m;
    o.a1 = m.v_dim;
    o.b0 = m.lie_f;
    o.b1 = m.lie_g_dim();
    o.alpha = m.alpha;
    o.beta = m.du_times;
    o.delta = Matrix::identity(o.b1);
    o.gamma = m.gamma;
    o.epsilon = m.q;
    auto obad = o.check();
    if (!obad.empty())
        throw std::invalid_argument("t_a: assembled object invalid: " + obad.front());
    return o;
}

struct MFOgAMorphism {
    Matrix eta;   // t' x t
    Matrix on_a0; // a0' x a0
    Matrix on_a1;
    Matrix on_b0;
    Matrix on_b1;
};

inline ValidationReport check_morphism(const MFOgAObject& src, const MFOgAObject& tgt,
                                       const MFOgAMorphism& m) {
    ValidationReport rep = OgusMorphism{src.base, tgt.base, m.eta}.check();
    auto expect = [&rep](bool ok, const char* what) {
        if (!ok)
            rep.fail("intertwining", "", what);
    };
    expect(m.on_a1 * src.alpha == tgt.alpha * m.on_a0, "alpha not intertwined");
    expect(m.on_b1 * src.beta == tgt.beta * m.on_b0, "beta not intertwined");
    expect(m.on_b0 * src.epsilon == tgt.epsilon * m.on_a0, "epsilon not intertwined");
    expect(m.eta * src.gamma == tgt.gamma * m.on_a0, "gamma not intertwined");
    if (rep.ok()) {
        Matrix eta_bar = tgt.base.fil0_quotient() * m.eta * quotient_section(src.base.fil0());
        expect(tgt.delta * m.on_b1 == eta_bar * src.delta, "delta not intertwined");
    }
    return rep;
}

inline std::vector<MFOgAMorphism> hom_a(const MFOgAObject& o, const MFOgAObject& o2) {
    BlockLayout layout;
    layout.add("t", o2.base.t_dr, o.base.t_dr);
    layout.add("a0", o2.a0, o.a0);
    layout.add("a1", o2.a1, o.a1);
    layout.add("b0", o2.b0, o.b0);
    layout.add("b1", o2.b1, o.b1);
    ConstraintSystem cs(layout);
    cs.embed_rows("t", ogus_hom_system(o.base, o2.base));
    cs.add_square("a0", "a1", o.alpha, o2.alpha);
    cs.add_square("b0", "b1", o.beta, o2.beta);
    cs.add_square("a0", "b0", o.epsilon, o2.epsilon);
    cs.add_square("a0", "t", o.gamma, o2.gamma);
    {
        // delta' on_b1 = (induced eta on T/Fil^0) delta
        Matrix qp = o2.base.fil0_quotient();           // lie_g' x t'
        Matrix ed = quotient_section(o.base.fil0()) * o.delta; // t x b1
        long bb = layout.index_of("b1"), bt = layout.index_of("t");
        Matrix r(o2.base.lie_dim() * o.b1, layout.total);
        for (long i = 0; i < o2.base.lie_dim(); ++i)
            for (long j = 0; j < o.b1; ++j) {
                long row = i * o.b1 + j;
                for (long k = 0; k < o2.b1; ++k)
                    r.at(row, layout.pos(bb, k, j)) += o2.delta.at(i, k);
                for (long k2 = 0; k2 < o2.base.t_dr; ++k2)
                    for (long m3 = 0; m3 < o.base.t_dr; ++m3)
                        if (qp.at(i, k2) != 0 && ed.at(m3, j) != 0)
                            r.at(row, layout.pos(bt, k2, m3)) -= qp.at(i, k2) * ed.at(m3, j);
            }
        cs.add_rows(r);
    }
    Subspace sol = cs.solutions();
    std::vector<MFOgAMorphism> basis;
    for (long r = 0; r < sol.dim(); ++r) {
        auto blocks = cs.layout.unflatten(sol.basis.row(r).transpose());
        basis.push_back({blocks.at("t"), blocks.at("a0"), blocks.at("a1"), blocks.at("b0"),
                         blocks.at("b1")});
    }
    return basis;
}

struct SharpResult {
    long dim = 0;
    LinearMap leg_t;  // T -> S(o)
    LinearMap leg_a0; // A_0 -> S(o)
    LinearMap leg_a1; // A_1 -> S(o)
};

// S(o) = (T x^{Fil^0} A_0) x A_1: the pushout of Fil^0 -> T and
// Fil^0 -> A_0 (through ker(epsilon)), direct-summed with A_1.
inline SharpResult sharp_s(const MFOgAObject& o) {
    auto bad = o.check();
    if (!bad.empty())
        throw std::invalid_argument("sharp_s: invalid object: " + bad.front());
    long t = o.base.t_dr, s = o.base.fil0().dim();
    Matrix incl = o.base.fil0().inclusion(); // t x s
    // chi: Fil^0 -> A_0, the inverse of gamma restricted to ker(epsilon)
    Matrix stacked = vstack(o.gamma, o.epsilon); // (t + b0) x a0, injective
    Matrix st = stacked.transpose();
    Matrix left_inv = inverse(st * stacked) * st; // a0 x (t + b0)
    Matrix chi = left_inv * vstack(incl, Matrix(o.b0, s));
    if (!(o.gamma * chi == incl) || !(o.epsilon * chi).is_zero())
        throw std::logic_error("sharp_s: Fil^0 does not factor through ker(epsilon)");
    PushoutResult push = pushout(LinearMap(s, t, incl), LinearMap(s, o.a0, chi));
    SharpResult res;
    res.dim = push.dim + o.a1;
    res.leg_t = LinearMap(t, res.dim, vstack(push.inj_left.matrix, Matrix(o.a1, t)));
    res.leg_a0 = LinearMap(o.a0, res.dim, vstack(push.inj_right.matrix, Matrix(o.a1, o.a0)));
    Matrix ea1 = vstack(Matrix(push.dim, o.a1), Matrix::identity(o.a1));
    res.leg_a1 = LinearMap(o.a1, res.dim, ea1);
    return res;
}

// Componentwise kernel/cokernel candidates. The construction can fail
// to satisfy the cartesian invariant (or delta can fail to restrict);
// that outcome is reported as a structured failure, not an exception.
struct MFOgAPartialResult {
    std::optional<MFOgAObject> object;
    std::optional<MFOgAMorphism> structural; // inclusion resp. projection
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

inline MFOgAPartialResult kernel_a(const MFOgAObject& src, const MFOgAObject& tgt,
                                   const MFOgAMorphism& m) {
    auto mrep = check_morphism(src, tgt, m);
    if (!mrep.ok())
        throw std::invalid_argument("kernel_a: invalid morphism: " + mrep.issues.front().clause);
    MFOgAPartialResult res;
    OgusKernelResult base_k = kernel(OgusMorphism{src.base, tgt.base, m.eta});
    const Subspace& kt = base_k.subspace;
    Subspace ka0 = Subspace::span(src.a0, kernel_basis(m.on_a0));
    Subspace ka1 = Subspace::span(src.a1, kernel_basis(m.on_a1));
    Subspace kb0 = Subspace::span(src.b0, kernel_basis(m.on_b0));
    Subspace kb1 = Subspace::span(src.b1, kernel_basis(m.on_b1));

    MFOgAObject k;
    k.base = base_k.object;
    k.a0 = ka0.dim();
    k.a1 = ka1.dim();
    k.b0 = kb0.dim();
    k.b1 = kb1.dim();
    k.alpha = restrict_map(src.alpha, ka0, ka1);
    k.beta = restrict_map(src.beta, kb0, kb1);
    k.epsilon = restrict_map(src.epsilon, ka0, kb0);
    k.gamma = restrict_map(src.gamma, ka0, kt);

    // delta on the kernel: lift delta(x) into K_T modulo Fil^0
    Matrix sec = quotient_section(src.base.fil0()); // t x lie_g
    Matrix kf = hstack(kt.inclusion(), src.base.fil0().inclusion());
    Matrix q_fil_k = k.base.fil0_quotient();
    k.delta = Matrix(k.base.lie_dim(), kb1.dim());
    for (long c = 0; c < kb1.dim(); ++c) {
        Matrix x(src.b1, 1);
        for (long i = 0; i < src.b1; ++i)
            x.at(i, 0) = kb1.basis.at(c, i);
        Matrix t0 = sec * (src.delta * x);
        auto sol = solve(kf, t0);
        if (!sol) {
            res.failures.push_back("delta does not restrict to the kernel at column " + std::to_string(c));
            return res;
        }
        Matrix in_k(kt.dim(), 1);
        for (long i = 0; i < kt.dim(); ++i)
            in_k.at(i, 0) = sol->at(i, 0);
        Matrix qc = q_fil_k * in_k;
        for (long i = 0; i < k.base.lie_dim(); ++i)
            k.delta.at(i, c) = qc.at(i, 0);
    }

    auto bad = k.check();
    if (!bad.empty()) {
        res.failures = bad;
        return res;
    }
    res.object = k;
    res.structural = MFOgAMorphism{kt.inclusion(), ka0.inclusion(), ka1.inclusion(), kb0.inclusion(),
                                   kb1.inclusion()};
    return res;
}

inline MFOgAPartialResult cokernel_a(const MFOgAObject& src, const MFOgAObject& tgt,
                                     const MFOgAMorphism& m) {
    auto mrep = check_morphism(src, tgt, m);
    if (!mrep.ok())
        throw std::invalid_argument("cokernel_a: invalid morphism: " + mrep.issues.front().clause);
    MFOgAPartialResult res;
    OgusCokernelResult base_c = cokernel(OgusMorphism{src.base, tgt.base, m.eta});
    Subspace ia0 = Subspace::span(tgt.a0, m.on_a0.transpose());
    Subspace ia1 = Subspace::span(tgt.a1, m.on_a1.transpose());
    Subspace ib0 = Subspace::span(tgt.b0, m.on_b0.transpose());
    Subspace ib1 = Subspace::span(tgt.b1, m.on_b1.transpose());

    MFOgAObject c;
    c.base = base_c.object;
    c.a0 = tgt.a0 - ia0.dim();
    c.a1 = tgt.a1 - ia1.dim();
    c.b0 = tgt.b0 - ib0.dim();
    c.b1 = tgt.b1 - ib1.dim();
    c.alpha = quotient_induced(tgt.alpha, ia0, ia1);
    c.beta = quotient_induced(tgt.beta, ib0, ib1);
    c.epsilon = quotient_induced(tgt.epsilon, ia0, ib0);
    c.gamma = base_c.projection.matrix * tgt.gamma * quotient_section(ia0);
    c.delta = c.base.fil0_quotient() * base_c.projection.matrix * quotient_section(tgt.base.fil0()) *
              tgt.delta * quotient_section(ib1);

    auto bad = c.check();
    if (!bad.empty()) {
        res.failures = bad;
        return res;
    }
    res.object = c;
    res.structural = MFOgAMorphism{base_c.projection.matrix, quotient_map(ia0), quotient_map(ia1),
                                   quotient_map(ib0), quotient_map(ib1)};
    return res;
}

} // namespace ogus
