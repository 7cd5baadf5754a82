// The (M)FOg object model: a de Rham space with an increasing weight
// filtration, a decreasing Hodge filtration and a Frobenius at each
// labeled place, admissible at every non-exempt place. Kernels and
// cokernels carry induced data; strictness of morphisms is audited
// for both filtrations.
#pragma once

#include "ogus/filtered_phi.hpp"

#include <algorithm>

namespace ogus {

struct ValidationIssue {
    std::string clause;
    std::string where;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    std::vector<std::string> warnings;
    bool undetermined = false; // an admissibility check abstained

    bool ok() const { return issues.empty(); }
    void fail(std::string clause, std::string where, std::string detail) {
        issues.push_back({std::move(clause), std::move(where), std::move(detail)});
    }
};

struct OgusObject {
    long t_dr = 0;
    Filtration weight; // increasing
    Filtration hodge;  // decreasing
    std::vector<FrobeniusAt> frobenii;

    Subspace fil0() const { return hodge.at(0); }
    Matrix fil0_quotient() const { return quotient_map(fil0()); } // T -> T/Fil^0
    long lie_dim() const { return t_dr - fil0().dim(); }

    const FrobeniusAt* find_place(const std::string& label) const {
        for (const auto& f : frobenii)
            if (f.place.label == label)
                return &f;
        return nullptr;
    }

    FilteredPhiModule phi_module() const { return {t_dr, hodge, frobenii}; }

    // Structural invariants only; validate() adds the admissibility clause.
    std::vector<std::string> check() const {
        std::vector<std::string> bad;
        if (weight.kind != FiltrationKind::increasing)
            bad.push_back("weight filtration must be increasing");
        if (hodge.kind != FiltrationKind::decreasing)
            bad.push_back("hodge filtration must be decreasing");
        if (weight.ambient != t_dr || hodge.ambient != t_dr)
            bad.push_back("filtration ambient mismatch");
        for (auto m : weight.check())
            bad.push_back("weight: " + m);
        for (auto m : hodge.check())
            bad.push_back("hodge: " + m);
        FilteredPhiModule pm = phi_module();
        for (auto m : pm.check())
            bad.push_back(m);
        for (const auto& f : frobenii) {
            if (f.phi.rows != t_dr)
                continue; // already reported
            for (const auto& [i, s] : weight.steps)
                if (!s.contains(image_of(f.phi, s)))
                    bad.push_back("phi at " + f.place.label + " does not preserve weight step W_" +
                                  std::to_string(i));
        }
        return bad;
    }

    std::string encode() const {
        std::ostringstream os;
        os << "W:";
        for (const auto& [i, s] : weight.steps) {
            os << i << ":";
            for (const auto& e : s.basis.entries)
                os << to_string(e) << ",";
        }
        os << "|" << phi_module().encode();
        return os.str();
    }
};

inline ValidationReport validate(const OgusObject& o, const FalsificationOptions& opt = {}) {
    ValidationReport rep;
    for (auto m : o.check())
        rep.fail("structure", "", m);
    if (!rep.ok())
        return rep;
    FilteredPhiModule pm = o.phi_module();
    // per-place results are reported sorted by label
    std::vector<const FrobeniusAt*> ordered;
    for (const auto& f : o.frobenii)
        ordered.push_back(&f);
    std::sort(ordered.begin(), ordered.end(),
              [](const FrobeniusAt* a, const FrobeniusAt* b) { return a->place.label < b->place.label; });
    for (const FrobeniusAt* fp : ordered) {
        const FrobeniusAt& f = *fp;
        if (f.exempt)
            continue;
        AdmissibilityVerdict v = check_admissible(pm, f.place.label, opt);
        if (v.status == Admissibility::not_admissible)
            rep.fail("admissibility", f.place.label,
                     "t_H=" + std::to_string(v.t_h_total) + " t_N=" + std::to_string(v.t_n_total) + "; " +
                         v.detail);
        else if (v.status == Admissibility::undetermined) {
            rep.undetermined = true;
            rep.warnings.push_back("admissibility undetermined at " + f.place.label + ": " + v.detail);
        }
    }
    return rep;
}

// Level <= 1: Fil^1 = 0, Fil^{-1} = everything, weights within [-2, 0].
inline bool is_level_le_1(const OgusObject& o) {
    return o.hodge.at(1).is_zero() && o.hodge.at(-1).is_full() && o.weight.at(-3).is_zero() &&
           o.weight.at(0).is_full();
}

struct OgusMorphism {
    OgusObject source;
    OgusObject target;
    Matrix matrix;

    ValidationReport check() const {
        ValidationReport rep;
        if (matrix.rows != target.t_dr || matrix.cols != source.t_dr) {
            rep.fail("shape", "", "matrix shape mismatch");
            return rep;
        }
        if (!preserves_filtration(matrix, source.weight, target.weight))
            rep.fail("weight", "", "weight filtration not preserved");
        if (!preserves_filtration(matrix, source.hodge, target.hodge))
            rep.fail("hodge", "", "hodge filtration not preserved");
        bool sets_differ = false;
        for (const auto& fs : source.frobenii) {
            const FrobeniusAt* ft = target.find_place(fs.place.label);
            if (!ft) {
                sets_differ = true;
                continue;
            }
            if (ft->place.prime != fs.place.prime)
                rep.fail("places", fs.place.label, "same label, different primes");
            else if (!(matrix * fs.phi == ft->phi * matrix))
                rep.fail("frobenius", fs.place.label, "does not commute with phi");
        }
        for (const auto& ft : target.frobenii)
            if (!source.find_place(ft.place.label))
                sets_differ = true;
        if (sets_differ)
            rep.warnings.push_back("place sets differ; constraints apply on the shared places only");
        return rep;
    }
    bool valid() const { return check().ok(); }

    static OgusMorphism identity(const OgusObject& o) { return {o, o, Matrix::identity(o.t_dr)}; }
};

inline OgusMorphism compose(const OgusMorphism& g, const OgusMorphism& f) {
    return {f.source, g.target, g.matrix * f.matrix};
}

// Constraint rows over the unknowns u[i][j] (row-major, b.t_dr x a.t_dr)
// cutting out Hom(a, b): preservation of both filtrations at every jump
// index and commutation with the Frobenius at every shared place.
inline Matrix ogus_hom_system(const OgusObject& a, const OgusObject& b) {
    long un = b.t_dr * a.t_dr; // unknowns u[i][j], row-major
    Matrix sys(0, un);
    auto add_slot_rows = [&](const Subspace& sa, const Subspace& sb) {
        Matrix qb = quotient_map(sb);
        Matrix incl = sa.inclusion();
        Matrix rows(qb.rows * incl.cols, un);
        for (long qi = 0; qi < qb.rows; ++qi)
            for (long m = 0; m < incl.cols; ++m)
                for (long k = 0; k < b.t_dr; ++k)
                    for (long j = 0; j < a.t_dr; ++j)
                        if (qb.at(qi, k) != 0 && incl.at(j, m) != 0)
                            rows.at(qi * incl.cols + m, k * a.t_dr + j) += qb.at(qi, k) * incl.at(j, m);
        sys = vstack(sys, rows);
    };
    auto jump_union = [](const Filtration& fa, const Filtration& fb) {
        std::vector<long> idx;
        for (const auto& [i, s] : fa.steps)
            idx.push_back(i);
        for (const auto& [i, s] : fb.steps)
            idx.push_back(i);
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        return idx;
    };
    for (long i : jump_union(a.weight, b.weight))
        add_slot_rows(a.weight.at(i), b.weight.at(i));
    for (long i : jump_union(a.hodge, b.hodge))
        add_slot_rows(a.hodge.at(i), b.hodge.at(i));
    for (const auto& fa : a.frobenii) {
        const FrobeniusAt* fb = b.find_place(fa.place.label);
        if (!fb)
            continue;
        // u phi_a - phi_b u = 0
        Matrix rows(b.t_dr * a.t_dr, un);
        for (long i = 0; i < b.t_dr; ++i)
            for (long j = 0; j < a.t_dr; ++j) {
                long row = i * a.t_dr + j;
                for (long k = 0; k < a.t_dr; ++k)
                    rows.at(row, i * a.t_dr + k) += fa.phi.at(k, j);
                for (long k = 0; k < b.t_dr; ++k)
                    rows.at(row, k * a.t_dr + j) -= fb->phi.at(i, k);
            }
        sys = vstack(sys, rows);
    }
    return sys;
}

inline std::vector<Matrix> ogus_hom_basis(const OgusObject& a, const OgusObject& b) {
    Matrix null = kernel_basis(ogus_hom_system(a, b));
    std::vector<Matrix> basis;
    for (long r = 0; r < null.rows; ++r) {
        Matrix u(b.t_dr, a.t_dr);
        for (long i = 0; i < b.t_dr; ++i)
            for (long j = 0; j < a.t_dr; ++j)
                u.at(i, j) = null.at(r, i * a.t_dr + j);
        basis.push_back(std::move(u));
    }
    return basis;
}

struct OgusKernelResult {
    OgusObject object;
    OgusMorphism inclusion;
    Subspace subspace; // inside the source de Rham space
    ValidationReport object_report;
    std::vector<std::string> dropped_places; // source-only places where the kernel was not stable
};

inline OgusKernelResult kernel(const OgusMorphism& m, const FalsificationOptions& opt = {}) {
    auto rep = m.check();
    if (!rep.ok())
        throw std::invalid_argument("kernel: invalid morphism: " + rep.issues.front().clause);
    OgusKernelResult res;
    Subspace k = Subspace::span(m.source.t_dr, kernel_basis(m.matrix));
    res.subspace = k;
    res.object.t_dr = k.dim();
    res.object.weight = m.source.weight.induced_on(k);
    res.object.hodge = m.source.hodge.induced_on(k);
    for (const auto& f : m.source.frobenii) {
        if (!k.contains(image_of(f.phi, k))) {
            res.dropped_places.push_back(f.place.label);
            continue;
        }
        res.object.frobenii.push_back({f.place, restrict_map(f.phi, k, k), f.exempt});
    }
    res.inclusion = {res.object, m.source, k.inclusion()};
    res.object_report = validate(res.object, opt);
    return res;
}

struct OgusCokernelResult {
    OgusObject object;
    OgusMorphism projection;
    Subspace image_subspace; // inside the target de Rham space
    ValidationReport object_report;
    std::vector<std::string> dropped_places;
};

inline OgusCokernelResult cokernel(const OgusMorphism& m, const FalsificationOptions& opt = {}) {
    auto rep = m.check();
    if (!rep.ok())
        throw std::invalid_argument("cokernel: invalid morphism: " + rep.issues.front().clause);
    OgusCokernelResult res;
    Subspace img = Subspace::span(m.target.t_dr, m.matrix.transpose());
    res.image_subspace = img;
    Matrix q = quotient_map(img);
    res.object.t_dr = q.rows;
    res.object.weight = m.target.weight.mapped_by(q);
    res.object.hodge = m.target.hodge.mapped_by(q);
    for (const auto& f : m.target.frobenii) {
        if (!img.contains(image_of(f.phi, img))) {
            res.dropped_places.push_back(f.place.label);
            continue;
        }
        res.object.frobenii.push_back({f.place, quotient_induced(f.phi, img, img), f.exempt});
    }
    res.projection = {m.target, res.object, q};
    res.object_report = validate(res.object, opt);
    return res;
}

struct StrictnessAudit {
    bool weight_strict = false;
    bool hodge_strict = false;
};

inline StrictnessAudit strictness_audit(const OgusMorphism& m) {
    auto rep = m.check();
    if (!rep.ok())
        throw std::invalid_argument("strictness_audit: invalid morphism");
    StrictnessAudit a;
    a.weight_strict = is_strict_filtered(m.matrix, m.source.weight, m.target.weight);
    a.hodge_strict = is_strict_filtered(m.matrix, m.source.hodge, m.target.hodge);
    return a;
}

// Componentwise direct sum; the place sets must agree.
inline OgusObject direct_sum(const OgusObject& a, const OgusObject& b) {
    OgusObject o;
    o.t_dr = a.t_dr + b.t_dr;
    auto combine = [&](const Filtration& fa, const Filtration& fb, FiltrationKind kind) {
        Filtration f;
        f.kind = kind;
        f.ambient = o.t_dr;
        std::vector<long> idx;
        for (const auto& [i, s] : fa.steps)
            idx.push_back(i);
        for (const auto& [i, s] : fb.steps)
            idx.push_back(i);
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        for (long i : idx) {
            Subspace sa = fa.at(i), sb = fb.at(i);
            Matrix rows = vstack(hstack(sa.basis, Matrix(sa.dim(), b.t_dr)),
                                 hstack(Matrix(sb.dim(), a.t_dr), sb.basis));
            f.steps.emplace_back(i, Subspace::span(o.t_dr, rows));
        }
        return f;
    };
    o.weight = combine(a.weight, b.weight, FiltrationKind::increasing);
    o.hodge = combine(a.hodge, b.hodge, FiltrationKind::decreasing);
    if (a.frobenii.size() != b.frobenii.size())
        throw std::invalid_argument("direct_sum: place sets differ");
    for (const auto& fa : a.frobenii) {
        const FrobeniusAt* fb = b.find_place(fa.place.label);
        if (!fb || fb->place.prime != fa.place.prime)
            throw std::invalid_argument("direct_sum: place sets differ");
        Matrix top = hstack(fa.phi, Matrix(a.t_dr, b.t_dr));
        Matrix bot = hstack(Matrix(b.t_dr, a.t_dr), fb->phi);
        o.frobenii.push_back({fa.place, vstack(top, bot), fa.exempt && fb->exempt});
    }
    return o;
}

} // namespace ogus
