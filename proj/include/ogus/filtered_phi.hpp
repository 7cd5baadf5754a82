// Filtered phi-modules at p-adic places: Hodge and Newton numbers,
// the weak-admissibility verdict, and strictness of filtered morphisms.
//
// The admissibility decision is exact whenever the Frobenius spectrum
// is rational and multiplicity-free (the stable subspaces are then the
// 2^n spans of eigenvector subsets) or the dimension is at most 2;
// otherwise the checker falsifies by sampling stable subspaces and may
// abstain with Undetermined.
#pragma once

#include "ogus/digest.hpp"
#include "ogus/filtration.hpp"
#include "ogus/spectrum.hpp"

#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ogus {

struct Place {
    std::string label;
    long long prime = 2;
};

struct FrobeniusAt {
    Place place;
    Matrix phi; // square, invertible
    bool exempt = false;
};

struct FilteredPhiModule {
    long dim = 0;
    Filtration filtration; // decreasing (Hodge)
    std::vector<FrobeniusAt> frobenii;

    const FrobeniusAt* find_place(const std::string& label) const {
        for (const auto& f : frobenii)
            if (f.place.label == label)
                return &f;
        return nullptr;
    }

    std::vector<std::string> check() const {
        std::vector<std::string> bad;
        if (filtration.kind != FiltrationKind::decreasing)
            bad.push_back("filtration must be decreasing");
        if (filtration.ambient != dim)
            bad.push_back("filtration ambient mismatch");
        for (auto msg : filtration.check())
            bad.push_back("filtration: " + msg);
        std::vector<std::string> seen;
        for (const auto& f : frobenii) {
            if (f.phi.rows != dim || f.phi.cols != dim)
                bad.push_back("phi at " + f.place.label + ": wrong shape");
            else if (!is_invertible(f.phi))
                bad.push_back("phi at " + f.place.label + ": not invertible");
            if (!is_prime(Int(f.place.prime)))
                bad.push_back("place " + f.place.label + ": prime " + std::to_string(f.place.prime) +
                              " is not prime");
            for (const auto& s : seen)
                if (s == f.place.label)
                    bad.push_back("duplicate place label " + f.place.label);
            seen.push_back(f.place.label);
        }
        return bad;
    }

    // Canonical text encoding, used only to derive deterministic seeds.
    std::string encode() const {
        std::ostringstream os;
        os << "dim:" << dim << ";";
        for (const auto& [i, s] : filtration.steps) {
            os << "fil" << i << ":";
            for (const auto& e : s.basis.entries)
                os << to_string(e) << ",";
            os << ";";
        }
        for (const auto& f : frobenii) {
            os << f.place.label << "@" << f.place.prime << (f.exempt ? "!" : "") << ":";
            for (const auto& e : f.phi.entries)
                os << to_string(e) << ",";
            os << ";";
        }
        return os.str();
    }
};

// t_H = sum_i i * dim gr^i of the (restricted) Hodge filtration.
inline std::int64_t hodge_number(const Filtration& fil, const std::optional<Subspace>& restricted_to = {}) {
    if (fil.kind != FiltrationKind::decreasing)
        throw std::invalid_argument("hodge_number: filtration must be decreasing");
    if (restricted_to && restricted_to->ambient != fil.ambient)
        throw std::invalid_argument("hodge_number: restriction not inside ambient space");
    auto dim_at = [&](long i) {
        Subspace s = fil.at(i);
        return restricted_to ? intersect(s, *restricted_to).dim() : s.dim();
    };
    std::int64_t t = 0;
    long lo = fil.lowest() - 1, hi = fil.highest();
    for (long i = lo; i <= hi; ++i)
        t += static_cast<std::int64_t>(i) * (dim_at(i) - dim_at(i + 1));
    return t;
}

inline std::int64_t hodge_number(const FilteredPhiModule& d, const std::optional<Subspace>& restricted_to = {}) {
    return hodge_number(d.filtration, restricted_to);
}

// t_N = v_p(det phi_v) on a phi-stable subspace (the whole space by default).
inline std::int64_t newton_number(const FilteredPhiModule& d, const std::string& place,
                                  const std::optional<Subspace>& restricted_to = {}) {
    const FrobeniusAt* f = d.find_place(place);
    if (!f)
        throw std::invalid_argument("newton_number: unknown place " + place);
    Matrix m = f->phi;
    if (restricted_to) {
        if (!restricted_to->contains(image_of(m, *restricted_to)))
            throw std::invalid_argument("newton_number: subspace not phi-stable");
        m = restrict_map(m, *restricted_to, *restricted_to);
    }
    Rational dt = det(m);
    if (dt == 0)
        throw std::invalid_argument("newton_number: determinant vanishes");
    return *padic_valuation(dt, Int(f->place.prime));
}

enum class Admissibility { admissible, not_admissible, undetermined };

inline const char* to_string(Admissibility a) {
    switch (a) {
    case Admissibility::admissible: return "Admissible";
    case Admissibility::not_admissible: return "NotAdmissible";
    default: return "Undetermined";
    }
}

struct AdmissibilityVerdict {
    Admissibility status = Admissibility::undetermined;
    // A phi-stable subspace with t_H > t_N, when one was found. A
    // NotAdmissible verdict caused purely by t_H(total) < t_N(total)
    // carries no witness; the totals in the verdict explain it.
    std::optional<Subspace> witness;
    std::int64_t t_h_total = 0;
    std::int64_t t_n_total = 0;
    std::string method;
    std::string detail;
};

struct FalsificationOptions {
    long samples = 500;
    std::optional<std::uint64_t> seed; // default: digest of the module encoding
};

namespace detail {

inline std::optional<Subspace> worst_line_violation(const FilteredPhiModule& d, const std::string& place,
                                                    const Rational& lambda) {
    // scalar Frobenius: every line is stable and the worst one sits in
    // the deepest nonzero filtration step
    const FrobeniusAt* f = d.find_place(place);
    std::int64_t vp = *padic_valuation(lambda, Int(f->place.prime));
    long deepest = d.filtration.lowest() - 1;
    Subspace line;
    for (long i = d.filtration.lowest() - 1; i <= d.filtration.highest(); ++i) {
        Subspace s = d.filtration.at(i);
        if (!s.is_zero()) {
            deepest = i;
            line = Subspace::span(d.dim, s.basis.row(0));
        }
    }
    if (deepest > vp)
        return line;
    return std::nullopt;
}

inline Subspace krylov_span(const Matrix& phi, const Matrix& v) {
    Matrix rows(0, phi.cols);
    Matrix cur = v;
    for (long k = 0; k <= phi.rows; ++k) {
        rows = vstack(rows, cur.transpose());
        cur = phi * cur;
    }
    return Subspace::span(phi.cols, rows);
}

} // namespace detail

// Weak admissibility at one place: t_H = t_N on the whole space and
// t_H(W) <= t_N(W) for every phi-stable subspace W.
inline AdmissibilityVerdict check_admissible(const FilteredPhiModule& d, const std::string& place,
                                             const FalsificationOptions& opt = {}) {
    const FrobeniusAt* f = d.find_place(place);
    if (!f)
        throw std::invalid_argument("check_admissible: unknown place " + place);
    if (f->exempt)
        throw std::invalid_argument("check_admissible: place " + place + " is exempt");

    AdmissibilityVerdict v;
    v.t_h_total = hodge_number(d);
    v.t_n_total = newton_number(d, place);

    auto violated = [&](const Subspace& w) {
        return hodge_number(d, w) > newton_number(d, place, w);
    };

    RationalSpectrum spec = rational_spectrum(f->phi);

    if (spec.is_complete && spec.multiplicity_free() && d.dim <= 20) {
        v.method = "eigenspan-enumeration";
        long n = d.dim;
        std::vector<Subspace> eigenlines;
        for (const auto& [lam, mult] : spec.eigenvalues)
            eigenlines.push_back(eigenspace(f->phi, lam));
        for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
            Subspace w = Subspace::zero(n);
            for (long b = 0; b < n; ++b)
                if (mask & (1UL << b))
                    w = w + eigenlines[b];
            if (violated(w)) {
                v.status = Admissibility::not_admissible;
                v.witness = w;
                v.detail = "stable subspace with t_H > t_N";
                return v;
            }
        }
        if (v.t_h_total != v.t_n_total) {
            v.status = Admissibility::not_admissible;
            v.detail = "t_H(total) != t_N(total)";
            return v;
        }
        v.status = Admissibility::admissible;
        return v;
    }

    if (d.dim <= 2) {
        v.method = "line-analysis";
        // stable subspaces are 0, the total space, and stable lines
        if (violated(Subspace::full(d.dim))) {
            v.status = Admissibility::not_admissible;
            v.witness = Subspace::full(d.dim);
            v.detail = "total space has t_H > t_N";
            return v;
        }
        for (const auto& [lam, mult] : spec.eigenvalues) {
            Subspace es = eigenspace(f->phi, lam);
            if (es.dim() == d.dim && d.dim > 1) {
                // scalar phi: all lines are stable
                if (auto line = detail::worst_line_violation(d, place, lam)) {
                    v.status = Admissibility::not_admissible;
                    v.witness = *line;
                    v.detail = "line in deepest filtration step has t_H > t_N";
                    return v;
                }
            } else {
                for (long r = 0; r < es.dim(); ++r) {
                    Subspace line = Subspace::span(d.dim, es.basis.row(r));
                    if (violated(line)) {
                        v.status = Admissibility::not_admissible;
                        v.witness = line;
                        v.detail = "stable eigenline has t_H > t_N";
                        return v;
                    }
                }
            }
        }
        if (v.t_h_total != v.t_n_total) {
            v.status = Admissibility::not_admissible;
            v.detail = "t_H(total) != t_N(total)";
            return v;
        }
        v.status = Admissibility::admissible;
        return v;
    }

    // randomized falsification over phi-stable samples
    v.method = "randomized-falsification";
    if (v.t_h_total != v.t_n_total) {
        v.status = Admissibility::not_admissible;
        if (v.t_h_total > v.t_n_total)
            v.witness = Subspace::full(d.dim);
        v.detail = "t_H(total) != t_N(total)";
        return v;
    }
    std::uint64_t seed = opt.seed ? *opt.seed : fnv1a64(d.encode());
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-3, 3);
    // pool of known stable subspaces: all kernel powers ker(phi - lam)^k
    std::vector<Subspace> gen_spaces;
    for (const auto& [lam, mult] : spec.eigenvalues) {
        Matrix shifted = f->phi;
        for (long i = 0; i < d.dim; ++i)
            shifted.at(i, i) -= lam;
        Matrix power = shifted;
        for (long k = 1; k <= mult; ++k) {
            Subspace s = Subspace::span(d.dim, kernel_basis(power));
            if (gen_spaces.empty() || !(gen_spaces.back() == s))
                gen_spaces.push_back(s);
            power = shifted * power;
        }
    }

    auto sample = [&]() -> Subspace {
        Subspace w = Subspace::zero(d.dim);
        // random subset of generalized eigenspaces
        for (const auto& g : gen_spaces)
            if (rng() & 1)
                w = w + g;
        // random stable refinement: Krylov span of a random vector
        if (rng() & 1) {
            Matrix vec(d.dim, 1);
            for (long i = 0; i < d.dim; ++i)
                vec.at(i, 0) = entry(rng);
            w = w + detail::krylov_span(f->phi, vec);
        }
        return w;
    };
    for (long k = 0; k < opt.samples; ++k) {
        Subspace w = sample();
        if (w.dim() == 0 || w.dim() == d.dim)
            continue;
        if (violated(w)) {
            v.status = Admissibility::not_admissible;
            v.witness = w;
            v.detail = "sampled stable subspace with t_H > t_N";
            return v;
        }
    }
    v.status = Admissibility::undetermined;
    v.detail = "no violation among " + std::to_string(opt.samples) + " sampled stable subspaces (seed " +
               hex64(seed) + ")";
    return v;
}

struct PhiModuleMorphism {
    FilteredPhiModule source;
    FilteredPhiModule target;
    Matrix matrix; // target.dim x source.dim

    std::vector<std::string> check() const {
        std::vector<std::string> bad;
        if (matrix.rows != target.dim || matrix.cols != source.dim)
            bad.push_back("matrix shape mismatch");
        if (!preserves_filtration(matrix, source.filtration, target.filtration))
            bad.push_back("morphism does not respect the filtrations");
        for (const auto& fs : source.frobenii) {
            const FrobeniusAt* ft = target.find_place(fs.place.label);
            if (ft && !(matrix * fs.phi == ft->phi * matrix))
                bad.push_back("morphism does not commute with phi at " + fs.place.label);
        }
        return bad;
    }
};

// Strictness for the Hodge filtration: m(Fil^i) = im(m) cap Fil^i at
// every level. Throws on precondition violations so callers can tell
// "not strict" from "not a filtered morphism".
inline bool is_strict(const PhiModuleMorphism& m) {
    auto bad = m.check();
    if (!bad.empty())
        throw std::invalid_argument("is_strict: " + bad.front());
    return is_strict_filtered(m.matrix, m.source.filtration, m.target.filtration);
}

} // namespace ogus
