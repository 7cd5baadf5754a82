// Filtrations by canonical subspaces, decreasing (Hodge style) or
// increasing (weight style). Only the jumps are stored; outside the
// listed index range the filtration takes its limit values:
//   decreasing: full space below the lowest index, 0 above the highest
//   increasing: 0 below the lowest index, full space above the highest
// An empty step list means the trivial filtration concentrated at 0.
#pragma once

#include "ogus/linear_map.hpp"

#include <string>
#include <vector>

namespace ogus {

enum class FiltrationKind { decreasing, increasing };

struct Filtration {
    FiltrationKind kind = FiltrationKind::decreasing;
    long ambient = 0;
    std::vector<std::pair<long, Subspace>> steps; // strictly increasing indices

    static Filtration trivial(FiltrationKind k, long ambient_dim) {
        Filtration f;
        f.kind = k;
        f.ambient = ambient_dim;
        return f;
    }

    long lowest() const { return steps.empty() ? 0 : steps.front().first; }
    long highest() const { return steps.empty() ? 0 : steps.back().first; }

    Subspace at(long i) const {
        bool dec = kind == FiltrationKind::decreasing;
        Subspace below = dec ? Subspace::full(ambient) : Subspace::zero(ambient);
        Subspace above = dec ? Subspace::zero(ambient) : Subspace::full(ambient);
        if (steps.empty())
            return dec ? (i <= 0 ? below : above) : (i < 0 ? below : above);
        if (i < steps.front().first)
            return below;
        if (i > steps.back().first)
            return above;
        // constant between jumps: value at the largest listed index <= i
        for (size_t k = steps.size(); k-- > 0;)
            if (steps[k].first <= i)
                return steps[k].second;
        return below; // unreachable
    }

    std::vector<std::string> check() const {
        std::vector<std::string> bad;
        for (size_t k = 0; k < steps.size(); ++k) {
            if (steps[k].second.ambient != ambient)
                bad.push_back("step " + std::to_string(steps[k].first) + ": ambient mismatch");
            if (k + 1 < steps.size()) {
                if (steps[k].first >= steps[k + 1].first)
                    bad.push_back("indices not strictly increasing at " + std::to_string(steps[k].first));
                else {
                    bool ok = kind == FiltrationKind::decreasing
                                  ? steps[k].second.contains(steps[k + 1].second)
                                  : steps[k + 1].second.contains(steps[k].second);
                    if (!ok)
                        bad.push_back("monotonicity fails between indices " + std::to_string(steps[k].first) +
                                      " and " + std::to_string(steps[k + 1].first));
                }
            }
        }
        return bad;
    }
    bool valid() const { return check().empty(); }

    // Induced filtration on a subspace w, written in w's basis coordinates.
    Filtration induced_on(const Subspace& w) const {
        Filtration f;
        f.kind = kind;
        f.ambient = w.dim();
        for (const auto& [i, s] : steps)
            f.steps.emplace_back(i, in_coordinates(intersect(s, w), w));
        return f;
    }

    // Image filtration on the quotient by w (coordinates of quotient_map(w)).
    Filtration quotient_by(const Subspace& w) const {
        Filtration f;
        f.kind = kind;
        f.ambient = ambient - w.dim();
        Matrix q = quotient_map(w);
        for (const auto& [i, s] : steps)
            f.steps.emplace_back(i, image_of(q, s));
        return f;
    }

    // Image filtration under an arbitrary map (used for cokernels).
    Filtration mapped_by(const Matrix& m) const {
        Filtration f;
        f.kind = kind;
        f.ambient = m.rows;
        for (const auto& [i, s] : steps)
            f.steps.emplace_back(i, image_of(m, s));
        return f;
    }
};

// Strictness: m(Fil^i_src) = im(m) cap Fil^i_tgt for every i.
// Outside the listed ranges both sides agree automatically.
inline bool is_strict_filtered(const Matrix& m, const Filtration& src, const Filtration& tgt) {
    long lo = std::min(src.lowest(), tgt.lowest()) - 1;
    long hi = std::max(src.highest(), tgt.highest()) + 1;
    Subspace img = Subspace::span(m.rows, m.transpose());
    for (long i = lo; i <= hi; ++i) {
        if (!(image_of(m, src.at(i)) == intersect(img, tgt.at(i))))
            return false;
    }
    return true;
}

// Filtration compatibility: m(Fil^i_src) <= Fil^i_tgt for every i.
inline bool preserves_filtration(const Matrix& m, const Filtration& src, const Filtration& tgt) {
    long lo = std::min(src.lowest(), tgt.lowest()) - 1;
    long hi = std::max(src.highest(), tgt.highest()) + 1;
    for (long i = lo; i <= hi; ++i)
        if (!tgt.at(i).contains(image_of(m, src.at(i))))
            return false;
    return true;
}

} // namespace ogus
