#pragma once

#include "valomega/keypoly.hpp"
#include "valomega/segment.hpp"

namespace valomega {

enum class Verdict { Agree, Disagree, Inconclusive };

inline const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Agree: return "agree";
        case Verdict::Disagree: return "disagree";
        default: return "inconclusive";
    }
}

/// Finite symmetric enumeration window over a value group: all elements whose
/// k-th coordinate is a multiple of gen_k / den_bound_k within +-coord_bound,
/// where den_bound_k is the largest admissible power of the divisibility prime.
struct GridWindow {
    GroupPtr group;
    long long coord_bound = 4;
    long long den_bound = 8;

    std::vector<Value> enumerate() const {
        std::vector<std::vector<Rat>> axes;
        for (int k = 1; k <= group->rank(); ++k) {
            const GroupComponent& c = group->comp(k);
            Rat step = c.gen;
            if (c.div) {
                long long d = 1;
                while (d * *c.div <= den_bound) d *= *c.div;
                step = step / Rat(d);
            }
            std::vector<Rat> axis;
            for (Rat x = Rat(0); x <= Rat(coord_bound); x = x + step) {
                axis.push_back(x);
                if (!x.is_zero()) axis.push_back(-x);
            }
            std::sort(axis.begin(), axis.end());
            axes.push_back(std::move(axis));
        }
        std::vector<Value> out;
        std::vector<size_t> idx(axes.size(), 0);
        while (true) {
            std::vector<Rat> c;
            for (size_t k = 0; k < axes.size(); ++k) c.push_back(axes[k][idx[k]]);
            out.emplace_back(std::move(c), group);
            size_t k = axes.size();
            while (k > 0 && ++idx[k - 1] == axes[k - 1].size()) idx[--k] = 0;
            if (k == 0) break;
        }
        return out;
    }
};

/// v(g'(eta)) via direct evaluation: the classical different of a monogenic
/// complete discrete extension, which annihilates the differential module.
inline ValueInf different_monogenic(const ExtensionField& L) {
    return eval_val(L.g.derivative(), L);
}

// ---------------------------------------------------------------------------
// Exhaustive segment-algebra checks
//
// Membership (member) is the trusted primitive; each operation below is
// re-derived from its set-theoretic definition by enumeration and compared
// with the segment module's answer. A finite window can definitely refute a
// claim (Disagree) but can confirm universally quantified claims only as far
// as it reaches (Agree on-window vs Inconclusive).
// ---------------------------------------------------------------------------

/// Claim-parameterized variants let tests plant wrong claims and verify the
/// oracle never blesses them (soundness of the oracle itself).
inline Verdict bf_seg_equal_claim(const FinalSegment& s, const FinalSegment& t, bool claimed,
                                  const GridWindow& w) {
    bool witness = false;
    for (const Value& x : w.enumerate())
        if (member(s, ValueInf(x)) != member(t, ValueInf(x))) witness = true;
    if (claimed) return witness ? Verdict::Disagree : Verdict::Agree;
    return witness ? Verdict::Agree : Verdict::Inconclusive;
}

inline Verdict bf_seg_equal(const FinalSegment& s, const FinalSegment& t, const GridWindow& w) {
    return bf_seg_equal_claim(s, t, seg_equal(s, t), w);
}

/// ann(S -> T) = { b : b + S subset of T }, re-derived pointwise.
inline Verdict bf_annihilator_claim(const FinalSegment& s, const FinalSegment& t,
                                    const FinalSegment& claimed, const GridWindow& w) {
    std::vector<Value> grid = w.enumerate();
    bool inconclusive = false;
    for (const Value& b : grid) {
        bool excluded = false;  // found s0 in S with b + s0 outside T
        for (const Value& s0 : grid) {
            if (!member(s, ValueInf(s0))) continue;
            if (!member(t, ValueInf(b + s0))) { excluded = true; break; }
        }
        bool in_claimed = member(claimed, ValueInf(b));
        if (excluded && in_claimed) return Verdict::Disagree;
        if (!excluded && !in_claimed) inconclusive = true;  // window may be too small
    }
    // note: an Empty result encodes "only the zero element annihilates"; the
    // comparison above is over finite window values only
    return inconclusive ? Verdict::Inconclusive : Verdict::Agree;
}

inline Verdict bf_annihilator(const FinalSegment& s, const FinalSegment& t, const GridWindow& w) {
    return bf_annihilator_claim(s, t, annihilator_segment(s, t), w);
}

/// Invariance subgroup: largest suffix subgroup D with S + D = S.
inline Verdict bf_invariance(const FinalSegment& s, const GridWindow& w) {
    ConvexSubgroup claimed = invariance_subgroup(s);
    std::vector<Value> grid = w.enumerate();
    auto translates_into = [&](int level) {
        // every window member of S stays in S under window shifts from D_level
        for (const Value& x : grid) {
            if (!member(s, ValueInf(x))) continue;
            for (const Value& d : grid) {
                if (!ConvexSubgroup{level}.contains(d)) continue;
                if (!member(s, ValueInf(x + d))) return false;
            }
        }
        return true;
    };
    if (!translates_into(claimed.suffix_start)) return Verdict::Disagree;
    // maximality: the next larger suffix subgroup must visibly fail
    if (claimed.suffix_start > 1 && translates_into(claimed.suffix_start - 1))
        return Verdict::Inconclusive;
    return Verdict::Agree;
}

inline Verdict bf_has_min(const FinalSegment& s, const GridWindow& w) {
    std::optional<ValueInf> claimed = has_min(s);
    std::vector<Value> grid = w.enumerate();
    std::optional<Value> grid_min;
    for (const Value& x : grid)
        if (member(s, ValueInf(x)) && (!grid_min || cmp(x, *grid_min) == Ord::LT)) grid_min = x;
    if (claimed && !claimed->is_inf()) {
        const Value& m = claimed->finite();
        if (!member(s, ValueInf(m))) return Verdict::Disagree;
        if (grid_min && cmp(*grid_min, m) == Ord::LT) return Verdict::Disagree;
        return Verdict::Agree;
    }
    if (claimed && claimed->is_inf()) {
        // Top: no finite member anywhere
        return grid_min ? Verdict::Disagree : Verdict::Agree;
    }
    // claimed no minimum: look for a strictly smaller member in a refined window
    if (!grid_min) return Verdict::Inconclusive;
    GridWindow fine = w;
    fine.den_bound = w.den_bound * 8;
    for (const Value& x : fine.enumerate())
        if (member(s, ValueInf(x)) && cmp(x, *grid_min) == Ord::LT) return Verdict::Agree;
    return Verdict::Inconclusive;
}

// ---------------------------------------------------------------------------
// Explicit-root delta
// ---------------------------------------------------------------------------

/// delta by enumerating supplied roots: max of v(eta - a). Refuses unless the
/// roots actually reconstruct f (up to the leading coefficient).
inline ValueInf delta_bruteforce(const Poly& f, const std::vector<FieldElement>& roots,
                                 const ExtensionField& L) {
    const BaseField& K = f.field();
    if (static_cast<int>(roots.size()) != f.deg())
        throw ValidationError("delta_bruteforce: need deg(f) roots; refuse non-split input");
    Poly prod(K, {f.at(f.deg())});
    for (const auto& a : roots) prod = prod * Poly(K, {-a, FieldElement::one(K)});
    Poly diff = prod - f;
    for (const auto& c : diff.coeffs())
        if (!c.eq(FieldElement::zero(K)))
            throw ValidationError("delta_bruteforce: supplied roots do not reconstruct f");
    ValueInf best = eval_val(Poly(K, {-roots[0], FieldElement::one(K)}), L);
    for (size_t i = 1; i < roots.size(); ++i)
        best = vmax(best, eval_val(Poly(K, {-roots[i], FieldElement::one(K)}), L));
    return best;
}

}  // namespace valomega
