#pragma once

#include <set>
#include <variant>

#include "valomega/oracle.hpp"

namespace valomega {

// ---------------------------------------------------------------------------
// Pure extension specifications
// ---------------------------------------------------------------------------

struct PureDefect {
    ValueFamily v_eta_K;                       // no attained maximum
    ValueInf v_gprime_eta;
    std::optional<std::set<long long>> B;      // subset of {1, p, p^2, ...}
};

struct BranchedPure {
    long long d = 1;                           // defect, a power of p
    Value beta_d;                              // fixed value of the d-th Hasse derivative of g
    ValueFamily v_eta_K;
    ValueInf v_gprime_eta;
    std::optional<std::set<long long>> B;
};

struct PurelyInertial {
    std::optional<ResiduePoly> residue_minpoly;   // degree n when present
    std::optional<std::set<long long>> B_explicit;
    ValueInf v_gprime_eta;
};

struct PurelyRamified {
    GroupPtr vK;                               // value group of the base field
    Value gamma;                               // v(eta), positive
    std::vector<ValueInf> coeff_values;        // va_l for l = 0..n-1
    ValueInf vp;                               // value of the residue characteristic in K
};

struct PureExtensionSpec {
    long long n = 0;   // [L : K]
    long long p = 0;   // residue characteristic (0 only where permitted)
    GroupPtr group;    // vL
    std::variant<PureDefect, BranchedPure, PurelyInertial, PurelyRamified> data;
};

enum class CaseTag { PureDefect, BranchedPure, PurelyInertial, PurelyRamified };

inline const char* case_str(CaseTag t) {
    switch (t) {
        case CaseTag::PureDefect: return "pure_defect";
        case CaseTag::BranchedPure: return "branched_pure";
        case CaseTag::PurelyInertial: return "purely_inertial";
        default: return "purely_ramified";
    }
}

namespace detail {

inline bool is_power_of(long long n, long long p) {
    if (n < 1) return false;
    while (n % p == 0) n /= p;
    return n == 1;
}

/// Value of the integer l in the base field: 0 when p does not divide l,
/// otherwise multiplicity * vp (infinite in equal characteristic).
inline ValueInf integer_value(long long l, long long p, const ValueInf& vp, const GroupPtr& g) {
    if (l == 0) return ValueInf::infinity();
    if (l < 0) l = -l;
    if (p <= 1 || l % p != 0) return ValueInf(Value::zero(g));
    long long mult = 0;
    while (l % p == 0) {
        l /= p;
        ++mult;
    }
    ValueInf acc(Value::zero(g));
    for (long long i = 0; i < mult; ++i) acc = acc + vp;
    return acc;
}

inline void check_B_structure(const std::set<long long>& B, long long p, const char* where) {
    for (long long b : B) {
        if (!is_power_of(b, p) && b != 1)
            throw ValidationError(std::string(where) + ": B must be a subset of {1, p, p^2, ...}");
    }
}

}  // namespace detail

inline CaseTag classify(const PureExtensionSpec& spec) {
    if (spec.n < 2) throw ValidationError("classify: degree must be at least 2");
    if (!spec.group) throw ValidationError("classify: missing value group");
    if (std::holds_alternative<PureDefect>(spec.data)) {
        const auto& d = std::get<PureDefect>(spec.data);
        if (spec.p < 2) throw ValidationError("pure_defect: requires positive residue characteristic");
        if (!detail::is_power_of(spec.n, spec.p))
            throw ValidationError("pure_defect: degree must be a power of p (defect = degree)");
        if (d.v_eta_K.kind == ValueFamily::Kind::FiniteMax)
            throw ValidationError("pure_defect: v(eta - K) must have no maximum");
        if (d.B) detail::check_B_structure(*d.B, spec.p, "pure_defect");
        return CaseTag::PureDefect;
    }
    if (std::holds_alternative<BranchedPure>(spec.data)) {
        const auto& b = std::get<BranchedPure>(spec.data);
        if (spec.p < 2) throw ValidationError("branched_pure: requires positive residue characteristic");
        if (!detail::is_power_of(b.d, spec.p))
            throw ValidationError("branched_pure: defect must be a power of p");
        if (b.d > spec.n) throw ValidationError("branched_pure: defect exceeds the degree");
        if (b.v_eta_K.kind == ValueFamily::Kind::FiniteMax)
            throw ValidationError("branched_pure: v(eta - K) must have no maximum");
        if (b.B) {
            detail::check_B_structure(*b.B, spec.p, "branched_pure");
            if (!b.B->count(b.d))
                throw ValidationError("branched_pure: the defect must belong to B");
        }
        return CaseTag::BranchedPure;
    }
    if (std::holds_alternative<PurelyInertial>(spec.data)) {
        const auto& i = std::get<PurelyInertial>(spec.data);
        if (!i.residue_minpoly && !i.B_explicit)
            throw ValidationError("purely_inertial: need a residue minimal polynomial or an explicit B");
        if (i.residue_minpoly && i.residue_minpoly->deg() != spec.n)
            throw ValidationError("purely_inertial: residue degree must equal [L:K]");
        return CaseTag::PurelyInertial;
    }
    const auto& r = std::get<PurelyRamified>(spec.data);
    if (!r.vK) throw ValidationError("purely_ramified: missing base value group");
    const std::vector<Rat>& gc = r.gamma.coords();
    bool pos = false;
    for (const Rat& x : gc)
        if (!x.is_zero()) { pos = x.sign() > 0; break; }
    if (!pos) throw ValidationError("purely_ramified: gamma must be positive");
    for (long long s = 1; s < spec.n; ++s) {
        std::vector<Rat> sc;
        for (const Rat& x : gc) sc.push_back(x * Rat(s));
        if (r.vK->contains(sc))
            throw ValidationError("purely_ramified: " + std::to_string(s) +
                                  "*gamma lies in vK; (vL : vK) would be below the degree");
    }
    {
        std::vector<Rat> nc;
        for (const Rat& x : gc) nc.push_back(x * Rat(spec.n));
        if (!r.vK->contains(nc))
            throw ValidationError("purely_ramified: n*gamma must lie in vK");
    }
    if (static_cast<long long>(r.coeff_values.size()) != spec.n)
        throw ValidationError("purely_ramified: need coefficient values for l = 0..n-1");
    if (!(r.coeff_values[0] == ValueInf(r.gamma.scaled(spec.n))))
        throw ValidationError("purely_ramified: v(a_0) must equal n*gamma");
    for (long long l = 1; l < spec.n; ++l) {
        ValueInf term = detail::integer_value(l, spec.p, r.vp, spec.group) + r.coeff_values[l] -
                        r.gamma.scaled(spec.n - l);
        if (!term.is_inf() && !(ValueInf(Value::zero(spec.group)) < term))
            throw ValidationError("purely_ramified: coefficient value condition fails at l = " +
                                  std::to_string(l));
    }
    return CaseTag::PurelyRamified;
}

// ---------------------------------------------------------------------------
// Alpha, beta and the B set
// ---------------------------------------------------------------------------

namespace detail {

inline ConvexSubgroup ramified_delta(const PureExtensionSpec& spec) {
    const auto& r = std::get<PurelyRamified>(spec.data);
    return greatest_isolated_below(spec.group, r.gamma);
}

inline bool ramified_has_quotient_min(const PureExtensionSpec& spec) {
    return quotient_min_positive(spec.group, ramified_delta(spec)).has_value();
}

/// min over l of (vl + v(a_l) - (n - l) * gamma), including l = n with
/// v(a_n) = 0; this is v(g'(eta)) - (n - 1) * gamma.
inline ValueInf ramified_m(const PureExtensionSpec& spec) {
    const auto& r = std::get<PurelyRamified>(spec.data);
    ValueInf m = ValueInf::infinity();
    for (long long l = 1; l <= spec.n; ++l) {
        ValueInf va = l == spec.n ? ValueInf(Value::zero(spec.group)) : r.coeff_values[l];
        ValueInf term = integer_value(l, spec.p, r.vp, spec.group) + va - r.gamma.scaled(spec.n - l);
        m = vmin(m, term);
    }
    return m;
}

}  // namespace detail

inline FinalSegment alpha_of(const PureExtensionSpec& spec) {
    CaseTag tag = classify(spec);
    switch (tag) {
        case CaseTag::PureDefect:
        case CaseTag::BranchedPure: {
            const ValueFamily& f = std::holds_alternative<PureDefect>(spec.data)
                                       ? std::get<PureDefect>(spec.data).v_eta_K
                                       : std::get<BranchedPure>(spec.data).v_eta_K;
            return segment_of_family(f, -1, 1, ValueInf(Value::zero(spec.group)), spec.group);
        }
        case CaseTag::PurelyInertial:
            return FinalSegment::closed_at(Value::zero(spec.group));
        case CaseTag::PurelyRamified: {
            ConvexSubgroup delta = detail::ramified_delta(spec);
            const auto& r = std::get<PurelyRamified>(spec.data);
            if (detail::ramified_has_quotient_min(spec))
                return FinalSegment::closed_mod(Value::zero(spec.group), delta);
            return FinalSegment::open_mod(r.gamma.scaled(-1), delta);
        }
    }
    throw std::logic_error("alpha_of: unreachable");
}

inline FinalSegment beta_of(const PureExtensionSpec& spec) {
    CaseTag tag = classify(spec);
    switch (tag) {
        case CaseTag::PureDefect: {
            const auto& d = std::get<PureDefect>(spec.data);
            return segment_of_family(d.v_eta_K, -1, spec.n, d.v_gprime_eta, spec.group);
        }
        case CaseTag::BranchedPure: {
            const auto& b = std::get<BranchedPure>(spec.data);
            ValueInf off = b.v_gprime_eta + ValueInf(b.beta_d.scaled(-1));
            return segment_of_family(b.v_eta_K, -1, b.d, off, spec.group);
        }
        case CaseTag::PurelyInertial: {
            const auto& i = std::get<PurelyInertial>(spec.data);
            if (i.v_gprime_eta.is_inf()) return FinalSegment::top(spec.group);
            return FinalSegment::closed_at(i.v_gprime_eta.finite());
        }
        case CaseTag::PurelyRamified: {
            ConvexSubgroup delta = detail::ramified_delta(spec);
            const auto& r = std::get<PurelyRamified>(spec.data);
            if (detail::ramified_has_quotient_min(spec))
                throw UnsupportedForm("beta_of: not defined in the ramified quotient-minimum case");
            ValueInf m = detail::ramified_m(spec);
            if (m.is_inf()) return FinalSegment::top(spec.group);
            return FinalSegment::open_mod(m.finite() + r.gamma.scaled(-1), delta);
        }
    }
    throw std::logic_error("beta_of: unreachable");
}

struct BSet {
    std::set<long long> values;
    std::string provenance;  // "computed", "input", "none"
};

inline BSet b_set(const PureExtensionSpec& spec) {
    CaseTag tag = classify(spec);
    switch (tag) {
        case CaseTag::PureDefect: {
            const auto& d = std::get<PureDefect>(spec.data);
            if (d.B) return {*d.B, "input"};
            return {{}, "none"};
        }
        case CaseTag::BranchedPure: {
            const auto& b = std::get<BranchedPure>(spec.data);
            if (b.B) return {*b.B, "input"};
            return {{}, "none"};
        }
        case CaseTag::PurelyInertial: {
            const auto& i = std::get<PurelyInertial>(spec.data);
            if (i.residue_minpoly) {
                std::set<long long> B;
                for (int k = 1; k <= i.residue_minpoly->deg(); ++k)
                    if (!i.residue_minpoly->at(k).is_zero()) B.insert(k);
                return {B, "computed"};
            }
            return {*i.B_explicit, "input"};
        }
        case CaseTag::PurelyRamified:
            return {{spec.n}, "computed"};
    }
    throw std::logic_error("b_set: unreachable");
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct CrossCheck {
    std::string name;
    bool applicable = true;
    bool says_zero = false;
};

struct OmegaReport {
    CaseTag tag;
    std::optional<FinalSegment> alpha, beta;
    std::optional<ModuleReport> module;
    bool is_zero = false;
    std::optional<FinalSegment> ann;            // segment form, when I_alpha/I_beta applies
    std::optional<Value> ann_oracle_value;      // ramified quotient-minimum case, concrete input
    bool ann_unknown = false;
    BSet B_used;
    std::vector<CrossCheck> cross_checks;
    bool inconsistent = false;
    std::vector<std::string> notes;
};

inline OmegaReport omega_report(const PureExtensionSpec& spec) {
    OmegaReport rep;
    rep.tag = classify(spec);
    rep.B_used = b_set(spec);

    bool ramified_case_i =
        rep.tag == CaseTag::PurelyRamified && detail::ramified_has_quotient_min(spec);

    if (ramified_case_i) {
        // the positive part of vL/Delta has a minimum: the module is nonzero
        // and no I_alpha/I_beta description is available
        rep.alpha = alpha_of(spec);
        rep.is_zero = false;
        rep.ann_unknown = true;
        rep.notes.push_back("ramified quotient-minimum case: nonzero by the minimal-element "
                            "criterion; annihilator available only through the different oracle "
                            "on concrete inputs");
    } else {
        rep.alpha = alpha_of(spec);
        rep.beta = beta_of(spec);
        rep.module = module_report(*rep.alpha, *rep.beta);
        rep.is_zero = rep.module->is_zero;
        rep.ann = rep.module->ann;
    }

    // cross-checks: every applicable criterion must agree with is_zero
    auto add = [&](const std::string& name, bool says_zero) {
        rep.cross_checks.push_back({name, true, says_zero});
        if (says_zero != rep.is_zero) rep.inconsistent = true;
    };
    const BSet& B = rep.B_used;
    // "p does not divide B" = some element of B is prime to p (that element
    // survives in the derivative of the residue polynomial)
    bool p_not_div_B = false;
    for (long long b : B.values) p_not_div_B = p_not_div_B || spec.p < 2 || b % spec.p != 0;

    switch (rep.tag) {
        case CaseTag::PureDefect:
            if (B.provenance != "none") {
                add("1_in_B", B.values.count(1) > 0);
                add("p_not_dividing_B", p_not_div_B);
            }
            break;
        case CaseTag::BranchedPure: {
            const auto& b = std::get<BranchedPure>(spec.data);
            add("defect_trivial", b.d == 1);
            if (B.provenance != "none") add("p_not_dividing_B", p_not_div_B);
            break;
        }
        case CaseTag::PurelyInertial: {
            const auto& i = std::get<PurelyInertial>(spec.data);
            if (i.residue_minpoly) add("residue_separable", separable(*i.residue_minpoly));
            add("p_not_dividing_B", p_not_div_B);
            break;
        }
        case CaseTag::PurelyRamified: {
            if (!ramified_case_i) {
                ConvexSubgroup delta = detail::ramified_delta(spec);
                ValueInf m = detail::ramified_m(spec);
                bool term_in_delta = !m.is_inf() && delta.contains(m.finite());
                add("coefficient_term_in_Delta", term_in_delta);
                // one-directional corollaries
                const auto& r = std::get<PurelyRamified>(spec.data);
                if (p_not_div_B && B.provenance != "none")
                    add("corollary_p_not_dividing_B", true);
                if (!r.vp.is_inf() && delta.contains(r.vp.finite()))
                    add("corollary_vp_in_Delta", true);
            }
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Concrete inputs
// ---------------------------------------------------------------------------

inline CaseTag classify(const ExtensionField& L) {
    if (L.e > 1 && L.f > 1)
        throw ValidationError("classify: extension is neither purely inertial nor purely ramified");
    if (L.f > 1) {
        // inertial purity requires the residue of eta to generate the residue
        // extension, which forces eta to be a unit
        if (!L.v_eta.is_zero())
            throw ValidationError("classify: eta has nonzero value; its residue does not generate");
        return CaseTag::PurelyInertial;
    }
    return CaseTag::PurelyRamified;
}

/// Synthetic spec extracted from a constructed extension.
inline PureExtensionSpec spec_of(const ExtensionField& L) {
    PureExtensionSpec spec;
    spec.n = L.g.deg();
    spec.p = L.base.p;
    spec.group = L.value_group;
    if (classify(L) == CaseTag::PurelyInertial) {
        spec.data = PurelyInertial{L.residue_poly, std::nullopt, different_monogenic(L)};
    } else {
        std::vector<ValueInf> cv;
        for (long long l = 0; l < spec.n; ++l) {
            FieldElement a = L.g.at(static_cast<int>(l));
            RatInf v = a.val();
            cv.push_back(v.is_inf() ? ValueInf::infinity() : ValueInf(Value(v.finite(), L.value_group)));
        }
        ValueInf vp = L.base.is_padic() ? ValueInf(Value(Rat(1), L.value_group)) : ValueInf::infinity();
        spec.data = PurelyRamified{z_group(), Value(L.v_eta, L.value_group), std::move(cv), vp};
        // base value group embeds as the integer multiples inside (1/e)Z
        std::get<PurelyRamified>(spec.data).vK = make_group({GroupComponent{Rat(1), std::nullopt}});
    }
    return spec;
}

inline OmegaReport omega_report(const ExtensionField& L) {
    OmegaReport rep = omega_report(spec_of(L));
    if (rep.ann_unknown) {
        ValueInf d = different_monogenic(L);
        if (!d.is_inf()) {
            rep.ann_oracle_value = d.finite();
            rep.ann_unknown = false;
            rep.notes.push_back("annihilator value from the different oracle (monogenic ring)");
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Segment sum (pointwise-sum closure) and the two-generator presentation
// ---------------------------------------------------------------------------

inline FinalSegment segment_sum(const FinalSegment& a, const FinalSegment& b) {
    const GroupPtr& g = a.group();
    if (a.is_empty() || b.is_empty()) return FinalSegment::empty(g);
    if (a.is_top() || b.is_top()) return FinalSegment::top(g);
    if (a.is_whole() || b.is_whole()) return FinalSegment::whole(g);
    std::vector<Rat> anchor(g->rank(), Rat(0));
    for (int i = 0; i < g->rank(); ++i) anchor[i] = a.anchor()[i] + b.anchor()[i];
    return FinalSegment::cut(g, std::move(anchor), std::min(a.level(), b.level()),
                             a.strict() || b.strict());
}

/// U = I_{alpha + v r_tilde} and V = I_{v(g'(eta)) + (1-n) v(eta-K)}: the pair
/// presenting the module as U/UV.
inline std::pair<FinalSegment, FinalSegment> ckr_segments(const PureExtensionSpec& spec,
                                                          const Value& v_rtilde) {
    if (classify(spec) != CaseTag::PureDefect)
        throw ValidationError("ckr_segments: defined for the full-defect case only");
    const auto& d = std::get<PureDefect>(spec.data);
    // v_rtilde must lie strictly above every value of v(eta - K)
    switch (d.v_eta_K.kind) {
        case ValueFamily::Kind::FiniteMax:
            throw ValidationError("ckr_segments: v(eta - K) has no maximum for defect specs");
        case ValueFamily::Kind::StrictIncToSup:
            if (cmp(v_rtilde, *d.v_eta_K.sup) == Ord::LT)
                throw ValidationError("ckr_segments: v(r~) must dominate sup v(eta - K)");
            break;
        case ValueFamily::Kind::CofinalInGroup:
            throw ValidationError("ckr_segments: no value dominates a cofinal family");
    }
    FinalSegment u = translate(alpha_of(spec), v_rtilde);
    FinalSegment v =
        segment_of_family(d.v_eta_K, -1, spec.n - 1, d.v_gprime_eta, spec.group);
    return {u, v};
}

// ---------------------------------------------------------------------------
// Artin-Schreier and Kummer specializations
// ---------------------------------------------------------------------------

/// Synthetic full-defect Artin-Schreier spec: g = x^p - x - a, so g'(eta) = -1
/// and v(g'(eta)) = 0; beta degenerates to -p * v(eta - K).
inline PureExtensionSpec as_defect_spec(long long p, GroupPtr group, ValueFamily v_eta_K,
                                        std::optional<std::set<long long>> B = std::nullopt) {
    PureExtensionSpec spec;
    spec.n = p;
    spec.p = p;
    spec.group = group;
    spec.data = PureDefect{std::move(v_eta_K), ValueInf(Value::zero(group)), std::move(B)};
    return spec;
}

inline OmegaReport artin_schreier_report(const PureExtensionSpec& spec) {
    const auto* d = std::get_if<PureDefect>(&spec.data);
    if (!d) throw ValidationError("artin_schreier_report: expected a defect spec");
    if (spec.n != spec.p)
        throw ValidationError("artin_schreier_report: degree must equal p");
    if (!(d->v_gprime_eta == ValueInf(Value::zero(spec.group))))
        throw ValidationError("artin_schreier_report: v(g'(eta)) must be 0 (g' = -1)");
    OmegaReport rep = omega_report(spec);
    rep.notes.push_back("Artin-Schreier: beta = -p * v(eta - K)");
    return rep;
}

/// Concrete Artin-Schreier: g = x^p - x - a over an equal-characteristic base.
inline OmegaReport artin_schreier_report(const BaseField& K, const FieldElement& a) {
    if (K.char_K() != K.p || K.p < 2)
        throw ValidationError("artin_schreier_report: base must have characteristic p");
    std::vector<FieldElement> c(static_cast<size_t>(K.p) + 1, FieldElement::zero(K));
    c[0] = -a;
    c[1] = FieldElement::from_int(K, -1);
    c[static_cast<size_t>(K.p)] = FieldElement::one(K);
    ExtensionField L = build_extension(K, Poly(K, std::move(c)));
    OmegaReport rep = omega_report(L);
    rep.notes.push_back("Artin-Schreier: concrete input");
    return rep;
}

/// Synthetic full-defect Kummer spec with v(eta) normalized to 0:
/// beta = vp - p * v(eta - K).
inline PureExtensionSpec kummer_defect_spec(long long p, GroupPtr group, ValueFamily v_eta_K,
                                            const ValueInf& vp,
                                            std::optional<std::set<long long>> B = std::nullopt) {
    PureExtensionSpec spec;
    spec.n = p;
    spec.p = p;
    spec.group = group;
    spec.data = PureDefect{std::move(v_eta_K), vp, std::move(B)};
    return spec;
}

/// Synthetic purely ramified Kummer spec: g = x^q - a, all middle coefficients
/// zero, v(a) = q * gamma.
inline PureExtensionSpec kummer_ramified_spec(long long q, long long p, GroupPtr vL, GroupPtr vK,
                                              Value gamma, const ValueInf& vp) {
    PureExtensionSpec spec;
    spec.n = q;
    spec.p = p;
    spec.group = vL;
    std::vector<ValueInf> cv;
    cv.push_back(ValueInf(gamma.scaled(q)));
    for (long long l = 1; l < q; ++l) cv.push_back(ValueInf::infinity());
    spec.data = PurelyRamified{std::move(vK), std::move(gamma), std::move(cv), vp};
    return spec;
}

/// Concrete Kummer: g = x^q - a.
inline OmegaReport kummer_report(const BaseField& K, const FieldElement& a, long long q) {
    if (q < 2) throw ValidationError("kummer_report: q must be at least 2");
    std::vector<FieldElement> c(static_cast<size_t>(q) + 1, FieldElement::zero(K));
    c[0] = -a;
    c[static_cast<size_t>(q)] = FieldElement::one(K);
    ExtensionField L = build_extension(K, Poly(K, std::move(c)));
    OmegaReport rep = omega_report(L);
    rep.notes.push_back("Kummer: concrete input, q = " + std::to_string(q));
    return rep;
}

inline OmegaReport kummer_report(const PureExtensionSpec& spec) {
    OmegaReport rep = omega_report(spec);
    rep.notes.push_back("Kummer specialization");
    return rep;
}

}  // namespace valomega
