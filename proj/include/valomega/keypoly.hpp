#pragma once

#include <random>

#include "valomega/valfield.hpp"

namespace valomega {

struct RamifiedValue : std::runtime_error {
    explicit RamifiedValue(const std::string& what) : std::runtime_error(what) {}
};
struct NoStabilizationWitnessed : std::runtime_error {
    explicit NoStabilizationWitnessed(const std::string& what) : std::runtime_error(what) {}
};
struct IncompleteKeySet : std::runtime_error {
    explicit IncompleteKeySet(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// q-expansions
// ---------------------------------------------------------------------------

/// f = sum coeffs[l] * q^l with deg(coeffs[l]) < deg(q).
struct Expansion {
    Poly q;
    std::vector<Poly> coeffs;

    Poly reconstruct() const {
        Poly acc(q.field());
        for (int l = static_cast<int>(coeffs.size()) - 1; l >= 0; --l) acc = acc * q + coeffs[l];
        return acc;
    }
};

inline Expansion q_expand(const Poly& f, const Poly& q) {
    if (q.deg() < 1 || !q.is_monic()) throw ValidationError("q_expand: q must be monic of degree >= 1");
    Expansion e{q, {}};
    Poly rest = f;
    while (!rest.is_zero()) {
        auto [quot, rem] = Poly::divmod(rest, q);
        e.coeffs.push_back(rem);
        rest = quot;
    }
    if (e.coeffs.empty()) e.coeffs.push_back(Poly(f.field()));
    return e;
}

/// Truncated valuation nu_q(f) = min_l ( v(f_l(eta)) + l * v(q(eta)) ).
inline ValueInf truncation(const Poly& f, const Poly& q, const ExtensionField& L) {
    Expansion e = q_expand(f, q);
    ValueInf vq = eval_val(q, L);
    ValueInf best = ValueInf::infinity();
    for (size_t l = 0; l < e.coeffs.size(); ++l) {
        ValueInf term = eval_val(e.coeffs[l], L);
        for (size_t i = 0; i < l; ++i) term = term + vq;
        best = vmin(best, term);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Hasse derivatives and Newton polygons
// ---------------------------------------------------------------------------

/// s-th Hasse-Schmidt derivative: the coefficient of T^s in f(x+T).
/// Characteristic-safe (binomial coefficients are computed over the integers
/// before mapping into the field).
inline Poly hasse_derivative(const Poly& f, int s) {
    if (s < 0) throw ValidationError("hasse_derivative: negative order");
    const BaseField& K = f.field();
    std::vector<FieldElement> out;
    for (int k = s; k <= f.deg(); ++k) {
        Int binom = 1;
        for (int i = 0; i < s; ++i) binom = binom * (k - i) / (i + 1);
        out.push_back(f.at(k) * FieldElement::from_bigint(K, binom));
    }
    return Poly(K, std::move(out));
}

/// Lower convex hull of points (s, value); slopes weakly increasing.
struct NewtonPolygon {
    std::vector<std::pair<long long, Rat>> vertices;
    std::vector<std::pair<Rat, long long>> slopes;  // (slope, horizontal length)

    static NewtonPolygon of(const std::vector<std::pair<long long, RatInf>>& pts) {
        std::vector<std::pair<long long, Rat>> fin;
        for (const auto& [s, v] : pts)
            if (!v.is_inf()) fin.emplace_back(s, v.finite());
        std::sort(fin.begin(), fin.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        NewtonPolygon np;
        for (const auto& pt : fin) {
            while (np.vertices.size() >= 2) {
                const auto& a = np.vertices[np.vertices.size() - 2];
                const auto& b = np.vertices.back();
                // drop b if it lies on or above segment a..pt
                Rat lhs = (b.second - a.second) * Rat(pt.first - a.first);
                Rat rhs = (pt.second - a.second) * Rat(b.first - a.first);
                if (lhs >= rhs) np.vertices.pop_back();
                else break;
            }
            np.vertices.push_back(pt);
        }
        for (size_t i = 1; i < np.vertices.size(); ++i) {
            long long w = np.vertices[i].first - np.vertices[i - 1].first;
            Rat sl = (np.vertices[i].second - np.vertices[i - 1].second) / Rat(w);
            np.slopes.emplace_back(sl, w);
        }
        return np;
    }
};

/// delta(f) = max valuation of a root of f, computed from the Newton polygon
/// of f(eta + T): the root values v(eta - a) are the negated polygon slopes,
/// so the maximum is -(first slope). Infinity iff f(eta) = 0.
inline ValueInf delta(const Poly& f, const ExtensionField& L) {
    if (f.deg() < 1) throw ValidationError("delta: constant polynomial has no roots");
    std::vector<std::pair<long long, RatInf>> pts;
    for (int s = 0; s <= f.deg(); ++s) {
        ValueInf v = eval_val(hasse_derivative(f, s), L);
        pts.emplace_back(s, v.is_inf() ? RatInf::infinity() : RatInf(v.finite().coords()[0]));
    }
    if (pts[0].second.is_inf()) return ValueInf::infinity();
    NewtonPolygon np = NewtonPolygon::of(pts);
    if (np.slopes.empty()) throw std::logic_error("delta: degenerate polygon");
    Rat m = -np.slopes.front().first;
    // root values may lie in the divisible hull of vL; widen the group if needed
    if (L.value_group->contains({m})) return ValueInf(Value(m, L.value_group));
    Int den = m.den() * L.e / boost::multiprecision::gcd(m.den(), Int(L.e));
    GroupPtr wide = make_group({GroupComponent{Rat(1, den), std::nullopt}});
    return ValueInf(Value(m, wide));
}

/// Relative comparator between two candidates (see delta).
inline Ord delta_cmp(const Poly& a, const Poly& b, const ExtensionField& L) {
    return cmp(delta(a, L), delta(b, L));
}

// ---------------------------------------------------------------------------
// Normalization and monomial rewriting
// ---------------------------------------------------------------------------

/// Scale each q (except the minimal polynomial g itself) by a scalar of
/// matching value so that v(q(eta)) = 0. Throws RamifiedValue when no scalar
/// in K has the required value.
inline std::vector<Poly> normalize_proportional(const std::vector<Poly>& qs, const ExtensionField& L) {
    std::vector<Poly> out;
    for (const auto& q : qs) {
        if (q.deg() == L.g.deg()) {
            out.push_back(q);  // the support generator stays untouched
            continue;
        }
        ValueInf v = eval_val(q, L);
        if (v.is_inf()) throw ValidationError("normalize_proportional: q(eta) = 0 for q != g");
        Rat r = v.finite().coords()[0];
        if (r.is_zero()) {
            out.push_back(q);
            continue;
        }
        if (r.den() != 1)
            throw RamifiedValue("normalize_proportional: v(q(eta)) = " + r.str() +
                                " is not attained by any scalar of K");
        FieldElement a = FieldElement::uniformizer_pow(L.base, r.num().convert_to<long long>());
        out.push_back(q.scaled(FieldElement::one(L.base) / a));
    }
    return out;
}

/// One monomial a * prod_i qs[i]^powers[i] of a rewriting.
struct RewriteTerm {
    FieldElement coeff;
    std::vector<int> powers;  // aligned with the generator list
};

namespace detail {

inline void rewrite_rec(const Poly& f, const std::vector<Poly>& qs, std::vector<int> pow,
                        std::vector<RewriteTerm>& out) {
    if (f.is_zero()) return;
    if (f.deg() == 0) {
        out.push_back(RewriteTerm{f.at(0), std::move(pow)});
        return;
    }
    int best = -1;
    for (size_t i = 0; i < qs.size(); ++i)
        if (qs[i].deg() >= 1 && qs[i].deg() <= f.deg() &&
            (best < 0 || qs[i].deg() > qs[best].deg()))
            best = static_cast<int>(i);
    if (best < 0)
        throw IncompleteKeySet("rewrite: no generator of degree <= " + std::to_string(f.deg()));
    Expansion e = q_expand(f, qs[best]);
    for (size_t l = 0; l < e.coeffs.size(); ++l) {
        std::vector<int> p2 = pow;
        p2[best] += static_cast<int>(l);
        rewrite_rec(e.coeffs[l], qs, std::move(p2), out);
    }
}

}  // namespace detail

/// Rewrite f (with v(f(eta)) >= 0) as sum a_l * Q^{lambda_l} with every
/// a_l integral and min v(a_l) = v(f(eta)). All three postconditions are
/// checked before returning.
inline std::vector<RewriteTerm> rewrite_nonneg(const Poly& f, const std::vector<Poly>& qs,
                                               const ExtensionField& L) {
    ValueInf nu = eval_val(f, L);
    if (nu.is_inf()) throw ValidationError("rewrite_nonneg: f lies in the support ideal");
    if (nu.finite().coords()[0] < Rat(0)) throw ValidationError("rewrite_nonneg: v(f(eta)) < 0");
    std::vector<RewriteTerm> terms;
    detail::rewrite_rec(f, qs, std::vector<int>(qs.size(), 0), terms);
    // postconditions: exact reconstruction, integral coefficients, min value
    Poly recon(f.field());
    RatInf minv = RatInf::infinity();
    for (const auto& t : terms) {
        Poly mono(f.field(), {t.coeff});
        for (size_t i = 0; i < qs.size(); ++i)
            for (int k = 0; k < t.powers[i]; ++k) mono = mono * qs[i];
        recon = recon + mono;
        RatInf va = t.coeff.val();
        if (!va.is_inf() && va.finite() < Rat(0))
            throw RamifiedValue("rewrite_nonneg: non-integral coefficient produced; "
                                "the generator set is not complete at value 0");
        minv = rmin(minv, va);
    }
    Poly diff = recon - f;
    for (const auto& c : diff.coeffs())
        if (!c.eq(FieldElement::zero(f.field())))
            throw std::logic_error("rewrite_nonneg: reconstruction mismatch");
    if (!(minv == RatInf(nu.finite().coords()[0])))
        throw IncompleteKeySet("rewrite_nonneg: min coefficient value " + minv.str() +
                               " differs from v(f(eta)) = " + nu.finite().coords()[0].str() +
                               "; the generator set is not complete for this degree");
    return terms;
}

// ---------------------------------------------------------------------------
// Stable values over witness sequences
// ---------------------------------------------------------------------------

/// Detect an eventually-constant tail in a witness sequence of values and
/// return the stable value; refuse rather than extrapolate.
inline ValueInf stable_value(const std::vector<ValueInf>& witnesses, int min_run = 3) {
    if (witnesses.empty()) throw NoStabilizationWitnessed("stable_value: empty witness sequence");
    const ValueInf& last = witnesses.back();
    int run = 0;
    for (auto it = witnesses.rbegin(); it != witnesses.rend() && *it == last; ++it) ++run;
    if (run < min_run)
        throw NoStabilizationWitnessed("stable_value: tail run of length " + std::to_string(run) +
                                       " is below the witness horizon " + std::to_string(min_run));
    return last;
}

/// Witness sequence from explicit approximants c_i in K: values v(f(c_i)).
inline ValueInf stable_value(const Poly& f, const std::vector<FieldElement>& approximants,
                             const GroupPtr& g, int min_run = 3) {
    std::vector<ValueInf> w;
    for (const auto& c : approximants) {
        RatInf v = f.eval(c).val();
        w.push_back(v.is_inf() ? ValueInf::infinity() : ValueInf(Value(v.finite(), g)));
    }
    return stable_value(w, min_run);
}

// ---------------------------------------------------------------------------
// Sampled generation check
// ---------------------------------------------------------------------------

struct GenerationVerdict {
    bool pass = true;
    long long samples = 0;
    std::optional<Poly> counterexample;
};

namespace detail {

/// Random element of K with v >= minval (minval may be negative).
inline FieldElement sample_elem(const BaseField& K, long long minval, std::mt19937& rng) {
    std::uniform_int_distribution<long long> shift(0, 3), unit(1, 20);
    long long u = unit(rng);
    while (u % K.p == 0) u = unit(rng);
    long long v = minval + shift(rng);
    return FieldElement::from_int(K, u) * FieldElement::uniformizer_pow(K, v);
}

}  // namespace detail

/// Sampled oracle: draw random integral elements b of L (as polynomials in
/// eta with v(b) >= 0) and verify each is a O_K-polynomial expression in the
/// generators after reduction mod g. Probabilistic; a pass is evidence, not
/// proof.
inline GenerationVerdict check_generation(const ExtensionField& L, const std::vector<Poly>& generators,
                                          long long trials, std::uint64_t seed) {
    std::mt19937 rng(static_cast<unsigned>(seed));
    GenerationVerdict verdict;
    std::vector<Poly> qs;
    try {
        qs = normalize_proportional(generators, L);
    } catch (const RamifiedValue&) {
        qs = generators;  // ramified values: fall back to the raw generators
    }
    int n = L.g.deg();
    for (long long t = 0; t < trials; ++t) {
        std::vector<FieldElement> c;
        for (int s = 0; s < n; ++s) {
            // v(b_s) >= ceil(-s * v_eta) keeps v(b_s eta^s) >= 0
            Rat bound = -Rat(s) * L.v_eta;
            c.push_back(detail::sample_elem(L.base, bound.ceil().convert_to<long long>(), rng));
        }
        Poly b(L.base, std::move(c));
        if (b.is_zero()) continue;
        ++verdict.samples;
        // representability in O_K[Q]: rewrite and require integral coefficients
        // (the min-value property is not demanded here; it needs value-0
        // normalized generators, which ramified cases legitimately lack)
        std::vector<RewriteTerm> terms;
        try {
            detail::rewrite_rec(b, qs, std::vector<int>(qs.size(), 0), terms);
        } catch (const IncompleteKeySet&) {
            verdict.pass = false;
            verdict.counterexample = b;
            return verdict;
        }
        for (const auto& term : terms) {
            RatInf va = term.coeff.val();
            if (!va.is_inf() && va.finite() < Rat(0)) {
                verdict.pass = false;
                verdict.counterexample = b;
                return verdict;
            }
        }
    }
    return verdict;
}

}  // namespace valomega
