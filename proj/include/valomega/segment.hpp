#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "valomega/ordgrp.hpp"

namespace valomega {

struct UnsupportedForm : std::runtime_error {
    explicit UnsupportedForm(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A final segment of Gamma with infinity adjoined, kept in canonical form.
///
/// Cut segments are {x : proj(x) REL proj(anchor)} + {inf}, where proj takes
/// the first level-1 coordinates and REL is >= (closed) or > (strict). The
/// anchor may lie outside the group (suprema not attained in Gamma).
/// Canonical invariants: suffix coordinates of the anchor are zero; closed
/// anchors are representable in the quotient; strict forms survive only when
/// the quotient has no minimum above the anchor; level == 1 collapses to
/// Whole. This makes set equality a structural comparison.
class FinalSegment {
public:
    enum class Kind { Whole, Top, Empty, Cut };

    static FinalSegment whole(GroupPtr g) { return FinalSegment(Kind::Whole, std::move(g)); }
    static FinalSegment top(GroupPtr g) { return FinalSegment(Kind::Top, std::move(g)); }
    static FinalSegment empty(GroupPtr g) { return FinalSegment(Kind::Empty, std::move(g)); }

    static FinalSegment closed_at(const Value& s) {
        return make_cut(s.group(), s.coords(), s.group()->rank() + 1, false);
    }
    static FinalSegment open_at(const Value& s) {
        return make_cut(s.group(), s.coords(), s.group()->rank() + 1, true);
    }
    static FinalSegment open_ext(const ExtValue& rho, const GroupPtr& g) {
        if (rho.rank() != g->rank()) throw RankMismatch();
        // {x in Gamma : x > rho}; >= and > coincide when rho is not in Gamma,
        // and for rho in Gamma the strict form is intended.
        return make_cut(g, rho.coords, g->rank() + 1, true);
    }
    static FinalSegment closed_mod(const Value& s, const ConvexSubgroup& d) {
        return make_cut(s.group(), s.coords(), d.suffix_start, false);
    }
    static FinalSegment open_mod(const Value& s, const ConvexSubgroup& d) {
        return make_cut(s.group(), s.coords(), d.suffix_start, true);
    }
    /// Cut with an anchor that may lie outside the group.
    static FinalSegment cut(const GroupPtr& g, std::vector<Rat> anchor, int level, bool strict) {
        return make_cut(g, std::move(anchor), level, strict);
    }

    Kind kind() const { return kind_; }
    const GroupPtr& group() const { return group_; }
    /// Anchor coordinates (Cut only); suffix coordinates are zero.
    const std::vector<Rat>& anchor() const { return anchor_; }
    int level() const { return level_; }
    bool strict() const { return strict_; }

    bool is_whole() const { return kind_ == Kind::Whole; }
    bool is_top() const { return kind_ == Kind::Top; }
    bool is_empty() const { return kind_ == Kind::Empty; }
    bool is_cut() const { return kind_ == Kind::Cut; }

    std::string str() const {
        switch (kind_) {
            case Kind::Whole: return "whole";
            case Kind::Top: return "top";
            case Kind::Empty: return "empty";
            case Kind::Cut: {
                std::string s = strict_ ? "open(" : "closed(";
                s += coords_str(anchor_);
                if (level_ != group_->rank() + 1) s += ", mod " + std::to_string(level_);
                return s + ")";
            }
        }
        return "?";
    }

private:
    FinalSegment(Kind k, GroupPtr g) : kind_(k), group_(std::move(g)) {}

    static FinalSegment make_cut(const GroupPtr& g, std::vector<Rat> anchor, int level, bool strict) {
        if (static_cast<int>(anchor.size()) != g->rank()) throw RankMismatch();
        if (level < 1 || level > g->rank() + 1) throw std::invalid_argument("FinalSegment: bad level");
        if (level == 1) return whole(g);
        for (int k = level; k <= g->rank(); ++k) anchor[k - 1] = Rat(0);
        // A bad (unrepresentable) coordinate turns >= into > and decides the
        // lexicographic comparison, so the level shrinks to just past it.
        for (int k = 1; k <= level - 1; ++k) {
            if (!g->comp(k).contains(anchor[k - 1])) {
                strict = true;
                if (k + 1 < level) {
                    level = k + 1;
                    for (int j = level; j <= g->rank(); ++j) anchor[j - 1] = Rat(0);
                }
                break;
            }
        }
        if (strict) {
            if (auto m = min_above(g, anchor, level, true)) {
                FinalSegment s(Kind::Cut, g);
                s.anchor_ = m->coords();
                s.level_ = level;
                s.strict_ = false;
                return s;
            }
        }
        FinalSegment s(Kind::Cut, g);
        s.anchor_ = std::move(anchor);
        s.level_ = level;
        s.strict_ = strict;
        return s;
    }

    Kind kind_;
    GroupPtr group_;
    std::vector<Rat> anchor_;
    int level_ = 1;
    bool strict_ = false;
};

inline Ord prefix_cmp(const std::vector<Rat>& a, const std::vector<Rat>& b, int len) {
    for (int i = 0; i < len; ++i) {
        if (a[i] < b[i]) return Ord::LT;
        if (b[i] < a[i]) return Ord::GT;
    }
    return Ord::EQ;
}

inline bool member(const FinalSegment& s, const ValueInf& x) {
    if (x.is_inf()) return !s.is_empty();
    switch (s.kind()) {
        case FinalSegment::Kind::Whole: return true;
        case FinalSegment::Kind::Top: return false;
        case FinalSegment::Kind::Empty: return false;
        case FinalSegment::Kind::Cut: {
            const Value& v = x.finite();
            if (v.rank() != s.group()->rank()) throw RankMismatch();
            Ord o = prefix_cmp(v.coords(), s.anchor(), s.level() - 1);
            return s.strict() ? o == Ord::GT : o != Ord::LT;
        }
    }
    return false;
}

inline bool seg_equal(const FinalSegment& a, const FinalSegment& b) {
    if (a.kind() != b.kind()) return false;
    if (!a.is_cut()) return true;
    if (a.group()->rank() != b.group()->rank()) throw RankMismatch();
    return a.level() == b.level() && a.strict() == b.strict() &&
           prefix_cmp(a.anchor(), b.anchor(), a.level() - 1) == Ord::EQ;
}

inline FinalSegment translate(const FinalSegment& s, const Value& t) {
    if (!s.is_cut()) return s;
    std::vector<Rat> anchor = s.anchor();
    for (int i = 0; i < s.group()->rank(); ++i) anchor[i] += t.coords()[i];
    return FinalSegment::cut(s.group(), std::move(anchor), s.level(), s.strict());
}

inline std::optional<ValueInf> has_min(const FinalSegment& s) {
    switch (s.kind()) {
        case FinalSegment::Kind::Whole: return std::nullopt;
        case FinalSegment::Kind::Top: return ValueInf::infinity();
        case FinalSegment::Kind::Empty: return std::nullopt;
        case FinalSegment::Kind::Cut:
            if (s.strict() || s.level() != s.group()->rank() + 1) return std::nullopt;
            return ValueInf(Value(s.anchor(), s.group()));
    }
    return std::nullopt;
}

inline ConvexSubgroup invariance_subgroup(const FinalSegment& s) {
    if (!s.is_cut()) return ConvexSubgroup{1};
    return ConvexSubgroup{s.level()};
}

/// The final segment {b in Gamma : b + alpha is contained in beta}.
inline FinalSegment annihilator_segment(const FinalSegment& alpha, const FinalSegment& beta) {
    const GroupPtr& g = alpha.group();
    if (beta.is_whole()) return FinalSegment::whole(g);
    if (alpha.is_whole()) return FinalSegment::empty(g);
    if (alpha.is_empty()) return FinalSegment::whole(g);
    if (alpha.is_top()) return beta.is_empty() ? FinalSegment::empty(g) : FinalSegment::whole(g);
    if (beta.is_top() || beta.is_empty()) return FinalSegment::empty(g);
    // both cuts
    int ja = alpha.level(), jb = beta.level();
    int jm = std::min(ja, jb);
    std::vector<Rat> tau(g->rank(), Rat(0));
    for (int i = 0; i < jm - 1; ++i) tau[i] = beta.anchor()[i] - alpha.anchor()[i];
    bool closed;
    if (!alpha.strict())
        closed = !beta.strict() && jb <= ja;
    else
        closed = !beta.strict() || jb >= ja;
    return FinalSegment::cut(g, std::move(tau), jm, !closed);
}

/// Decides S subset of T on canonical forms.
inline bool seg_subset(const FinalSegment& s, const FinalSegment& t) {
    if (s.is_empty() || t.is_whole()) return true;
    if (s.is_top()) return !t.is_empty();
    if (t.is_top() || t.is_empty()) return false;  // s is Whole or Cut here
    if (s.is_whole()) return t.is_whole();
    // both cuts: S subset of T iff 0 translates S into T
    FinalSegment ann = annihilator_segment(s, t);
    return member(ann, ValueInf(Value::zero(s.group())));
}

/// Descriptor of a value set such as v(eta - K).
struct ValueFamily {
    enum class Kind { FiniteMax, StrictIncToSup, CofinalInGroup };
    Kind kind;
    std::vector<Value> values;       // FiniteMax: sorted ascending, max at back
    std::optional<ExtValue> sup;     // StrictIncToSup: unattained supremum
    std::vector<Value> witness;      // StrictIncToSup: optional increasing sample

    static ValueFamily finite_max(std::vector<Value> vals) {
        if (vals.empty()) throw ValidationError("ValueFamily: finite_max needs at least one value");
        std::sort(vals.begin(), vals.end(), [](const Value& a, const Value& b) { return a < b; });
        return ValueFamily{Kind::FiniteMax, std::move(vals), std::nullopt, {}};
    }
    static ValueFamily inc_to_sup(ExtValue sup, std::vector<Value> witness = {}) {
        for (size_t i = 0; i < witness.size(); ++i) {
            if (cmp(witness[i], sup) != Ord::LT)
                throw ValidationError("ValueFamily: witness value not below sup");
            if (i > 0 && !(witness[i - 1] < witness[i]))
                throw ValidationError("ValueFamily: witness values must strictly increase");
        }
        return ValueFamily{Kind::StrictIncToSup, {}, std::move(sup), std::move(witness)};
    }
    static ValueFamily cofinal() { return ValueFamily{Kind::CofinalInGroup, {}, std::nullopt, {}}; }

    const Value& max() const {
        if (kind != Kind::FiniteMax) throw std::logic_error("ValueFamily: no attained max");
        return values.back();
    }
};

/// The smallest final segment containing {offset + sign*scale*x : x in F}.
inline FinalSegment segment_of_family(const ValueFamily& f, int sign, long long scale, const ValueInf& offset,
                                      const GroupPtr& g) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("segment_of_family: sign must be +-1");
    if (scale <= 0) throw std::invalid_argument("segment_of_family: scale must be positive");
    if (offset.is_inf()) return FinalSegment::top(g);
    const Value& off = offset.finite();
    switch (f.kind) {
        case ValueFamily::Kind::FiniteMax: {
            const Value& ext = sign < 0 ? f.values.back() : f.values.front();
            return FinalSegment::closed_at(off + ext.scaled(sign * scale));
        }
        case ValueFamily::Kind::StrictIncToSup: {
            if (sign > 0)
                throw UnsupportedForm("segment_of_family: +1 sign on an unattained-sup family");
            std::vector<Rat> c(g->rank());
            for (int i = 0; i < g->rank(); ++i)
                c[i] = off.coords()[i] - Rat(scale) * f.sup->coords[i];
            return FinalSegment::open_ext(ExtValue(std::move(c)), g);
        }
        case ValueFamily::Kind::CofinalInGroup:
            if (sign > 0) throw UnsupportedForm("segment_of_family: +1 sign on a cofinal family");
            return FinalSegment::whole(g);
    }
    throw std::logic_error("unreachable");
}

/// Structure flags of the module I_alpha / I_beta.
struct ModuleReport {
    FinalSegment alpha;
    FinalSegment beta;
    bool is_zero;
    FinalSegment ann;
    bool fin_gen;
    bool fin_pres;
    bool single_generator;
};

inline ModuleReport module_report(const FinalSegment& alpha, const FinalSegment& beta) {
    if (!seg_subset(beta, alpha))
        throw ValidationError("module_report: beta is not contained in alpha (alpha=" + alpha.str() +
                              ", beta=" + beta.str() + ")");
    bool is_zero = seg_equal(alpha, beta);
    // the zero module is finitely presented regardless of segment shape
    bool fin_gen = is_zero || has_min(alpha).has_value();
    bool fin_pres = fin_gen && (is_zero || has_min(beta).has_value());
    FinalSegment ann = annihilator_segment(alpha, beta);
    return ModuleReport{alpha, beta, is_zero, ann, fin_gen, fin_pres, fin_gen && !is_zero};
}

}  // namespace valomega
