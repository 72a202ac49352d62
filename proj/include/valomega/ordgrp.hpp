#pragma once

#include <memory>
#include <optional>
#include <sstream>
#include <vector>

#include "valomega/rational.hpp"

namespace valomega {

struct RankMismatch : std::runtime_error {
    RankMismatch() : std::runtime_error("ordered group: rank mismatch") {}
};

enum class Ord { LT, EQ, GT };

/// One rank-one factor of a lexicographic product: c*Z, or c*Z[1/ell].
struct GroupComponent {
    Rat gen;                           // c > 0
    std::optional<long long> div;      // prime ell, or nullopt for c*Z

    bool contains(const Rat& x) const {
        Rat q = x / gen;
        if (!div) return q.is_integer();
        return den_is_power_of(q.den(), Int(*div));
    }
    bool dense() const { return div.has_value(); }
};

/// Finite-rank ordered abelian group realized as a lexicographic product of
/// rank-one subgroups of Q, coordinate 1 most significant.
class ValueGroup {
public:
    explicit ValueGroup(std::vector<GroupComponent> comps) : comps_(std::move(comps)) {
        if (comps_.empty()) throw std::invalid_argument("ValueGroup: rank must be positive");
        for (const auto& c : comps_) {
            if (c.gen.sign() <= 0) throw std::invalid_argument("ValueGroup: generator must be positive");
            if (c.div && *c.div < 2) throw std::invalid_argument("ValueGroup: divisibility prime must be >= 2");
        }
    }

    int rank() const { return static_cast<int>(comps_.size()); }
    const GroupComponent& comp(int k) const { return comps_.at(k - 1); }  // 1-based

    bool contains(const std::vector<Rat>& coords) const {
        if (static_cast<int>(coords.size()) != rank()) throw RankMismatch();
        for (int k = 1; k <= rank(); ++k)
            if (!comp(k).contains(coords[k - 1])) return false;
        return true;
    }

private:
    std::vector<GroupComponent> comps_;
};

using GroupPtr = std::shared_ptr<const ValueGroup>;

inline GroupPtr make_group(std::vector<GroupComponent> comps) {
    return std::make_shared<const ValueGroup>(std::move(comps));
}

/// Rank-one discrete group Z (convenience).
inline GroupPtr z_group() { return make_group({GroupComponent{Rat(1), std::nullopt}}); }

inline Ord lex_cmp(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.size() != b.size()) throw RankMismatch();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return Ord::LT;
        if (b[i] < a[i]) return Ord::GT;
    }
    return Ord::EQ;
}

inline std::string coords_str(const std::vector<Rat>& c) {
    if (c.size() == 1) return c[0].str();
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i].str();
    os << ")";
    return os.str();
}

/// An element of a ValueGroup.
class Value {
public:
    Value(std::vector<Rat> coords, GroupPtr group) : coords_(std::move(coords)), group_(std::move(group)) {
        if (!group_->contains(coords_))
            throw std::invalid_argument("Value: coordinates " + coords_str(coords_) + " not in group");
    }
    /// Rank-one convenience.
    Value(Rat x, GroupPtr group) : Value(std::vector<Rat>{std::move(x)}, std::move(group)) {}

    const std::vector<Rat>& coords() const { return coords_; }
    const GroupPtr& group() const { return group_; }
    int rank() const { return static_cast<int>(coords_.size()); }

    Value operator+(const Value& o) const { return combined(o, +1); }
    Value operator-(const Value& o) const { return combined(o, -1); }
    Value operator-() const {
        std::vector<Rat> c;
        for (const auto& x : coords_) c.push_back(-x);
        return Value(std::move(c), group_);
    }
    Value scaled(long long k) const {
        std::vector<Rat> c;
        for (const auto& x : coords_) c.push_back(x * Rat(k));
        return Value(std::move(c), group_);
    }

    bool is_zero() const {
        for (const auto& x : coords_)
            if (!x.is_zero()) return false;
        return true;
    }

    static Value zero(const GroupPtr& g) { return Value(std::vector<Rat>(g->rank(), Rat(0)), g); }

    std::string str() const { return coords_str(coords_); }

private:
    Value combined(const Value& o, int sign) const {
        if (o.rank() != rank()) throw RankMismatch();
        std::vector<Rat> c;
        for (int i = 0; i < rank(); ++i) c.push_back(sign > 0 ? coords_[i] + o.coords_[i] : coords_[i] - o.coords_[i]);
        return Value(std::move(c), group_);
    }

    std::vector<Rat> coords_;
    GroupPtr group_;
};

/// A point of Q^r that need not lie in the group (suprema like rho = sup v(eta-K)).
struct ExtValue {
    std::vector<Rat> coords;

    ExtValue() = default;
    explicit ExtValue(std::vector<Rat> c) : coords(std::move(c)) {}
    explicit ExtValue(Rat x) : coords{std::move(x)} {}
    ExtValue(const Value& v) : coords(v.coords()) {}

    int rank() const { return static_cast<int>(coords.size()); }
    std::string str() const { return coords_str(coords); }
};

inline Ord cmp(const Value& a, const Value& b) { return lex_cmp(a.coords(), b.coords()); }
inline Ord cmp(const ExtValue& a, const ExtValue& b) { return lex_cmp(a.coords, b.coords); }
inline Ord cmp(const Value& a, const ExtValue& b) { return lex_cmp(a.coords(), b.coords); }
inline Ord cmp(const ExtValue& a, const Value& b) { return lex_cmp(a.coords, b.coords()); }

inline bool operator==(const Value& a, const Value& b) { return cmp(a, b) == Ord::EQ; }
inline bool operator<(const Value& a, const Value& b) { return cmp(a, b) == Ord::LT; }
inline bool operator>(const Value& a, const Value& b) { return cmp(a, b) == Ord::GT; }
inline bool operator<=(const Value& a, const Value& b) { return cmp(a, b) != Ord::GT; }
inline bool operator>=(const Value& a, const Value& b) { return cmp(a, b) != Ord::LT; }

/// Gamma with infinity adjoined. Infinity absorbs addition and exceeds every value.
class ValueInf {
public:
    ValueInf() = default;  // infinity
    ValueInf(Value v) : v_(std::move(v)) {}
    static ValueInf infinity() { return ValueInf(); }

    bool is_inf() const { return !v_.has_value(); }
    const Value& finite() const {
        if (is_inf()) throw std::logic_error("ValueInf: infinite");
        return *v_;
    }

    ValueInf operator+(const ValueInf& o) const {
        if (is_inf() || o.is_inf()) return infinity();
        return ValueInf(*v_ + *o.v_);
    }
    ValueInf operator+(const Value& o) const { return is_inf() ? infinity() : ValueInf(*v_ + o); }
    ValueInf operator-(const Value& o) const { return is_inf() ? infinity() : ValueInf(*v_ - o); }
    ValueInf scaled(long long k) const { return is_inf() ? infinity() : ValueInf(v_->scaled(k)); }

    friend Ord cmp(const ValueInf& a, const ValueInf& b) {
        if (a.is_inf() && b.is_inf()) return Ord::EQ;
        if (a.is_inf()) return Ord::GT;
        if (b.is_inf()) return Ord::LT;
        return cmp(*a.v_, *b.v_);
    }
    friend bool operator==(const ValueInf& a, const ValueInf& b) { return cmp(a, b) == Ord::EQ; }
    friend bool operator<(const ValueInf& a, const ValueInf& b) { return cmp(a, b) == Ord::LT; }
    friend bool operator>(const ValueInf& a, const ValueInf& b) { return cmp(a, b) == Ord::GT; }
    friend bool operator<=(const ValueInf& a, const ValueInf& b) { return cmp(a, b) != Ord::GT; }
    friend bool operator>=(const ValueInf& a, const ValueInf& b) { return cmp(a, b) != Ord::LT; }

    std::string str() const { return is_inf() ? "inf" : v_->str(); }

private:
    std::optional<Value> v_;
};

inline ValueInf vmin(const ValueInf& a, const ValueInf& b) { return a <= b ? a : b; }
inline ValueInf vmax(const ValueInf& a, const ValueInf& b) { return a >= b ? a : b; }

/// Convex subgroup of a lexicographic product: the suffix subgroup
/// {x : x_1 = ... = x_{j-1} = 0}. j = rank+1 is trivial, j = 1 the whole group.
struct ConvexSubgroup {
    int suffix_start;  // 1 .. rank+1

    bool is_trivial(int rank) const { return suffix_start == rank + 1; }
    bool is_whole() const { return suffix_start == 1; }
    bool contains(const Value& x) const {
        for (int k = 1; k < suffix_start; ++k)
            if (!x.coords()[k - 1].is_zero()) return false;
        return true;
    }
    friend bool operator==(const ConvexSubgroup& a, const ConvexSubgroup& b) {
        return a.suffix_start == b.suffix_start;
    }
};

inline ConvexSubgroup trivial_subgroup(const GroupPtr& g) { return ConvexSubgroup{g->rank() + 1}; }

/// Delta: the largest suffix subgroup all of whose elements are < gamma.
inline ConvexSubgroup greatest_isolated_below(const GroupPtr& g, const Value& gamma) {
    if (!(gamma > Value::zero(g)))
        throw std::invalid_argument("greatest_isolated_below: gamma must be positive");
    for (int k = 1; k <= g->rank(); ++k)
        if (!gamma.coords()[k - 1].is_zero()) return ConvexSubgroup{k + 1};
    throw std::logic_error("unreachable");
}

inline bool in_subgroup(const std::vector<Rat>& coords, const ValueGroup& h) { return h.contains(coords); }

/// Minimum positive element of G/D lifted with zero D-coordinates, if it exists.
/// Exists iff the last component before the suffix is non-divisible.
inline std::optional<Value> quotient_min_positive(const GroupPtr& g, const ConvexSubgroup& d) {
    int j = d.suffix_start;
    if (j == 1) return std::nullopt;  // trivial quotient has no positive elements
    const auto& last = g->comp(j - 1);
    if (last.dense()) return std::nullopt;
    std::vector<Rat> c(g->rank(), Rat(0));
    c[j - 2] = last.gen;
    return Value(std::move(c), g);
}

/// Minimum of {x in G : proj(x) > proj(rho)} under the quotient by the suffix
/// subgroup at `level` (level = rank+1 means the full group), where proj takes
/// the first level-1 coordinates. Returns the lift with zero suffix
/// coordinates, or nullopt when the set has no minimum. With strict = false,
/// computes the minimum of {x : proj(x) >= proj(rho)} instead.
inline std::optional<Value> min_above(const GroupPtr& g, const std::vector<Rat>& rho, int level, bool strict) {
    int m = level - 1;  // number of significant coordinates
    if (m == 0) return std::nullopt;
    if (static_cast<int>(rho.size()) < m) throw RankMismatch();
    int bad = 0;  // first coordinate not representable, 0 if none
    for (int k = 1; k <= m; ++k)
        if (!g->comp(k).contains(rho[k - 1])) { bad = k; break; }
    std::vector<Rat> c(g->rank(), Rat(0));
    if (bad == 0) {
        for (int k = 0; k < m; ++k) c[k] = rho[k];
        if (!strict) return Value(std::move(c), g);
        const auto& last = g->comp(m);
        if (last.dense()) return std::nullopt;
        c[m - 1] += last.gen;
        return Value(std::move(c), g);
    }
    if (bad < m) return std::nullopt;  // coordinates after `bad` are unbounded below
    const auto& last = g->comp(m);
    if (last.dense()) return std::nullopt;
    for (int k = 0; k < m - 1; ++k) c[k] = rho[k];
    Rat q = rho[m - 1] / last.gen;
    c[m - 1] = Rat(q.ceil()) * last.gen;  // strictly above since rho_m is not in the component
    return Value(std::move(c), g);
}

}  // namespace valomega
