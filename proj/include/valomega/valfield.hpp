#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "valomega/ordgrp.hpp"
#include "valomega/segment.hpp"

namespace valomega {

struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Scalar valuation value: a rational or infinity.
struct RatInf {
    bool inf = false;
    Rat r;

    RatInf() = default;
    RatInf(Rat x) : inf(false), r(std::move(x)) {}
    RatInf(long long x) : inf(false), r(x) {}
    static RatInf infinity() { return RatInf(true); }

    bool is_inf() const { return inf; }
    const Rat& finite() const {
        if (inf) throw std::logic_error("RatInf: infinite");
        return r;
    }
    RatInf operator+(const RatInf& o) const { return (inf || o.inf) ? infinity() : RatInf(r + o.r); }
    RatInf operator-(const RatInf& o) const {
        if (o.inf) throw std::logic_error("RatInf: cannot subtract infinity");
        return inf ? infinity() : RatInf(r - o.r);
    }
    friend bool operator==(const RatInf& a, const RatInf& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.r == b.r;
    }
    friend bool operator<(const RatInf& a, const RatInf& b) {
        if (a.inf) return false;
        if (b.inf) return true;
        return a.r < b.r;
    }
    friend bool operator>(const RatInf& a, const RatInf& b) { return b < a; }
    friend bool operator<=(const RatInf& a, const RatInf& b) { return !(b < a); }
    friend bool operator>=(const RatInf& a, const RatInf& b) { return !(a < b); }
    std::string str() const { return inf ? "inf" : r.str(); }

private:
    explicit RatInf(bool i) : inf(i) {}
};

inline RatInf rmin(const RatInf& a, const RatInf& b) { return a <= b ? a : b; }

// ---------------------------------------------------------------------------
// Polynomials over F_p and the rational function field F_p(u)
// ---------------------------------------------------------------------------

inline long long mod_pow(long long b, long long e, long long p) {
    long long r = 1 % p;
    b %= p;
    if (b < 0) b += p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}
inline long long mod_inv(long long a, long long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw std::domain_error("mod_inv: zero");
    return mod_pow(a, p - 2, p);
}

/// Dense polynomial over F_p, coefficients ascending, no trailing zeros.
struct FpPoly {
    long long p = 0;
    std::vector<long long> c;

    FpPoly() = default;
    FpPoly(long long prime, std::vector<long long> coeffs) : p(prime), c(std::move(coeffs)) { trim(); }
    static FpPoly constant(long long prime, long long v) { return FpPoly(prime, {v}); }
    static FpPoly zero(long long prime) { return FpPoly(prime, {}); }

    void trim() {
        for (auto& x : c) {
            x %= p;
            if (x < 0) x += p;
        }
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    long long lc() const { return c.back(); }
    long long at(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : 0; }

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
        std::vector<long long> r(std::max(a.c.size(), b.c.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.at(static_cast<int>(i)) + b.at(static_cast<int>(i));
        return FpPoly(a.p, std::move(r));
    }
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
        std::vector<long long> r(std::max(a.c.size(), b.c.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.at(static_cast<int>(i)) - b.at(static_cast<int>(i));
        return FpPoly(a.p, std::move(r));
    }
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero(a.p);
        std::vector<long long> r(a.c.size() + b.c.size() - 1, 0);
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = (r[i + j] + a.c[i] * b.c[j]) % a.p;
        return FpPoly(a.p, std::move(r));
    }
    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p == b.p && a.c == b.c; }

    /// (quotient, remainder) with b != 0.
    static std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
        if (b.is_zero()) throw std::domain_error("FpPoly: division by zero");
        FpPoly r = a, q = zero(a.p);
        long long inv = mod_inv(b.lc(), a.p);
        if (r.deg() >= b.deg()) q.c.assign(r.deg() - b.deg() + 1, 0);
        while (!r.is_zero() && r.deg() >= b.deg()) {
            long long f = r.lc() * inv % a.p;
            int sh = r.deg() - b.deg();
            q.c[sh] = f;
            for (int i = 0; i <= b.deg(); ++i) {
                r.c[i + sh] = (r.c[i + sh] - f * b.c[i]) % a.p;
                if (r.c[i + sh] < 0) r.c[i + sh] += a.p;
            }
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    FpPoly monic() const {
        if (is_zero()) return *this;
        long long inv = mod_inv(lc(), p);
        FpPoly r = *this;
        for (auto& x : r.c) x = x * inv % p;
        return r;
    }

    static FpPoly gcd(FpPoly a, FpPoly b) {
        while (!b.is_zero()) {
            auto [q, r] = divmod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    FpPoly derivative() const {
        std::vector<long long> r;
        for (int i = 1; i <= deg(); ++i) r.push_back(c[i] * (i % p) % p);
        return FpPoly(p, std::move(r));
    }

    std::string str(const std::string& var = "u") const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = deg(); i >= 0; --i) {
            if (c[i] == 0) continue;
            if (!s.empty()) s += "+";
            if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
            if (i > 0) {
                if (c[i] != 1) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }
};

/// Element of F_p(u): num/den with den monic, gcd(num, den) = 1.
/// Elements of the prime field F_p itself are the constant fractions.
struct RatFun {
    FpPoly num, den;

    RatFun() = default;
    RatFun(FpPoly n, FpPoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }
    static RatFun of(FpPoly n) {
        auto p = n.p;
        return RatFun(std::move(n), FpPoly::constant(p, 1));
    }
    static RatFun constant(long long p, long long v) { return of(FpPoly::constant(p, v)); }
    static RatFun zero(long long p) { return of(FpPoly::zero(p)); }

    long long p() const { return num.p; }
    bool is_zero() const { return num.is_zero(); }
    bool is_constant() const { return num.deg() <= 0 && den.deg() == 0; }

    void normalize() {
        if (num.is_zero()) {
            den = FpPoly::constant(den.p, 1);
            return;
        }
        FpPoly g = FpPoly::gcd(num, den);
        if (g.deg() > 0) {
            num = FpPoly::divmod(num, g).first;
            den = FpPoly::divmod(den, g).first;
        }
        long long inv = mod_inv(den.lc(), den.p);
        for (auto& x : num.c) x = x * inv % num.p;
        for (auto& x : den.c) x = x * inv % den.p;
    }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        return RatFun(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) {
        return RatFun(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RatFun operator*(const RatFun& a, const RatFun& b) { return RatFun(a.num * b.num, a.den * b.den); }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
        return RatFun(a.num * b.den, a.den * b.num);
    }
    RatFun operator-() const { return RatFun(FpPoly::zero(p()) - num, den); }
    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    std::string str() const {
        if (den.deg() == 0) return num.str();
        return "(" + num.str() + ")/(" + den.str() + ")";
    }
};

// ---------------------------------------------------------------------------
// Base fields: Q_p and truncated Laurent series over F_p or F_p(u)
// ---------------------------------------------------------------------------

struct BaseField {
    enum class Tag { PadicRationals, TAdicSeries };
    Tag tag;
    long long p;       // prime (residue characteristic)
    bool coeff_has_u;  // TAdic: coefficient field is F_p(u) rather than F_p
    int precision;     // TAdic: series tracked modulo t^precision

    static BaseField padic(long long prime) { return BaseField{Tag::PadicRationals, prime, false, 0}; }
    static BaseField laurent(long long prime, int prec = 64) {
        return BaseField{Tag::TAdicSeries, prime, false, prec};
    }
    static BaseField laurent_u(long long prime, int prec = 64) {
        return BaseField{Tag::TAdicSeries, prime, true, prec};
    }

    bool is_padic() const { return tag == Tag::PadicRationals; }
    /// Residue characteristic equals the characteristic of K for TAdic fields.
    long long char_K() const { return is_padic() ? 0 : p; }

    friend bool operator==(const BaseField& a, const BaseField& b) {
        return a.tag == b.tag && a.p == b.p && a.coeff_has_u == b.coeff_has_u;
    }
};

/// Truncated Laurent series: sum of c[i] * t^(lead+i), known modulo t^prec.
struct Series {
    int lead = 0;
    std::vector<RatFun> c;
    int prec = 0;      // coefficients of t^k for k < prec are determined
    bool exact = false;  // the element IS the stored finite sum

    void trim(long long p) {
        while (!c.empty() && c.front().is_zero()) {
            c.erase(c.begin());
            ++lead;
        }
        while (!c.empty() && c.back().is_zero()) c.pop_back();
        while (!c.empty() && lead + static_cast<int>(c.size()) > prec && !exact) c.pop_back();
        (void)p;
    }
    RatFun at(int k, long long p) const {
        int i = k - lead;
        if (i < 0 || i >= static_cast<int>(c.size())) return RatFun::zero(p);
        return c[i];
    }
};

/// Element of a BaseField, with exact-or-refuse valuation semantics.
class FieldElement {
public:
    FieldElement(BaseField k, Rat q) : K_(k), q_(std::move(q)) {
        if (!k.is_padic()) throw std::logic_error("FieldElement: rational payload needs a p-adic field");
    }
    FieldElement(BaseField k, Series s) : K_(k), s_(std::move(s)) {
        if (k.is_padic()) throw std::logic_error("FieldElement: series payload needs a t-adic field");
        s_.trim(k.p);
    }

    static FieldElement zero(const BaseField& k) { return from_int(k, 0); }
    static FieldElement one(const BaseField& k) { return from_int(k, 1); }
    static FieldElement from_int(const BaseField& k, long long n) {
        if (k.is_padic()) return FieldElement(k, Rat(n));
        Series s;
        s.lead = 0;
        s.prec = k.precision;
        s.exact = true;
        s.c = {RatFun::constant(k.p, n % k.p)};
        return FieldElement(k, std::move(s));
    }
    static FieldElement from_bigint(const BaseField& k, const Int& n) {
        if (k.is_padic()) return FieldElement(k, Rat(n));
        Int m = n % k.p;
        return from_int(k, m.convert_to<long long>());
    }
    static FieldElement from_rat(const BaseField& k, Rat q) {
        if (!k.is_padic()) throw std::logic_error("from_rat: t-adic field");
        return FieldElement(k, std::move(q));
    }
    /// Monomial c * t^k.
    static FieldElement t_monomial(const BaseField& k, RatFun coef, int pow) {
        Series s;
        s.lead = pow;
        s.prec = k.precision;
        s.exact = true;
        s.c = {std::move(coef)};
        return FieldElement(k, std::move(s));
    }
    /// Uniformizer to an integer power: p^k or t^k.
    static FieldElement uniformizer_pow(const BaseField& k, long long e) {
        if (k.is_padic()) {
            Rat r(1);
            Rat p(k.p);
            for (long long i = 0; i < (e < 0 ? -e : e); ++i) r = e < 0 ? r / p : r * p;
            return FieldElement(k, std::move(r));
        }
        return t_monomial(k, RatFun::constant(k.p, 1), static_cast<int>(e));
    }

    const BaseField& field() const { return K_; }
    const Rat& rat() const { return q_; }
    const Series& series() const { return s_; }

    bool known_zero() const {
        if (K_.is_padic()) return q_.is_zero();
        return s_.c.empty() && s_.exact;
    }

    /// Exact valuation or PrecisionExhausted; never a wrong answer.
    RatInf val() const {
        if (K_.is_padic()) {
            if (q_.is_zero()) return RatInf::infinity();
            return RatInf(Rat(padic_val(q_, Int(K_.p))));
        }
        if (!s_.c.empty()) return RatInf(Rat(s_.lead));
        if (s_.exact) return RatInf::infinity();
        throw PrecisionExhausted("valuation not determined at precision t^" + std::to_string(s_.prec));
    }

    FieldElement operator+(const FieldElement& o) const { return addsub(o, false); }
    FieldElement operator-(const FieldElement& o) const { return addsub(o, true); }
    FieldElement operator-() const { return FieldElement::zero(K_) - *this; }

    FieldElement operator*(const FieldElement& o) const {
        if (K_.is_padic()) return FieldElement(K_, q_ * o.q_);
        const Series &a = s_, &b = o.s_;
        Series r;
        if (a.c.empty() || b.c.empty()) {
            r.exact = a.exact && b.exact;
            if (r.exact) { r.prec = K_.precision; return FieldElement(K_, std::move(r)); }
            // zero-so-far times anything: value bounded below by sum of leads
            int va = a.c.empty() ? a.prec : a.lead;
            int vb = b.c.empty() ? b.prec : b.lead;
            r.prec = va + vb;
            return FieldElement(K_, std::move(r));
        }
        r.lead = a.lead + b.lead;
        r.exact = a.exact && b.exact;
        int pa = a.exact ? INT32_MAX / 4 : a.prec, pb = b.exact ? INT32_MAX / 4 : b.prec;
        r.prec = std::min({pa + b.lead, pb + a.lead, r.exact ? INT32_MAX / 4 : INT32_MAX / 4});
        if (r.exact) r.prec = K_.precision;
        int len = static_cast<int>(a.c.size() + b.c.size()) - 1;
        if (!r.exact) len = std::min(len, r.prec - r.lead);
        if (len < 0) len = 0;
        r.c.assign(len, RatFun::zero(K_.p));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j)
                if (static_cast<int>(i + j) < len) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        return FieldElement(K_, std::move(r));
    }

    FieldElement operator/(const FieldElement& o) const {
        if (K_.is_padic()) return FieldElement(K_, q_ / o.q_);
        const Series& b = o.s_;
        if (b.c.empty()) {
            if (b.exact) throw std::domain_error("FieldElement: division by zero");
            throw PrecisionExhausted("division by an element of undetermined valuation");
        }
        // invert the unit part of b by power series iteration
        int vb = b.lead;
        int want = (s_.exact && b.exact && b.c.size() == 1) ? 1 : K_.precision;
        std::vector<RatFun> inv(static_cast<size_t>(std::max(1, want)), RatFun::zero(K_.p));
        RatFun lead_inv = RatFun::constant(K_.p, 1) / b.c[0];
        inv[0] = lead_inv;
        for (int k = 1; k < want; ++k) {
            RatFun acc = RatFun::zero(K_.p);
            for (int j = 1; j <= k; ++j)
                if (j < static_cast<int>(b.c.size())) acc = acc + b.c[j] * inv[k - j];
            inv[k] = -(lead_inv * acc);
        }
        Series binv;
        binv.lead = -vb;
        binv.c = std::move(inv);
        binv.exact = (want == 1) && b.exact;  // exact only for monomial divisors
        binv.prec = binv.exact ? K_.precision : (want - vb);
        FieldElement r = *this * FieldElement(K_, std::move(binv));
        return r;
    }

    /// Residue in Kv (valuation must be >= 0 and determined).
    RatFun residue() const {
        RatInf v = val();
        if (v.is_inf() || v.finite() > Rat(0)) return RatFun::zero(K_.p);
        if (v.finite() < Rat(0)) throw std::domain_error("residue: negative valuation");
        if (K_.is_padic()) {
            // a/b mod p with v_p = 0
            long long p = K_.p;
            auto mod_of = [&](const Int& n) {
                Int m = n % p;
                long long r = m.convert_to<long long>();
                return r < 0 ? r + p : r;
            };
            long long a = mod_of(q_.num()), b = mod_of(q_.den());
            return RatFun::constant(p, a * mod_inv(b, p) % p);
        }
        return s_.at(0, K_.p);
    }

    bool eq(const FieldElement& o) const {
        FieldElement d = *this - o;
        if (d.known_zero()) return true;
        RatInf v = d.val();  // throws PrecisionExhausted when undecidable
        return v.is_inf();
    }

private:
    FieldElement addsub(const FieldElement& o, bool sub) const {
        if (K_.is_padic()) return FieldElement(K_, sub ? q_ - o.q_ : q_ + o.q_);
        const Series &a = s_, &b = o.s_;
        Series r;
        int pa = a.exact ? INT32_MAX / 4 : a.prec, pb = b.exact ? INT32_MAX / 4 : b.prec;
        r.exact = a.exact && b.exact;
        r.prec = r.exact ? K_.precision : std::min(pa, pb);
        int lo = std::min(a.c.empty() ? 0 : a.lead, b.c.empty() ? 0 : b.lead);
        int hi = std::max(a.c.empty() ? 0 : a.lead + static_cast<int>(a.c.size()),
                          b.c.empty() ? 0 : b.lead + static_cast<int>(b.c.size()));
        if (!r.exact) hi = std::min(hi, r.prec);
        r.lead = lo;
        for (int k = lo; k < hi; ++k) {
            RatFun x = a.at(k, K_.p);
            RatFun y = b.at(k, K_.p);
            r.c.push_back(sub ? x - y : x + y);
        }
        return FieldElement(K_, std::move(r));
    }

    BaseField K_;
    Rat q_;
    Series s_;
};

// ---------------------------------------------------------------------------
// Polynomials over the base field
// ---------------------------------------------------------------------------

/// Polynomial over a BaseField, coefficients ascending.
class Poly {
public:
    Poly(BaseField k, std::vector<FieldElement> coeffs) : K_(k), c_(std::move(coeffs)) { trim(); }
    explicit Poly(BaseField k) : K_(k) {}

    static Poly from_ints(const BaseField& k, const std::vector<long long>& coeffs) {
        std::vector<FieldElement> c;
        for (long long x : coeffs) c.push_back(FieldElement::from_int(k, x));
        return Poly(k, std::move(c));
    }
    static Poly x(const BaseField& k) { return from_ints(k, {0, 1}); }

    const BaseField& field() const { return K_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    FieldElement at(int i) const {
        return (i >= 0 && i <= deg()) ? c_[i] : FieldElement::zero(K_);
    }
    bool is_monic() const { return deg() >= 0 && c_.back().eq(FieldElement::one(K_)); }

    void trim() {
        while (!c_.empty() && c_.back().known_zero()) c_.pop_back();
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<FieldElement> r;
        for (int i = 0; i <= std::max(a.deg(), b.deg()); ++i) r.push_back(a.at(i) + b.at(i));
        return Poly(a.K_, std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<FieldElement> r;
        for (int i = 0; i <= std::max(a.deg(), b.deg()); ++i) r.push_back(a.at(i) - b.at(i));
        return Poly(a.K_, std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly(a.K_);
        std::vector<FieldElement> r(a.c_.size() + b.c_.size() - 1, FieldElement::zero(a.K_));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Poly(a.K_, std::move(r));
    }
    Poly scaled(const FieldElement& s) const {
        std::vector<FieldElement> r;
        for (const auto& x : c_) r.push_back(x * s);
        return Poly(K_, std::move(r));
    }

    /// (quotient, remainder) by a monic divisor.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.deg() < 0) throw std::domain_error("Poly: division by zero");
        Poly r = a;
        std::vector<FieldElement> q(std::max(0, a.deg() - b.deg() + 1), FieldElement::zero(a.K_));
        FieldElement lead = b.c_.back();
        while (r.deg() >= b.deg() && !r.is_zero()) {
            FieldElement f = r.c_.back() / lead;
            int sh = r.deg() - b.deg();
            q[sh] = f;
            std::vector<FieldElement> rc = r.c_;
            for (int i = 0; i <= b.deg(); ++i) rc[i + sh] = rc[i + sh] - f * b.c_[i];
            rc.pop_back();  // leading term cancels by construction
            r = Poly(a.K_, std::move(rc));
        }
        return {Poly(a.K_, std::move(q)), r};
    }

    FieldElement eval(const FieldElement& x) const {
        FieldElement r = FieldElement::zero(K_);
        for (int i = deg(); i >= 0; --i) r = r * x + c_[i];
        return r;
    }

    Poly derivative() const {
        std::vector<FieldElement> r;
        for (int i = 1; i <= deg(); ++i) r.push_back(c_[i] * FieldElement::from_int(K_, i));
        return Poly(K_, std::move(r));
    }

private:
    BaseField K_;
    std::vector<FieldElement> c_;
};

// ---------------------------------------------------------------------------
// Residue field polynomials and irreducibility at desk scale
// ---------------------------------------------------------------------------

/// Polynomial over the residue field Kv (= F_p or F_p(u)), ascending coefficients.
struct ResiduePoly {
    long long p = 0;
    bool has_u = false;
    std::vector<RatFun> c;

    int deg() const { return static_cast<int>(c.size()) - 1; }
    RatFun at(int i) const { return (i >= 0 && i <= deg()) ? c[i] : RatFun::zero(p); }
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    RatFun eval(const RatFun& x) const {
        RatFun r = RatFun::zero(p);
        for (int i = deg(); i >= 0; --i) r = r * x + c[i];
        return r;
    }
    ResiduePoly derivative() const {
        ResiduePoly d{p, has_u, {}};
        for (int i = 1; i <= deg(); ++i) d.c.push_back(at(i) * RatFun::constant(p, i % p));
        d.trim();
        return d;
    }
    std::string str() const {
        if (c.empty()) return "0";
        std::string s;
        for (int i = deg(); i >= 0; --i) {
            if (c[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            bool unit = c[i] == RatFun::constant(p, 1);
            if (i == 0 || !unit) s += c[i].str();
            if (i > 0) {
                if (!unit) s += "*";
                s += "y";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }
};

inline bool separable(const ResiduePoly& q) { return !q.derivative().c.empty(); }

namespace detail {

inline void enumerate_fp_polys(long long p, int deg, bool monic, const std::function<void(const FpPoly&)>& fn) {
    // all polynomials of exact degree `deg`
    std::vector<long long> c(deg + 1, 0);
    c[deg] = 1;
    while (true) {
        if (c[deg] != 0) fn(FpPoly(p, c));
        int i = 0;
        while (i <= deg && ++c[i] == p) c[i++] = 0;
        if (i > deg) break;
        if (monic && i == deg) break;
        if (monic) c[deg] = 1;
    }
}

/// Irreducibility over F_p by trial division, for small p and degree.
inline bool irreducible_fp(const FpPoly& f) {
    int n = f.deg();
    if (n <= 0) return false;
    if (n == 1) return true;
    for (int d = 1; d <= n / 2; ++d) {
        bool found = false;
        enumerate_fp_polys(f.p, d, true, [&](const FpPoly& g) {
            if (!found && FpPoly::divmod(f, g).second.is_zero()) found = true;
        });
        if (found) return false;
    }
    return true;
}

/// List of monic divisors of a nonzero polynomial over F_p (trial division).
inline std::vector<FpPoly> monic_divisors(const FpPoly& f) {
    std::vector<FpPoly> out = {FpPoly::constant(f.p, 1)};
    for (int d = 1; d <= f.deg(); ++d)
        enumerate_fp_polys(f.p, d, true, [&](const FpPoly& g) {
            if (FpPoly::divmod(f, g).second.is_zero()) out.push_back(g);
        });
    return out;
}

/// Roots of a ResiduePoly in F_p(u): clear denominators, then search
/// num-divisor / den-divisor candidates (rational root theorem over F_p[u]).
inline std::vector<RatFun> ratfun_roots(const ResiduePoly& f) {
    long long p = f.p;
    // clear denominators: common multiple of all dens
    FpPoly common = FpPoly::constant(p, 1);
    for (const auto& x : f.c) {
        FpPoly g = FpPoly::gcd(common, x.den);
        common = FpPoly::divmod(common * x.den, g).first;
    }
    std::vector<FpPoly> ic;  // integral coefficients
    for (const auto& x : f.c) ic.push_back(FpPoly::divmod(x.num * common, x.den).first);
    while (!ic.empty() && ic.back().is_zero()) ic.pop_back();
    std::vector<RatFun> roots;
    if (ic.empty()) return roots;
    if (ic.front().is_zero()) roots.push_back(RatFun::zero(p));
    // nonzero roots A/B: A | ic[0], B | ic.back()
    FpPoly c0 = ic.front();
    if (c0.is_zero()) {
        size_t i = 0;
        while (i < ic.size() && ic[i].is_zero()) ++i;
        c0 = ic[i];
    }
    auto nds = monic_divisors(c0);
    auto dds = monic_divisors(ic.back());
    for (const auto& a : nds)
        for (const auto& b : dds)
            for (long long unit = 1; unit < p; ++unit) {
                RatFun cand(a * FpPoly::constant(p, unit), b);
                if (f.eval(cand).is_zero()) {
                    bool dup = false;
                    for (const auto& r : roots) dup = dup || r == cand;
                    if (!dup) roots.push_back(cand);
                }
            }
    return roots;
}

/// True iff r is a square in F_p(u) (numerator and denominator both squares up
/// to a common unit). Enumeration-based, desk scale only.
inline bool ratfun_is_square(const RatFun& r) {
    long long p = r.p();
    if (r.is_zero()) return true;
    auto poly_sqrt_exists = [&](const FpPoly& f) {
        if (f.deg() % 2 != 0) return false;
        bool found = false;
        enumerate_fp_polys(p, f.deg() / 2, false, [&](const FpPoly& g) {
            if (!found && g * g == f) found = true;
        });
        return found || (f.deg() == 0 && [&] {
            for (long long a = 0; a < p; ++a)
                if (a * a % p == f.at(0)) return true;
            return false;
        }());
    };
    // r = num/den = (num*den)/den^2: square iff num*den is a square
    return poly_sqrt_exists(r.num * r.den);
}

/// Irreducibility of a monic ResiduePoly over Kv. Complete for F_p;
/// over F_p(u) supported for degree <= 3 and for binomials y^4 - c.
inline bool irreducible_residue(const ResiduePoly& f) {
    int n = f.deg();
    if (n <= 0) return false;
    if (n == 1) return true;
    if (!f.has_u) {
        std::vector<long long> c;
        for (const auto& x : f.c) c.push_back(x.num.at(0));
        return irreducible_fp(FpPoly(f.p, c));
    }
    if (n <= 3) return ratfun_roots(f).empty();
    if (n == 4) {
        if (!ratfun_roots(f).empty()) return false;
        bool binomial = f.at(1).is_zero() && f.at(2).is_zero() && f.at(3).is_zero();
        if (binomial) {
            // y^4 - c factors over F_p(u) iff c is a square (or p = 2, where
            // y^4 - c = (y^2 - s)^2 exactly when c = s^2; otherwise no root of
            // y^2 = c exists and y^4 - c is irreducible iff c is not a square)
            return !ratfun_is_square(-f.at(0));
        }
        throw UnsupportedForm("irreducibility over F_p(u) supported only to degree 3 or binomials");
    }
    throw UnsupportedForm("irreducibility over F_p(u) supported only to degree 4 binomials");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Extensions K[x]/(g) in the complete discrete defectless case
// ---------------------------------------------------------------------------

/// A simple extension L = K[x]/(g) with exact valuation data from the Newton
/// polygon: single slope v(eta) = v(a_0)/n, e = denominator, f = n/e, residue
/// minimal polynomial of degree f required irreducible.
struct ExtensionField {
    BaseField base;
    Poly g;
    long long e = 1, f = 1;
    Rat v_eta;
    GroupPtr value_group;        // (1/e) Z
    ResiduePoly residue_poly;    // residual polynomial, degree f, monic

    long long n() const { return e * f; }
    Value value(const Rat& r) const { return Value(r, value_group); }
    ValueInf value_inf(const RatInf& r) const {
        return r.is_inf() ? ValueInf::infinity() : ValueInf(value(r.finite()));
    }
};

/// Valuation of a base-field element (exact or PrecisionExhausted).
inline RatInf val(const FieldElement& x) { return x.val(); }

inline ExtensionField build_extension(const BaseField& K, const Poly& g) {
    if (!g.is_monic()) throw ValidationError("build_extension: g must be monic");
    int n = g.deg();
    if (n < 1) throw ValidationError("build_extension: g must be non-constant");
    RatInf v0 = g.at(0).val();
    if (v0.is_inf()) throw ValidationError("build_extension: g(0) = 0, so g is reducible");
    // single slope: every (i, v(a_i)) must lie on or above the segment from
    // (0, v(a_0)) to (n, 0)
    for (int i = 1; i < n; ++i) {
        FieldElement ai = g.at(i);
        if (ai.known_zero()) continue;
        RatInf vi = ai.val();
        if (vi.is_inf()) continue;
        if (vi.finite() * Rat(n) < v0.finite() * Rat(n - i))
            throw ValidationError("build_extension: mixed Newton polygon slopes; factor g first");
    }
    Rat veta = v0.finite() / Rat(n);
    long long e = veta.den().convert_to<long long>();
    if (n % e != 0) throw ValidationError("build_extension: slope denominator does not divide degree");
    long long f = n / e;
    // residual polynomial R(y) = sum res(a_{je} / pi^{(f-j) h}) y^j, h = e*veta
    long long h = (veta * Rat(e)).num().convert_to<long long>();
    ResiduePoly R{K.p, !K.is_padic() && K.coeff_has_u, {}};
    for (long long j = 0; j <= f; ++j) {
        FieldElement a = g.at(static_cast<int>(j * e));
        if (j == f) a = FieldElement::one(K);
        FieldElement scaled = a * FieldElement::uniformizer_pow(K, -(f - j) * h);
        RatFun res = RatFun::zero(K.p);
        if (!scaled.known_zero()) {
            RatInf v = scaled.val();
            if (!v.is_inf() && v.finite() == Rat(0)) res = scaled.residue();
            else if (!v.is_inf() && v.finite() < Rat(0))
                throw std::logic_error("build_extension: residual coefficient below the polygon");
        }
        R.c.push_back(res);
    }
    R.trim();
    if (!detail::irreducible_residue(R))
        throw ValidationError("build_extension: residual polynomial " + R.str() +
                              " is reducible; g is reducible or the extension is not defectless-pure");
    GroupPtr vg = make_group({GroupComponent{Rat(1, e), std::nullopt}});
    return ExtensionField{K, g, e, f, veta, vg, R};
}

/// Minimal polynomial of the residue generator over Kv.
inline ResiduePoly residue_minpoly(const ExtensionField& L) {
    if (L.f == 1)
        throw ValidationError("residue_minpoly: trivial residue extension (f = 1)");
    return L.residue_poly;
}

/// v(f(eta)) for f in K[x]: reduce f mod g, then the valuation is the minimum
/// of v(b_s) + s*v(eta) over the monomials (ties cannot cancel below the
/// minimum in the single-slope defectless case).
inline ValueInf eval_val(const Poly& f, const ExtensionField& L) {
    Poly r = f;
    if (r.deg() >= L.g.deg()) r = Poly::divmod(r, L.g).second;
    RatInf best = RatInf::infinity();
    for (int s = 0; s <= r.deg(); ++s) {
        FieldElement b = r.at(s);
        if (b.known_zero()) continue;
        RatInf vb = b.val();
        if (vb.is_inf()) continue;
        best = rmin(best, RatInf(vb.finite() + Rat(s) * L.v_eta));
    }
    return L.value_inf(best);
}

}  // namespace valomega
