#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace valomega {

using Int = boost::multiprecision::cpp_int;

/// Exact rational number on arbitrary-precision integers.
/// Always normalized: gcd(num, den) == 1, den > 0.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(Int n) : num_(std::move(n)), den_(1) {}
    Rat(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rat operator-() const { return Rat(-num_, den_, raw_tag{}); }
    Rat operator+(const Rat& o) const { return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    Rat operator-(const Rat& o) const { return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
    Rat operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }
    Rat operator/(const Rat& o) const {
        if (o.num_ == 0) throw std::domain_error("Rat: division by zero");
        return Rat(num_ * o.den_, den_ * o.num_);
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return a.num_ * b.den_ < b.num_ * a.den_; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Int floor() const {
        Int q = num_ / den_;
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }
    Int ceil() const {
        Int q = num_ / den_;
        if (num_ > 0 && q * den_ != num_) ++q;
        return q;
    }

    /// Serialized as "a" or "a/b".
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    /// Parses "a", "a/b", "-a/b". Throws std::invalid_argument on malformed input.
    static Rat parse(std::string_view sv) {
        auto slash = sv.find('/');
        try {
            if (slash == std::string_view::npos) return Rat(Int(std::string(sv)));
            Int n{std::string(sv.substr(0, slash))};
            Int d{std::string(sv.substr(slash + 1))};
            return Rat(n, d);
        } catch (const std::exception&) {
            throw std::invalid_argument("Rat: cannot parse '" + std::string(sv) + "'");
        }
    }

private:
    struct raw_tag {};
    Rat(Int n, Int d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rat: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        Int g = boost::multiprecision::gcd(num_ < 0 ? Int(-num_) : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    Int num_, den_;
};

/// Multiplicity of prime p in nonzero integer n (n != 0).
inline long long int_val(const Int& n, const Int& p) {
    if (n == 0) throw std::domain_error("int_val: zero argument");
    Int m = n < 0 ? Int(-n) : n;
    long long k = 0;
    while (m % p == 0) { m /= p; ++k; }
    return k;
}

/// p-adic valuation of a nonzero rational.
inline long long padic_val(const Rat& r, const Int& p) {
    if (r.is_zero()) throw std::domain_error("padic_val: zero argument");
    long long vn = int_val(r.num(), p);
    if (vn > 0) return vn;
    return -int_val(r.den(), p);
}

/// True iff den is a power of ell (1 counts as a power).
inline bool den_is_power_of(const Int& den, const Int& ell) {
    Int d = den;
    while (d % ell == 0) d /= ell;
    return d == 1;
}

}  // namespace valomega
