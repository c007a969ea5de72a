#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "qlens/error.hpp"

namespace qlens {

// Checked 64-bit arithmetic. Wraparound would silently corrupt enumeration
// results, so every overflow surfaces as ErrorKind::Overflow.
namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "int64 addition");
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "int64 subtraction");
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "int64 multiplication");
    return r;
}

inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

} // namespace checked

/// Exact rational number over checked int64. Always normalized: gcd(num, den) = 1, den > 0.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {} // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_half_odd() const { return den_ == 2; } ///< in Z + 1/2
    int sign() const { return (num_ > 0) - (num_ < 0); }

    Rational operator-() const { return Rational(checked::neg(num_), den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        const std::int64_t g = std::gcd(a.den_, b.den_);
        const std::int64_t da = a.den_ / g;
        const std::int64_t db = b.den_ / g;
        return Rational(checked::add(checked::mul(a.num_, db), checked::mul(b.num_, da)),
                        checked::mul(a.den_, db));
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        // cross-reduce first to keep intermediates small
        const std::int64_t g1 = std::gcd(a.num_, b.den_);
        const std::int64_t g2 = std::gcd(b.num_, a.den_);
        const std::int64_t n1 = g1 ? a.num_ / g1 : a.num_;
        const std::int64_t d2 = g1 ? b.den_ / g1 : b.den_;
        const std::int64_t n2 = g2 ? b.num_ / g2 : b.num_;
        const std::int64_t d1 = g2 ? a.den_ / g2 : a.den_;
        return Rational(checked::mul(n1, n2), checked::mul(d1, d2));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error(ErrorKind::SingularSystem, "division by zero rational");
        return a * Rational(b.den_, b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        // dens are positive, so cross-multiplication preserves order
        return checked::mul(a.num_, b.den_) <=> checked::mul(b.num_, a.den_);
    }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_ == 0) throw Error(ErrorKind::SingularSystem, "zero denominator");
        if (den_ < 0) {
            num_ = checked::neg(num_);
            den_ = checked::neg(den_);
        }
        const std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace qlens
