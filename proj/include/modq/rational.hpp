#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modq {

// Modularity scores are rationals whose denominators divide 4m^2, so the
// products that appear in exact comparisons stay below ~nu^2 * m. Signed
// 128-bit integers cover graphs with up to ~50k vertices; every arithmetic
// step is overflow-checked and throws instead of wrapping.
using Int128 = __int128;

inline Int128 checked_add(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int128 add overflow");
    return r;
}

inline Int128 checked_sub(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int128 sub overflow");
    return r;
}

inline Int128 checked_mul(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int128 mul overflow");
    return r;
}

inline Int128 gcd_i128(Int128 a, Int128 b) {
    unsigned __int128 x = a < 0 ? static_cast<unsigned __int128>(-(a + 1)) + 1
                                : static_cast<unsigned __int128>(a);
    unsigned __int128 y = b < 0 ? static_cast<unsigned __int128>(-(b + 1)) + 1
                                : static_cast<unsigned __int128>(b);
    while (y != 0) {
        unsigned __int128 t = x % y;
        x = y;
        y = t;
    }
    return static_cast<Int128>(x);
}

std::string to_string_i128(Int128 v);
Int128 parse_i128(std::string_view s);

// Exact rational, always normalized: den > 0 and gcd(num, den) == 1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(Int128 num, Int128 den) : num_(num), den_(den) { normalize(); }
    static Rational from_int(long long v) { return Rational(v, 1); }

    Int128 num() const { return num_; }
    Int128 den() const { return den_; }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
    bool is_positive() const { return num_ > 0; }
    bool is_zero() const { return num_ == 0; }

    Rational operator+(const Rational& o) const {
        Int128 g = gcd_i128(den_, o.den_);
        Int128 db = den_ / g;
        Int128 dd = o.den_ / g;
        Int128 num = checked_add(checked_mul(num_, dd), checked_mul(o.num_, db));
        Int128 den = checked_mul(db, o.den_);
        return Rational(num, den);
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational operator*(const Rational& o) const {
        // cross-reduce before multiplying to keep intermediates small
        Int128 g1 = gcd_i128(num_, o.den_);
        Int128 g2 = gcd_i128(o.num_, den_);
        Int128 num = checked_mul(num_ / g1, o.num_ / g2);
        Int128 den = checked_mul(den_ / g2, o.den_ / g1);
        return Rational(num, den);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        return *this * Rational(o.den_, o.num_);
    }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
    }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    std::string to_string() const;  // "num/den" in lowest terms
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int128 g = gcd_i128(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int128 num_;
    Int128 den_;
};

// Parses "num/den" or a bare integer.
Rational parse_rational(std::string_view s);
// Parses a decimal literal like "1.5" into an exact rational.
Rational parse_decimal(std::string_view s);
// Exact decimal rendering when den | 10^k with k <= 18, "%.17g" fallback otherwise.
std::string decimal_string(const Rational& r);

}  // namespace modq
