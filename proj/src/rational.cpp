#include "modq/rational.hpp"

#include <cmath>
#include <cstdio>

namespace modq {

std::string to_string_i128(Int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 x = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    char buf[48];
    int at = 48;
    while (x) {
        buf[--at] = static_cast<char>('0' + static_cast<int>(x % 10));
        x /= 10;
    }
    std::string out;
    if (neg) out += '-';
    out.append(buf + at, 48 - at);
    return out;
}

Int128 parse_i128(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer token");
    bool neg = false;
    size_t i = 0;
    if (s[0] == '-') {
        neg = true;
        i = 1;
        if (s.size() == 1) throw std::invalid_argument("bad integer token");
    }
    unsigned __int128 x = 0;
    constexpr unsigned __int128 kLimit = (~static_cast<unsigned __int128>(0)) >> 1;  // 2^127-1
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer token");
        unsigned digit = static_cast<unsigned>(s[i] - '0');
        if (x > (kLimit - digit) / 10) throw std::overflow_error("integer token overflows int128");
        x = x * 10 + digit;
    }
    Int128 v = static_cast<Int128>(x);
    return neg ? -v : v;
}

std::string Rational::to_string() const {
    return to_string_i128(num_) + "/" + to_string_i128(den_);
}

Rational parse_rational(std::string_view s) {
    size_t slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_i128(s), 1);
    return Rational(parse_i128(s.substr(0, slash)), parse_i128(s.substr(slash + 1)));
}

Rational parse_decimal(std::string_view s) {
    size_t dot = s.find('.');
    if (dot == std::string_view::npos) return Rational(parse_i128(s), 1);
    std::string_view ipart = s.substr(0, dot);
    std::string_view fpart = s.substr(dot + 1);
    if (fpart.empty() || fpart.size() > 18) throw std::invalid_argument("bad decimal literal");
    bool neg = !ipart.empty() && ipart[0] == '-';
    if (neg) ipart = ipart.substr(1);
    Int128 den = 1;
    for (size_t i = 0; i < fpart.size(); ++i) den = checked_mul(den, 10);
    Int128 whole = ipart.empty() ? Int128(0) : parse_i128(ipart);
    Int128 num = checked_add(checked_mul(whole, den), parse_i128(fpart));
    return Rational(neg ? -num : num, den);
}

std::string decimal_string(const Rational& r) {
    // exact when den is of the form 2^a 5^b (scale to a power of ten)
    Int128 den = r.den();
    Int128 scale = 1;
    int digits = 0;
    while (den % 2 == 0) {
        den /= 2;
        scale = checked_mul(scale, 5);
        ++digits;
    }
    while (den % 5 == 0) {
        den /= 5;
        scale = checked_mul(scale, 2);
        ++digits;
    }
    if (den == 1 && digits <= 18) {
        Int128 scaled = checked_mul(r.num(), scale);
        bool neg = scaled < 0;
        std::string body = to_string_i128(neg ? -scaled : scaled);
        if (digits == 0) return (neg ? "-" : "") + body;
        if (static_cast<int>(body.size()) <= digits)
            body.insert(0, digits + 1 - body.size(), '0');
        body.insert(body.size() - digits, ".");
        // drop trailing zeros but keep at least one fractional digit
        size_t last = body.find_last_not_of('0');
        if (body[last] == '.') ++last;
        body.erase(last + 1);
        return (neg ? "-" : "") + body;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", r.to_double());
    return buf;
}

}  // namespace modq
