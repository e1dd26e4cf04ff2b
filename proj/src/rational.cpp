#include <pollbench/rational.hpp>

#include <cctype>
#include <cstdlib>

namespace pollbench {

namespace {

using Int = Rational::Int;
using UInt = unsigned __int128;

UInt uabs(Int v) { return v < 0 ? -static_cast<UInt>(v) : static_cast<UInt>(v); }

UInt gcd_u(UInt a, UInt b) {
    while (b != 0) {
        UInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("rational add overflow");
    return r;
}

Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("rational mul overflow");
    return r;
}

} // namespace

void Rational::assign(Int n, Int d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    UInt g = gcd_u(uabs(n), static_cast<UInt>(d));
    if (g > 1) {
        // Division by the gcd is exact; do it on magnitudes to avoid
        // signed division pitfalls at the INT128_MIN edge.
        bool neg = n < 0;
        UInt un = uabs(n) / g;
        UInt ud = static_cast<UInt>(d) / g;
        num_ = neg ? -static_cast<Int>(un) : static_cast<Int>(un);
        den_ = static_cast<Int>(ud);
    } else {
        num_ = n;
        den_ = d;
    }
}

Rational Rational::operator+(const Rational& o) const {
    // (a/b) + (c/d) with b,d > 0. Reduce by g = gcd(b, d) first to keep
    // intermediates small.
    UInt g = gcd_u(static_cast<UInt>(den_), static_cast<UInt>(o.den_));
    Int b1 = den_ / static_cast<Int>(g);
    Int d1 = o.den_ / static_cast<Int>(g);
    Int n = checked_add(checked_mul(num_, d1), checked_mul(o.num_, b1));
    Int d = checked_mul(b1, o.den_);
    return Rational(n, d);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    // Cross-reduce before multiplying.
    UInt g1 = gcd_u(uabs(num_), static_cast<UInt>(o.den_));
    UInt g2 = gcd_u(uabs(o.num_), static_cast<UInt>(den_));
    Int n1 = num_ / static_cast<Int>(g1);
    Int d2 = o.den_ / static_cast<Int>(g1);
    Int n2 = o.num_ / static_cast<Int>(g2);
    Int d1 = den_ / static_cast<Int>(g2);
    return Rational(checked_mul(n1, n2), checked_mul(d1, d2));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
}

std::string int128_to_string(__int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    UInt u = neg ? -static_cast<UInt>(v) : static_cast<UInt>(v);
    std::string digits;
    while (u != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

std::string Rational::to_string() const {
    return int128_to_string(num_) + "/" + int128_to_string(den_);
}

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::from_string(std::string_view text) {
    auto parse_int = [](std::string_view s) -> Int {
        if (s.empty()) throw std::invalid_argument("empty integer in rational");
        bool neg = false;
        size_t i = 0;
        if (s[0] == '-' || s[0] == '+') {
            neg = (s[0] == '-');
            i = 1;
        }
        if (i == s.size()) throw std::invalid_argument("sign without digits in rational");
        UInt acc = 0;
        const UInt limit = static_cast<UInt>(1) << 126;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw std::invalid_argument("bad character in rational: " + std::string(s));
            if (acc > limit) throw OverflowError("rational literal too large");
            acc = acc * 10 + static_cast<UInt>(s[i] - '0');
        }
        Int v = static_cast<Int>(acc);
        return neg ? -v : v;
    };

    size_t slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text), 1);
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

} // namespace pollbench
