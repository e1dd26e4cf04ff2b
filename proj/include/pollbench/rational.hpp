#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pollbench {

/// Exact signed rational number on 128-bit integers.
///
/// Always stored in lowest terms with a positive denominator. Every
/// operation is exact; on overflow of the 128-bit representation an
/// OverflowError is thrown instead of silently wrapping. Simulation
/// timestamps, workloads and totals all use this type, so two runs of
/// the same experiment produce bit-identical numbers.
class Rational {
public:
    using Int = __int128;

    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}
    Rational(Int n, Int d) { assign(n, d); }

    static Rational from_string(std::string_view text);

    Int num() const { return num_; }
    Int den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(-num_, den_, NoReduce{}); }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    /// Canonical "num/den" form, e.g. "3/2", "-1/4", "5/1".
    std::string to_string() const;

    /// Lossy conversion for reporting columns; never used in comparisons.
    double to_double() const;

private:
    struct NoReduce {};
    Rational(Int n, Int d, NoReduce) : num_(n), den_(d) {}

    void assign(Int n, Int d);

    Int num_;
    Int den_;
};

class OverflowError : public std::runtime_error {
public:
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::string int128_to_string(__int128 v);

} // namespace pollbench
