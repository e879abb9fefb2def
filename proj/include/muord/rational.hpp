#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "muord/errors.hpp"

namespace muord {

// Exact rational with 64-bit numerator/denominator.  All slopes that occur
// here have denominator dividing f*(m/f) and tiny numerators, so overflow is
// not a practical concern; intermediate products still go through 128 bits.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    Rational operator+(const Rational& o) const {
        return Rational(check(i128(num_) * o.den_ + i128(o.num_) * den_),
                        check(i128(den_) * o.den_));
    }
    Rational operator-(const Rational& o) const {
        return Rational(check(i128(num_) * o.den_ - i128(o.num_) * den_),
                        check(i128(den_) * o.den_));
    }
    Rational operator*(const Rational& o) const {
        return Rational(check(i128(num_) * o.num_), check(i128(den_) * o.den_));
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw parameter_error("rational division by zero");
        return Rational(check(i128(num_) * o.den_), check(i128(den_) * o.num_));
    }
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return i128(num_) * o.den_ < i128(o.num_) * den_; }
    bool operator<=(const Rational& o) const { return i128(num_) * o.den_ <= i128(o.num_) * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    bool is_integer() const { return den_ == 1; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    using i128 = __int128;

    static long long check(i128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw parameter_error("rational overflow");
        return (long long)v;
    }

    void normalize() {
        if (den_ == 0) throw parameter_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    long long num_, den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

} // namespace muord
