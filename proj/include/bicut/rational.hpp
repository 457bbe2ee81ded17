#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bicut {

/// Exact rational number with a positive denominator.
///
/// Used for grouping-efficacy values and the iterative method's bounds,
/// where floating point would make tie decisions unreliable. The stored
/// representation is *not* reduced: an efficacy keeps its natural
/// (m - d, m + a) form, and all comparisons cross-multiply in 128-bit
/// arithmetic. Two rationals compare equal iff they denote the same value.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}

    Rational(long long num, long long den) : num_(num), den_(den) {
        if (den_ <= 0) throw std::invalid_argument("Rational: denominator must be positive");
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Value as a percentage rounded to two decimals, e.g. "73.68".
    std::string to_percent_string() const {
        long long scaled = (static_cast<__int128>(num_) * 10000 + den_ / 2) / den_;
        std::string integral = std::to_string(scaled / 100);
        long long frac = scaled % 100;
        std::string frac_str = (frac < 10 ? "0" : "") + std::to_string(frac);
        return integral + "." + frac_str;
    }

    std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    friend bool operator==(const Rational& x, const Rational& y) {
        return static_cast<__int128>(x.num_) * y.den_ == static_cast<__int128>(y.num_) * x.den_;
    }
    friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
    friend bool operator<(const Rational& x, const Rational& y) {
        return static_cast<__int128>(x.num_) * y.den_ < static_cast<__int128>(y.num_) * x.den_;
    }
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
    friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
    friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

  private:
    long long num_;
    long long den_;
};

/// Grouping-efficacy values live in [0, 1]; the alias marks that intent.
using Efficacy = Rational;

}  // namespace bicut
