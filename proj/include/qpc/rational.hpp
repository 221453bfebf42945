#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qpc {

/// Exact nonnegative rational on 64-bit numerator/denominator with 128-bit
/// intermediates, always reduced. Covers every exact probability this
/// project manipulates (denominators up to ~2^40); overflow throws rather
/// than wrapping.
class Rational {
  public:
    constexpr Rational() = default;
    Rational(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
        if (den_ == 0)
            throw std::invalid_argument("Rational: zero denominator");
        reduce();
    }

    std::uint64_t num() const { return num_; }
    std::uint64_t den() const { return den_; }

    Rational operator+(const Rational& rhs) const {
        const auto n = mul(num_, rhs.den_) + mul(rhs.num_, den_);
        return from_wide(n, mul(den_, rhs.den_));
    }
    Rational operator*(const Rational& rhs) const {
        return from_wide(mul(num_, rhs.num_), mul(den_, rhs.den_));
    }
    Rational operator/(const Rational& rhs) const {
        if (rhs.num_ == 0)
            throw std::invalid_argument("Rational: division by zero");
        return from_wide(mul(num_, rhs.den_), mul(den_, rhs.num_));
    }

    friend bool operator==(const Rational&, const Rational&) = default;

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string to_string() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    using Wide = unsigned __int128;

    static Wide mul(std::uint64_t a, std::uint64_t b) {
        return static_cast<Wide>(a) * b;
    }

    static Rational from_wide(Wide num, Wide den) {
        // Reduce in 128 bits first, then require the result to fit.
        const Wide g = gcd_wide(num, den);
        if (g != 0) {
            num /= g;
            den /= g;
        }
        if (num > UINT64_MAX || den > UINT64_MAX)
            throw std::overflow_error("Rational: value out of range");
        Rational r;
        r.num_ = static_cast<std::uint64_t>(num);
        r.den_ = static_cast<std::uint64_t>(den);
        return r;
    }

    static Wide gcd_wide(Wide a, Wide b) {
        while (b != 0) {
            const Wide t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void reduce() {
        const std::uint64_t g = std::gcd(num_, den_);
        if (g != 0) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

} // namespace qpc
