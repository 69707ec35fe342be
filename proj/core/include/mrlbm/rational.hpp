#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace mrlbm {

/// Exact rational arithmetic on int64, always kept normalized (gcd 1, den > 0).
/// Used for prediction coefficients and the weight-derivation solver, where
/// results must match published values exactly.
class Rational {
  public:
    Rational() = default;

    Rational(std::int64_t num, std::int64_t den = 1)
        : num_(num)
        , den_(den)
    {
        if (den_ == 0)
        {
            throw std::invalid_argument("Rational: zero denominator");
        }
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend Rational operator-(const Rational& a, const Rational& b)
    {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }

    friend Rational operator*(const Rational& a, const Rational& b)
    {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }

    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.num_ == 0)
        {
            throw std::domain_error("Rational: division by zero");
        }
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational operator-() const
    {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    bool is_zero() const { return num_ == 0; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r)
    {
        os << r.num_;
        if (r.den_ != 1)
        {
            os << '/' << r.den_;
        }
        return os;
    }

  private:
    void normalize()
    {
        if (den_ < 0)
        {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1)
        {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0)
        {
            den_ = 1;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace mrlbm
