#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wzborel {

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Always stored in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long value) : v_(value) {} // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(const mpq_class &value);
    explicit Rational(const mpz_class &value) : v_(value) {}

    /// Parses decimal numerator and denominator strings.
    static Rational from_strings(std::string_view num, std::string_view den);
    /// Parses "p" or "p/q".
    static Rational parse(std::string_view text);
    static Rational factorial(unsigned n);
    static Rational binomial(unsigned n, unsigned k);

    const mpq_class &value() const noexcept { return v_; }

    bool is_zero() const noexcept { return sgn(v_) == 0; }
    bool is_integer() const noexcept { return v_.get_den() == 1; }
    int sign() const noexcept { return sgn(v_); }

    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }
    /// "p" for integers, "p/q" otherwise.
    std::string str() const;

    /// Nearest double; returns +-inf when the magnitude exceeds the double range.
    double to_double() const;
    /// Floor as a machine integer. Throws DomainError when out of range.
    long floor_long() const;

    Rational abs() const;
    Rational inverse() const;
    Rational pow(int exponent) const;

    Rational &operator+=(const Rational &rhs) { v_ += rhs.v_; return *this; }
    Rational &operator-=(const Rational &rhs) { v_ -= rhs.v_; return *this; }
    Rational &operator*=(const Rational &rhs) { v_ *= rhs.v_; return *this; }
    Rational &operator/=(const Rational &rhs);

    friend Rational operator+(Rational lhs, const Rational &rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational &rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational &rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational &rhs) { return lhs /= rhs; }
    friend Rational operator-(const Rational &x) { return Rational(mpq_class(-x.v_)); }

    friend bool operator==(const Rational &a, const Rational &b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r);

private:
    mpq_class v_;
};

} // namespace wzborel
