#include "wzborel/rational.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "wzborel/error.hpp"

namespace wzborel {

Rational::Rational(long num, long den)
{
    if (den == 0) {
        throw DomainError("rational with zero denominator");
    }
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(const mpq_class &value) : v_(value)
{
    v_.canonicalize();
}

Rational Rational::from_strings(std::string_view num, std::string_view den)
{
    mpz_class n;
    mpz_class d;
    if (n.set_str(std::string(num), 10) != 0 || d.set_str(std::string(den), 10) != 0) {
        throw DomainError("malformed rational: " + std::string(num) + "/" + std::string(den));
    }
    if (d == 0) {
        throw DomainError("rational with zero denominator");
    }
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
}

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return from_strings(text, "1");
    }
    return from_strings(text.substr(0, slash), text.substr(slash + 1));
}

Rational Rational::factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational Rational::binomial(unsigned n, unsigned k)
{
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

std::string Rational::str() const
{
    if (is_integer()) {
        return v_.get_num().get_str();
    }
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

double Rational::to_double() const
{
    if (is_zero()) {
        return 0.0;
    }
    // mpz_get_d_2exp keeps the exponent separate so huge operands do not overflow.
    long num_exp = 0;
    long den_exp = 0;
    const double num = mpz_get_d_2exp(&num_exp, v_.get_num_mpz_t());
    const double den = mpz_get_d_2exp(&den_exp, v_.get_den_mpz_t());
    const long e = num_exp - den_exp;
    if (e > std::numeric_limits<double>::max_exponent + 1) {
        return num > 0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    }
    if (e < std::numeric_limits<double>::min_exponent - 60) {
        return 0.0;
    }
    // Mantissas are in [0.5, 1); correct rounding is not needed here.
    return std::ldexp(num / den, static_cast<int>(e));
}

long Rational::floor_long() const
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    if (!f.fits_slong_p()) {
        throw DomainError("rational floor out of machine range");
    }
    return f.get_si();
}

Rational Rational::abs() const
{
    return Rational(mpq_class(::abs(v_)));
}

Rational Rational::inverse() const
{
    if (is_zero()) {
        throw DomainError("inverse of zero");
    }
    return Rational(mpq_class(1 / v_));
}

Rational Rational::pow(int exponent) const
{
    if (exponent < 0) {
        return inverse().pow(-exponent);
    }
    mpz_class n;
    mpz_class d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(mpq_class(n, d));
}

Rational &Rational::operator/=(const Rational &rhs)
{
    if (rhs.is_zero()) {
        throw DomainError("division by zero");
    }
    v_ /= rhs.v_;
    return *this;
}

std::ostream &operator<<(std::ostream &os, const Rational &r)
{
    return os << r.str();
}

} // namespace wzborel
