#pragma once

#include <algorithm>
#include <iterator>
#include <locale>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wzborel/error.hpp"
#include "wzborel/ring.hpp"

namespace wzborel {

namespace detail {

template <typename R>
void multiply_add(R &acc, const R &a, const R &b)
{
    if constexpr (std::is_same_v<R, ZetaPoly>) {
        acc.add_product(a, b);
    } else {
        acc += a * b;
    }
}

} // namespace detail

/// Truncated power series c_0 + c_1 t + ... + c_N t^N + O(t^{N+1}).
///
/// The truncation order N is explicit state: every coefficient up to N is
/// known exactly (in the ring R), nothing beyond it is.
template <CoefficientRing R>
class FormalSeries {
public:
    using value_type = R;
    using traits = RingTraits<R>;

    /// The zero series known to order `order`.
    explicit FormalSeries(int order = 0) : c_(checked_size(order), traits::zero()) {}
    explicit FormalSeries(std::vector<R> coeffs) : c_(std::move(coeffs))
    {
        if (c_.empty()) {
            throw DomainError("series needs at least one coefficient");
        }
    }

    static FormalSeries monomial(int power, const R &coeff, int order)
    {
        FormalSeries s(order);
        if (power <= order) {
            s.c_[static_cast<std::size_t>(power)] = coeff;
        }
        return s;
    }

    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<R> &coeffs() const noexcept { return c_; }

    const R &operator[](int n) const { return c_.at(static_cast<std::size_t>(n)); }
    R &operator[](int n) { return c_.at(static_cast<std::size_t>(n)); }

    /// Coefficient n, or zero when n lies beyond the order (caller's responsibility).
    R coeff_or_zero(int n) const
    {
        return (n >= 0 && n <= order()) ? c_[static_cast<std::size_t>(n)] : traits::zero();
    }

    /// Index of the first nonzero coefficient; order()+1 when none is.
    int valuation() const noexcept
    {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!traits::is_zero(c_[i])) {
                return static_cast<int>(i);
            }
        }
        return order() + 1;
    }

    bool is_zero() const noexcept { return valuation() > order(); }

    FormalSeries truncated(int order) const
    {
        if (order < 0) {
            throw DomainError("negative truncation order");
        }
        std::vector<R> c(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(order + 1, ssize(c_)));
        return FormalSeries(std::move(c));
    }

    /// f(t) -> f(t^k); the result is known to order k(N+1)-1.
    FormalSeries compose_power(int k) const
    {
        if (k < 1) {
            throw DomainError("compose_power needs k >= 1");
        }
        FormalSeries r(k * (order() + 1) - 1);
        for (int n = 0; n <= order(); ++n) {
            r.c_[static_cast<std::size_t>(k * n)] = c_[static_cast<std::size_t>(n)];
        }
        return r;
    }

    /// t^k f(t); order grows by k.
    FormalSeries shifted(int k) const
    {
        if (k < 0) {
            throw DomainError("negative shift");
        }
        std::vector<R> c(static_cast<std::size_t>(k), traits::zero());
        c.insert(c.end(), c_.begin(), c_.end());
        return FormalSeries(std::move(c));
    }

    FormalSeries scaled(const Rational &q) const
    {
        FormalSeries r = *this;
        for (auto &x : r.c_) {
            x = traits::scale(x, q);
        }
        return r;
    }

    FormalSeries &operator+=(const FormalSeries &rhs)
    {
        if (rhs.order() < order()) {
            c_.resize(rhs.c_.size());
        }
        for (std::size_t i = 0; i < c_.size(); ++i) {
            c_[i] = c_[i] + rhs.c_[i];
        }
        return *this;
    }

    FormalSeries &operator-=(const FormalSeries &rhs)
    {
        if (rhs.order() < order()) {
            c_.resize(rhs.c_.size());
        }
        for (std::size_t i = 0; i < c_.size(); ++i) {
            c_[i] = c_[i] - rhs.c_[i];
        }
        return *this;
    }

    friend FormalSeries operator+(FormalSeries a, const FormalSeries &b) { return a += b; }
    friend FormalSeries operator-(FormalSeries a, const FormalSeries &b) { return a -= b; }
    friend FormalSeries operator-(const FormalSeries &a) { return a.scaled(Rational(-1)); }

    /// Truncated Cauchy product. The result order is the largest one at which
    /// every coefficient is determined: min(N_f + v_g, N_g + v_f).
    friend FormalSeries operator*(const FormalSeries &f, const FormalSeries &g)
    {
        const int vf = f.valuation();
        const int vg = g.valuation();
        return multiply(f, g, std::min(f.order() + vg, g.order() + vf));
    }

    /// Cauchy product truncated at an explicit order (at most the valid one).
    static FormalSeries multiply(const FormalSeries &f, const FormalSeries &g, int order)
    {
        FormalSeries r(order);
        for (int n = 0; n <= order; ++n) {
            R acc = traits::zero();
            const int lo = std::max(0, n - g.order());
            const int hi = std::min(n, f.order());
            for (int i = lo; i <= hi; ++i) {
                detail::multiply_add(acc, f.c_[static_cast<std::size_t>(i)],
                                     g.c_[static_cast<std::size_t>(n - i)]);
            }
            r.c_[static_cast<std::size_t>(n)] = std::move(acc);
        }
        return r;
    }

    friend bool operator==(const FormalSeries &a, const FormalSeries &b) { return a.c_ == b.c_; }

private:
    static std::size_t checked_size(int order)
    {
        if (order < 0) {
            throw DomainError("negative series order");
        }
        return static_cast<std::size_t>(order) + 1;
    }

    std::vector<R> c_;
};

/// Euler operator t d/dt: coefficient n becomes n c_n.
template <CoefficientRing R>
FormalSeries<R> euler(const FormalSeries<R> &f)
{
    FormalSeries<R> r(f.order());
    for (int n = 1; n <= f.order(); ++n) {
        r[n] = RingTraits<R>::scale(f[n], Rational(n));
    }
    return r;
}

/// Plain derivative d/dt; known to order N-1 (order 0 for constants).
template <CoefficientRing R>
FormalSeries<R> derivative(const FormalSeries<R> &f)
{
    FormalSeries<R> r(std::max(0, f.order() - 1));
    for (int n = 1; n <= f.order(); ++n) {
        r[n - 1] = RingTraits<R>::scale(f[n], Rational(n));
    }
    return r;
}

/// exp(f) for f with zero constant term, via (exp f)' = f' exp f.
template <CoefficientRing R>
FormalSeries<R> exp(const FormalSeries<R> &f)
{
    using T = RingTraits<R>;
    if (!T::is_zero(f[0])) {
        throw DomainError("exp requires zero constant term");
    }
    FormalSeries<R> e(f.order());
    e[0] = T::one();
    for (int n = 1; n <= f.order(); ++n) {
        R acc = T::zero();
        for (int k = 1; k <= n; ++k) {
            if (T::is_zero(f[k])) {
                continue;
            }
            detail::multiply_add(acc, T::scale(f[k], Rational(k)), e[n - k]);
        }
        e[n] = T::scale(acc, Rational(1, n));
    }
    return e;
}

/// Triangular bivariate data h_{m,n}, m + n <= N.
template <CoefficientRing R>
class BiSeries {
public:
    explicit BiSeries(int order = 0)
        : order_(order), c_(static_cast<std::size_t>((order + 1) * (order + 2) / 2), RingTraits<R>::zero())
    {
        if (order < 0) {
            throw DomainError("negative series order");
        }
    }

    int order() const noexcept { return order_; }

    const R &at(int m, int n) const { return c_.at(index(m, n)); }
    R &at(int m, int n) { return c_.at(index(m, n)); }

    /// m! n! h_{m,n}: the mixed derivative at the origin.
    R eval_partial(int m, int n) const
    {
        return RingTraits<R>::scale(at(m, n), Rational::factorial(static_cast<unsigned>(m))
                                                  * Rational::factorial(static_cast<unsigned>(n)));
    }

    /// True when h_{m,n} = h_{n,m} for all stored entries.
    bool is_symmetric() const
    {
        for (int m = 0; m <= order_; ++m) {
            for (int n = 0; n < m && m + n <= order_; ++n) {
                if (!(at(m, n) == at(n, m))) {
                    return false;
                }
            }
        }
        return true;
    }

    BiSeries truncated(int order) const
    {
        BiSeries r(std::min(order, order_));
        for (int d = 0; d <= r.order_; ++d) {
            for (int n = 0; n <= d; ++n) {
                r.at(d - n, n) = at(d - n, n);
            }
        }
        return r;
    }

    friend bool operator==(const BiSeries &a, const BiSeries &b)
    {
        return a.order_ == b.order_ && a.c_ == b.c_;
    }

private:
    std::size_t index(int m, int n) const
    {
        if (m < 0 || n < 0 || m + n > order_) {
            throw DomainError("bivariate index (" + std::to_string(m) + "," + std::to_string(n)
                              + ") outside total order " + std::to_string(order_));
        }
        const int d = m + n;
        return static_cast<std::size_t>(d * (d + 1) / 2 + n);
    }

    int order_;
    std::vector<R> c_;
};

/// Text form of a coefficient for CSV and tables.
inline std::string coefficient_text(const Rational &x) { return x.str(); }
inline std::string coefficient_text(const ZetaPoly &x) { return x.str(); }
inline std::string coefficient_text(double x)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << x;
    return os.str();
}
inline std::string coefficient_text(const std::complex<double> &x)
{
    return coefficient_text(x.real()) + "," + coefficient_text(x.imag());
}

/// Rows "n,coefficient" for n = 0..N.
template <CoefficientRing R>
std::string to_csv(const FormalSeries<R> &f)
{
    std::string out;
    for (int n = 0; n <= f.order(); ++n) {
        out += std::to_string(n) + "," + coefficient_text(f[n]) + "\n";
    }
    return out;
}

} // namespace wzborel
